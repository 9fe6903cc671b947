// Copyright 2026 The chan-atlas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra shared by every module. Dimensions in this
// library stay small (operators up to a few dozen rows), so everything is
// dynamic-size Eigen and nothing tries to be clever about storage.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chan_atlas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value that violates a stated invariant (not PSD, not normalized, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Default numerical thresholds. Eigenvalues >= -psd count as nonnegative,
/// trace and marginal conditions are checked against `trace`, and two maps
/// are equal when they differ by at most `map_equality` in operator norm on
/// every matrix unit.
struct Tolerances {
  double psd = 1e-9;
  double trace = 1e-9;
  double map_equality = 1e-10;
};

// ---------------------------------------------------------------------------
// Spectral helpers

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

/// Diagonalizes the Hermitian part of `m`. Within every cluster of
/// eigenvalues closer than `degeneracy_tol` the eigenvectors are replaced by
/// the Gram-Schmidt orthonormalization of the projected standard basis, so
/// the returned basis does not depend on the solver's internal rotation.
HermitianEigen eigh(const Matrix& m, double degeneracy_tol = 1e-10);

double min_eigenvalue(const Matrix& hermitian);
double max_eigenvalue(const Matrix& hermitian);

/// Applies a real function to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& hermitian,
                          const std::function<double(double)>& f);

double operator_norm(const Matrix& m);
double trace_norm(const Matrix& m);
Matrix hermitian_part(const Matrix& m);
double hermiticity_defect(const Matrix& m);

// ---------------------------------------------------------------------------
// Tensor structure. Bipartite operators act on C^{d1} (x) C^{d2} with the
// first factor as the slow index: row (a, i) sits at a * d2 + i.

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Matrix partial_trace_first(const Matrix& m, Index d1, Index d2);
Matrix partial_trace_second(const Matrix& m, Index d1, Index d2);
Matrix partial_transpose_second(const Matrix& m, Index d1, Index d2);

/// Column-major vectorization, consistent with Eigen's storage order.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

Matrix matrix_unit(Index d, Index i, Index j);
Vector basis_vector(Index d, Index i);

/// Unit vector (1/sqrt d) sum_i e_i (x) e_i.
Vector maximally_entangled(Index d);

// ---------------------------------------------------------------------------
// Subspaces. A subspace is stored as a matrix whose columns are orthonormal.

/// Orthonormal basis of the column span, columns whose residual after
/// projection falls below `tol` are dropped.
Matrix orthonormalize(const Matrix& columns, double tol = 1e-10);
Matrix orthogonal_complement(const Matrix& basis, Index dim, double tol = 1e-6);
Matrix projector(const Matrix& basis);
/// Operator-norm distance between the orthogonal projectors.
double subspace_distance(const Matrix& a, const Matrix& b);
/// Intersection of several subspaces of C^dim.
Matrix subspace_intersection(const std::vector<Matrix>& bases, Index dim,
                             double tol = 1e-8);

// ---------------------------------------------------------------------------
// Real coordinates of Hermitian matrices with respect to the orthonormal
// basis {E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2}; Tr(AB) equals
// the Euclidean inner product of the coordinates.

RealVector hermitian_coordinates(const Matrix& h);
Matrix hermitian_from_coordinates(const RealVector& c, Index dim);

/// Dimension of the affine hull of a point set, via numerical rank.
Index affine_dimension(const std::vector<Matrix>& points, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Random sampling. All samplers take the generator explicitly.

using Rng = std::mt19937_64;

/// SplitMix64 mixing of (seed, stream) for independent per-task generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Vector random_unit_vector(Index d, Rng& rng);
/// Hermitian matrix with Gaussian entries scaled to unit Frobenius norm.
Matrix random_hermitian(Index d, Rng& rng);
Matrix random_density_matrix(Index d, Rng& rng, Index rank = -1);
Matrix random_unitary(Index d, Rng& rng);

}  // namespace chan_atlas
