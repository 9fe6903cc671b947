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

// Channels between matrix spaces M_{d_in} -> M_{d_out}, held in one of
// several interchangeable representations, plus the usual channel algebra.
//
// Conventions:
//  * The Choi state is J = (T (x) id)(psi psi^*) with psi maximally
//    entangled, so the output factor comes first and Tr J = 1 for trace
//    preserving T.
//  * The transfer matrix L acts on column-major vectorizations:
//    vec(T(X)) = L vec(X).

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chan_atlas/linalg.hpp"

namespace chan_atlas {

class DensityMatrix {
 public:
  /// Validates hermiticity, positivity and unit trace within `tol`; the
  /// stored matrix is the Hermitian part of `m`.
  static DensityMatrix from(const Matrix& m, double tol = 1e-9);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

class PureState {
 public:
  static PureState from(const Vector& v, double tol = 1e-9);

  Index dim() const { return v_.size(); }
  const Vector& amplitudes() const { return v_; }
  Matrix projector() const { return v_ * v_.adjoint(); }

 private:
  explicit PureState(Vector v) : v_(std::move(v)) {}
  Vector v_;
};

class Povm {
 public:
  static Povm from(std::vector<Matrix> effects, const Tolerances& tol = {});

  Index dim() const { return effects_.front().rows(); }
  const std::vector<Matrix>& effects() const { return effects_; }

 private:
  explicit Povm(std::vector<Matrix> e) : effects_(std::move(e)) {}
  std::vector<Matrix> effects_;
};

class Channel;

struct KrausForm {
  std::vector<Matrix> operators;  // each d_out x d_in
};

struct ChoiForm {
  Matrix choi;  // normalized Choi state, (d_out d_in) x (d_out d_in)
};

/// rho -> sum_i Tr(M_i rho) sigma_i.
struct PovmForm {
  std::vector<Matrix> effects;
  std::vector<Matrix> states;
};

/// rho -> sum_i Tr[(e_i e_i^* + R_i) rho] sigma_i with orthonormal e_i and
/// remainder effects R_i living on span{e_j}^perp.
struct EcqForm {
  std::vector<Vector> vectors;
  std::vector<Matrix> remainders;
  std::vector<Matrix> states;
};

/// rho -> sum_i <e_i, rho e_i> sigma_i for an orthonormal basis e_i.
struct CqForm {
  std::vector<Vector> basis;
  std::vector<Matrix> states;
};

/// rho -> sum_b T_b(rho_bb) over the diagonal blocks of the input; the
/// block sizes are the blocks' input dimensions and off-diagonal blocks of
/// rho are never read.
struct DirectSumForm {
  std::vector<Channel> blocks;
};

class Channel {
 public:
  using Representation =
      std::variant<KrausForm, ChoiForm, PovmForm, EcqForm, CqForm, DirectSumForm>;

  static Channel from_kraus(std::vector<Matrix> operators);
  static Channel from_choi(Matrix choi, Index d_in, Index d_out);
  static Channel from_povm(std::vector<Matrix> effects, std::vector<Matrix> states);
  static Channel from_ecq(std::vector<Vector> vectors, std::vector<Matrix> remainders,
                          std::vector<Matrix> states);
  static Channel from_cq(std::vector<Vector> basis, std::vector<Matrix> states);
  static Channel from_direct_sum(std::vector<Channel> blocks);
  /// Builds a ChoiForm channel from any linear map given by its action.
  static Channel from_linear_map(Index d_in, Index d_out,
                                 const std::function<Matrix(const Matrix&)>& map);

  Index d_in() const;
  Index d_out() const;
  const Representation& representation() const;
  std::string_view form_name() const;

  /// Applies the map through its native representation. Any square input
  /// of size d_in is accepted (the map is linear).
  Matrix apply(const Matrix& x) const;
  /// Applies the map to a state and checks that the output is a state.
  DensityMatrix apply(const DensityMatrix& rho) const;

  /// Normalized Choi state, computed once at construction.
  const Matrix& choi() const;
  /// Transfer matrix, d_out^2 x d_in^2.
  const Matrix& transfer() const;

 private:
  struct Data;
  explicit Channel(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static Channel make(Index d_in, Index d_out, Representation rep);

  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Choi-Jamiolkowski correspondence

struct ChoiMatrix {
  Index d_in = 0;
  Index d_out = 0;
  Matrix matrix;
};

ChoiMatrix to_choi(const Channel& t);

/// Kraus extraction by eigendecomposition of J. Eigenvectors are taken in
/// descending eigenvalue order; eigenvalues below `rank_tol` are dropped.
/// Throws ValidationError if J is not PSD or its input marginal is not
/// identity / d_in within tolerance.
Channel from_choi(const ChoiMatrix& j, const Tolerances& tol = {},
                  double rank_tol = 1e-9);

/// Kraus operators of a completely positive map (native ones for KrausForm).
/// Throws ValidationError when the Choi matrix is not PSD within tol.psd.
std::vector<Matrix> kraus_operators(const Channel& t, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Heisenberg picture

class DualMap {
 public:
  explicit DualMap(const Channel& t);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  /// T^*(H), an operator on the input space.
  Matrix operator()(const Matrix& h) const;

 private:
  Index d_in_;
  Index d_out_;
  Matrix adjoint_transfer_;
};

DualMap dual(const Channel& t);

// ---------------------------------------------------------------------------
// Channel algebra

/// T1 (x) T2 acting on M_{d1 d2}, first factor slow.
Channel tensor(const Channel& t1, const Channel& t2);
/// outer o inner, i.e. rho -> outer(inner(rho)).
Channel compose(const Channel& outer, const Channel& inner);
/// Entrywise complex conjugate map, Kraus operators conjugated.
Channel conjugate(const Channel& t);
Channel direct_sum(const Channel& t1, const Channel& t2);

/// Largest operator-norm difference over the matrix units E_ij.
double map_distance(const Channel& a, const Channel& b);

// ---------------------------------------------------------------------------
// Structural verification

struct CptpReport {
  bool cptp = false;
  double min_choi_eigenvalue = 0.0;
  /// || d_in Tr_out J - 1 ||, i.e. || T^*(1) - 1 ||.
  double marginal_deviation = 0.0;
  double hermiticity_defect = 0.0;
  std::string description;
};

CptpReport verify_cptp(const Channel& t, const Tolerances& tol = {});
bool is_unital(const Channel& t, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Standard channels

namespace channels {

Channel identity(Index d);
/// rho -> r rho + (1 - r) Tr(rho) 1/d.
Channel depolarizing(double r, Index d = 2);
/// rho -> Tr(rho) sigma.
Channel constant(const Matrix& sigma, Index d_in);
/// Dephasing in the computational basis (CQ with sigma_i = e_i e_i^*).
Channel dephasing(Index d);
/// Unital qubit map diagonal in the Pauli basis: Bloch vector components
/// are scaled by (l1, l2, l3). Completely positive only inside the
/// Fujiwara-Algoet tetrahedron; built as a ChoiForm either way.
Channel unital_qubit_diagonal(double l1, double l2, double l3);
/// Qubit-to-qutrit measure-and-prepare channel with the trine POVM
/// M_j = (2/3) P_j, P_j the projector onto (cos(2 pi j/3), sin(2 pi j/3)),
/// preparing e_j e_j^* (j = 1, 2, 3 mapped to indices 0, 1, 2).
Channel trine_measure_prepare();

/// The three Pauli matrices.
const std::array<Matrix, 3>& pauli();

}  // namespace channels

}  // namespace chan_atlas
