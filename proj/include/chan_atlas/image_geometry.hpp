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

// Geometry of channel images Im(T) = { T(rho) : rho a state }.
//
// Everything goes through the support function
//   h_T(H) = max_rho Tr(H T(rho)) = lambda_max(T^*(H)).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chan_atlas/channel.hpp"

namespace chan_atlas {

struct SupportValue {
  double value = 0.0;
  Vector maximizer;  // unit vector x with Tr(H T(xx^*)) = value
};

/// Throws ValidationError for non-Hermitian H and DimensionError when H is
/// not d_out x d_out.
SupportValue support_function(const Channel& t, const Matrix& h);
SupportValue support_function(const DualMap& t_dual, const Matrix& h);

/// max over `samples` random pure inputs of Tr(H T(xx^*)), evaluated with
/// the batched quadratic-form kernel. Never exceeds support_function().
double sampled_support(const Channel& t, const Matrix& h, std::size_t samples, Rng& rng);

// ---------------------------------------------------------------------------
// Qubit channels in Bloch coordinates, rho = (1 + r . sigma) / 2.

struct BlochAffineMap {
  Eigen::Matrix3d linear;
  Eigen::Vector3d shift;

  Eigen::Vector3d operator()(const Eigen::Vector3d& r) const { return linear * r + shift; }
};

struct BlochSpectrum {
  std::array<double, 3> semi_axes;  // singular values, descending
  Eigen::Vector3d center;
};

BlochAffineMap bloch_map(const Channel& t);
BlochSpectrum bloch_image_spectrum(const BlochAffineMap& map);
Eigen::Vector3d bloch_vector(const Matrix& rho);
Matrix bloch_state(const Eigen::Vector3d& r);

struct FujiwaraAlgoet {
  bool completely_positive = false;
  double slack_sum = 0.0;         // (1 + l3) - |l1 + l2|
  double slack_difference = 0.0;  // (1 - l3) - |l1 - l2|
};

/// Complete positivity of the unital qubit map with signed Pauli
/// compressions (l1, l2, l3): |l1 + l2| <= 1 + l3 and |l1 - l2| <= 1 - l3.
FujiwaraAlgoet fujiwara_algoet_check(const std::array<double, 3>& lambda, double tol = 0.0);

/// Weights p_0..p_3 of the Pauli mixture realizing the same map; they are
/// the eigenvalues of its Choi state.
std::array<double, 4> pauli_weights(const std::array<double, 3>& lambda);

// ---------------------------------------------------------------------------
// Vertices and the polytopic decomposition

struct VertexRecord {
  Matrix state;            // sigma_i
  Matrix preimage_basis;   // d_in x dim V_i, orthonormal columns
  int hit_count = 0;
  std::vector<Matrix> exposing_directions;  // a few directions attaining sigma_i
};

struct VertexSearchOptions {
  int n_directions = 600;
  double cluster_tol = 1e-6;     // trace distance between outputs
  int min_hits = 3;
  double degeneracy_tol = 1e-9;  // top-eigenvalue multiplicity threshold
  double membership_tol = 1e-8;  // T(xx^*) = sigma_i check on V_i
};

/// Vertices sorted lexicographically by their rounded Hermitian
/// coordinates, so the order does not depend on sampling order.
std::vector<VertexRecord> find_vertices(const Channel& t, std::uint64_t seed,
                                        const VertexSearchOptions& opts = {});

enum class PolytopeVerdict { kPolytopic, kNotPolytopic, kIndeterminate };
std::string_view to_string(PolytopeVerdict v);

struct PolytopicDecomposition {
  PolytopeVerdict verdict = PolytopeVerdict::kIndeterminate;
  std::vector<VertexRecord> vertices;
  Matrix w_basis;               // d_in x dim W
  std::optional<Channel> t1;    // CQ part on C^{d_in}, reads only the V block
  std::optional<Channel> t2;    // M_{dim W} -> M_{d_out}; empty when W = {0}
  double max_support_excess = 0.0;
  std::optional<Matrix> witness_direction;
  double reconstruction_error = 0.0;
  double min_vertex_separation = 0.0;
  std::string reason;
};

struct DecomposeOptions {
  VertexSearchOptions search;
  int n_check_directions = 200;
  double equal_tol = 1e-8;
  double excess_tol = 1e-6;
  double separation_tol = 1e-6;
};

PolytopicDecomposition polytopic_decompose(const Channel& t, std::uint64_t seed,
                                           const DecomposeOptions& opts = {});

/// T1(rho) + T2(B_W^* rho B_W) for a decomposition with T1 present.
Matrix reassemble(const PolytopicDecomposition& dec, const Matrix& rho);

struct DimensionBound {
  bool holds = false;
  Index affine_dimension = 0;
  Index k = 0;
  Index d = 0;
};

/// dim hull{sigma_i} <= k - 1 <= d - 1.
DimensionBound dimension_bound_check(const PolytopicDecomposition& dec, Index d);

// ---------------------------------------------------------------------------
// Planar sections

struct BoundaryPoint {
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Boundary of the projection of Im(T) onto the plane spanned by the
/// Hermitian axes (A, B), one support point per direction cos(t) A + sin(t) B.
std::vector<BoundaryPoint> image_boundary_2d(const Channel& t, const Matrix& a,
                                             const Matrix& b, int n_points);

}  // namespace chan_atlas
