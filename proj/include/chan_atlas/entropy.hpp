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

// Renyi entropies, minimum output entropy, and sampled estimates of the
// entropy- and image-additivity gaps. Entropies are in nats.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chan_atlas/channel.hpp"

namespace chan_atlas {

/// Largest Renyi order accepted; larger p is numerically the min-entropy
/// and is not exposed.
inline constexpr double kMaxRenyiOrder = 50.0;

/// H_p of a probability vector (entries clipped at 0). p within 1e-6 of 1
/// gives the Shannon entropy. Throws ValidationError for p < 1 or p > 50.
double renyi_entropy(const RealVector& probabilities, double p);
double renyi_entropy(const DensityMatrix& rho, double p);

struct EntropyResult {
  double p = 1.0;
  double value = 0.0;
  PureState minimizer = PureState::from(Vector::Ones(1));
  int restarts_used = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

struct EntropyOptions {
  int restarts = 64;
  int max_iterations = 400;
  /// Bloch sphere sweep for qubit inputs, grid_points x grid_points angles
  /// (defaults to 1000 for qubit outputs, 200 otherwise when <= 0).
  bool bloch_grid = true;
  int grid_points = 0;
  /// Extra starting points, tried before the random restarts.
  std::vector<Vector> starts;
};

/// Minimizes H_p(T(xx^*)) over unit vectors by projected gradient descent
/// with Armijo backtracking from several starts. Throws ValidationError for
/// a non-CPTP channel.
EntropyResult min_output_entropy(const Channel& t, double p, std::uint64_t seed,
                                 const EntropyOptions& opts = {});

enum class GapKind { kEntropyAdditivity, kImageAdditivity };
std::string_view to_string(GapKind k);

struct GapReport {
  GapKind kind = GapKind::kEntropyAdditivity;
  double gap = 0.0;
  /// Image gap: smallest lhs - rhs over the sample (hull inclusion makes it
  /// >= 0 up to rounding).
  double min_difference = 0.0;
  std::optional<Matrix> direction;  // image gap witness
  std::optional<Vector> state;      // joint entropy minimizer
  double lhs = 0.0;
  double rhs = 0.0;
  /// Image gap: spread of the product-side restarts at the witness direction.
  double restart_spread = 0.0;
  bool certified = false;
  int n_samples = 0;
  std::uint64_t seed = 0;
  /// Entropy gap: H_min(T1), H_min(T2), H_min(T1 (x) T2).
  double first = 0.0;
  double second = 0.0;
  double joint = 0.0;
};

/// H_min(T1) + H_min(T2) - H_min(T1 (x) T2). The joint search starts from
/// the product of the individual minimizers, so the gap is >= 0 up to
/// rounding.
GapReport entropy_additivity_gap(const Channel& t1, const Channel& t2, double p,
                                 std::uint64_t seed, const EntropyOptions& opts = {});

struct ImageGapOptions {
  int n_directions = 200;
  int rounds = 20;
  int restarts = 8;
  double improvement_tol = 1e-10;
  double gap_tol = 1e-6;
  double agreement_tol = 1e-8;
  /// Directions evaluated in addition to the random ones.
  std::vector<Matrix> extra_directions;
  /// Adds the PPT witness of (T1 (x) T2)(psi psi^*) when the input
  /// dimensions agree and that state has a non-positive partial transpose.
  bool entanglement_witness = true;
};

/// max over directions H of h_{T1 (x) T2}(H) - max_{product inputs}
/// Tr(H (T1 (x) T2)(rho1 (x) rho2)); the product side uses alternating
/// maximization. `certified` requires gap > gap_tol and restart agreement.
GapReport image_additivity_gap(const Channel& t1, const Channel& t2, std::uint64_t seed,
                               const ImageGapOptions& opts = {});

/// Product-side support value at one direction, best over restarts.
struct ProductSupport {
  double value = 0.0;
  double spread = 0.0;
  Vector x;
  Vector y;
};
/// Restarts: `opts.restarts` random ones, the computational basis on either
/// side, and any `x_starts` for the first factor.
ProductSupport product_support(const Channel& t1, const Channel& t2, const Matrix& h,
                               std::uint64_t seed, const ImageGapOptions& opts = {},
                               const std::vector<Vector>& x_starts = {});

/// -(v v^*)^Gamma normalized, v the eigenvector of the most negative
/// partial-transpose eigenvalue of the bipartite `state`; nullopt when the
/// partial transpose is PSD.
std::optional<Matrix> ppt_witness_direction(const Matrix& state, Index d1, Index d2);

struct HidingResult {
  bool accepted = false;
  std::optional<Channel> channel;
  /// Largest excess h_{T2}(H) - max_i Tr(H sigma_i) and its direction.
  double max_excess = 0.0;
  Matrix direction;
};

/// direct_sum(T1, T2) with T1 the CQ channel preparing the given vertices,
/// provided hull(vertices) contains Im(T2) (support dominance on 200 random
/// directions and the vertex-opposite directions, tolerance 1e-8).
HidingResult build_hiding_channel(const Channel& t2, const std::vector<Matrix>& vertices,
                                  std::uint64_t seed = 0);

}  // namespace chan_atlas
