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

// Channel families shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <vector>

#include "chan_atlas/channel.hpp"

namespace chan_atlas::fixtures {

Matrix diag(std::initializer_list<double> v);

/// rho -> sum_i <u_i, rho u_i> sigma_i over the columns u_i of `u`.
Channel cq(const std::vector<Matrix>& states, const Matrix& u);
Channel cq(const std::vector<Matrix>& states);

/// Channel x -> T(U^* x U), i.e. T after an input basis change.
Channel rotate_input(const Channel& t, const Matrix& u);

/// Qubit SIC effects (1/2) P_j, P_j on the regular tetrahedron.
std::vector<Matrix> qubit_sic_effects();
/// Regular tetrahedron of pure qubit states.
std::vector<Matrix> tetrahedron_states(double radius = 1.0);
/// The six states (1 +- R sigma_k) / 2.
std::vector<Matrix> octahedron_states(double radius);

/// Image of the unital map diag(1/2, 1/2, 0) is the equatorial disc of
/// radius 1/2. CQ hull of an octahedron with Bloch radius 0.9 (mixed
/// vertices) on six input levels, direct sum with that disc channel.
Channel disc_counterexample();
/// Same CQ hull, direct sum with Delta_{1/3}.
Channel ball_counterexample();

/// 2-cycle on the qubit diagonal, off-diagonals removed.
Channel diagonal_swap();

struct PolytopicFixture {
  Channel channel;
  std::vector<Matrix> vertices;
  std::vector<Matrix> preimages;  // d_in x dim V_i each
  Index d_in = 0;
};

/// CQ part with 3-5 affinely independent mixed vertices in output
/// dimension 3-5 (preimage dimensions 1 or 2), direct sum with a qubit
/// block whose image lies strictly inside the hull, then a random input
/// unitary.
PolytopicFixture polytopic_fixture(std::uint64_t seed);

/// eCQ channels: k orthonormal vectors in C^d plus remainder effects on
/// their complement (nonzero for most seeds).
Channel ecq_fixture(std::uint64_t seed);

Channel random_channel(Index d_in, Index d_out, Index rank, Rng& rng);

/// eCQ channel on C^3 with k = 2 and a nonzero remainder.
Channel square_ecq(std::uint64_t seed);

/// Square channels used by the fixed-point checks.
std::vector<Channel> square_fixtures();

}  // namespace chan_atlas::fixtures
