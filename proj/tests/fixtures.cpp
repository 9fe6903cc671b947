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

#include "fixtures.hpp"

#include <cmath>
#include <numbers>

#include "chan_atlas/image_geometry.hpp"
#include "oracles.hpp"

namespace chan_atlas::fixtures {

Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

Channel cq(const std::vector<Matrix>& states, const Matrix& u) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < states.size(); ++i) basis.push_back(u.col(static_cast<Index>(i)));
  return Channel::from_cq(std::move(basis), states);
}

Channel cq(const std::vector<Matrix>& states) {
  const auto n = static_cast<Index>(states.size());
  return cq(states, Matrix::Identity(n, n));
}

Channel rotate_input(const Channel& t, const Matrix& u) {
  return compose(t, Channel::from_kraus({u.adjoint()}));
}

std::vector<Matrix> tetrahedron_states(double radius) {
  const double s = radius / std::sqrt(3.0);
  return {bloch_state({s, s, s}), bloch_state({s, -s, -s}), bloch_state({-s, s, -s}),
          bloch_state({-s, -s, s})};
}

std::vector<Matrix> qubit_sic_effects() {
  std::vector<Matrix> e;
  for (const Matrix& p : tetrahedron_states(1.0)) e.push_back(0.5 * p);
  return e;
}

std::vector<Matrix> octahedron_states(double radius) {
  std::vector<Matrix> out;
  for (int k = 0; k < 3; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Eigen::Vector3d r = Eigen::Vector3d::Zero();
      r(k) = sgn * radius;
      out.push_back(bloch_state(r));
    }
  }
  return out;
}

Channel disc_counterexample() {
  return direct_sum(cq(octahedron_states(0.9)), channels::unital_qubit_diagonal(0.5, 0.5, 0.0));
}

Channel ball_counterexample() {
  return direct_sum(cq(octahedron_states(0.9)), channels::depolarizing(1.0 / 3.0));
}

Channel diagonal_swap() { return cq({diag({0, 1}), diag({1, 0})}); }

Channel random_channel(Index d_in, Index d_out, Index rank, Rng& rng) {
  return oracle::random_channel(d_in, d_out, rank, rng);
}

PolytopicFixture polytopic_fixture(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> pick_k(3, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index k = pick_k(rng);
  const Index d_out = std::uniform_int_distribution<int>(3, 5)(rng);

  std::vector<Matrix> sigma;
  for (Index i = 0; i < k; ++i) sigma.push_back(random_density_matrix(d_out, rng));

  std::vector<Index> dims;
  Index dv = 0;
  for (Index i = 0; i < k; ++i) {
    dims.push_back(unit(rng) < 0.3 ? 2 : 1);
    dv += dims.back();
  }
  std::vector<Matrix> repeated;
  for (Index i = 0; i < k; ++i)
    for (Index c = 0; c < dims[static_cast<std::size_t>(i)]; ++c) repeated.push_back(sigma[static_cast<std::size_t>(i)]);

  // Output states of the qubit block: interior convex combinations.
  auto interior = [&] {
    std::vector<double> w(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& x : w) total += (x = 0.2 + unit(rng));
    Matrix tau = Matrix::Zero(d_out, d_out);
    for (Index i = 0; i < k; ++i) tau += w[static_cast<std::size_t>(i)] / total * sigma[static_cast<std::size_t>(i)];
    return tau;
  };
  Channel t2 = channels::identity(2);
  if (seed % 2 == 0) {
    std::vector<Matrix> taus;
    for (int j = 0; j < 4; ++j) taus.push_back(interior());
    t2 = compose(Channel::from_povm(qubit_sic_effects(), taus), channels::depolarizing(1.0 / 3.0));
  } else {
    // Random two-outcome qubit POVM.
    const Matrix u = random_unitary(2, rng);
    const double a = 0.2 + 0.6 * unit(rng);
    const Matrix e0 = u * diag({a, 1.0 - a}) * u.adjoint();
    t2 = Channel::from_povm({e0, Matrix(Matrix::Identity(2, 2) - e0)}, {interior(), interior()});
  }

  const Channel base = direct_sum(cq(repeated), t2);
  const Index d_in = dv + 2;
  const Matrix u = random_unitary(d_in, rng);

  PolytopicFixture f{rotate_input(base, u), sigma, {}, d_in};
  Index off = 0;
  for (Index i = 0; i < k; ++i) {
    const Index n = dims[static_cast<std::size_t>(i)];
    f.preimages.push_back(u.middleCols(off, n));
    off += n;
  }
  return f;
}

Channel ecq_fixture(std::uint64_t seed) {
  Rng rng(seed);
  const Index d = std::uniform_int_distribution<int>(2, 4)(rng);
  const Index k = std::uniform_int_distribution<int>(1, static_cast<int>(d))(rng);
  const Index d_out = std::uniform_int_distribution<int>(2, 3)(rng);
  const Matrix u = random_unitary(d, rng);
  const Matrix rest = u.rightCols(d - k);

  // Split the identity on the complement into k PSD pieces.
  std::vector<Matrix> remainders(static_cast<std::size_t>(k), Matrix::Zero(d, d));
  if (d > k) {
    Matrix left = Matrix::Identity(d - k, d - k);
    for (Index i = 0; i + 1 < k; ++i) {
      const Matrix g = random_density_matrix(d - k, rng);
      // Scale so that left - piece stays PSD.
      const Matrix half = hermitian_function(left, [](double x) { return std::sqrt(std::max(x, 0.0)); });
      const Matrix piece = half * (0.5 * g / max_eigenvalue(g)) * half;
      remainders[static_cast<std::size_t>(i)] = rest * piece * rest.adjoint();
      left -= piece;
    }
    remainders.back() = rest * left * rest.adjoint();
  }
  std::vector<Vector> vectors;
  std::vector<Matrix> states;
  for (Index i = 0; i < k; ++i) {
    vectors.push_back(u.col(i));
    states.push_back(random_density_matrix(d_out, rng));
  }
  return Channel::from_ecq(std::move(vectors), std::move(remainders), std::move(states));
}

Channel square_ecq(std::uint64_t seed) {
  Rng rng(seed);
  const Matrix u = random_unitary(3, rng);
  const Vector e2 = u.col(2);
  const double w = 0.3 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng);
  return Channel::from_ecq({u.col(0), u.col(1)},
                           {Matrix(w * e2 * e2.adjoint()), Matrix((1 - w) * e2 * e2.adjoint())},
                           {random_density_matrix(3, rng), random_density_matrix(3, rng)});
}

std::vector<Channel> square_fixtures() {
  Rng rng(77);
  std::vector<Channel> out = {channels::identity(2),
                              channels::identity(3),
                              channels::depolarizing(1.0 / 3.0),
                              channels::depolarizing(0.9),
                              channels::dephasing(3),
                              fixtures::diagonal_swap(),
                              channels::constant(random_density_matrix(3, rng), 3),
                              channels::unital_qubit_diagonal(0.5, 0.5, 0.0),
                              tensor(channels::identity(2), channels::constant(diag({0.7, 0.3}), 2))};
  for (int k = 0; k < 4; ++k) out.push_back(square_ecq(k));
  for (int k = 0; k < 4; ++k) out.push_back(oracle::random_channel(2 + k % 2, 2 + k % 2, 1 + k, rng));
  return out;
}

}  // namespace chan_atlas::fixtures
