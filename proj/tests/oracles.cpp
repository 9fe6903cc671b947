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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chan_atlas::oracle {

Matrix choi_by_definition(const LinearMap& t, Index d_in, Index d_out) {
  Matrix j = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Index i = 0; i < d_in; ++i) {
    for (Index jj = 0; jj < d_in; ++jj) {
      Matrix e = Matrix::Zero(d_in, d_in);
      e(i, jj) = 1.0;
      const Matrix te = t(e);
      for (Index a = 0; a < d_out; ++a) {
        for (Index b = 0; b < d_out; ++b) {
          j(a * d_in + i, b * d_in + jj) = te(a, b) / static_cast<double>(d_in);
        }
      }
    }
  }
  return j;
}

Matrix partial_transpose_naive(const Matrix& m, Index d1, Index d2) {
  Matrix out(m.rows(), m.cols());
  for (Index a = 0; a < d1; ++a)
    for (Index i = 0; i < d2; ++i)
      for (Index b = 0; b < d1; ++b)
        for (Index j = 0; j < d2; ++j) out(a * d2 + i, b * d2 + j) = m(a * d2 + j, b * d2 + i);
  return out;
}

std::vector<double> jacobi_eigenvalues(const Matrix& h) {
  // Complex Hermitian Jacobi: each sweep zeroes (p, q) with a unitary
  // rotation built from the phase of the entry.
  Matrix a = 0.5 * (h + h.adjoint());
  const Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off < 1e-30) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag < 1e-300) continue;
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Matrix g = Matrix::Identity(n, n);
        g(p, p) = c;
        g(q, q) = c;
        g(p, q) = s * phase;
        g(q, p) = -s * std::conj(phase);
        a = g.adjoint() * a * g;
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::array<double, 3> bloch_vector(const Matrix& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Matrix qubit_state(double x, double y, double z) {
  Matrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = Complex(0.5 * x, -0.5 * y);
  m(1, 0) = Complex(0.5 * x, 0.5 * y);
  return m;
}

double sampled_support(const Channel& t, const Matrix& h, int samples, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double best = -1e300;
  for (int s = 0; s < samples; ++s) {
    Vector x(t.d_in());
    for (Index i = 0; i < x.size(); ++i) x(i) = Complex(g(rng), g(rng));
    x.normalize();
    const Matrix out = t.apply(Matrix(x * x.adjoint()));
    best = std::max(best, (h * out).trace().real());
  }
  return best;
}

double product_support_grid(const Channel& t1, const Channel& t2, const Matrix& h,
                            int grid) {
  const Index o1 = t1.d_out();
  const Index o2 = t2.d_out();
  const Index n2 = t2.d_in();
  // Dual of T2 applied blockwise: for fixed rho1, the second factor sees
  // the operator K = sum_ab T1(rho1)_ba H_(a,b) and we need
  // lambda_max(T2^*(K)).
  const Matrix l2 = t2.transfer();
  double best = -1e300;
  for (int it = 0; it < grid; ++it) {
    const double th = std::numbers::pi * (it + 0.5) / grid;
    for (int ip = 0; ip < grid; ++ip) {
      const double ph = 2.0 * std::numbers::pi * ip / grid;
      const Matrix rho1 = qubit_state(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                      std::cos(th));
      const Matrix out1 = t1.apply(rho1);
      Matrix k = Matrix::Zero(o2, o2);
      for (Index a = 0; a < o1; ++a)
        for (Index b = 0; b < o1; ++b) k += out1(b, a) * h.block(a * o2, b * o2, o2, o2);
      Eigen::VectorXcd v(o2 * o2);
      for (Index c = 0; c < o2; ++c)
        for (Index r = 0; r < o2; ++r) v(c * o2 + r) = k(r, c);
      const Eigen::VectorXcd w = l2.adjoint() * v;
      Matrix kd(n2, n2);
      for (Index c = 0; c < n2; ++c)
        for (Index r = 0; r < n2; ++r) kd(r, c) = w(c * n2 + r);
      const auto ev = jacobi_eigenvalues(kd);
      best = std::max(best, ev.back());
    }
  }
  return best;
}

Matrix cesaro_average(const Matrix& l, int n) {
  Matrix power = Matrix::Identity(l.rows(), l.cols());
  Matrix sum = Matrix::Zero(l.rows(), l.cols());
  for (int k = 1; k <= n; ++k) {
    power = l * power;
    sum += power;
  }
  return sum / static_cast<double>(n);
}

double shannon_nats(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

Channel random_channel(Index d_in, Index d_out, Index rank, Rng& rng) {
  // Columns of a random unitary on C^{d_out * rank} restricted to the
  // first d_in columns form an isometry V; K_a are its row blocks.
  rank = std::max(rank, (d_in + d_out - 1) / d_out);
  const Index big = d_out * rank;
  const Matrix u = random_unitary(big, rng);
  std::vector<Matrix> ops;
  for (Index a = 0; a < rank; ++a) {
    Matrix k = Matrix::Zero(d_out, d_in);
    for (Index r = 0; r < d_out; ++r)
      for (Index c = 0; c < d_in; ++c) k(r, c) = u(a * d_out + r, c);
    ops.push_back(k);
  }
  return Channel::from_kraus(std::move(ops));
}

}  // namespace chan_atlas::oracle
