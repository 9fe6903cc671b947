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

#include "chan_atlas/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chan_atlas/image_geometry.hpp"
#include "chan_atlas/kernels.hpp"

namespace chan_atlas {

namespace {

double checked_order(double p) {
  if (!(p >= 1.0)) throw ValidationError("Renyi order must be >= 1");
  if (p > kMaxRenyiOrder) throw ValidationError("Renyi order above 50 is not supported");
  return std::abs(p - 1.0) < 1e-6 ? 1.0 : p;
}

double spectrum_entropy(const RealVector& lambda, double p) {
  if (p == 1.0) {
    double h = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) {
      const double l = lambda(i);
      if (l > 0.0) h -= l * std::log(l);
    }
    return std::max(h, 0.0);
  }
  double s = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) s += std::pow(std::max(lambda(i), 0.0), p);
  return std::max(std::log(s) / (1.0 - p), 0.0);
}

}  // namespace

double renyi_entropy(const RealVector& probabilities, double p) {
  return spectrum_entropy(probabilities, checked_order(p));
}

double renyi_entropy(const DensityMatrix& rho, double p) {
  return spectrum_entropy(eigh(rho.matrix()).values, checked_order(p));
}

// ---------------------------------------------------------------------------
// Minimum output entropy

namespace {

class OutputEntropy {
 public:
  OutputEntropy(const Channel& t, double p) : t_(t), dual_(t), p_(p) {}

  double operator()(const Vector& x) const {
    return spectrum_entropy(eigh(output(x)).values, p_);
  }

  /// Tangent gradient at unit x: the directional derivative along delta is
  /// Re <delta, g>.
  Vector gradient(const Vector& x) const {
    const HermitianEigen e = eigh(output(x));
    Vector g;
    if (p_ == 1.0 && e.values(0) < 1e-12) {
      g = finite_difference(x);
    } else {
      RealVector f(e.values.size());
      double s = 0.0;
      if (p_ != 1.0) {
        for (Index i = 0; i < f.size(); ++i) s += std::pow(std::max(e.values(i), 0.0), p_);
      }
      for (Index i = 0; i < f.size(); ++i) {
        const double l = std::max(e.values(i), 0.0);
        f(i) = p_ == 1.0 ? -(std::log(l) + 1.0) : p_ / ((1.0 - p_) * s) * std::pow(l, p_ - 1.0);
      }
      const Matrix gm = e.vectors * f.cast<Complex>().asDiagonal() * e.vectors.adjoint();
      g = 2.0 * (dual_(gm) * x);
    }
    return g - x.dot(g).real() * x;
  }

 private:
  Matrix output(const Vector& x) const { return hermitian_part(t_.apply(Matrix(x * x.adjoint()))); }

  Vector finite_difference(const Vector& x) const {
    constexpr double h = 1e-6;
    Vector g(x.size());
    for (Index k = 0; k < x.size(); ++k) {
      double part[2];
      for (int c = 0; c < 2; ++c) {
        Vector dx = Vector::Zero(x.size());
        dx(k) = c == 0 ? Complex(h, 0.0) : Complex(0.0, h);
        part[c] = ((*this)((x + dx).normalized()) - (*this)((x - dx).normalized())) / (2.0 * h);
      }
      g(k) = Complex(part[0], part[1]);
    }
    return g;
  }

  const Channel& t_;
  DualMap dual_;
  double p_;
};

struct Descent {
  Vector x;
  double value = 0.0;
  double gradient_norm = 0.0;
};

Descent descend(const OutputEntropy& f, Vector x, int max_iterations) {
  x.normalize();
  double fx = f(x);
  double step = 1.0;
  Vector g = f.gradient(x);
  for (int it = 0; it < max_iterations; ++it) {
    const double gn2 = g.squaredNorm();
    if (gn2 < 1e-24) break;
    step = std::min(2.0 * step, 16.0);
    bool accepted = false;
    Vector y;
    double fy = fx;
    for (int bt = 0; bt < 60; ++bt) {
      y = (x - step * g).normalized();
      fy = f(y);
      if (fy <= fx - 1e-4 * step * gn2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double drop = fx - fy;
    x = y;
    fx = fy;
    g = f.gradient(x);
    if (drop < 1e-16) break;
  }
  return {x, fx, g.norm()};
}

Vector bloch_pure_vector(double theta, double phi) {
  Vector x(2);
  x << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return x;
}

/// Best point of a theta/phi grid over the qubit input sphere.
Vector bloch_grid_minimum(const Channel& t, double p, int n) {
  const auto& s = channels::pauli();
  std::array<Matrix, 4> parts;
  parts[0] = hermitian_part(t.apply(Matrix(Matrix::Identity(2, 2) / 2.0)));
  for (int j = 0; j < 3; ++j) parts[static_cast<std::size_t>(j + 1)] = hermitian_part(t.apply(Matrix(s[static_cast<std::size_t>(j)] / 2.0)));

  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<double> bx(count), by(count), bz(count), theta(count), phi(count);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
      theta[k] = std::numbers::pi * i / (n - 1);
      phi[k] = 2.0 * std::numbers::pi * j / n;
      bx[k] = std::sin(theta[k]) * std::cos(phi[k]);
      by[k] = std::sin(theta[k]) * std::sin(phi[k]);
      bz[k] = std::cos(theta[k]);
    }
  }
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  if (t.d_out() == 2) {
    kernels::QubitAffine map;
    for (int j = 0; j < 4; ++j) {
      const Matrix& m = parts[static_cast<std::size_t>(j)];
      map.coef[0][j] = m(0, 0).real();
      map.coef[1][j] = m(1, 1).real();
      map.coef[2][j] = m(0, 1).real();
      map.coef[3][j] = m(0, 1).imag();
    }
    std::vector<double> lo(count), hi(count);
    kernels::qubit_affine_spectra(map, bx, by, bz, lo, hi);
    RealVector lambda(2);
    for (std::size_t k = 0; k < count; ++k) {
      lambda << lo[k], hi[k];
      const double h = spectrum_entropy(lambda, p);
      if (h < best_value) {
        best_value = h;
        best = k;
      }
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const Matrix m = parts[0] + bx[k] * parts[1] + by[k] * parts[2] + bz[k] * parts[3];
      const Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
      const double h = spectrum_entropy(es.eigenvalues(), p);
      if (h < best_value) {
        best_value = h;
        best = k;
      }
    }
  }
  return bloch_pure_vector(theta[best], phi[best]);
}

void require_channel(const Channel& t, const char* what) {
  const CptpReport r = verify_cptp(t);
  if (!r.cptp) throw ValidationError(std::string(what) + " requires a CPTP channel: " + r.description);
}

}  // namespace

EntropyResult min_output_entropy(const Channel& t, double p, std::uint64_t seed,
                                 const EntropyOptions& opts) {
  p = checked_order(p);
  require_channel(t, "min_output_entropy");
  const OutputEntropy f(t, p);
  const Index d = t.d_in();

  std::vector<Vector> starts = opts.starts;
  if (opts.bloch_grid && d == 2) {
    const int n = opts.grid_points > 0 ? opts.grid_points : (t.d_out() == 2 ? 1000 : 200);
    starts.push_back(bloch_grid_minimum(t, p, n));
  }
  for (int r = 0; r < opts.restarts; ++r) {
    if (r < d && r < opts.restarts / 2) {
      starts.push_back(basis_vector(d, r));
    } else {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
      starts.push_back(random_unit_vector(d, rng));
    }
  }

  std::optional<Descent> best;
  for (const Vector& s : starts) {
    if (s.size() != d) throw DimensionError("min_output_entropy: start vector size");
    Descent run = descend(f, s, opts.max_iterations);
    if (!best || run.value < best->value) best = std::move(run);
  }
  EntropyResult out;
  out.p = p;
  out.minimizer = PureState::from(best->x.normalized());
  out.value = f(out.minimizer.amplitudes());
  out.gradient_norm = best->gradient_norm;
  out.restarts_used = static_cast<int>(starts.size());
  out.converged = out.gradient_norm < 1e-8 || out.value < 1e-10;
  return out;
}

std::string_view to_string(GapKind k) {
  return k == GapKind::kEntropyAdditivity ? "entropy_additivity" : "image_additivity";
}

GapReport entropy_additivity_gap(const Channel& t1, const Channel& t2, double p,
                                 std::uint64_t seed, const EntropyOptions& opts) {
  const EntropyResult a = min_output_entropy(t1, p, derive_seed(seed, 1), opts);
  const EntropyResult b = min_output_entropy(t2, p, derive_seed(seed, 2), opts);
  const Channel joint_channel = tensor(t1, t2);
  EntropyOptions joint_opts = opts;
  joint_opts.starts.clear();
  joint_opts.starts.push_back(kron(a.minimizer.amplitudes(), b.minimizer.amplitudes()));
  const EntropyResult j = min_output_entropy(joint_channel, p, derive_seed(seed, 3), joint_opts);

  GapReport g;
  g.kind = GapKind::kEntropyAdditivity;
  g.first = a.value;
  g.second = b.value;
  g.joint = j.value;
  g.gap = a.value + b.value - j.value;
  g.state = j.minimizer.amplitudes();
  g.n_samples = j.restarts_used;
  g.seed = seed;
  const Matrix out = joint_channel.apply(Matrix(*g.state * g.state->adjoint()));
  g.certified = std::abs(renyi_entropy(DensityMatrix::from(out, 1e-8), p) - j.value) <= 1e-9;
  return g;
}

// ---------------------------------------------------------------------------
// Image additivity

std::optional<Matrix> ppt_witness_direction(const Matrix& state, Index d1, Index d2) {
  const HermitianEigen e = eigh(partial_transpose_second(hermitian_part(state), d1, d2));
  if (e.values(0) >= 0.0) return std::nullopt;
  const Vector v = e.vectors.col(0);
  Matrix w = -partial_transpose_second(Matrix(v * v.adjoint()), d1, d2);
  return Matrix(w / w.norm());
}

ProductSupport product_support(const Channel& t1, const Channel& t2, const Matrix& h,
                               std::uint64_t seed, const ImageGapOptions& opts,
                               const std::vector<Vector>& x_starts) {
  const Index o1 = t1.d_out();
  const Index o2 = t2.d_out();
  if (h.rows() != o1 * o2 || h.cols() != o1 * o2) throw DimensionError("product_support: direction size");
  const DualMap d1 = dual(t1);
  const DualMap d2 = dual(t2);
  const Matrix id1 = Matrix::Identity(o1, o1);
  const Matrix id2 = Matrix::Identity(o2, o2);

  auto best_x = [&](const Vector& y, double& value) {
    const Matrix tau = t2.apply(Matrix(y * y.adjoint()));
    const HermitianEigen e = eigh(d1(partial_trace_second(h * kron(id1, tau), o1, o2)));
    value = e.values(e.values.size() - 1);
    return Vector(e.vectors.col(e.vectors.cols() - 1));
  };
  auto best_y = [&](const Vector& x, double& value) {
    const Matrix tau = t1.apply(Matrix(x * x.adjoint()));
    const HermitianEigen e = eigh(d2(partial_trace_first(h * kron(tau, id2), o1, o2)));
    value = e.values(e.values.size() - 1);
    return Vector(e.vectors.col(e.vectors.cols() - 1));
  };
  auto run = [&](Vector x, Vector y, bool from_x) {
    double value = -std::numeric_limits<double>::infinity();
    double v = 0.0;
    if (from_x) {
      y = best_y(x, value);
    }
    for (int round = 0; round < opts.rounds; ++round) {
      x = best_x(y, v);
      y = best_y(x, v);
      const bool done = v - value < opts.improvement_tol;
      value = std::max(value, v);
      if (done) break;
    }
    return ProductSupport{value, 0.0, x, y};
  };

  std::vector<ProductSupport> runs;
  Rng rng(seed);
  for (int r = 0; r < opts.restarts; ++r) {
    const Vector y = random_unit_vector(t2.d_in(), rng);
    runs.push_back(run(Vector(), y, false));
  }
  for (Index i = 0; i < t2.d_in(); ++i) runs.push_back(run(Vector(), basis_vector(t2.d_in(), i), false));
  for (Index i = 0; i < t1.d_in(); ++i) runs.push_back(run(basis_vector(t1.d_in(), i), Vector(), true));
  for (const auto& x : x_starts) runs.push_back(run(x, Vector(), true));

  ProductSupport best = runs.front();
  double lowest = best.value;
  for (const auto& r : runs) {
    if (r.value > best.value) best = r;
    lowest = std::min(lowest, r.value);
  }
  best.spread = best.value - lowest;
  return best;
}

GapReport image_additivity_gap(const Channel& t1, const Channel& t2, std::uint64_t seed,
                               const ImageGapOptions& opts) {
  const Channel joint = tensor(t1, t2);
  const DualMap joint_dual = dual(joint);
  const Index o = joint.d_out();

  std::vector<Matrix> directions;
  Rng rng(derive_seed(seed, 0));
  for (int n = 0; n < opts.n_directions; ++n) directions.push_back(random_hermitian(o, rng));
  for (const auto& h : opts.extra_directions) directions.push_back(h);
  if (opts.entanglement_witness && t1.d_in() == t2.d_in()) {
    const Vector psi = maximally_entangled(t1.d_in());
    if (auto w = ppt_witness_direction(joint.apply(Matrix(psi * psi.adjoint())), t1.d_out(), t2.d_out())) {
      directions.push_back(*w);
    }
  }

  GapReport g;
  g.kind = GapKind::kImageAdditivity;
  g.seed = seed;
  g.n_samples = static_cast<int>(directions.size());
  g.gap = -std::numeric_limits<double>::infinity();
  g.min_difference = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Matrix& h = directions[k];
    const SupportValue lhs = support_function(joint_dual, h);
    // Schmidt vectors of the joint maximizer are natural product starts.
    Matrix z(t1.d_in(), t2.d_in());
    for (Index i = 0; i < t1.d_in(); ++i)
      for (Index j = 0; j < t2.d_in(); ++j) z(i, j) = lhs.maximizer(i * t2.d_in() + j);
    const Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeFullU);
    std::vector<Vector> x_starts;
    for (Index c = 0; c < svd.matrixU().cols(); ++c) x_starts.push_back(svd.matrixU().col(c));

    const ProductSupport rhs = product_support(t1, t2, h, derive_seed(seed, 1 + k), opts, x_starts);
    const double diff = lhs.value - rhs.value;
    g.min_difference = std::min(g.min_difference, diff);
    if (diff > g.gap) {
      g.gap = diff;
      g.direction = h;
      g.lhs = lhs.value;
      g.rhs = rhs.value;
      g.restart_spread = rhs.spread;
    }
  }
  g.certified = g.gap > opts.gap_tol && g.restart_spread <= opts.agreement_tol;
  return g;
}

// ---------------------------------------------------------------------------
// Hiding construction

HidingResult build_hiding_channel(const Channel& t2, const std::vector<Matrix>& vertices,
                                  std::uint64_t seed) {
  if (vertices.empty()) throw ValidationError("build_hiding_channel: no vertices");
  const Index n = t2.d_out();
  for (const auto& v : vertices) {
    if (v.rows() != n || v.cols() != n) throw DimensionError("build_hiding_channel: vertex size");
    (void)DensityMatrix::from(v);
  }
  const DualMap d2 = dual(t2);
  std::vector<Matrix> directions;
  Rng rng(derive_seed(seed, 7));
  for (int k = 0; k < 200; ++k) directions.push_back(random_hermitian(n, rng));
  for (const auto& v : vertices) {
    const Matrix h = -(v - Matrix::Identity(n, n) / static_cast<double>(n));
    if (h.norm() > 1e-12) directions.push_back(h / h.norm());
  }

  HidingResult r;
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& h : directions) {
    double hull = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) hull = std::max(hull, (h * v).trace().real());
    const double excess = support_function(d2, h).value - hull;
    if (excess > r.max_excess) {
      r.max_excess = excess;
      r.direction = h;
    }
  }
  r.accepted = r.max_excess <= 1e-8;
  if (r.accepted) {
    const auto k = static_cast<Index>(vertices.size());
    std::vector<Vector> basis;
    for (Index i = 0; i < k; ++i) basis.push_back(basis_vector(k, i));
    r.channel = direct_sum(Channel::from_cq(std::move(basis), vertices), t2);
  }
  return r;
}

}  // namespace chan_atlas
