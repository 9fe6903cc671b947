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

#include "chan_atlas/fixed_points.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace chan_atlas {

TransferMatrix transfer_matrix(const Channel& t) {
  if (t.d_in() != t.d_out()) throw DimensionError("transfer_matrix needs d_in = d_out");
  return {t.d_in(), t.transfer()};
}

namespace {

// Largest operator norm of unvec(column) over the columns of m.
double column_distance(const Matrix& m, Index d) {
  double worst = 0.0;
  for (Index c = 0; c < m.cols(); ++c) worst = std::max(worst, operator_norm(unvec(m.col(c), d, d)));
  return worst;
}

Matrix null_space(const Matrix& a, double tol) {
  const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

double kernel_tolerance(const Matrix& l) {
  const Eigen::BDCSVD<Matrix> svd(l);
  return 1e-8 * std::max(1.0, svd.singularValues()(0));
}

Matrix fixed_kernel(const Matrix& l) {
  const Matrix id = Matrix::Identity(l.rows(), l.cols());
  return null_space(l - id, kernel_tolerance(l));
}

Channel channel_from_transfer(const Matrix& p, Index d) {
  return Channel::from_linear_map(d, d, [&](const Matrix& x) { return unvec(p * vec(x), d, d); });
}

// Orthonormal basis (columns) of the span of real vectors.
RealMatrix real_span(const RealMatrix& cols, double rel_tol) {
  if (cols.cols() == 0) return RealMatrix(cols.rows(), 0);
  const Eigen::JacobiSVD<RealMatrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * std::max(1.0, sv(0))) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Matrix cesaro_average_doubling(const Matrix& l, double tol, int max_doublings, int* terms) {
  Matrix avg = l;
  Matrix power = l;
  int n = 1;
  for (int k = 0; k < max_doublings; ++k) {
    const Matrix next = 0.5 * (avg + power * avg);
    power = power * power;
    n *= 2;
    const double diff = operator_norm(next - avg);
    avg = next;
    if (diff < tol) break;
  }
  if (terms) *terms = n;
  return avg;
}

CesaroProjection cesaro_projection_details(const Channel& t) {
  const TransferMatrix tm = transfer_matrix(t);
  const Index d = tm.d;
  const Matrix& l = tm.matrix;
  const Matrix right = fixed_kernel(l);
  const Matrix left = fixed_kernel(Matrix(l.adjoint()));

  Matrix p;
  std::string method = "spectral";
  int terms = 0;
  const Matrix overlap = left.adjoint() * right;
  bool spectral = right.cols() > 0 && right.cols() == left.cols();
  if (spectral) {
    const Eigen::JacobiSVD<Matrix> svd(overlap);
    spectral = svd.singularValues().minCoeff() > 1e-6;
  }
  if (spectral) {
    p = right * overlap.inverse() * left.adjoint();
  } else {
    method = "cesaro";
    p = cesaro_average_doubling(l, 1e-10, 27, &terms);
  }

  const double compose = std::max(column_distance(l * p - p, d), column_distance(p * l - p, d));
  const double idem = column_distance(p * p - p, d);
  if (compose > 1e-8 || idem > 1e-8) {
    std::ostringstream os;
    os << "Cesaro projection fails the projection identities (compose " << compose
       << ", idempotent " << idem << ")";
    throw FixedPointError(os.str(), compose, idem);
  }
  Channel tinf = channel_from_transfer(p, d);
  Tolerances tol;
  tol.psd = 1e-8;
  tol.trace = 1e-8;
  const CptpReport r = verify_cptp(tinf, tol);
  if (!r.cptp) throw FixedPointError("Cesaro projection is not CPTP: " + r.description, compose, idem);
  return {std::move(tinf), p, method, terms, compose, idem};
}

Channel cesaro_projection(const Channel& t) { return cesaro_projection_details(t).tinf; }

// ---------------------------------------------------------------------------
// Block structure

FixedPointStructure fixed_point_structure(const Channel& t, std::uint64_t seed) {
  CesaroProjection cp = cesaro_projection_details(t);
  const Index d = t.d_in();
  FixedPointStructure s{cp.tinf, {}, Matrix(), {}, false, ""};

  // Hermitian basis of ker(L - 1); the kernel is closed under adjoints.
  const Matrix kernel = fixed_kernel(t.transfer());
  RealMatrix coords(d * d, 2 * kernel.cols());
  for (Index c = 0; c < kernel.cols(); ++c) {
    const Matrix x = unvec(kernel.col(c), d, d);
    coords.col(2 * c) = hermitian_coordinates(hermitian_part(x));
    coords.col(2 * c + 1) = hermitian_coordinates(hermitian_part(Complex(0, 1) * x));
  }
  const RealMatrix span = real_span(coords, 1e-8);
  for (Index c = 0; c < span.cols(); ++c) s.f_basis.push_back(hermitian_from_coordinates(span.col(c), d));

  const Matrix rho = hermitian_part(cp.tinf.apply(Matrix(Matrix::Identity(d, d))));
  const HermitianEigen re = eigh(rho);
  Index first = 0;
  while (first < d && re.values(first) <= 1e-9) ++first;
  s.v_basis = re.vectors.rightCols(d - first);
  const Matrix& b = s.v_basis;
  const Index n_v = b.cols();
  if (n_v == 0 || s.f_basis.empty()) {
    s.reason = "empty fixed-point space";
    return s;
  }

  // rho^{-1/2} F rho^{-1/2} on V_T is a *-algebra sum_i M_{d_i} (x) 1.
  const Matrix rho_v = hermitian_part(b.adjoint() * rho * b);
  const Matrix inv_sqrt = hermitian_function(rho_v, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<Matrix> alg;
  for (const auto& f : s.f_basis) alg.push_back(hermitian_part(inv_sqrt * b.adjoint() * f * b * inv_sqrt));
  const auto n = static_cast<Index>(alg.size());

  // Center: real combinations commuting with every element.
  RealMatrix comm(2 * n_v * n_v * n, n);
  for (Index k = 0; k < n; ++k) {
    RealVector col(2 * n_v * n_v * n);
    for (Index j = 0; j < n; ++j) {
      const auto& a = alg[static_cast<std::size_t>(k)];
      const auto& c = alg[static_cast<std::size_t>(j)];
      const Vector v = vec(Matrix(a * c - c * a));
      col.segment(2 * n_v * n_v * j, n_v * n_v) = v.real();
      col.segment(2 * n_v * n_v * j + n_v * n_v, n_v * n_v) = v.imag();
    }
    comm.col(k) = col;
  }
  const Eigen::JacobiSVD<RealMatrix> csvd(comm, Eigen::ComputeFullV);
  Index rank = 0;
  const auto& csv = csvd.singularValues();
  while (rank < csv.size() && csv(rank) > 1e-7 * std::max(1.0, csv(0))) ++rank;
  const RealMatrix center = csvd.matrixV().rightCols(n - rank);

  Rng rng(derive_seed(seed, 11));
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Matrix> clusters;
  for (int draw = 0; draw < 5; ++draw) {
    Matrix z = Matrix::Zero(n_v, n_v);
    for (Index c = 0; c < center.cols(); ++c) {
      const double w = g(rng);
      for (Index k = 0; k < n; ++k) z += w * center(k, c) * alg[static_cast<std::size_t>(k)];
    }
    const HermitianEigen e = eigh(z, 1e-7);
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    std::vector<Matrix> found;
    Index start = 0;
    for (Index i = 1; i <= n_v; ++i) {
      if (i == n_v || e.values(i) - e.values(i - 1) > 1e-6 * scale) {
        found.push_back(e.vectors.middleCols(start, i - start));
        start = i;
      }
    }
    if (found.size() > clusters.size()) clusters = std::move(found);
  }

  Index total = 0;
  for (const Matrix& w : clusters) {
    RealMatrix local(w.cols() * w.cols(), n);
    for (Index k = 0; k < n; ++k) {
      local.col(k) = hermitian_coordinates(Matrix(w.adjoint() * alg[static_cast<std::size_t>(k)] * w));
    }
    const Index dim2 = real_span(local, 1e-7).cols();
    const auto di = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim2))));
    if (di * di != dim2 || di == 0 || w.cols() % di != 0) {
      s.reason = "block algebra is not a full matrix algebra";
      return s;
    }
    const Index mi = w.cols() / di;

    // A minimal projection e e^* (x) 1 of the block isolates sigma_i.
    Matrix h = Matrix::Zero(w.cols(), w.cols());
    for (Index k = 0; k < n; ++k) h += g(rng) * Matrix(w.adjoint() * alg[static_cast<std::size_t>(k)] * w);
    const HermitianEigen he = eigh(h, 1e-7);
    const double hs = std::max(1.0, he.values.cwiseAbs().maxCoeff());
    Index top = 1;
    while (top < w.cols() && he.values(w.cols() - 1) - he.values(w.cols() - 1 - top) <= 1e-6 * hs) ++top;
    if (top != mi) {
      s.reason = "minimal projection rank does not match the block multiplicity";
      return s;
    }
    const Matrix e = b * w * he.vectors.rightCols(mi);
    FixedPointBlock blk;
    blk.dim = di;
    blk.multiplicity = mi;
    blk.projector = b * w * w.adjoint() * b.adjoint();
    Matrix compact = hermitian_part(e.adjoint() * rho * e);
    compact /= compact.trace().real();
    blk.compact_state = compact;
    blk.state = hermitian_part(e * compact * e.adjoint());
    s.blocks.push_back(std::move(blk));
    total += di * di;
  }
  if (total != n) {
    s.reason = "block dimensions do not account for the fixed-point space";
    return s;
  }
  s.resolved = true;
  return s;
}

EbFixedPointReport verify_eb_fixed_point_theorem(const Channel& t, std::uint64_t seed) {
  const ClassVerdict eb = is_entanglement_breaking(t);
  if (eb.status != Verdict::kYes) {
    throw ValidationError("verify_eb_fixed_point_theorem: entanglement breaking not established (" +
                          std::string(to_string(eb.status)) + ")");
  }
  EbFixedPointReport r{fixed_point_structure(t, seed), false, {}, 0.0, false};
  r.blocks_trivial = r.structure.resolved &&
                     std::all_of(r.structure.blocks.begin(), r.structure.blocks.end(),
                                 [](const FixedPointBlock& b) { return b.dim == 1; });
  if (!r.blocks_trivial) {
    r.ecq.reason = r.structure.resolved ? "a block has d_i > 1" : r.structure.reason;
    return r;
  }
  std::vector<Matrix> vertices;
  for (const auto& b : r.structure.blocks) vertices.push_back(b.state);
  r.ecq = reconstruct_ecq(r.structure.tinf, vertices);
  for (const auto& m : r.ecq.witness.effects) {
    r.max_norm_deviation = std::max(r.max_norm_deviation, std::abs(max_eigenvalue(m) - 1.0));
  }
  r.holds = r.ecq.status == Verdict::kYes && r.max_norm_deviation <= 1e-7;
  return r;
}

}  // namespace chan_atlas
