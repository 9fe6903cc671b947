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

#include "chan_atlas/image_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chan_atlas/kernels.hpp"

namespace chan_atlas {

namespace {

void require_hermitian(const Matrix& h, Index d, const char* what) {
  if (h.rows() != d || h.cols() != d) throw DimensionError(std::string(what) + ": wrong size");
  if (hermiticity_defect(h) > 1e-10) throw ValidationError(std::string(what) + ": not Hermitian");
}

// Trace distance test with cheap Frobenius bounds on either side:
// ||X||_2 <= ||X||_1 <= sqrt(rank) ||X||_2.
bool within_trace_distance(const Matrix& a, const Matrix& b, double tol) {
  const Matrix diff = a - b;
  const double f = diff.norm();
  if (f > tol) return false;
  if (std::sqrt(static_cast<double>(diff.rows())) * f <= tol) return true;
  return trace_norm(diff) <= tol;
}

bool coordinates_less(const Matrix& a, const Matrix& b) {
  const RealVector ca = hermitian_coordinates(a);
  const RealVector cb = hermitian_coordinates(b);
  for (Index i = 0; i < ca.size(); ++i) {
    const double ra = std::round(ca(i) * 1e6);
    const double rb = std::round(cb(i) * 1e6);
    if (ra != rb) return ra < rb;
  }
  return false;
}

// Restriction of T to the span of the columns of `basis`.
Channel compress(const Channel& t, const Matrix& basis) {
  if (verify_cptp(t).min_choi_eigenvalue >= -1e-9) {
    std::vector<Matrix> ops;
    for (const auto& k : kraus_operators(t, Tolerances{1e-9, 1e-9, 1e-10})) ops.push_back(k * basis);
    return Channel::from_kraus(std::move(ops));
  }
  return Channel::from_linear_map(basis.cols(), t.d_out(), [&](const Matrix& x) {
    return t.apply(Matrix(basis * x * basis.adjoint()));
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Support function

SupportValue support_function(const DualMap& t_dual, const Matrix& h) {
  require_hermitian(h, t_dual.d_out(), "support direction");
  const HermitianEigen e = eigh(t_dual(h));
  const Index top = e.values.size() - 1;
  return {e.values(top), e.vectors.col(top)};
}

SupportValue support_function(const Channel& t, const Matrix& h) {
  return support_function(dual(t), h);
}

double sampled_support(const Channel& t, const Matrix& h, std::size_t samples, Rng& rng) {
  require_hermitian(h, t.d_out(), "support direction");
  const Matrix a = hermitian_part(dual(t)(h));
  kernels::VectorBatch xs(t.d_in(), samples);
  for (std::size_t k = 0; k < samples; ++k) xs.set(k, random_unit_vector(t.d_in(), rng));
  std::vector<double> values(samples);
  kernels::hermitian_quadratic_forms(a, xs, values);
  return *std::max_element(values.begin(), values.end());
}

// ---------------------------------------------------------------------------
// Bloch picture

Eigen::Vector3d bloch_vector(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("bloch_vector: not a qubit");
  const auto& s = channels::pauli();
  return {(s[0] * rho).trace().real(), (s[1] * rho).trace().real(),
          (s[2] * rho).trace().real()};
}

Matrix bloch_state(const Eigen::Vector3d& r) {
  const auto& s = channels::pauli();
  return 0.5 * (Matrix(Matrix::Identity(2, 2)) + r(0) * s[0] + r(1) * s[1] + r(2) * s[2]);
}

BlochAffineMap bloch_map(const Channel& t) {
  if (t.d_in() != 2 || t.d_out() != 2) throw DimensionError("bloch_map needs a qubit channel");
  const auto& s = channels::pauli();
  BlochAffineMap m;
  m.shift = bloch_vector(t.apply(Matrix(Matrix::Identity(2, 2) / 2.0)));
  for (int j = 0; j < 3; ++j) {
    const Matrix out = t.apply(s[j]);
    for (int i = 0; i < 3; ++i) m.linear(i, j) = 0.5 * (s[i] * out).trace().real();
  }
  return m;
}

BlochSpectrum bloch_image_spectrum(const BlochAffineMap& map) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(map.linear);
  const Eigen::Vector3d sv = svd.singularValues();
  return {{sv(0), sv(1), sv(2)}, map.shift};
}

FujiwaraAlgoet fujiwara_algoet_check(const std::array<double, 3>& l, double tol) {
  FujiwaraAlgoet r;
  r.slack_sum = (1.0 + l[2]) - std::abs(l[0] + l[1]);
  r.slack_difference = (1.0 - l[2]) - std::abs(l[0] - l[1]);
  r.completely_positive = r.slack_sum >= -tol && r.slack_difference >= -tol;
  return r;
}

std::array<double, 4> pauli_weights(const std::array<double, 3>& l) {
  return {0.25 * (1.0 + l[0] + l[1] + l[2]), 0.25 * (1.0 + l[0] - l[1] - l[2]),
          0.25 * (1.0 - l[0] + l[1] - l[2]), 0.25 * (1.0 - l[0] - l[1] + l[2])};
}

// ---------------------------------------------------------------------------
// Vertices

std::vector<VertexRecord> find_vertices(const Channel& t, std::uint64_t seed,
                                        const VertexSearchOptions& opts) {
  struct Cluster {
    Matrix rep;
    int hits = 0;
    std::vector<Matrix> spaces;
    std::vector<Matrix> directions;
  };

  const DualMap td = dual(t);
  const Index d = t.d_in();
  Rng rng(seed);
  std::vector<Cluster> clusters;

  for (int n = 0; n < opts.n_directions; ++n) {
    const Matrix h = random_hermitian(t.d_out(), rng);
    const HermitianEigen e = eigh(td(h));
    const double top = e.values(d - 1);
    Index mult = 1;
    while (mult < d && e.values(d - 1 - mult) >= top - opts.degeneracy_tol) ++mult;
    const Matrix space = e.vectors.rightCols(mult);

    Matrix out = t.apply(Matrix(space.col(0) * space.col(0).adjoint()));
    if (mult > 1) {
      // Keep a degenerate maximizer only when T is constant on the unit
      // sphere of the eigenspace.
      bool constant = true;
      for (Index a = 0; a < mult && constant; ++a) {
        for (Index b = 0; b < mult && constant; ++b) {
          const Matrix img = t.apply(Matrix(space.col(a) * space.col(b).adjoint()));
          const Matrix expect = a == b ? out : Matrix::Zero(out.rows(), out.cols());
          constant = (img - expect).norm() <= opts.membership_tol;
        }
      }
      if (!constant) continue;
    }

    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return within_trace_distance(c.rep, out, opts.cluster_tol);
    });
    if (it == clusters.end()) {
      clusters.push_back({out, 0, {}, {}});
      it = clusters.end() - 1;
    }
    ++it->hits;
    it->spaces.push_back(space);
    if (it->directions.size() < 8) it->directions.push_back(h);
  }

  std::vector<VertexRecord> vertices;
  for (const Cluster& c : clusters) {
    if (c.hits < opts.min_hits) continue;
    const Matrix v = subspace_intersection(c.spaces, d);
    if (v.cols() == 0) continue;
    const Matrix sigma = hermitian_part(t.apply(projector(v))) / static_cast<double>(v.cols());
    bool member = true;
    for (Index a = 0; a < v.cols() && member; ++a) {
      for (Index b = 0; b < v.cols() && member; ++b) {
        const Matrix img = t.apply(Matrix(v.col(a) * v.col(b).adjoint()));
        const Matrix expect = a == b ? sigma : Matrix::Zero(sigma.rows(), sigma.cols());
        member = operator_norm(img - expect) <= opts.membership_tol;
      }
    }
    if (!member) continue;
    vertices.push_back({sigma, v, c.hits, c.directions});
  }
  std::sort(vertices.begin(), vertices.end(), [](const VertexRecord& a, const VertexRecord& b) {
    return coordinates_less(a.state, b.state);
  });
  return vertices;
}

std::string_view to_string(PolytopeVerdict v) {
  switch (v) {
    case PolytopeVerdict::kPolytopic: return "Polytopic";
    case PolytopeVerdict::kNotPolytopic: return "NotPolytopic";
    case PolytopeVerdict::kIndeterminate: break;
  }
  return "Indeterminate";
}

// ---------------------------------------------------------------------------
// Decomposition

PolytopicDecomposition polytopic_decompose(const Channel& t, std::uint64_t seed,
                                           const DecomposeOptions& opts) {
  PolytopicDecomposition dec;
  const Index d = t.d_in();
  const DualMap td = dual(t);
  dec.vertices = find_vertices(t, derive_seed(seed, 1), opts.search);

  Rng rng(derive_seed(seed, 2));
  std::vector<Matrix> checks;
  for (int n = 0; n < opts.n_check_directions; ++n) checks.push_back(random_hermitian(t.d_out(), rng));

  if (dec.vertices.empty()) {
    dec.verdict = PolytopeVerdict::kNotPolytopic;
    dec.w_basis = Matrix::Identity(d, d);
    dec.max_support_excess = std::numeric_limits<double>::infinity();
    dec.witness_direction = checks.front();
    dec.reason = "no vertices detected: the image has no exposed point hit by a "
                 "positive fraction of directions";
    return dec;
  }

  Index total = 0;
  for (const auto& v : dec.vertices) total += v.preimage_basis.cols();
  Matrix vbasis(d, total);
  std::vector<Vector> cq_basis;
  std::vector<Matrix> cq_states;
  Index col = 0;
  for (const auto& v : dec.vertices) {
    for (Index c = 0; c < v.preimage_basis.cols(); ++c) {
      vbasis.col(col++) = v.preimage_basis.col(c);
      cq_basis.push_back(v.preimage_basis.col(c));
      cq_states.push_back(v.state);
    }
  }
  if ((vbasis.adjoint() * vbasis - Matrix::Identity(total, total)).norm() > 1e-8) {
    dec.verdict = PolytopeVerdict::kIndeterminate;
    dec.w_basis = Matrix::Zero(d, 0);
    dec.reason = "preimage subspaces of distinct vertices are not orthogonal";
    return dec;
  }
  dec.w_basis = total < d ? orthogonal_complement(vbasis, d) : Matrix::Zero(d, 0);
  dec.t1 = Channel::from_cq(std::move(cq_basis), std::move(cq_states));
  if (dec.w_basis.cols() > 0) dec.t2 = compress(t, dec.w_basis);

  // Support comparison with the hull of the detected vertices.
  double worst = -std::numeric_limits<double>::infinity();
  for (const Matrix& h : checks) {
    const double lhs = eigh(td(h)).values(d - 1);
    double rhs = -std::numeric_limits<double>::infinity();
    for (const auto& v : dec.vertices) rhs = std::max(rhs, (h * v.state).trace().real());
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      dec.witness_direction = h;
    }
  }
  dec.max_support_excess = worst;

  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Matrix e = matrix_unit(d, i, j);
      dec.reconstruction_error =
          std::max(dec.reconstruction_error, operator_norm(t.apply(e) - reassemble(dec, e)));
    }
  }

  dec.min_vertex_separation = std::numeric_limits<double>::infinity();
  if (dec.t2) {
    const DualMap t2d = dual(*dec.t2);
    for (const auto& v : dec.vertices) {
      double best = -std::numeric_limits<double>::infinity();
      for (const Matrix& h : v.exposing_directions) {
        const Matrix hn = h / operator_norm(h);
        const double gap = (hn * v.state).trace().real() - support_function(t2d, hn).value;
        best = std::max(best, gap);
      }
      dec.min_vertex_separation = std::min(dec.min_vertex_separation, best);
    }
  }

  if (worst >= opts.excess_tol) {
    dec.verdict = PolytopeVerdict::kNotPolytopic;
    dec.reason = "support function exceeds the hull of the detected vertices";
  } else if (worst > opts.equal_tol) {
    dec.verdict = PolytopeVerdict::kIndeterminate;
    dec.reason = "support excess between the equality and separation tolerances";
  } else if (dec.reconstruction_error > opts.equal_tol) {
    dec.verdict = PolytopeVerdict::kIndeterminate;
    dec.reason = "block decomposition does not reproduce the channel";
  } else if (dec.min_vertex_separation < opts.separation_tol) {
    dec.verdict = PolytopeVerdict::kIndeterminate;
    dec.reason = "a vertex is not separated from the image of the remainder block";
  } else {
    dec.verdict = PolytopeVerdict::kPolytopic;
    dec.reason = "support function matches the hull of the vertices";
  }
  return dec;
}

Matrix reassemble(const PolytopicDecomposition& dec, const Matrix& rho) {
  if (!dec.t1) throw Error("reassemble: decomposition has no CQ part");
  Matrix out = dec.t1->apply(rho);
  if (dec.t2) out += dec.t2->apply(Matrix(dec.w_basis.adjoint() * rho * dec.w_basis));
  return out;
}

DimensionBound dimension_bound_check(const PolytopicDecomposition& dec, Index d) {
  DimensionBound b;
  b.k = static_cast<Index>(dec.vertices.size());
  b.d = d;
  if (b.k == 0) return b;
  std::vector<Matrix> states;
  for (const auto& v : dec.vertices) states.push_back(v.state);
  b.affine_dimension = affine_dimension(states);
  b.holds = b.affine_dimension <= b.k - 1 && b.k <= d;
  return b;
}

// ---------------------------------------------------------------------------
// Planar boundary

std::vector<BoundaryPoint> image_boundary_2d(const Channel& t, const Matrix& a,
                                             const Matrix& b, int n_points) {
  require_hermitian(a, t.d_out(), "plane axis A");
  require_hermitian(b, t.d_out(), "plane axis B");
  if (n_points < 16) throw ValidationError("image_boundary_2d needs at least 16 points");
  const DualMap td = dual(t);
  std::vector<BoundaryPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / n_points;
    const Matrix h = std::cos(th) * a + std::sin(th) * b;
    const SupportValue s = support_function(td, h);
    const Matrix out = t.apply(Matrix(s.maximizer * s.maximizer.adjoint()));
    pts.push_back({th, (a * out).trace().real(), (b * out).trace().real()});
  }
  return pts;
}

}  // namespace chan_atlas
