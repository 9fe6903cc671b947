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

#include "chan_atlas/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace chan_atlas {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "Yes";
    case Verdict::kNo: return "No";
    case Verdict::kIndeterminate: break;
  }
  return "Indeterminate";
}

Channel EcqCertificate::channel() const {
  return Channel::from_ecq(vectors, remainders, states);
}

Channel EcqCertificate::retraction() const {
  std::vector<Matrix> targets;
  for (const auto& e : vectors) targets.push_back(e * e.adjoint());
  return Channel::from_ecq(vectors, remainders, std::move(targets));
}

namespace {

void require_cptp(const Channel& t, const Tolerances& tol, const char* what) {
  const CptpReport r = verify_cptp(t, tol);
  if (!r.cptp) throw ValidationError(std::string(what) + " requires a CPTP channel: " + r.description);
}

bool ppt_exact(Index d_in, Index d_out) {
  return (d_in == 2 && d_out == 2) || (d_in == 2 && d_out == 3) || (d_in == 3 && d_out == 2);
}

// Product terms read off a measure-prepare style representation; empty when
// the representation does not provide one.
std::vector<SeparableTerm> native_separable_terms(const Channel& t) {
  const double d = static_cast<double>(t.d_in());
  std::vector<SeparableTerm> terms;
  auto add = [&](const Matrix& sigma, const Matrix& effect) {
    terms.push_back({sigma, Matrix(effect.transpose()) / d});
  };
  const auto& rep = t.representation();
  if (const auto* f = std::get_if<PovmForm>(&rep)) {
    for (std::size_t i = 0; i < f->effects.size(); ++i) add(f->states[i], f->effects[i]);
  } else if (const auto* f = std::get_if<EcqForm>(&rep)) {
    for (std::size_t i = 0; i < f->vectors.size(); ++i) {
      add(f->states[i], Matrix(f->vectors[i] * f->vectors[i].adjoint() + f->remainders[i]));
    }
  } else if (const auto* f = std::get_if<CqForm>(&rep)) {
    for (std::size_t i = 0; i < f->basis.size(); ++i) {
      add(f->states[i], Matrix(f->basis[i] * f->basis[i].adjoint()));
    }
  } else if (const auto* f = std::get_if<KrausForm>(&rep)) {
    // Rank-one Kraus operators K = s u v^* give rho -> s^2 <v, rho v> u u^*.
    for (const auto& k : f->operators) {
      Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (sv.size() > 1 && sv(1) > 1e-12 * std::max(1.0, sv(0))) return {};
      if (sv(0) == 0.0) continue;
      const Vector u = svd.matrixU().col(0);
      const Vector v = svd.matrixV().col(0);
      add(u * u.adjoint(), sv(0) * sv(0) * v * v.adjoint());
    }
  }
  return terms;
}

bool terms_reproduce(const std::vector<SeparableTerm>& terms, const Matrix& choi, double tol) {
  if (terms.empty()) return false;
  Matrix sum = Matrix::Zero(choi.rows(), choi.cols());
  for (const auto& term : terms) {
    if (min_eigenvalue(term.output) < -tol || min_eigenvalue(term.input) < -tol) return false;
    sum += kron(term.output, term.input);
  }
  return (sum - choi).norm() <= tol;
}

}  // namespace

double choi_pt_min_eigenvalue(const Channel& t) {
  return min_eigenvalue(partial_transpose_second(hermitian_part(t.choi()), t.d_out(), t.d_in()));
}

// ---------------------------------------------------------------------------
// Entanglement breaking

ClassVerdict is_entanglement_breaking(const Channel& t, const Tolerances& tol) {
  require_cptp(t, tol, "is_entanglement_breaking");
  ClassVerdict v;
  v.tolerance_used = tol.psd;
  const HermitianEigen pt =
      eigh(partial_transpose_second(hermitian_part(t.choi()), t.d_out(), t.d_in()));
  v.witness.eigenvalue = pt.values(0);
  if (pt.values(0) < -tol.psd) {
    v.status = Verdict::kNo;
    v.witness.eigenvector = pt.vectors.col(0);
    v.reason = "partial transpose of the Choi state has a negative eigenvalue";
    return v;
  }
  if (ppt_exact(t.d_in(), t.d_out())) {
    v.status = Verdict::kYes;
    v.reason = "PPT Choi state in a dimension pair where PPT implies separability";
    return v;
  }
  std::vector<SeparableTerm> terms = native_separable_terms(t);
  if (terms_reproduce(terms, hermitian_part(t.choi()), 1e-9)) {
    v.status = Verdict::kYes;
    v.witness.separable_terms = std::move(terms);
    v.reason = "explicit separable decomposition of the Choi state";
    return v;
  }
  if (const auto* ds = std::get_if<DirectSumForm>(&t.representation())) {
    bool all_yes = true;
    for (const Channel& b : ds->blocks) {
      all_yes = all_yes && is_entanglement_breaking(b, tol).status == Verdict::kYes;
    }
    if (all_yes) {
      v.status = Verdict::kYes;
      v.reason = "direct sum of entanglement breaking blocks";
      return v;
    }
  }
  v.status = Verdict::kIndeterminate;
  v.reason = "PPT holds but dimensions exceed the PPT-exact regime and no separable "
             "decomposition is available";
  return v;
}

ClassVerdict is_entanglement_breaking(const Channel& t, const PolytopicDecomposition& dec,
                                      const Tolerances& tol) {
  ClassVerdict v = is_entanglement_breaking(t, tol);
  if (v.status != Verdict::kIndeterminate || !dec.t1 || dec.reconstruction_error > 1e-8) return v;
  if (!dec.t2) {
    v.status = Verdict::kYes;
    v.reason = "channel is classical-quantum on its vertex preimages";
    return v;
  }
  const ClassVerdict rest = is_entanglement_breaking(*dec.t2, tol);
  if (rest.status == Verdict::kYes) {
    v.status = Verdict::kYes;
    v.reason = "CQ block plus entanglement breaking remainder block (" + rest.reason + ")";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Classical-quantum

ClassVerdict is_cq(const Channel& t, const Tolerances& tol) {
  require_cptp(t, tol, "is_cq");
  ClassVerdict v;
  v.tolerance_used = 1e-8;
  const DualMap td = dual(t);
  const Index n = t.d_out() * t.d_out();
  std::vector<Matrix> dirs;
  std::vector<Matrix> images;
  for (Index a = 0; a < n; ++a) {
    RealVector c = RealVector::Zero(n);
    c(a) = 1.0;
    dirs.push_back(hermitian_from_coordinates(c, t.d_out()));
    images.push_back(td(dirs.back()));
  }
  double worst = 0.0;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      const auto& x = images[static_cast<std::size_t>(a)];
      const auto& y = images[static_cast<std::size_t>(b)];
      const double c = operator_norm(x * y - y * x);
      if (c > worst) {
        worst = c;
        v.witness.noncommuting_pair = {dirs[static_cast<std::size_t>(a)], dirs[static_cast<std::size_t>(b)]};
      }
    }
  }
  v.witness.commutator_norm = worst;
  if (worst >= 1e-6) {
    v.status = Verdict::kNo;
    v.reason = "the dual images of two observables do not commute";
    return v;
  }
  v.witness.noncommuting_pair.reset();
  if (worst > 1e-8) {
    v.status = Verdict::kIndeterminate;
    v.reason = "commutators of dual images fall between the decision tolerances";
    return v;
  }
  // Simultaneous diagonalization through a fixed generic combination.
  Rng rng(0x5eedULL);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix mix = Matrix::Zero(t.d_in(), t.d_in());
  for (const auto& img : images) mix += g(rng) * img;
  const HermitianEigen e = eigh(mix);
  std::vector<Vector> basis;
  std::vector<Matrix> states;
  for (Index i = 0; i < t.d_in(); ++i) {
    basis.push_back(e.vectors.col(i));
    states.push_back(hermitian_part(t.apply(Matrix(basis.back() * basis.back().adjoint()))));
  }
  const Channel cq = Channel::from_cq(basis, states);
  if (map_distance(cq, t) > 1e-9) {
    v.status = Verdict::kIndeterminate;
    v.reason = "commuting dual images but the diagonalizing basis does not reproduce the map";
    return v;
  }
  v.status = Verdict::kYes;
  v.witness.basis = std::move(basis);
  v.witness.states = std::move(states);
  v.reason = "dual images commute; the map is diagonal in the witness basis";
  return v;
}

// ---------------------------------------------------------------------------
// Essentially classical-quantum

namespace {

struct ConeResult {
  bool feasible = false;
  bool infeasible = false;
  std::vector<Matrix> p;
  double residual = 0.0;
  Matrix certificate;
  double certificate_value = 0.0;
};

Matrix project_psd(const Matrix& m) {
  return hermitian_function(m, [](double x) { return std::max(x, 0.0); });
}

class ConeProblem {
 public:
  ConeProblem(const Matrix& c, const std::vector<Matrix>& sigma, Index d_in)
      : c_(c), sigma_(sigma), d_in_(d_in), d_out_(sigma.front().rows()) {}

  Matrix forward(const std::vector<Matrix>& p) const {
    Matrix out = Matrix::Zero(c_.rows(), c_.cols());
    for (std::size_t i = 0; i < p.size(); ++i) out += kron(sigma_[i], p[i]);
    return out;
  }

  Matrix adjoint(const Matrix& r, std::size_t i) const {
    const Matrix lifted = kron(sigma_[i], Matrix(Matrix::Identity(d_in_, d_in_))) * r;
    return hermitian_part(partial_trace_first(lifted, d_out_, d_in_));
  }

  double lipschitz() const {
    const auto k = static_cast<Index>(sigma_.size());
    RealMatrix g(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j)
        g(i, j) = (sigma_[static_cast<std::size_t>(i)] * sigma_[static_cast<std::size_t>(j)]).trace().real();
    return Eigen::SelfAdjointEigenSolver<RealMatrix>(g).eigenvalues().maxCoeff();
  }

  // Farkas test on the residual R = A(P) - C: Z = R + s 1 with s lifting
  // every A_i^*(Z) into the PSD cone.
  bool certify(const Matrix& r, ConeResult& out) const {
    double lowest = 0.0;
    for (std::size_t i = 0; i < sigma_.size(); ++i) lowest = std::min(lowest, min_eigenvalue(adjoint(r, i)));
    const double shift = -lowest + 1e-13;
    const Matrix z = r + shift * Matrix::Identity(r.rows(), r.cols());
    const double value = (z * c_).trace().real();
    if (value < -1e-9) {
      out.infeasible = true;
      out.certificate = z;
      out.certificate_value = value;
      return true;
    }
    return false;
  }

  // Least squares on the supports of the current iterate.
  bool polish(std::vector<Matrix>& p) const {
    std::vector<Matrix> supports;
    Index unknowns = 0;
    for (const auto& pi : p) {
      const HermitianEigen e = eigh(pi);
      Index r = 0;
      while (r < e.values.size() && e.values(e.values.size() - 1 - r) > 1e-7) ++r;
      supports.push_back(e.vectors.rightCols(r));
      unknowns += r * r;
    }
    if (unknowns == 0) return false;
    const Index rows = c_.rows() * c_.rows();
    RealMatrix a(rows, unknowns);
    Index col = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Index r = supports[i].cols();
      for (Index q = 0; q < r * r; ++q) {
        RealVector unit = RealVector::Zero(r * r);
        unit(q) = 1.0;
        const Matrix x = supports[i] * hermitian_from_coordinates(unit, r) * supports[i].adjoint();
        a.col(col++) = hermitian_coordinates(kron(sigma_[i], x));
      }
    }
    const RealVector sol = a.completeOrthogonalDecomposition().solve(hermitian_coordinates(c_));
    std::vector<Matrix> refined;
    col = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Index r = supports[i].cols();
      const Matrix x = hermitian_from_coordinates(sol.segment(col, r * r), r);
      col += r * r;
      refined.push_back(supports[i] * x * supports[i].adjoint());
      if (r > 0 && min_eigenvalue(refined.back()) < -1e-10) return false;
    }
    if ((forward(refined) - c_).norm() > 1e-10) return false;
    p = std::move(refined);
    return true;
  }

  ConeResult solve(int max_iterations) const {
    const std::size_t k = sigma_.size();
    const double step = 1.0 / lipschitz();
    std::vector<Matrix> p(k, Matrix(Matrix::Identity(d_in_, d_in_) / static_cast<double>(k)));
    std::vector<Matrix> y = p;
    double momentum = 1.0;
    ConeResult out;
    for (int it = 1; it <= max_iterations; ++it) {
      const Matrix r = forward(y) - c_;
      std::vector<Matrix> next(k);
      for (std::size_t i = 0; i < k; ++i) next[i] = project_psd(y[i] - step * adjoint(r, i));
      const double m_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      double restart = 0.0;
      for (std::size_t i = 0; i < k; ++i) restart += ((y[i] - next[i]).adjoint() * (next[i] - p[i])).trace().real();
      if (restart > 0.0) {
        momentum = 1.0;
        y = next;
      } else {
        for (std::size_t i = 0; i < k; ++i) y[i] = next[i] + ((momentum - 1.0) / m_next) * (next[i] - p[i]);
        momentum = m_next;
      }
      p = std::move(next);

      if (it % 100 == 0 || it == max_iterations) {
        const Matrix res = forward(p) - c_;
        out.residual = res.norm();
        if (out.residual < 1e-11) {
          out.feasible = true;
          break;
        }
        if (certify(res, out)) break;
        if (it % 2000 == 0 && polish(p)) {
          out.feasible = true;
          out.residual = (forward(p) - c_).norm();
          break;
        }
      }
    }
    if (!out.feasible && !out.infeasible && polish(p)) {
      out.feasible = true;
      out.residual = (forward(p) - c_).norm();
    }
    out.p = std::move(p);
    return out;
  }

 private:
  Matrix c_;
  std::vector<Matrix> sigma_;
  Index d_in_;
  Index d_out_;
};

ClassVerdict judge_effects(const Channel& t, std::vector<Matrix> effects,
                           const std::vector<Matrix>& states, const std::vector<Matrix>& preimages,
                           bool unique, const EcqOptions& opts) {
  ClassVerdict v;
  v.tolerance_used = opts.norm_tol;
  const Index d = t.d_in();
  for (auto& m : effects) m = hermitian_part(m);
  Matrix sum = Matrix::Zero(d, d);
  double psd = 0.0;
  double norm_dev = 0.0;
  for (const auto& m : effects) {
    sum += m;
    psd = std::min(psd, min_eigenvalue(m));
    norm_dev = std::max(norm_dev, std::abs(max_eigenvalue(m) - 1.0));
  }
  const double sum_dev = operator_norm(sum - Matrix::Identity(d, d));
  v.witness.effects = effects;
  v.witness.states = states;

  std::ostringstream why;
  if (psd < -opts.psd_tol) why << "an effect is not PSD (min eigenvalue " << psd << "); ";
  if (sum_dev > opts.sum_tol) why << "effects do not sum to the identity (deviation " << sum_dev << "); ";
  if (norm_dev > opts.norm_tol) why << "an effect has operator norm below 1 (deviation " << norm_dev << "); ";
  if (!why.str().empty()) {
    v.status = unique ? Verdict::kNo : Verdict::kIndeterminate;
    v.reason = why.str();
    v.reason.resize(v.reason.size() - 2);
    if (!unique) v.reason += " (effects are not unique for affinely dependent vertices)";
    return v;
  }

  EcqCertificate cert;
  cert.states = states;
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const HermitianEigen e = eigh(effects[i]);
    Vector top = e.vectors.col(d - 1);
    if (i < preimages.size() && preimages[i].rows() == d) {
      // Inside a degenerate eigenvalue-1 space prefer a vector of V_i.
      const Matrix pv = projector(preimages[i]);
      const Vector proj = pv * top;
      if (proj.norm() < 1.0 - 1e-6) {
        Index j = d - 1;
        while (j >= 0 && e.values(j) > 1.0 - opts.norm_tol) {
          const Vector cand = pv * e.vectors.col(j);
          if (cand.norm() > 1e-3) {
            top = cand.normalized();
            break;
          }
          --j;
        }
      }
    }
    cert.vectors.push_back(top);
    cert.remainders.push_back(hermitian_part(effects[i] - top * top.adjoint()));
  }
  try {
    const Channel c = cert.channel();
    if (map_distance(c, t) > opts.map_tol) {
      v.status = Verdict::kIndeterminate;
      v.reason = "certificate does not reproduce the channel";
      return v;
    }
  } catch (const ValidationError&) {
    v.status = Verdict::kIndeterminate;
    v.reason = "top eigenvectors of the effects are not orthonormal";
    return v;
  }
  v.status = Verdict::kYes;
  v.witness.ecq = std::move(cert);
  v.reason = "POVM form with unit-norm effects";
  return v;
}

}  // namespace

ClassVerdict reconstruct_ecq(const Channel& t, const std::vector<Matrix>& vertices,
                             const std::vector<Matrix>& preimages, const EcqOptions& opts) {
  if (vertices.empty()) throw ValidationError("reconstruct_ecq: vertex list is empty");
  for (const auto& s : vertices) {
    if (s.rows() != t.d_out() || s.cols() != t.d_out()) throw DimensionError("reconstruct_ecq: vertex size");
  }
  const auto k = static_cast<Index>(vertices.size());
  const DualMap td = dual(t);

  if (affine_dimension(vertices) == k - 1) {
    // Trace-one matrices: affine independence is linear independence, so the
    // Gram matrix is invertible and F_j = sum_l (G^-1)_jl sigma_l is the dual
    // basis, Tr(F_j sigma_i) = delta_ij.
    RealMatrix g(k, k);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j)
        g(i, j) = (vertices[static_cast<std::size_t>(i)] * vertices[static_cast<std::size_t>(j)]).trace().real();
    const RealMatrix gi = g.inverse();
    std::vector<Matrix> effects;
    for (Index j = 0; j < k; ++j) {
      Matrix f = Matrix::Zero(t.d_out(), t.d_out());
      for (Index l = 0; l < k; ++l) f += gi(j, l) * vertices[static_cast<std::size_t>(l)];
      effects.push_back(td(f));
    }
    const Channel rebuilt = Channel::from_povm(effects, vertices);
    const double err = map_distance(rebuilt, t);
    if (err > opts.map_tol) {
      ClassVerdict v;
      v.status = Verdict::kNo;
      v.tolerance_used = opts.map_tol;
      v.witness.effects = effects;
      std::ostringstream os;
      os << "image is not contained in the span of the vertices (residual " << err << ")";
      v.reason = os.str();
      return v;
    }
    return judge_effects(t, std::move(effects), vertices, preimages, true, opts);
  }

  const Matrix c = static_cast<double>(t.d_in()) * hermitian_part(t.choi());
  const ConeProblem problem(c, vertices, t.d_in());
  ConeResult res = problem.solve(opts.max_iterations);
  if (res.infeasible) {
    ClassVerdict v;
    v.status = Verdict::kNo;
    v.tolerance_used = 1e-9;
    v.witness.farkas_certificate = res.certificate;
    v.witness.farkas_value = res.certificate_value;
    v.witness.states = vertices;
    v.reason = "no POVM prepares the channel from its vertices (Farkas certificate)";
    return v;
  }
  if (!res.feasible) {
    ClassVerdict v;
    v.status = Verdict::kIndeterminate;
    v.tolerance_used = 1e-9;
    std::ostringstream os;
    os << "cone feasibility undecided (residual " << res.residual << ")";
    v.reason = os.str();
    return v;
  }
  std::vector<Matrix> effects;
  for (const auto& p : res.p) effects.push_back(p.transpose());
  return judge_effects(t, std::move(effects), vertices, preimages, false, opts);
}

ClassVerdict reconstruct_ecq(const Channel& t, const PolytopicDecomposition& dec,
                             const EcqOptions& opts) {
  std::vector<Matrix> states;
  std::vector<Matrix> preimages;
  for (const auto& v : dec.vertices) {
    states.push_back(v.state);
    preimages.push_back(v.preimage_basis);
  }
  return reconstruct_ecq(t, states, preimages, opts);
}

// ---------------------------------------------------------------------------
// Universal image additivity

ClassVerdict is_universally_image_additive(const Channel& t, std::uint64_t seed,
                                           const Tolerances& tol) {
  require_cptp(t, tol, "is_universally_image_additive");
  return is_universally_image_additive(t, polytopic_decompose(t, seed), tol);
}

ClassVerdict is_universally_image_additive(const Channel& t,
                                           const PolytopicDecomposition& dec,
                                           const Tolerances& tol) {
  require_cptp(t, tol, "is_universally_image_additive");
  ClassVerdict v;
  v.tolerance_used = 1e-9;
  if (dec.verdict == PolytopeVerdict::kNotPolytopic) {
    v.status = Verdict::kNo;
    v.witness.direction = dec.witness_direction;
    v.reason = "image is not a polytope, so the channel is not essentially CQ";
    return v;
  }
  if (dec.verdict == PolytopeVerdict::kIndeterminate) {
    v.reason = "polytopic decomposition undecided: " + dec.reason;
    return v;
  }
  ClassVerdict e = reconstruct_ecq(t, dec);
  if (e.status != Verdict::kYes) {
    e.reason = "not essentially CQ: " + e.reason;
    if (e.status == Verdict::kIndeterminate) e.reason = "essentially CQ undecided: " + e.reason.substr(20);
    return e;
  }
  const Channel s = e.witness.ecq->retraction();
  const double err = map_distance(compose(t, s), t);
  e.witness.retraction = s;
  e.witness.retraction_error = err;
  if (err > 1e-9) {
    e.status = Verdict::kIndeterminate;
    e.reason = "retraction does not satisfy T o S = T";
    return e;
  }
  e.reason = "essentially CQ with retraction S, T o S = T";
  return e;
}

DirectSumConsistency eb_direct_sum_consistency(const Channel& t1, const Channel& t2,
                                               const Tolerances& tol) {
  DirectSumConsistency c;
  c.first = is_entanglement_breaking(t1, tol);
  c.second = is_entanglement_breaking(t2, tol);
  const Channel ds = direct_sum(t1, t2);
  c.sum = is_entanglement_breaking(ds, tol);
  c.sum_min_pt_eigenvalue = choi_pt_min_eigenvalue(ds);
  c.decisive = c.first.status != Verdict::kIndeterminate &&
               c.second.status != Verdict::kIndeterminate &&
               c.sum.status != Verdict::kIndeterminate;
  const bool both = c.first.status == Verdict::kYes && c.second.status == Verdict::kYes;
  const bool ppt_ok = c.sum.status != Verdict::kYes || c.sum_min_pt_eigenvalue >= -tol.psd;
  c.consistent = ppt_ok && (!c.decisive || both == (c.sum.status == Verdict::kYes));
  return c;
}

}  // namespace chan_atlas
