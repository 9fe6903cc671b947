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

#include "chan_atlas/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace chan_atlas {

// ---------------------------------------------------------------------------
// Value types

DensityMatrix DensityMatrix::from(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("density matrix must be square and nonempty");
  }
  if (hermiticity_defect(m) > tol) throw ValidationError("density matrix is not Hermitian");
  Matrix h = hermitian_part(m);
  if (std::abs(h.trace().real() - 1.0) > tol) {
    throw ValidationError("density matrix does not have unit trace");
  }
  if (min_eigenvalue(h) < -tol) throw ValidationError("density matrix is not PSD");
  return DensityMatrix(std::move(h));
}

PureState PureState::from(const Vector& v, double tol) {
  if (v.size() == 0) throw DimensionError("pure state must be nonempty");
  if (std::abs(v.norm() - 1.0) > tol) throw ValidationError("pure state is not normalized");
  return PureState(v);
}

Povm Povm::from(std::vector<Matrix> effects, const Tolerances& tol) {
  if (effects.empty()) throw DimensionError("POVM needs at least one effect");
  const Index d = effects.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : effects) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("POVM effects differ in size");
    if (hermiticity_defect(e) > tol.psd) throw ValidationError("POVM effect is not Hermitian");
    if (min_eigenvalue(e) < -tol.psd) throw ValidationError("POVM effect is not PSD");
    sum += e;
  }
  if (operator_norm(sum - Matrix::Identity(d, d)) > tol.trace) {
    throw ValidationError("POVM effects do not sum to the identity");
  }
  for (auto& e : effects) e = hermitian_part(e);
  return Povm(std::move(effects));
}

// ---------------------------------------------------------------------------
// Channel

struct Channel::Data {
  Index d_in;
  Index d_out;
  Representation rep;
  Matrix choi;
  Matrix transfer;
};

namespace {

void require_square(const Matrix& m, Index d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << what << ": expected " << d << "x" << d << ", got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

void require_orthonormal(const std::vector<Vector>& vs, const char* what) {
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a; b < vs.size(); ++b) {
      const Complex ip = vs[a].dot(vs[b]);
      const double target = a == b ? 1.0 : 0.0;
      if (std::abs(ip - target) > 1e-8) {
        throw ValidationError(std::string(what) + ": vectors are not orthonormal");
      }
    }
  }
}

struct NativeApply {
  const Matrix& x;
  Index d_in;
  Index d_out;

  Matrix operator()(const KrausForm& f) const {
    Matrix out = Matrix::Zero(d_out, d_out);
    for (const auto& k : f.operators) out += k * x * k.adjoint();
    return out;
  }
  Matrix operator()(const ChoiForm& f) const {
    const Matrix lifted = kron(Matrix::Identity(d_out, d_out), Matrix(x.transpose()));
    return static_cast<double>(d_in) * partial_trace_second(f.choi * lifted, d_out, d_in);
  }
  Matrix operator()(const PovmForm& f) const {
    Matrix out = Matrix::Zero(d_out, d_out);
    for (std::size_t i = 0; i < f.effects.size(); ++i) {
      out += (f.effects[i] * x).trace() * f.states[i];
    }
    return out;
  }
  Matrix operator()(const EcqForm& f) const {
    Matrix out = Matrix::Zero(d_out, d_out);
    for (std::size_t i = 0; i < f.vectors.size(); ++i) {
      const Complex w = f.vectors[i].dot(x * f.vectors[i]) + (f.remainders[i] * x).trace();
      out += w * f.states[i];
    }
    return out;
  }
  Matrix operator()(const CqForm& f) const {
    Matrix out = Matrix::Zero(d_out, d_out);
    for (std::size_t i = 0; i < f.basis.size(); ++i) {
      out += f.basis[i].dot(x * f.basis[i]) * f.states[i];
    }
    return out;
  }
  Matrix operator()(const DirectSumForm& f) const {
    Matrix out = Matrix::Zero(d_out, d_out);
    Index off = 0;
    for (const auto& b : f.blocks) {
      const Index n = b.d_in();
      out += b.apply(Matrix(x.block(off, off, n, n)));
      off += n;
    }
    return out;
  }
};

}  // namespace

Channel Channel::make(Index d_in, Index d_out, Representation rep) {
  if (d_in <= 0 || d_out <= 0) throw DimensionError("channel dimensions must be positive");
  auto data = std::make_shared<Data>();
  data->d_in = d_in;
  data->d_out = d_out;
  data->rep = std::move(rep);

  const Index n_in = d_in * d_in;
  data->transfer = Matrix::Zero(d_out * d_out, n_in);
  data->choi = Matrix::Zero(d_in * d_out, d_in * d_out);
  if (const auto* c = std::get_if<ChoiForm>(&data->rep)) data->choi = c->choi;

  for (Index j = 0; j < d_in; ++j) {
    for (Index i = 0; i < d_in; ++i) {
      const Matrix e = matrix_unit(d_in, i, j);
      const Matrix te = std::visit(NativeApply{e, d_in, d_out}, data->rep);
      data->transfer.col(j * d_in + i) = vec(te);
      if (!std::holds_alternative<ChoiForm>(data->rep)) {
        data->choi += kron(te, e) / static_cast<double>(d_in);
      }
    }
  }
  return Channel(std::move(data));
}

Channel Channel::from_kraus(std::vector<Matrix> operators) {
  if (operators.empty()) throw DimensionError("Kraus form needs at least one operator");
  const Index d_out = operators.front().rows();
  const Index d_in = operators.front().cols();
  for (const auto& k : operators) {
    if (k.rows() != d_out || k.cols() != d_in) {
      throw DimensionError("Kraus operators differ in shape");
    }
  }
  return make(d_in, d_out, KrausForm{std::move(operators)});
}

Channel Channel::from_choi(Matrix choi, Index d_in, Index d_out) {
  require_square(choi, d_in * d_out, "Choi matrix");
  return make(d_in, d_out, ChoiForm{std::move(choi)});
}

Channel Channel::from_povm(std::vector<Matrix> effects, std::vector<Matrix> states) {
  if (effects.empty() || effects.size() != states.size()) {
    throw DimensionError("measure-prepare form needs equally many effects and states");
  }
  const Index d_in = effects.front().rows();
  const Index d_out = states.front().rows();
  for (std::size_t i = 0; i < effects.size(); ++i) {
    require_square(effects[i], d_in, "effect");
    require_square(states[i], d_out, "state");
  }
  return make(d_in, d_out, PovmForm{std::move(effects), std::move(states)});
}

Channel Channel::from_ecq(std::vector<Vector> vectors, std::vector<Matrix> remainders,
                          std::vector<Matrix> states) {
  if (vectors.empty() || vectors.size() != remainders.size() ||
      vectors.size() != states.size()) {
    throw DimensionError("eCQ form needs equally many vectors, remainders and states");
  }
  const Index d_in = vectors.front().size();
  const Index d_out = states.front().rows();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d_in) throw DimensionError("eCQ vectors differ in size");
    require_square(remainders[i], d_in, "eCQ remainder");
    require_square(states[i], d_out, "eCQ state");
  }
  require_orthonormal(vectors, "eCQ form");
  return make(d_in, d_out,
              EcqForm{std::move(vectors), std::move(remainders), std::move(states)});
}

Channel Channel::from_cq(std::vector<Vector> basis, std::vector<Matrix> states) {
  if (basis.empty() || basis.size() != states.size()) {
    throw DimensionError("CQ form needs equally many basis vectors and states");
  }
  const Index d_in = basis.front().size();
  const Index d_out = states.front().rows();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != d_in) throw DimensionError("CQ basis vectors differ in size");
    require_square(states[i], d_out, "CQ state");
  }
  require_orthonormal(basis, "CQ form");
  return make(d_in, d_out, CqForm{std::move(basis), std::move(states)});
}

Channel Channel::from_direct_sum(std::vector<Channel> blocks) {
  if (blocks.empty()) throw DimensionError("direct sum needs at least one block");
  const Index d_out = blocks.front().d_out();
  Index d_in = 0;
  for (const auto& b : blocks) {
    if (b.d_out() != d_out) throw DimensionError("direct sum blocks differ in output dimension");
    d_in += b.d_in();
  }
  return make(d_in, d_out, DirectSumForm{std::move(blocks)});
}

Channel Channel::from_linear_map(Index d_in, Index d_out,
                                 const std::function<Matrix(const Matrix&)>& map) {
  if (d_in <= 0 || d_out <= 0) throw DimensionError("channel dimensions must be positive");
  Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Index i = 0; i < d_in; ++i) {
    for (Index j = 0; j < d_in; ++j) {
      const Matrix e = matrix_unit(d_in, i, j);
      const Matrix te = map(e);
      require_square(te, d_out, "linear map output");
      choi += kron(te, e);
    }
  }
  choi /= static_cast<double>(d_in);
  return from_choi(std::move(choi), d_in, d_out);
}

Index Channel::d_in() const { return data_->d_in; }
Index Channel::d_out() const { return data_->d_out; }
const Channel::Representation& Channel::representation() const { return data_->rep; }
const Matrix& Channel::choi() const { return data_->choi; }
const Matrix& Channel::transfer() const { return data_->transfer; }

std::string_view Channel::form_name() const {
  static constexpr std::array<std::string_view, 6> names = {"kraus", "choi", "povm",
                                                            "ecq",   "cq",   "direct_sum"};
  return names[data_->rep.index()];
}

Matrix Channel::apply(const Matrix& x) const {
  require_square(x, d_in(), "channel input");
  return std::visit(NativeApply{x, d_in(), d_out()}, data_->rep);
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  return DensityMatrix::from(apply(rho.matrix()), 1e-8);
}

// ---------------------------------------------------------------------------
// Choi correspondence

ChoiMatrix to_choi(const Channel& t) { return {t.d_in(), t.d_out(), t.choi()}; }

namespace {

std::vector<Matrix> kraus_from_choi(const Matrix& j, Index d_in, Index d_out,
                                    double rank_tol) {
  const HermitianEigen eig = eigh(j);
  std::vector<Matrix> ops;
  for (Index a = eig.values.size() - 1; a >= 0; --a) {
    const double lam = eig.values(a);
    if (lam < rank_tol) break;
    Vector v = eig.vectors.col(a);
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    v *= std::abs(v(pivot)) / v(pivot);
    Matrix k(d_out, d_in);
    for (Index o = 0; o < d_out; ++o) {
      for (Index i = 0; i < d_in; ++i) k(o, i) = v(o * d_in + i);
    }
    ops.push_back(std::sqrt(static_cast<double>(d_in) * lam) * k);
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(d_out, d_in));
  return ops;
}

}  // namespace

Channel from_choi(const ChoiMatrix& j, const Tolerances& tol, double rank_tol) {
  require_square(j.matrix, j.d_in * j.d_out, "Choi matrix");
  if (hermiticity_defect(j.matrix) > tol.psd) throw ValidationError("Choi matrix is not Hermitian");
  const Matrix h = hermitian_part(j.matrix);
  const double lo = min_eigenvalue(h);
  if (lo < -tol.psd) {
    std::ostringstream os;
    os << "Choi matrix is not PSD (min eigenvalue " << lo << ")";
    throw ValidationError(os.str());
  }
  const Matrix marginal = static_cast<double>(j.d_in) * partial_trace_first(h, j.d_out, j.d_in);
  if (operator_norm(marginal - Matrix::Identity(j.d_in, j.d_in)) > tol.trace) {
    throw ValidationError("Choi matrix input marginal is not 1/d_in");
  }
  return Channel::from_kraus(kraus_from_choi(h, j.d_in, j.d_out, rank_tol));
}

std::vector<Matrix> kraus_operators(const Channel& t, const Tolerances& tol) {
  if (const auto* k = std::get_if<KrausForm>(&t.representation())) return k->operators;
  const Matrix h = hermitian_part(t.choi());
  if (hermiticity_defect(t.choi()) > tol.psd || min_eigenvalue(h) < -tol.psd) {
    throw ValidationError("map is not completely positive");
  }
  return kraus_from_choi(h, t.d_in(), t.d_out(), 1e-14);
}

// ---------------------------------------------------------------------------
// Dual

DualMap::DualMap(const Channel& t)
    : d_in_(t.d_in()), d_out_(t.d_out()), adjoint_transfer_(t.transfer().adjoint()) {}

Matrix DualMap::operator()(const Matrix& h) const {
  require_square(h, d_out_, "dual map input");
  return unvec(adjoint_transfer_ * vec(h), d_in_, d_in_);
}

DualMap dual(const Channel& t) { return DualMap(t); }

// ---------------------------------------------------------------------------
// Algebra

namespace {

bool completely_positive(const Channel& t) {
  if (std::holds_alternative<KrausForm>(t.representation())) return true;
  return hermiticity_defect(t.choi()) <= 1e-9 && min_eigenvalue(hermitian_part(t.choi())) >= -1e-9;
}

Channel compress_kraus(std::vector<Matrix> ops) {
  const Index d_out = ops.front().rows();
  const Index d_in = ops.front().cols();
  if (static_cast<Index>(ops.size()) <= d_in * d_out) return Channel::from_kraus(std::move(ops));
  const Channel wide = Channel::from_kraus(std::move(ops));
  return Channel::from_kraus(kraus_from_choi(hermitian_part(wide.choi()), d_in, d_out, 1e-14));
}

}  // namespace

Channel tensor(const Channel& t1, const Channel& t2) {
  if (completely_positive(t1) && completely_positive(t2)) {
    std::vector<Matrix> ops;
    for (const auto& a : kraus_operators(t1)) {
      for (const auto& b : kraus_operators(t2)) ops.push_back(kron(a, b));
    }
    return compress_kraus(std::move(ops));
  }
  const Index n1 = t1.d_in();
  const Index n2 = t2.d_in();
  std::vector<Matrix> images;
  for (Index j = 0; j < n1; ++j) {
    for (Index i = 0; i < n1; ++i) images.push_back(t1.apply(matrix_unit(n1, i, j)));
  }
  return Channel::from_linear_map(n1 * n2, t1.d_out() * t2.d_out(), [&](const Matrix& x) {
    Matrix out = Matrix::Zero(t1.d_out() * t2.d_out(), t1.d_out() * t2.d_out());
    for (Index j = 0; j < n1; ++j) {
      for (Index i = 0; i < n1; ++i) {
        const Matrix blk = x.block(i * n2, j * n2, n2, n2);
        if (blk.norm() == 0.0) continue;
        out += kron(images[static_cast<std::size_t>(j * n1 + i)], t2.apply(blk));
      }
    }
    return out;
  });
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.d_in() != inner.d_out()) throw DimensionError("compose: dimension mismatch");
  if (completely_positive(outer) && completely_positive(inner)) {
    std::vector<Matrix> ops;
    for (const auto& a : kraus_operators(outer)) {
      for (const auto& b : kraus_operators(inner)) ops.push_back(a * b);
    }
    return compress_kraus(std::move(ops));
  }
  return Channel::from_linear_map(inner.d_in(), outer.d_out(),
                                  [&](const Matrix& x) { return outer.apply(inner.apply(x)); });
}

Channel conjugate(const Channel& t) {
  if (completely_positive(t)) {
    std::vector<Matrix> ops = kraus_operators(t);
    for (auto& k : ops) k = k.conjugate().eval();
    return Channel::from_kraus(std::move(ops));
  }
  return Channel::from_choi(t.choi().conjugate(), t.d_in(), t.d_out());
}

Channel direct_sum(const Channel& t1, const Channel& t2) {
  return Channel::from_direct_sum({t1, t2});
}

double map_distance(const Channel& a, const Channel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw DimensionError("map_distance: dimension mismatch");
  }
  const Matrix diff = a.transfer() - b.transfer();
  double worst = 0.0;
  for (Index c = 0; c < diff.cols(); ++c) {
    worst = std::max(worst, operator_norm(unvec(diff.col(c), a.d_out(), a.d_out())));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Verification

CptpReport verify_cptp(const Channel& t, const Tolerances& tol) {
  CptpReport r;
  r.hermiticity_defect = hermiticity_defect(t.choi());
  const Matrix h = hermitian_part(t.choi());
  r.min_choi_eigenvalue = min_eigenvalue(h);
  const Matrix marginal = static_cast<double>(t.d_in()) * partial_trace_first(h, t.d_out(), t.d_in());
  r.marginal_deviation = operator_norm(marginal - Matrix::Identity(t.d_in(), t.d_in()));

  std::ostringstream os;
  if (r.hermiticity_defect > tol.psd) os << "Choi matrix is not Hermitian; ";
  if (r.min_choi_eigenvalue < -tol.psd) {
    os << "not completely positive (min Choi eigenvalue " << r.min_choi_eigenvalue << "); ";
  }
  if (r.marginal_deviation > tol.trace) {
    os << "not trace preserving (marginal deviation " << r.marginal_deviation << "); ";
  }
  r.description = os.str();
  r.cptp = r.description.empty();
  if (r.cptp) {
    r.description = "CPTP";
  } else {
    r.description.resize(r.description.size() - 2);
  }
  return r;
}

bool is_unital(const Channel& t, double tol) {
  if (t.d_in() != t.d_out()) return false;
  const Matrix id = Matrix::Identity(t.d_in(), t.d_in());
  return operator_norm(t.apply(id) - id) <= tol;
}

// ---------------------------------------------------------------------------
// Standard channels

namespace channels {

const std::array<Matrix, 3>& pauli() {
  static const std::array<Matrix, 3> s = [] {
    std::array<Matrix, 3> p;
    p[0] = Matrix::Zero(2, 2);
    p[0](0, 1) = p[0](1, 0) = 1.0;
    p[1] = Matrix::Zero(2, 2);
    p[1](0, 1) = Complex(0.0, -1.0);
    p[1](1, 0) = Complex(0.0, 1.0);
    p[2] = Matrix::Zero(2, 2);
    p[2](0, 0) = 1.0;
    p[2](1, 1) = -1.0;
    return p;
  }();
  return s;
}

Channel identity(Index d) { return Channel::from_kraus({Matrix::Identity(d, d)}); }

Channel depolarizing(double r, Index d) {
  return Channel::from_linear_map(d, d, [r, d](const Matrix& x) {
    return Matrix(r * x + (1.0 - r) * x.trace() * Matrix::Identity(d, d) / static_cast<double>(d));
  });
}

Channel constant(const Matrix& sigma, Index d_in) {
  return Channel::from_povm({Matrix::Identity(d_in, d_in)}, {sigma});
}

Channel dephasing(Index d) {
  std::vector<Vector> basis;
  std::vector<Matrix> states;
  for (Index i = 0; i < d; ++i) {
    basis.push_back(basis_vector(d, i));
    states.push_back(matrix_unit(d, i, i));
  }
  return Channel::from_cq(std::move(basis), std::move(states));
}

Channel unital_qubit_diagonal(double l1, double l2, double l3) {
  const std::array<double, 3> l = {l1, l2, l3};
  return Channel::from_linear_map(2, 2, [l](const Matrix& x) {
    Matrix out = 0.5 * x.trace() * Matrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) out += 0.5 * l[k] * (pauli()[k] * x).trace() * pauli()[k];
    return out;
  });
}

Channel trine_measure_prepare() {
  std::vector<Matrix> effects;
  std::vector<Matrix> states;
  for (int j = 1; j <= 3; ++j) {
    const double th = 2.0 * std::numbers::pi * j / 3.0;
    Vector v(2);
    v << std::cos(th), std::sin(th);
    effects.push_back((2.0 / 3.0) * v * v.adjoint());
    states.push_back(matrix_unit(3, j - 1, j - 1));
  }
  return Channel::from_povm(std::move(effects), std::move(states));
}

}  // namespace channels

}  // namespace chan_atlas
