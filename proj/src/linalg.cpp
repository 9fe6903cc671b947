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

#include "chan_atlas/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace chan_atlas {

namespace {

// Gram-Schmidt with one re-orthogonalization pass.
bool append_orthonormal(Matrix& basis, Index& count, Vector v, double tol) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index k = 0; k < count; ++k) {
      v -= basis.col(k) * basis.col(k).dot(v);
    }
  }
  const double n = v.norm();
  if (n <= tol) return false;
  basis.col(count++) = v / n;
  return true;
}

}  // namespace

HermitianEigen eigh(const Matrix& m, double degeneracy_tol) {
  if (m.rows() != m.cols()) throw DimensionError("eigh: matrix is not square");
  const Matrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver failed");
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};

  const Index d = h.rows();
  Index start = 0;
  while (start < d) {
    Index stop = start + 1;
    while (stop < d &&
           out.values(stop) - out.values(stop - 1) <=
               degeneracy_tol * std::max(1.0, std::abs(out.values(stop)))) {
      ++stop;
    }
    const Index m_dim = stop - start;
    if (m_dim > 1) {
      const Matrix u = out.vectors.middleCols(start, m_dim);
      Matrix canon(d, m_dim);
      Index count = 0;
      for (Index k = 0; k < d && count < m_dim; ++k) {
        Vector e = Vector::Zero(d);
        e(k) = 1.0;
        append_orthonormal(canon, count, u * (u.adjoint() * e), 1e-6);
      }
      // The projected standard basis always spans the eigenspace, but keep
      // the solver's vectors if round-off made the sweep come up short.
      if (count == m_dim) out.vectors.middleCols(start, m_dim) = canon;
    }
    start = stop;
  }
  return out;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

Matrix hermitian_function(const Matrix& hermitian,
                          const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian));
  RealVector fv = solver.eigenvalues().unaryExpr(f);
  return solver.eigenvectors() * fv.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix partial_trace_first(const Matrix& m, Index d1, Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionError("partial_trace_first: dimension mismatch");
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (Index a = 0; a < d1; ++a) out += m.block(a * d2, a * d2, d2, d2);
  return out;
}

Matrix partial_trace_second(const Matrix& m, Index d1, Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionError("partial_trace_second: dimension mismatch");
  }
  Matrix out(d1, d1);
  for (Index a = 0; a < d1; ++a) {
    for (Index b = 0; b < d1; ++b) {
      out(a, b) = m.block(a * d2, b * d2, d2, d2).trace();
    }
  }
  return out;
}

Matrix partial_transpose_second(const Matrix& m, Index d1, Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionError("partial_transpose_second: dimension mismatch");
  }
  Matrix out(m.rows(), m.cols());
  for (Index a = 0; a < d1; ++a) {
    for (Index b = 0; b < d1; ++b) {
      out.block(a * d2, b * d2, d2, d2) =
          m.block(a * d2, b * d2, d2, d2).transpose();
    }
  }
  return out;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix matrix_unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Vector basis_vector(Index d, Index i) {
  Vector e = Vector::Zero(d);
  e(i) = 1.0;
  return e;
}

Vector maximally_entangled(Index d) {
  Vector psi = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) psi(i * d + i) = amp;
  return psi;
}

Matrix orthonormalize(const Matrix& columns, double tol) {
  Matrix basis(columns.rows(), columns.cols());
  Index count = 0;
  for (Index k = 0; k < columns.cols(); ++k) {
    append_orthonormal(basis, count, columns.col(k), tol);
  }
  return basis.leftCols(count);
}

Matrix orthogonal_complement(const Matrix& basis, Index dim, double tol) {
  Matrix out(dim, dim);
  Index count = 0;
  for (Index k = 0; k < basis.cols(); ++k) out.col(count++) = basis.col(k);
  for (Index k = 0; k < dim && count < dim; ++k) {
    append_orthonormal(out, count, basis_vector(dim, k), tol);
  }
  return out.middleCols(basis.cols(), count - basis.cols());
}

Matrix projector(const Matrix& basis) { return basis * basis.adjoint(); }

double subspace_distance(const Matrix& a, const Matrix& b) {
  return operator_norm(projector(a) - projector(b));
}

Matrix subspace_intersection(const std::vector<Matrix>& bases, Index dim,
                             double tol) {
  Matrix defect = Matrix::Zero(dim, dim);
  for (const auto& b : bases) {
    defect += Matrix::Identity(dim, dim) - projector(b);
  }
  const auto e = eigh(defect);
  Index count = 0;
  while (count < dim && e.values(count) <= tol) ++count;
  return e.vectors.leftCols(count);
}

RealVector hermitian_coordinates(const Matrix& h) {
  const Index d = h.rows();
  RealVector c(d * d);
  Index k = 0;
  const double s = std::sqrt(2.0);
  for (Index i = 0; i < d; ++i) c(k++) = h(i, i).real();
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      c(k++) = s * h(i, j).real();
      c(k++) = -s * h(i, j).imag();
    }
  }
  return c;
}

Matrix hermitian_from_coordinates(const RealVector& c, Index dim) {
  if (c.size() != dim * dim) {
    throw DimensionError("hermitian_from_coordinates: size mismatch");
  }
  Matrix h = Matrix::Zero(dim, dim);
  Index k = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < dim; ++i) h(i, i) = c(k++);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      const double re = c(k++) * s;
      const double im = -c(k++) * s;
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return h;
}

Index affine_dimension(const std::vector<Matrix>& points, double tol) {
  if (points.size() <= 1) return 0;
  const RealVector base = hermitian_coordinates(points.front());
  RealMatrix centered(base.size(), static_cast<Index>(points.size()) - 1);
  for (std::size_t k = 1; k < points.size(); ++k) {
    centered.col(static_cast<Index>(k) - 1) =
        hermitian_coordinates(points[k]) - base;
  }
  Eigen::JacobiSVD<RealMatrix> svd(centered);
  Index rank = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > tol) ++rank;
  }
  return rank;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
  }
  return g;
}

}  // namespace

Vector random_unit_vector(Index d, Rng& rng) {
  Vector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_hermitian(Index d, Rng& rng) {
  Matrix g = ginibre(d, d, rng);
  Matrix h = hermitian_part(g);
  return h / h.norm();
}

Matrix random_density_matrix(Index d, Rng& rng, Index rank) {
  if (rank <= 0) rank = d;
  Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Matrix random_unitary(Index d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

}  // namespace chan_atlas
