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

#include <cstdlib>
#include <string>

#include "chan_atlas/kernels.hpp"
#include "kernels_raw.hpp"

namespace chan_atlas::kernels {

VectorBatch::VectorBatch(Index dim_, std::size_t count_)
    : dim(dim_),
      count(count_),
      re(static_cast<std::size_t>(dim_) * count_, 0.0),
      im(static_cast<std::size_t>(dim_) * count_, 0.0) {}

void VectorBatch::set(std::size_t k, const Vector& v) {
  if (v.size() != dim || k >= count) throw DimensionError("VectorBatch::set");
  for (Index i = 0; i < dim; ++i) {
    re[static_cast<std::size_t>(i) * count + k] = v(i).real();
    im[static_cast<std::size_t>(i) * count + k] = v(i).imag();
  }
}

Vector VectorBatch::get(std::size_t k) const {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    v(i) = Complex(re[static_cast<std::size_t>(i) * count + k],
                   im[static_cast<std::size_t>(i) * count + k]);
  }
  return v;
}

bool avx2_available() {
#if defined(CHAN_ATLAS_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    if (const char* env = std::getenv("CHAN_ATLAS_KERNELS")) {
      if (std::string(env) == "scalar") return Backend::kScalar;
    }
    return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
  }();
  return chosen;
}

std::string_view backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

namespace {

struct SplitMatrix {
  std::vector<double> re;
  std::vector<double> im;
};

SplitMatrix split_row_major(const Matrix& a) {
  SplitMatrix s;
  const auto d = static_cast<std::size_t>(a.rows());
  s.re.resize(d * d);
  s.im.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Complex v = a(static_cast<Index>(i), static_cast<Index>(j));
      s.re[i * d + j] = v.real();
      s.im[i * d + j] = v.imag();
    }
  }
  return s;
}

void check_forms(const Matrix& a, const VectorBatch& xs, std::span<double> out) {
  if (a.rows() != xs.dim || a.cols() != xs.dim || out.size() < xs.count) {
    throw DimensionError("hermitian_quadratic_forms: size mismatch");
  }
}

void check_spectra(std::span<const double> bx, std::span<const double> by,
                   std::span<const double> bz, std::span<double> lo,
                   std::span<double> hi) {
  const std::size_t n = bx.size();
  if (by.size() != n || bz.size() != n || lo.size() < n || hi.size() < n) {
    throw DimensionError("qubit_affine_spectra: size mismatch");
  }
}

}  // namespace

namespace scalar {

void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out) {
  check_forms(a, xs, out);
  const SplitMatrix s = split_row_major(a);
  raw::quadratic_forms_scalar(static_cast<std::size_t>(xs.dim), xs.count,
                              s.re.data(), s.im.data(), xs.re.data(),
                              xs.im.data(), out.data());
}

void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi) {
  check_spectra(bx, by, bz, lo, hi);
  raw::qubit_spectra_scalar(&map.coef[0][0], bx.size(), bx.data(), by.data(),
                            bz.data(), lo.data(), hi.data());
}

}  // namespace scalar

#if defined(CHAN_ATLAS_WITH_AVX2)
namespace avx2 {

void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out) {
  if (!avx2_available()) throw Error("AVX2 kernels are not supported on this CPU");
  check_forms(a, xs, out);
  const SplitMatrix s = split_row_major(a);
  raw::quadratic_forms_avx2(static_cast<std::size_t>(xs.dim), xs.count,
                            s.re.data(), s.im.data(), xs.re.data(), xs.im.data(),
                            out.data());
}

void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi) {
  if (!avx2_available()) throw Error("AVX2 kernels are not supported on this CPU");
  check_spectra(bx, by, bz, lo, hi);
  raw::qubit_spectra_avx2(&map.coef[0][0], bx.size(), bx.data(), by.data(),
                          bz.data(), lo.data(), hi.data());
}

}  // namespace avx2
#endif

void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out) {
#if defined(CHAN_ATLAS_WITH_AVX2)
  if (active_backend() == Backend::kAvx2) {
    avx2::hermitian_quadratic_forms(a, xs, out);
    return;
  }
#endif
  scalar::hermitian_quadratic_forms(a, xs, out);
}

void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi) {
#if defined(CHAN_ATLAS_WITH_AVX2)
  if (active_backend() == Backend::kAvx2) {
    avx2::qubit_affine_spectra(map, bx, by, bz, lo, hi);
    return;
  }
#endif
  scalar::qubit_affine_spectra(map, bx, by, bz, lo, hi);
}

}  // namespace chan_atlas::kernels
