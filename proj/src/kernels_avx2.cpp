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

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has checked the CPU flags.

#include <immintrin.h>

#include "kernels_raw.hpp"

namespace chan_atlas::kernels::raw {

void quadratic_forms_avx2(std::size_t d, std::size_t n, const double* a_re,
                          const double* a_im, const double* x_re,
                          const double* x_im, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < d; ++i) {
      __m256d yr = _mm256_setzero_pd();
      __m256d yi = _mm256_setzero_pd();
      for (std::size_t j = 0; j < d; ++j) {
        const __m256d ar = _mm256_set1_pd(a_re[i * d + j]);
        const __m256d ai = _mm256_set1_pd(a_im[i * d + j]);
        const __m256d xr = _mm256_loadu_pd(x_re + j * n + k);
        const __m256d xi = _mm256_loadu_pd(x_im + j * n + k);
        yr = _mm256_fmadd_pd(ar, xr, yr);
        yr = _mm256_fnmadd_pd(ai, xi, yr);
        yi = _mm256_fmadd_pd(ar, xi, yi);
        yi = _mm256_fmadd_pd(ai, xr, yi);
      }
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(x_re + i * n + k), yr, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(x_im + i * n + k), yi, acc);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  // Tail lanes use the same arithmetic one sample at a time.
  for (; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double yr = 0.0;
      double yi = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        yr += a_re[i * d + j] * x_re[j * n + k] - a_im[i * d + j] * x_im[j * n + k];
        yi += a_re[i * d + j] * x_im[j * n + k] + a_im[i * d + j] * x_re[j * n + k];
      }
      acc += x_re[i * n + k] * yr + x_im[i * n + k] * yi;
    }
    out[k] = acc;
  }
}

void qubit_spectra_avx2(const double* coef, std::size_t n, const double* bx,
                        const double* by, const double* bz, double* lo,
                        double* hi) {
  __m256d cv[16];
  for (int r = 0; r < 16; ++r) cv[r] = _mm256_set1_pd(coef[r]);
  const __m256d half = _mm256_set1_pd(0.5);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(bx + k);
    const __m256d y = _mm256_loadu_pd(by + k);
    const __m256d z = _mm256_loadu_pd(bz + k);
    __m256d e[4];
    for (int r = 0; r < 4; ++r) {
      __m256d v = _mm256_fmadd_pd(cv[4 * r + 1], x, cv[4 * r]);
      v = _mm256_fmadd_pd(cv[4 * r + 2], y, v);
      e[r] = _mm256_fmadd_pd(cv[4 * r + 3], z, v);
    }
    const __m256d mean = _mm256_mul_pd(half, _mm256_add_pd(e[0], e[1]));
    const __m256d diff = _mm256_mul_pd(half, _mm256_sub_pd(e[0], e[1]));
    __m256d sq = _mm256_mul_pd(diff, diff);
    sq = _mm256_fmadd_pd(e[2], e[2], sq);
    sq = _mm256_fmadd_pd(e[3], e[3], sq);
    const __m256d rad = _mm256_sqrt_pd(sq);
    _mm256_storeu_pd(lo + k, _mm256_sub_pd(mean, rad));
    _mm256_storeu_pd(hi + k, _mm256_add_pd(mean, rad));
  }
  if (k < n) qubit_spectra_scalar(coef, n - k, bx + k, by + k, bz + k, lo + k, hi + k);
}

}  // namespace chan_atlas::kernels::raw
