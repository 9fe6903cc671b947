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

#include <cmath>

#include "kernels_raw.hpp"

namespace chan_atlas::kernels::raw {

void quadratic_forms_scalar(std::size_t d, std::size_t n, const double* a_re,
                            const double* a_im, const double* x_re,
                            const double* x_im, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
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

void qubit_spectra_scalar(const double* coef, std::size_t n, const double* bx,
                          const double* by, const double* bz, double* lo,
                          double* hi) {
  for (std::size_t k = 0; k < n; ++k) {
    double e[4];
    for (int r = 0; r < 4; ++r) {
      e[r] = coef[4 * r] + coef[4 * r + 1] * bx[k] + coef[4 * r + 2] * by[k] +
             coef[4 * r + 3] * bz[k];
    }
    const double mean = 0.5 * (e[0] + e[1]);
    const double diff = 0.5 * (e[0] - e[1]);
    const double rad = std::sqrt(diff * diff + e[2] * e[2] + e[3] * e[3]);
    lo[k] = mean - rad;
    hi[k] = mean + rad;
  }
}

}  // namespace chan_atlas::kernels::raw
