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

#pragma once

// Pointer-level kernel bodies, the only header the AVX2 translation unit
// includes.

#include <cstddef>

namespace chan_atlas::kernels::raw {

// a_re/a_im: row-major d x d. x_re/x_im: SoA batch, x[i * n + k].
void quadratic_forms_scalar(std::size_t d, std::size_t n, const double* a_re,
                            const double* a_im, const double* x_re,
                            const double* x_im, double* out);
void quadratic_forms_avx2(std::size_t d, std::size_t n, const double* a_re,
                          const double* a_im, const double* x_re,
                          const double* x_im, double* out);

// coef: 16 values, coef[4 * entry + j].
void qubit_spectra_scalar(const double* coef, std::size_t n, const double* bx,
                          const double* by, const double* bz, double* lo,
                          double* hi);
void qubit_spectra_avx2(const double* coef, std::size_t n, const double* bx,
                        const double* by, const double* bz, double* lo,
                        double* hi);

}  // namespace chan_atlas::kernels::raw
