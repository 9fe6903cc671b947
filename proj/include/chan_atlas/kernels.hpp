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

// Batched inner loops used by the sampling code paths (support-function
// sweeps, Bloch-grid entropy scans, brute-force oracles). Each kernel has a
// portable scalar reference and, on x86-64, an AVX2/FMA variant; the
// dispatching entry points pick the widest variant the CPU supports.
//
// Batches use a structure-of-arrays layout: component i of sample k lives at
// [i * count + k].

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "chan_atlas/linalg.hpp"

namespace chan_atlas::kernels {

enum class Backend { kScalar, kAvx2 };

/// Backend used by the dispatching entry points. Selected once: AVX2 when
/// compiled in and reported by the CPU, unless CHAN_ATLAS_KERNELS=scalar.
Backend active_backend();
bool avx2_available();
std::string_view backend_name(Backend b);

/// A batch of complex vectors of a common dimension in split re/im SoA form.
struct VectorBatch {
  Index dim = 0;
  std::size_t count = 0;
  std::vector<double> re;  // re[i * count + k]
  std::vector<double> im;

  VectorBatch() = default;
  VectorBatch(Index dim, std::size_t count);
  void set(std::size_t k, const Vector& v);
  Vector get(std::size_t k) const;
};

/// Real 2x2 Hermitian entries (a, d real diagonal; c = c_re + i c_im the
/// upper off-diagonal) written as affine functions of a 3-vector b:
///   entry = coef[entry][0] + sum_j coef[entry][j+1] * b_j.
struct QubitAffine {
  double coef[4][4] = {};
};

// out[k] = Re(x_k^* A x_k) for Hermitian A.
void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out);

// Eigenvalues (lo <= hi) of the 2x2 Hermitian matrices parameterized by
// the points (bx[k], by[k], bz[k]).
void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi);

namespace scalar {
void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out);
void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi);
}  // namespace scalar

#if defined(CHAN_ATLAS_WITH_AVX2)
namespace avx2 {
void hermitian_quadratic_forms(const Matrix& a, const VectorBatch& xs,
                               std::span<double> out);
void qubit_affine_spectra(const QubitAffine& map, std::span<const double> bx,
                          std::span<const double> by, std::span<const double> bz,
                          std::span<double> lo, std::span<double> hi);
}  // namespace avx2
#endif

}  // namespace chan_atlas::kernels
