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

// Long-time behaviour of a channel T on M_d: the Cesaro mean
// T_inf = lim (1/N) sum_{n<=N} T^n, the fixed-point space F_T, and its
// block decomposition F_T = 0 (+) sum_i M_{d_i} (x) sigma_i.

#include <string>
#include <vector>

#include "chan_atlas/channel.hpp"
#include "chan_atlas/classify.hpp"

namespace chan_atlas {

struct TransferMatrix {
  Index d = 0;
  Matrix matrix;  // d^2 x d^2, vec(T(X)) = matrix * vec(X)
};

/// Throws DimensionError unless d_in = d_out.
TransferMatrix transfer_matrix(const Channel& t);

/// Raised when T_inf fails the projection identities or complete positivity.
class FixedPointError : public Error {
 public:
  FixedPointError(const std::string& what, double compose_residual, double idempotent_residual)
      : Error(what), compose_residual(compose_residual), idempotent_residual(idempotent_residual) {}
  double compose_residual;
  double idempotent_residual;
};

struct CesaroProjection {
  Channel tinf;
  Matrix transfer;
  std::string method;  // "spectral" or "cesaro"
  int averaged_terms = 0;
  /// max of ||T o T_inf - T_inf||, ||T_inf o T - T_inf||.
  double compose_residual = 0.0;
  double idempotent_residual = 0.0;
};

/// Spectral projector of L onto ker(L - 1) along the other spectral
/// components, or iterated Cesaro doubling when the eigenvalue-1 part is
/// numerically defective. Throws FixedPointError when the result misses the
/// projection identities by more than 1e-8 or is not CPTP.
CesaroProjection cesaro_projection_details(const Channel& t);
Channel cesaro_projection(const Channel& t);

/// (1/N) sum_{n=1}^N L^n with N = 2^k doubled until successive averages
/// differ by less than `tol` in operator norm (N <= 2^max_doublings).
Matrix cesaro_average_doubling(const Matrix& l, double tol = 1e-10, int max_doublings = 27,
                               int* terms = nullptr);

struct FixedPointBlock {
  Index dim = 0;           // d_i
  Index multiplicity = 0;  // m_i, the size of sigma_i
  Matrix projector;        // onto C^{d_i} (x) C^{m_i} inside C^d
  Matrix state;            // sigma_i embedded in M_d (rank m_i)
  Matrix compact_state;    // sigma_i as an m_i x m_i density matrix
};

struct FixedPointStructure {
  Channel tinf;
  std::vector<Matrix> f_basis;  // Hermitian, orthonormal in Tr(AB)
  Matrix v_basis;               // d x dim V_T
  std::vector<FixedPointBlock> blocks;
  bool resolved = false;  // block decomposition verified
  std::string reason;
};

FixedPointStructure fixed_point_structure(const Channel& t, std::uint64_t seed = 0);

struct EbFixedPointReport {
  FixedPointStructure structure;
  bool blocks_trivial = false;  // all d_i = 1
  ClassVerdict ecq;             // reconstruct_ecq(T_inf, sigma_i)
  double max_norm_deviation = 0.0;
  bool holds = false;
};

/// Throws ValidationError unless is_entanglement_breaking(t) is Yes.
EbFixedPointReport verify_eb_fixed_point_theorem(const Channel& t, std::uint64_t seed = 0);

}  // namespace chan_atlas
