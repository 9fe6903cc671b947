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

// Membership tests for the channel classes
//   CQ  subset  essentially CQ  subset  entanglement breaking,
// each returning Yes / No / Indeterminate together with a checkable witness.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chan_atlas/channel.hpp"
#include "chan_atlas/image_geometry.hpp"

namespace chan_atlas {

enum class Verdict { kYes, kNo, kIndeterminate };
std::string_view to_string(Verdict v);

/// One product term of a separable Choi decomposition J = sum output (x) input.
struct SeparableTerm {
  Matrix output;
  Matrix input;
};

/// rho -> sum_i Tr[(e_i e_i^* + R_i) rho] sigma_i with ||e_i e_i^* + R_i|| = 1.
struct EcqCertificate {
  std::vector<Vector> vectors;
  std::vector<Matrix> remainders;
  std::vector<Matrix> states;

  Channel channel() const;
  /// S(rho) = sum_i Tr[(e_i e_i^* + R_i) rho] e_i e_i^*, so that T o S = T.
  Channel retraction() const;
};

struct Witness {
  std::optional<double> eigenvalue;
  std::optional<Vector> eigenvector;
  std::vector<SeparableTerm> separable_terms;
  std::vector<Vector> basis;
  std::vector<Matrix> states;
  std::vector<Matrix> effects;
  std::optional<std::pair<Matrix, Matrix>> noncommuting_pair;
  std::optional<double> commutator_norm;
  std::optional<EcqCertificate> ecq;
  /// Z with Tr_out[(sigma_i (x) 1) Z] >= 0 for every i and Tr(Z C) < 0,
  /// proving that C = sum sigma_i (x) P_i has no PSD solution.
  std::optional<Matrix> farkas_certificate;
  std::optional<double> farkas_value;
  std::optional<Channel> retraction;
  std::optional<double> retraction_error;
  std::optional<Matrix> direction;
};

struct ClassVerdict {
  Verdict status = Verdict::kIndeterminate;
  Witness witness;
  double tolerance_used = 0.0;
  std::string reason;
};

/// PPT test on the Choi state, exact for (d_in, d_out) in {(2,2), (2,3),
/// (3,2)}; otherwise Yes needs a separable decomposition read off the
/// representation (measure-prepare forms, rank-one Kraus operators, direct
/// sums of decisive blocks). Throws ValidationError for non-CPTP input.
ClassVerdict is_entanglement_breaking(const Channel& t, const Tolerances& tol = {});
/// Same, additionally using a verified block decomposition T = T1 + T2 of
/// the input space (T1 is CQ, so EB of T reduces to EB of T2).
ClassVerdict is_entanglement_breaking(const Channel& t, const PolytopicDecomposition& dec,
                                      const Tolerances& tol = {});

/// T is CQ exactly when the range of the dual map is commutative; the basis
/// then diagonalizes every T^*(H).
ClassVerdict is_cq(const Channel& t, const Tolerances& tol = {});

struct EcqOptions {
  double psd_tol = 1e-8;
  double sum_tol = 1e-8;
  double norm_tol = 1e-7;
  double map_tol = 1e-9;
  int max_iterations = 40000;
};

/// Solves T(rho) = sum_i Tr(M_i rho) sigma_i for the effects. Affinely
/// independent vertices give a unique solution through the dual basis of
/// {sigma_i}. For dependent vertices the PSD solutions form a convex set,
/// searched by projected gradient: no PSD solution is proven by a Farkas
/// certificate, a solution with unit-norm effects gives Yes, anything else
/// is Indeterminate.
ClassVerdict reconstruct_ecq(const Channel& t, const std::vector<Matrix>& vertices,
                             const std::vector<Matrix>& preimages = {},
                             const EcqOptions& opts = {});
ClassVerdict reconstruct_ecq(const Channel& t, const PolytopicDecomposition& dec,
                             const EcqOptions& opts = {});

/// Universal image additivity, decided through the essentially-CQ property;
/// a Yes carries the retraction S with T o S = T.
ClassVerdict is_universally_image_additive(const Channel& t, std::uint64_t seed,
                                           const Tolerances& tol = {});
ClassVerdict is_universally_image_additive(const Channel& t,
                                           const PolytopicDecomposition& dec,
                                           const Tolerances& tol = {});

struct DirectSumConsistency {
  ClassVerdict first;
  ClassVerdict second;
  ClassVerdict sum;
  double sum_min_pt_eigenvalue = 0.0;
  bool decisive = false;
  bool consistent = false;
};

DirectSumConsistency eb_direct_sum_consistency(const Channel& t1, const Channel& t2,
                                               const Tolerances& tol = {});

/// Smallest eigenvalue of the partial transpose of the Choi state.
double choi_pt_min_eigenvalue(const Channel& t);

}  // namespace chan_atlas
