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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chan_atlas/classify.hpp"
#include "chan_atlas/entropy.hpp"
#include "chan_atlas/fixed_points.hpp"
#include "chan_atlas/image_geometry.hpp"
#include "chan_atlas/report.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chan_atlas;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

Matrix unit_matrix(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Outcome trine_boundary() {
  const Channel t = channels::trine_measure_prepare();
  const auto [a, b] = plane_axes(Plane::kDiag, 3);
  double dev = 0.0;
  const auto pts = image_boundary_2d(t, a, b, 256);
  for (const auto& p : pts) dev = std::max(dev, std::abs(std::hypot(p.x, p.y) - 1.0 / std::sqrt(6.0)));
  const PolytopeVerdict v = polytopic_decompose(t, 1).verdict;
  return {pts.size() == 256 && dev <= 1e-6 && v == PolytopeVerdict::kNotPolytopic,
          format("256 points, max radial deviation %.2e; verdict %s", dev, std::string(to_string(v)).c_str())};
}

Outcome fujiwara_algoet_vs_choi() {
  Rng rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int agree = 0;
  int checked = 0;
  int banded = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::array<double, 3> l{u(rng), u(rng), u(rng)};
    const FujiwaraAlgoet fa = fujiwara_algoet_check(l);
    const double slack = std::min(fa.slack_sum, fa.slack_difference);
    const double eig = min_eigenvalue(channels::unital_qubit_diagonal(l[0], l[1], l[2]).choi());
    if (std::abs(slack) <= 1e-9 || std::abs(eig) <= 1e-9) {
      ++banded;
      continue;
    }
    ++checked;
    if (fa.completely_positive == (eig > 0)) ++agree;
  }
  const bool half_fa = fujiwara_algoet_check({0.5, 0.5, 0.0}, 1e-9).completely_positive;
  const double half_eig = min_eigenvalue(channels::unital_qubit_diagonal(0.5, 0.5, 0.0).choi());
  return {agree == checked && half_fa && half_eig >= -1e-9,
          format("%d/%d agree (%d in boundary band); (1/2,1/2,0): FA %s, min Choi eigenvalue %.1e", agree, checked,
                 banded, half_fa ? "CP" : "not CP", half_eig)};
}

Outcome depolarizing_threshold() {
  const double lo = 1.0 / 3.0 - 1e-6;
  const double hi = 1.0 / 3.0 + 1e-6;
  const Verdict below = is_entanglement_breaking(channels::depolarizing(lo)).status;
  const Verdict above = is_entanglement_breaking(channels::depolarizing(hi)).status;
  double err = 0.0;
  for (double r : {lo, hi, 0.0, 0.5, 1.0}) {
    err = std::max(err, std::abs(choi_pt_min_eigenvalue(channels::depolarizing(r)) - (1 - 3 * r) / 4));
  }
  return {below == Verdict::kYes && above == Verdict::kNo && err <= 1e-9,
          format("EB below: %s, above: %s; PT eigenvalue error %.1e", std::string(to_string(below)).c_str(),
                 std::string(to_string(above)).c_str(), err)};
}

struct PolytopicRun {
  bool ok = true;
  int fixtures = 0;
  double worst_subspace = 0.0;
  double worst_reassembly = 0.0;
  std::vector<PolytopicDecomposition> decompositions;
  std::vector<Index> dims;
};

PolytopicRun& polytopic_runs() {
  static PolytopicRun run = [] {
    PolytopicRun r;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto f = fixtures::polytopic_fixture(seed);
      PolytopicDecomposition dec = polytopic_decompose(f.channel, seed);
      ++r.fixtures;
      if (dec.verdict != PolytopeVerdict::kPolytopic || dec.vertices.size() != f.vertices.size()) {
        r.ok = false;
        continue;
      }
      for (std::size_t i = 0; i < f.vertices.size(); ++i) {
        auto nearest = std::min_element(dec.vertices.begin(), dec.vertices.end(), [&](const auto& a, const auto& b) {
          return (a.state - f.vertices[i]).norm() < (b.state - f.vertices[i]).norm();
        });
        if ((nearest->state - f.vertices[i]).norm() > 1e-6) r.ok = false;
        r.worst_subspace =
            std::max(r.worst_subspace, subspace_distance(nearest->preimage_basis, f.preimages[i]));
      }
      for (Index i = 0; i < f.d_in; ++i) {
        for (Index j = 0; j < f.d_in; ++j) {
          const Matrix e = unit_matrix(f.d_in, i, j);
          r.worst_reassembly = std::max(r.worst_reassembly, operator_norm(f.channel.apply(e) - reassemble(dec, e)));
        }
      }
      r.decompositions.push_back(std::move(dec));
      r.dims.push_back(f.d_in);
    }
    r.ok = r.ok && r.worst_subspace <= 1e-6 && r.worst_reassembly <= 1e-8;
    return r;
  }();
  return run;
}

Outcome polytopic_round_trip() {
  const PolytopicRun& r = polytopic_runs();
  return {r.ok, format("%zu/%d fixtures Polytopic with exact k; max subspace distance %.1e, reassembly error %.1e",
                       r.decompositions.size(), r.fixtures, r.worst_subspace, r.worst_reassembly)};
}

Outcome dimension_bound() {
  std::vector<std::pair<PolytopicDecomposition, Index>> all;
  const PolytopicRun& r = polytopic_runs();
  for (std::size_t i = 0; i < r.decompositions.size(); ++i) all.emplace_back(r.decompositions[i], r.dims[i]);
  Rng rng(5);
  std::vector<Channel> more = {fixtures::disc_counterexample(), fixtures::ball_counterexample(),
                               channels::dephasing(3), channels::constant(random_density_matrix(3, rng), 4),
                               fixtures::cq(fixtures::tetrahedron_states(0.8))};
  for (std::uint64_t seed = 0; seed < 10; ++seed) more.push_back(fixtures::ecq_fixture(seed));
  for (const Channel& t : more) all.emplace_back(polytopic_decompose(t, 3), t.d_in());
  int polytopic = 0;
  int holds = 0;
  for (const auto& [dec, d] : all) {
    if (dec.verdict != PolytopeVerdict::kPolytopic) continue;
    ++polytopic;
    if (dimension_bound_check(dec, d).holds) ++holds;
  }
  return {polytopic > 0 && holds == polytopic,
          format("bound holds on %d/%d Polytopic fixtures (%zu fixtures checked)", holds, polytopic, all.size())};
}

Outcome ecq_image_additivity() {
  Rng rng(61);
  double worst_gap = -1e300;
  double worst_retraction = 0.0;
  int with_remainder = 0;
  bool all_yes = true;
  ImageGapOptions opts;
  opts.n_directions = 200;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Channel t = fixtures::ecq_fixture(seed);
    const ClassVerdict v = reconstruct_ecq(t, polytopic_decompose(t, seed));
    if (v.status != Verdict::kYes || !v.witness.ecq) {
      all_yes = false;
      continue;
    }
    double rem = 0.0;
    for (const Matrix& m : v.witness.ecq->remainders) rem = std::max(rem, m.norm());
    if (rem > 1e-6) ++with_remainder;
    worst_retraction = std::max(worst_retraction, map_distance(compose(t, v.witness.ecq->retraction()), t));

    const Index d_in = std::uniform_int_distribution<int>(2, 3)(rng);
    const Index d_out = std::uniform_int_distribution<int>(2, 3)(rng);
    const Channel s = oracle::random_channel(d_in, d_out, 2, rng);
    worst_gap = std::max(worst_gap, image_additivity_gap(t, s, derive_seed(61, seed), opts).gap);
  }
  return {all_yes && with_remainder > 0 && worst_gap <= 1e-6 && worst_retraction <= 1e-9,
          format("10 fixtures (%d with nonzero remainder): max gap %.1e over 200 directions; max |T o S - T| %.1e",
                 with_remainder, worst_gap, worst_retraction)};
}

Outcome depolarizing_image_gap() {
  const Channel half = channels::depolarizing(0.5);
  const Channel id = channels::identity(2);
  ImageGapOptions opts;
  opts.n_directions = 200;
  const GapReport g = image_additivity_gap(half, id, 7, opts);
  const double pt = choi_pt_min_eigenvalue(half);
  double grid_gap = 0.0;
  if (g.direction) grid_gap = g.lhs - oracle::product_support_grid(half, id, *g.direction, 100);
  return {g.gap > 1e-4 && g.direction.has_value() && std::abs(pt + 0.125) <= 1e-9 && grid_gap > 1e-4,
          format("gap %.4f with witness direction; grid-oracle gap %.4f; PT eigenvalue %.6f", g.gap, grid_gap, pt)};
}

Outcome counterexamples() {
  std::string detail;
  bool ok = true;
  for (const auto& [name, t] : std::vector<std::pair<std::string, Channel>>{
           {"disc", fixtures::disc_counterexample()}, {"ball", fixtures::ball_counterexample()}}) {
    const Json v = classify_report(t, ReportOptions{})["verdicts"];
    const std::string got = v["eb"]["status"].get<std::string>() + "/" + v["polytopic"]["status"].get<std::string>() +
                            "/" + v["ecq"]["status"].get<std::string>() + "/" +
                            v["universally_image_additive"]["status"].get<std::string>();
    ok = ok && got == "Yes/Yes/No/No";
    detail += (detail.empty() ? "" : "; ") + name + " EB/polytopic/eCQ/UIA = " + got;
  }
  return {ok, detail};
}

Outcome fixed_points() {
  double worst = 0.0;
  int eb = 0;
  bool eb_ok = true;
  double worst_norm = 0.0;
  for (const Channel& t : fixtures::square_fixtures()) {
    const Channel tinf = cesaro_projection(t);
    worst = std::max({worst, map_distance(compose(tinf, tinf), tinf), map_distance(compose(t, tinf), tinf)});
    if (is_entanglement_breaking(t).status != Verdict::kYes) continue;
    ++eb;
    const EbFixedPointReport r = verify_eb_fixed_point_theorem(t, 3);
    eb_ok = eb_ok && r.blocks_trivial && r.max_norm_deviation <= 1e-7;
    worst_norm = std::max(worst_norm, r.max_norm_deviation);
  }
  const Channel swap = fixtures::diagonal_swap();
  const Channel tinf = cesaro_projection(swap);
  const Matrix brute = oracle::cesaro_average(swap.transfer(), 1000);
  const double brute_err = (tinf.transfer() - brute).cwiseAbs().maxCoeff();
  const double avg_err = map_distance(tinf, channels::constant(Matrix(Matrix::Identity(2, 2) / 2.0), 2));
  return {worst <= 1e-8 && eb > 0 && eb_ok && brute_err <= 1e-7 && avg_err <= 1e-7,
          format("projection residual %.1e on %zu fixtures; %d EB fixtures with trivial blocks, max |M_i| deviation "
                 "%.1e; swap vs brute force %.1e",
                 worst, fixtures::square_fixtures().size(), eb, worst_norm, brute_err)};
}

Outcome hiding() {
  const std::vector<Matrix> verts = fixtures::tetrahedron_states(1.0);
  const HidingResult good = build_hiding_channel(channels::depolarizing(1.0 / 3.0), verts, 9);
  const HidingResult bad = build_hiding_channel(channels::depolarizing(0.5), verts, 9);
  double h = 1.0;
  double h1 = 1.0;
  if (good.accepted) {
    h = min_output_entropy(*good.channel, 1.0, 9).value;
    h1 = min_output_entropy(fixtures::cq(verts), 1.0, 9).value;
  }
  const bool witness = !bad.accepted && bad.direction.size() > 0 && bad.max_excess > 1e-6;
  return {good.accepted && std::abs(h - h1) <= 1e-6 && std::abs(h1) <= 1e-6 && witness,
          format("Delta_1/3 accepted, H_min %.1e vs %.1e; Delta_1/2 %s with excess %.4f", h, h1,
                 bad.accepted ? "accepted" : "rejected", bad.max_excess)};
}

Outcome entropy_additivity() {
  const Channel cq = fixtures::cq({fixtures::diag({0.9, 0.1}), fixtures::diag({0.3, 0.7})});
  const Channel delta = channels::depolarizing(1.0 / 3.0);
  const Channel id = channels::identity(2);
  double lo = 1e300;
  double hi = -1e300;
  std::uint64_t seed = 11;
  for (const auto& [a, b] :
       std::vector<std::pair<Channel, Channel>>{{cq, cq}, {cq, delta}, {delta, delta}, {id, id}}) {
    const GapReport g = entropy_additivity_gap(a, b, 1.0, seed++);
    lo = std::min(lo, g.gap);
    hi = std::max(hi, g.gap);
  }
  return {lo >= -1e-7 && hi <= 1e-6, format("gaps within [%.1e, %.1e] over 4 pairs", lo, hi)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"trine image boundary is a circle of radius 1/sqrt(6)", trine_boundary},
      {"Fujiwara-Algoet conditions agree with Choi positivity", fujiwara_algoet_vs_choi},
      {"depolarizing EB threshold at r = 1/3", depolarizing_threshold},
      {"polytopic decomposition round trip", polytopic_round_trip},
      {"dimension bound on polytopic images", dimension_bound},
      {"eCQ channels are image additive with a retraction", ecq_image_additivity},
      {"Delta_1/2 (x) id has a positive image additivity gap", depolarizing_image_gap},
      {"EB polytopic channels that are not eCQ", counterexamples},
      {"fixed-point projection and block structure", fixed_points},
      {"hiding construction", hiding},
      {"entropy additivity on small pairs", entropy_additivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu  %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
