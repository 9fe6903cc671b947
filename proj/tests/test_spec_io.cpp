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
#include <filesystem>
#include <fstream>
#include <string>

#include "chan_atlas/report.hpp"
#include "chan_atlas/spec_io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace chan_atlas;

namespace {

double choi_distance(const Channel& a, const Channel& b) { return (a.choi() - b.choi()).norm(); }

template <typename E>
std::string error_of(const std::string& text) {
  try {
    parse_channel_spec(text);
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("parse_channel_spec: every kind") {
  CHECK(choi_distance(parse_channel_spec(R"({"kind": "depolarizing", "r": 0.25, "d": 3})").channel,
                      channels::depolarizing(0.25, 3)) <= 1e-12);
  CHECK(choi_distance(parse_channel_spec(R"({"kind": "unital_qubit_diag", "lambda": [0.5, 0.5, 0]})").channel,
                      channels::unital_qubit_diagonal(0.5, 0.5, 0.0)) <= 1e-12);
  CHECK(choi_distance(parse_channel_spec(R"({"kind": "trine"})").channel,
                      channels::trine_measure_prepare()) <= 1e-12);

  const ChannelSpec kraus = parse_channel_spec(
      R"({"format_version": "1", "kind": "kraus", "payload": [[[1, 0], [0, [0, 1]]]]})");
  CHECK(kraus.kind == "kraus");
  CHECK(kraus.cptp.cptp);
  Matrix s = Matrix::Identity(2, 2);
  s(1, 1) = Complex(0, 1);
  CHECK(choi_distance(kraus.channel, Channel::from_kraus({s})) <= 1e-12);

  const Channel choi = parse_channel_spec(
      R"({"kind": "choi", "d_in": 1, "d_out": 2, "payload": [[0.5, 0], [0, 0.5]]})").channel;
  CHECK(choi.d_in() == 1);
  CHECK(choi.d_out() == 2);

  const Channel povm = parse_channel_spec(R"({"kind": "povm", "payload": {
      "effects": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
      "states": [[[1, 0], [0, 0]], [[0.5, 0], [0, 0.5]]]}})").channel;
  CHECK(choi_distance(povm, Channel::from_povm({fixtures::diag({1, 0}), fixtures::diag({0, 1})},
                                               {fixtures::diag({1, 0}), fixtures::diag({0.5, 0.5})})) <= 1e-12);

  const Channel cq = parse_channel_spec(R"({"kind": "cq", "payload": {
      "basis": [[1, 0], [0, 1]], "states": [[[1]], [[1]]]}})").channel;
  CHECK(cq.d_out() == 1);

  const Channel sum = parse_channel_spec(R"({"kind": "direct_sum", "payload": {"blocks": [
      {"kind": "depolarizing", "r": 0.5}, {"kind": "depolarizing", "r": 0.25}]}})").channel;
  CHECK(choi_distance(sum, direct_sum(channels::depolarizing(0.5), channels::depolarizing(0.25))) <= 1e-12);
}

TEST_CASE("parse_channel_spec: errors name the field") {
  CHECK(error_of<ParseError>("{\n  \"kind\": \n") .find("line 3") != std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "warp"})").find("unknown kind") != std::string::npos);
  CHECK(error_of<ParseError>(R"({"r": 0.5})").find("'kind'") != std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "depolarizing"})").find("'r'") != std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "kraus", "payload": [[[1, 0], [0, "x"]]]})").find("payload[0][1][1]") !=
        std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "kraus", "payload": [[[1, 0], [0]]]})").find("ragged") !=
        std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "direct_sum", "payload": {"blocks": [{"kind": "depolarizing"}]}})")
            .find("payload.blocks[0].r") != std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "trine", "format_version": "2"})").find("format_version") !=
        std::string::npos);
  CHECK(error_of<ParseError>(R"({"kind": "trine", "allow_non_cptp": 1})").find("allow_non_cptp") !=
        std::string::npos);
  CHECK(error_of<ParseError>("[1, 2]").find("top level") != std::string::npos);
  CHECK(error_of<DimensionError>(R"({"kind": "depolarizing", "r": 0.5, "d_out": 3})").find("d_out") !=
        std::string::npos);
  CHECK(error_of<DimensionError>(R"({"kind": "choi", "d_in": 2, "d_out": 2, "payload": [[1]]})") !=
        "<no error>");
  CHECK_THROWS_AS(load_channel_spec("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("parse_channel_spec: non-CPTP maps") {
  const std::string transpose = R"({"kind": "unital_qubit_diag", "lambda": [1, -1, 1])";
  try {
    parse_channel_spec(transpose + "}");
    FAIL("expected NonCptpError");
  } catch (const NonCptpError& e) {
    CHECK(!e.report.cptp);
    CHECK(std::abs(e.report.min_choi_eigenvalue + 0.5) <= 1e-9);
  }
  const ChannelSpec allowed = parse_channel_spec(transpose + R"(, "allow_non_cptp": true})");
  CHECK(allowed.allow_non_cptp);
  CHECK(!allowed.cptp.cptp);

  const Json report = classify_report(allowed.channel, ReportOptions{});
  CHECK(report["verdicts"]["cptp"]["status"] == "No");
  CHECK(report["verdicts"]["eb"]["status"] == "Indeterminate");
}

TEST_CASE("report: classify and pipeline are deterministic") {
  ReportOptions opts;
  opts.seed = 5;
  opts.entropy_restarts = 8;
  opts.image_directions = 20;
  const Channel t = fixtures::disc_counterexample();
  const Json a = classify_report(t, opts);
  CHECK(a.dump() == classify_report(t, opts).dump());
  CHECK(a["verdicts"]["eb"]["status"] == "Yes");
  CHECK(a["verdicts"]["polytopic"]["status"] == "Yes");
  CHECK(a["verdicts"]["ecq"]["status"] == "No");
  CHECK(a["verdicts"]["universally_image_additive"]["status"] == "No");
  CHECK(a["polytope"]["k"] == 6);
  CHECK(!a.contains("timings"));

  const Json p = run_pipeline(channels::depolarizing(1.0 / 3.0), opts);
  CHECK(p.dump() == run_pipeline(channels::depolarizing(1.0 / 3.0), opts).dump());
  CHECK(p["entropy"].size() == 2);
  CHECK(p["fixed_points"]["status"] == "ok");
  CHECK(p["fixed_points"]["eb_theorem"]["holds"] == true);

  opts.bits = true;
  const Json bits = run_pipeline(channels::depolarizing(1.0 / 3.0), opts);
  CHECK(std::abs(bits["entropy"][0]["value"].get<double>() * std::log(2.0) -
                 p["entropy"][0]["value"].get<double>()) <= 1e-12);
}

TEST_CASE("report: JSON encodings") {
  CHECK(complex_json(Complex(1.5, -2)).dump() == "[1.5,-2.0]");
  Matrix m(1, 2);
  m << Complex(1, 0), Complex(0, 1);
  CHECK(matrix_json(m).dump() == "[[[1.0,0.0],[0.0,1.0]]]");
}

TEST_CASE("plot data: planes and files") {
  CHECK(parse_plane("diag") == Plane::kDiag);
  CHECK(to_string(Plane::kYZ) == "yz");
  CHECK_THROWS_AS(parse_plane("zz"), ValidationError);
  CHECK_THROWS_AS(plane_axes(Plane::kDiag, 2), DimensionError);
  CHECK_THROWS_AS(plane_axes(Plane::kXY, 3), DimensionError);
  const auto [a, b] = plane_axes(Plane::kDiag, 3);
  CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
  CHECK(std::abs((a * b).trace()) <= 1e-12);
  CHECK(std::abs(a.trace()) <= 1e-12);

  const auto dir = std::filesystem::temp_directory_path() / "chan_atlas_plot_test";
  std::filesystem::create_directories(dir);
  const auto pts = emit_plot_data(channels::depolarizing(0.5), Plane::kXY, 64, dir / "half");
  REQUIRE(pts.size() == 64);
  for (const auto& p : pts) CHECK(std::abs(std::hypot(p.x, p.y) - 0.5) <= 1e-9);
  std::ifstream csv(dir / "half.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "theta,x,y");
  CHECK(std::filesystem::exists(dir / "half.svg"));
  CHECK(boundary_csv(pts) == boundary_csv(emit_plot_data(channels::depolarizing(0.5), Plane::kXY, 64, dir / "half")));
  CHECK_THROWS_AS(emit_plot_data(channels::depolarizing(0.5), Plane::kXY, 8, "/nonexistent/dir/x"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("render_text: nested reports") {
  Json j = {{"a", 1}, {"b", {{"c", "x"}}}, {"list", {1, 2}}};
  CHECK(render_text(j) == "a: 1\nb:\n  c: x\nlist: [1, 2]\n");
}
