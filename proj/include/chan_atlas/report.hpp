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

// Report assembly for the command-line tool: JSON encodings of every
// module's results, the end-to-end pipeline, and plot data for image
// boundaries. Reports are deterministic for a fixed seed.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "chan_atlas/classify.hpp"
#include "chan_atlas/entropy.hpp"
#include "chan_atlas/fixed_points.hpp"
#include "chan_atlas/image_geometry.hpp"
#include "json.hpp"

namespace chan_atlas {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportFormatVersion = "1";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  std::vector<double> entropy_p{1.0, 2.0};
  int entropy_restarts = 64;
  int image_directions = 200;
  bool bits = false;
  bool timings = false;
};

// Encodings. Complex scalars are [re, im]; matrices are lists of rows;
// non-finite numbers are written as null.
Json complex_json(Complex z);
Json vector_json(const Vector& v);
Json matrix_json(const Matrix& m);
Json verdict_json(const ClassVerdict& v);
Json decomposition_json(const PolytopicDecomposition& dec);
Json entropy_json(const EntropyResult& r, bool bits);
Json gap_json(const GapReport& g, bool bits);
Json channel_summary(const Channel& t);

/// format_version, command, tool, seed and tolerances.
Json report_header(std::string_view command, const ReportOptions& opts);

/// TP, unital, CPTP, EB, CQ, eCQ, polytopic and universally-image-additive
/// verdicts with witnesses, plus the decomposition they rest on.
Json classify_report(const Channel& t, const ReportOptions& opts);

/// Fixed-point summary for a square channel; steps that fail are reported
/// with status Indeterminate and the reason.
Json fixed_points_report(const Channel& t, const ReportOptions& opts);

/// Full pipeline: verify_cptp, classification, polytopic decomposition,
/// entropies, fixed points (square channels) and image additivity with
/// the identity on the input space. Throws NonCptpError for non-CPTP input.
Json run_pipeline(const Channel& t, const ReportOptions& opts);

// ---------------------------------------------------------------------------
// Plot data

enum class Plane { kDiag, kXY, kXZ, kYZ };

/// Throws ValidationError for an unknown name.
Plane parse_plane(std::string_view name);
std::string_view to_string(Plane p);

/// Traceless orthonormal axes: for kDiag, diag(2,-1,-1,0..)/sqrt6 and
/// diag(0,1,-1,0..)/sqrt2 (needs d >= 3); otherwise two Pauli matrices
/// (needs d = 2). Throws DimensionError otherwise.
std::pair<Matrix, Matrix> plane_axes(Plane p, Index d);

std::string boundary_csv(const std::vector<BoundaryPoint>& points);
std::string boundary_svg(const std::vector<BoundaryPoint>& points);

/// Writes <prefix>.csv (theta,x,y) and <prefix>.svg; returns the points.
/// Throws Error when a file cannot be written.
std::vector<BoundaryPoint> emit_plot_data(const Channel& t, Plane plane, int n_points,
                                          const std::filesystem::path& prefix);

/// Indented plain-text rendering of a report; long numeric arrays are
/// summarized.
std::string render_text(const Json& report);

}  // namespace chan_atlas
