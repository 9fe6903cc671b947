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

#include "chan_atlas/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chan_atlas/spec_io.hpp"

namespace chan_atlas {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Json matrices_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

Json simple_verdict(Verdict status, double tolerance, std::string reason, Json witness) {
  Json v;
  v["status"] = std::string(to_string(status));
  v["tolerance"] = tolerance;
  v["reason"] = std::move(reason);
  v["witness"] = std::move(witness);
  return v;
}

Json failed_step(const std::exception& e) {
  return simple_verdict(Verdict::kIndeterminate, 0.0, std::string("step failed: ") + e.what(),
                        Json::object());
}

Verdict from_polytope(PolytopeVerdict v) {
  switch (v) {
    case PolytopeVerdict::kPolytopic: return Verdict::kYes;
    case PolytopeVerdict::kNotPolytopic: return Verdict::kNo;
    case PolytopeVerdict::kIndeterminate: break;
  }
  return Verdict::kIndeterminate;
}

double unit_scale(bool bits) { return bits ? 1.0 / std::log(2.0) : 1.0; }

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on) {}
  template <class F>
  auto time(const char* name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    if (on_) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      timings_[name] = ms.count();
    }
    return result;
  }
  const Json& timings() const { return timings_; }

 private:
  bool on_;
  Json timings_ = Json::object();
};

}  // namespace

Json verdict_json(const ClassVerdict& v) {
  const Witness& w = v.witness;
  Json j = Json::object();
  if (w.eigenvalue) j["eigenvalue"] = *w.eigenvalue;
  if (w.eigenvector) j["eigenvector"] = vector_json(*w.eigenvector);
  if (!w.separable_terms.empty()) {
    Json terms = Json::array();
    for (const auto& t : w.separable_terms) {
      terms.push_back({{"output", matrix_json(t.output)}, {"input", matrix_json(t.input)}});
    }
    j["separable_terms"] = std::move(terms);
  }
  if (!w.basis.empty()) {
    Json basis = Json::array();
    for (const auto& b : w.basis) basis.push_back(vector_json(b));
    j["basis"] = std::move(basis);
  }
  if (!w.states.empty()) j["states"] = matrices_json(w.states);
  if (!w.effects.empty()) j["effects"] = matrices_json(w.effects);
  if (w.noncommuting_pair) {
    j["noncommuting_pair"] = Json::array({matrix_json(w.noncommuting_pair->first),
                                          matrix_json(w.noncommuting_pair->second)});
  }
  if (w.commutator_norm) j["commutator_norm"] = *w.commutator_norm;
  if (w.ecq) {
    Json vecs = Json::array();
    for (const auto& e : w.ecq->vectors) vecs.push_back(vector_json(e));
    j["ecq"] = {{"vectors", std::move(vecs)},
                {"remainders", matrices_json(w.ecq->remainders)},
                {"states", matrices_json(w.ecq->states)}};
  }
  if (w.farkas_certificate) j["farkas_certificate"] = matrix_json(*w.farkas_certificate);
  if (w.farkas_value) j["farkas_value"] = *w.farkas_value;
  if (w.retraction) j["retraction_choi"] = matrix_json(w.retraction->choi());
  if (w.retraction_error) j["retraction_error"] = *w.retraction_error;
  if (w.direction) j["direction"] = matrix_json(*w.direction);
  return simple_verdict(v.status, v.tolerance_used, v.reason, std::move(j));
}

namespace {

// Infinite excess or separation (no vertices, a single vertex) is written as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(); }

}  // namespace

Json decomposition_json(const PolytopicDecomposition& dec) {
  Json j;
  j["verdict"] = std::string(to_string(dec.verdict));
  j["k"] = dec.vertices.size();
  Json verts = Json::array();
  for (const auto& v : dec.vertices) {
    verts.push_back({{"state", matrix_json(v.state)},
                     {"preimage_dimension", v.preimage_basis.cols()},
                     {"hit_count", v.hit_count}});
  }
  j["vertices"] = std::move(verts);
  j["w_dimension"] = dec.w_basis.cols();
  j["max_support_excess"] = finite_or_null(dec.max_support_excess);
  j["reconstruction_error"] = dec.reconstruction_error;
  j["min_vertex_separation"] = finite_or_null(dec.min_vertex_separation);
  j["witness_direction"] = dec.witness_direction ? matrix_json(*dec.witness_direction) : Json();
  j["reason"] = dec.reason;
  return j;
}

Json entropy_json(const EntropyResult& r, bool bits) {
  return {{"p", r.p},
          {"value", r.value * unit_scale(bits)},
          {"unit", bits ? "bits" : "nats"},
          {"minimizer", vector_json(r.minimizer.amplitudes())},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged},
          {"gradient_norm", r.gradient_norm}};
}

Json gap_json(const GapReport& g, bool bits) {
  Json j;
  j["kind"] = std::string(to_string(g.kind));
  j["seed"] = g.seed;
  j["n_samples"] = g.n_samples;
  j["certified"] = g.certified;
  if (g.kind == GapKind::kEntropyAdditivity) {
    const double s = unit_scale(bits);
    j["unit"] = bits ? "bits" : "nats";
    j["gap"] = g.gap * s;
    j["first"] = g.first * s;
    j["second"] = g.second * s;
    j["joint"] = g.joint * s;
    j["state"] = g.state ? vector_json(*g.state) : Json();
  } else {
    j["gap"] = g.gap;
    j["min_difference"] = g.min_difference;
    j["lhs"] = g.lhs;
    j["rhs"] = g.rhs;
    j["restart_spread"] = g.restart_spread;
    j["direction"] = g.direction ? matrix_json(*g.direction) : Json();
  }
  return j;
}

Json channel_summary(const Channel& t) {
  return {{"d_in", t.d_in()}, {"d_out", t.d_out()}, {"representation", std::string(t.form_name())}};
}

Json report_header(std::string_view command, const ReportOptions& opts) {
  Json j;
  j["format_version"] = std::string(kReportFormatVersion);
  j["command"] = std::string(command);
  j["tool"] = {{"name", "chan_atlas"}, {"version", std::string(kToolVersion)}};
  j["seed"] = opts.seed;
  j["tolerances"] = {{"psd", opts.tol.psd}, {"trace", opts.tol.trace}, {"map_equality", opts.tol.map_equality}};
  return j;
}

namespace {

Json structural_verdicts(const Channel& t, const Tolerances& tol, Json& verdicts) {
  const CptpReport r = verify_cptp(t, tol);
  verdicts["tp"] = simple_verdict(r.marginal_deviation <= tol.trace ? Verdict::kYes : Verdict::kNo,
                                  tol.trace, "input marginal of the Choi state",
                                  {{"marginal_deviation", r.marginal_deviation}});
  if (t.d_in() != t.d_out()) {
    verdicts["unital"] = simple_verdict(Verdict::kNo, tol.trace, "input and output dimensions differ",
                                        {{"d_in", t.d_in()}, {"d_out", t.d_out()}});
  } else {
    const Matrix id = Matrix::Identity(t.d_in(), t.d_in());
    const double dev = operator_norm(t.apply(id) - id);
    verdicts["unital"] = simple_verdict(dev <= tol.trace ? Verdict::kYes : Verdict::kNo, tol.trace,
                                        "deviation of T(1) from 1", {{"unital_deviation", dev}});
  }
  verdicts["cptp"] = simple_verdict(r.cptp ? Verdict::kYes : Verdict::kNo, tol.psd, r.description,
                                    {{"min_choi_eigenvalue", r.min_choi_eigenvalue},
                                     {"marginal_deviation", r.marginal_deviation},
                                     {"hermiticity_defect", r.hermiticity_defect}});
  return verdicts;
}

template <class F>
Json guarded(F&& f) {
  try {
    return f();
  } catch (const NonCptpError&) {
    throw;
  } catch (const std::exception& e) {
    return failed_step(e);
  }
}

bool classify_into(const Channel& t, const ReportOptions& opts, Json& out, Stopwatch& sw) {
  const Tolerances& tol = opts.tol;
  Json verdicts = Json::object();
  structural_verdicts(t, tol, verdicts);
  if (!verify_cptp(t, tol).cptp) {
    const Json skipped = simple_verdict(Verdict::kIndeterminate, 0.0, "requires a CPTP map", Json::object());
    for (const char* key : {"eb", "cq", "ecq", "polytopic", "universally_image_additive"}) verdicts[key] = skipped;
    out["channel"] = channel_summary(t);
    out["verdicts"] = std::move(verdicts);
    out["polytope"] = Json();
    return false;
  }

  std::optional<PolytopicDecomposition> dec;
  Json dec_json = guarded([&] {
    dec = sw.time("decompose", [&] { return polytopic_decompose(t, opts.seed); });
    return decomposition_json(*dec);
  });
  verdicts["eb"] = guarded([&] {
    return sw.time("eb", [&] {
      return verdict_json(dec ? is_entanglement_breaking(t, *dec, tol) : is_entanglement_breaking(t, tol));
    });
  });
  verdicts["cq"] = guarded([&] { return sw.time("cq", [&] { return verdict_json(is_cq(t, tol)); }); });
  if (!dec) {
    const Json undecided = simple_verdict(Verdict::kIndeterminate, 0.0, "polytopic decomposition failed",
                                          Json::object());
    verdicts["ecq"] = undecided;
    verdicts["polytopic"] = undecided;
    verdicts["universally_image_additive"] = undecided;
  } else {
    verdicts["ecq"] = guarded([&] {
      return sw.time("ecq", [&]() -> Json {
        switch (dec->verdict) {
          case PolytopeVerdict::kPolytopic: return verdict_json(reconstruct_ecq(t, *dec));
          case PolytopeVerdict::kNotPolytopic:
            return simple_verdict(Verdict::kNo, 1e-6, "image is not a polytope",
                                  {{"direction", dec->witness_direction ? matrix_json(*dec->witness_direction) : Json()},
                                   {"max_support_excess", finite_or_null(dec->max_support_excess)}});
          case PolytopeVerdict::kIndeterminate: break;
        }
        return simple_verdict(Verdict::kIndeterminate, 1e-6, "polytopic decomposition undecided: " + dec->reason,
                              Json::object());
      });
    });
    Json pw = {{"k", dec->vertices.size()}, {"max_support_excess", finite_or_null(dec->max_support_excess)}};
    if (dec->witness_direction) pw["direction"] = matrix_json(*dec->witness_direction);
    if (dec->verdict == PolytopeVerdict::kPolytopic) {
      Json vs = Json::array();
      for (const auto& v : dec->vertices) vs.push_back(matrix_json(v.state));
      pw["vertices"] = std::move(vs);
    }
    verdicts["polytopic"] = simple_verdict(from_polytope(dec->verdict), 1e-6,
                                           dec->reason.empty() ? std::string(to_string(dec->verdict)) : dec->reason,
                                           std::move(pw));
    verdicts["universally_image_additive"] = guarded([&] {
      return sw.time("uia", [&] { return verdict_json(is_universally_image_additive(t, *dec, tol)); });
    });
  }
  out["channel"] = channel_summary(t);
  out["verdicts"] = std::move(verdicts);
  out["polytope"] = std::move(dec_json);
  return true;
}

}  // namespace

Json classify_report(const Channel& t, const ReportOptions& opts) {
  Json out = report_header("classify", opts);
  Stopwatch sw(opts.timings);
  classify_into(t, opts, out, sw);
  if (opts.timings) out["timings"] = sw.timings();
  return out;
}

Json fixed_points_report(const Channel& t, const ReportOptions& opts) {
  if (t.d_in() != t.d_out()) {
    return simple_verdict(Verdict::kIndeterminate, 1e-8, "fixed points need d_in = d_out", Json::object());
  }
  Json j;
  try {
    const CesaroProjection cp = cesaro_projection_details(t);
    j["status"] = "ok";
    j["method"] = cp.method;
    j["averaged_terms"] = cp.averaged_terms;
    j["compose_residual"] = cp.compose_residual;
    j["idempotent_residual"] = cp.idempotent_residual;
    j["tinf_choi"] = matrix_json(cp.tinf.choi());
  } catch (const std::exception& e) {
    return simple_verdict(Verdict::kIndeterminate, 1e-8, std::string("Cesaro projection failed: ") + e.what(),
                          Json::object());
  }
  try {
    const FixedPointStructure s = fixed_point_structure(t, opts.seed);
    j["fixed_space_dimension"] = s.f_basis.size();
    j["support_dimension"] = s.v_basis.cols();
    j["resolved"] = s.resolved;
    j["reason"] = s.reason;
    Json blocks = Json::array();
    for (const auto& b : s.blocks) {
      blocks.push_back({{"dim", b.dim}, {"multiplicity", b.multiplicity}, {"state", matrix_json(b.compact_state)}});
    }
    j["blocks"] = std::move(blocks);
  } catch (const std::exception& e) {
    j["resolved"] = false;
    j["reason"] = std::string("block structure failed: ") + e.what();
  }
  try {
    if (is_entanglement_breaking(t, opts.tol).status == Verdict::kYes) {
      const EbFixedPointReport r = verify_eb_fixed_point_theorem(t, opts.seed);
      j["eb_theorem"] = {{"holds", r.holds},
                         {"blocks_trivial", r.blocks_trivial},
                         {"max_norm_deviation", r.max_norm_deviation},
                         {"ecq", verdict_json(r.ecq)}};
    }
  } catch (const std::exception& e) {
    j["eb_theorem"] = failed_step(e);
  }
  return j;
}

Json run_pipeline(const Channel& t, const ReportOptions& opts) {
  Json out = report_header("report", opts);
  Stopwatch sw(opts.timings);
  if (!classify_into(t, opts, out, sw)) {
    out["entropy"] = Json::array();
    out["fixed_points"] = Json();
    out["image_additivity_with_identity"] = Json();
    if (opts.timings) out["timings"] = sw.timings();
    return out;
  }

  Json entropies = Json::array();
  EntropyOptions eo;
  eo.restarts = opts.entropy_restarts;
  for (std::size_t i = 0; i < opts.entropy_p.size(); ++i) {
    const double p = opts.entropy_p[i];
    entropies.push_back(guarded([&] {
      return sw.time("entropy", [&] {
        return entropy_json(min_output_entropy(t, p, derive_seed(opts.seed, 100 + i), eo), opts.bits);
      });
    }));
  }
  out["entropy"] = std::move(entropies);
  out["fixed_points"] = t.d_in() == t.d_out()
                            ? guarded([&] { return sw.time("fixed_points", [&] { return fixed_points_report(t, opts); }); })
                            : Json();
  out["image_additivity_with_identity"] = guarded([&] {
    return sw.time("image_additivity", [&] {
      ImageGapOptions io;
      io.n_directions = opts.image_directions;
      return gap_json(image_additivity_gap(t, channels::identity(t.d_in()), derive_seed(opts.seed, 200), io),
                      opts.bits);
    });
  });
  if (opts.timings) out["timings"] = sw.timings();
  return out;
}

// ---------------------------------------------------------------------------
// Plot data

Plane parse_plane(std::string_view name) {
  if (name == "diag") return Plane::kDiag;
  if (name == "xy") return Plane::kXY;
  if (name == "xz") return Plane::kXZ;
  if (name == "yz") return Plane::kYZ;
  throw ValidationError("unknown plane '" + std::string(name) + "' (diag, xy, xz, yz)");
}

std::string_view to_string(Plane p) {
  switch (p) {
    case Plane::kDiag: return "diag";
    case Plane::kXY: return "xy";
    case Plane::kXZ: return "xz";
    case Plane::kYZ: break;
  }
  return "yz";
}

std::pair<Matrix, Matrix> plane_axes(Plane p, Index d) {
  if (p == Plane::kDiag) {
    if (d < 3) throw DimensionError("the diag plane needs output dimension >= 3");
    Matrix a = Matrix::Zero(d, d);
    Matrix b = Matrix::Zero(d, d);
    a(0, 0) = 2.0 / std::sqrt(6.0);
    a(1, 1) = a(2, 2) = -1.0 / std::sqrt(6.0);
    b(1, 1) = 1.0 / std::sqrt(2.0);
    b(2, 2) = -1.0 / std::sqrt(2.0);
    return {a, b};
  }
  if (d != 2) throw DimensionError("Pauli planes need a qubit output");
  const auto& s = channels::pauli();
  switch (p) {
    case Plane::kXY: return {s[0], s[1]};
    case Plane::kXZ: return {s[0], s[2]};
    default: return {s[1], s[2]};
  }
}

namespace {

std::string num(double x, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

}  // namespace

std::string boundary_csv(const std::vector<BoundaryPoint>& points) {
  std::string out = "theta,x,y\n";
  for (const auto& p : points) out += num(p.theta) + "," + num(p.x) + "," + num(p.y) + "\n";
  return out;
}

std::string boundary_svg(const std::vector<BoundaryPoint>& points) {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-3});
  const double pad = 0.1 * span;
  const double size = 400.0;
  const double scale = size / (span + 2 * pad);
  auto sx = [&](double x) { return num((x - lo_x + pad) * scale, "%.3f"); };
  auto sy = [&](double y) { return num((hi_y - y + pad) * scale, "%.3f"); };
  std::string poly;
  for (const auto& p : points) poly += sx(p.x) + "," + sy(p.y) + " ";
  if (!points.empty()) poly += sx(points.front().x) + "," + sy(points.front().y);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size, "%.0f") + "\" height=\"" +
                    num(size, "%.0f") + "\">\n";
  out += "  <polyline fill=\"#dde6f0\" stroke=\"#1f3b5a\" stroke-width=\"1.5\" points=\"" + poly + "\"/>\n";
  out += "  <circle cx=\"" + sx(0.0) + "\" cy=\"" + sy(0.0) + "\" r=\"2\" fill=\"#a33\"/>\n";
  out += "</svg>\n";
  return out;
}

std::vector<BoundaryPoint> emit_plot_data(const Channel& t, Plane plane, int n_points,
                                          const std::filesystem::path& prefix) {
  const auto [a, b] = plane_axes(plane, t.d_out());
  std::vector<BoundaryPoint> pts = image_boundary_2d(t, a, b, n_points);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << text;
    if (!f) throw Error("cannot write " + path.string());
  };
  std::filesystem::path csv = prefix;
  csv += ".csv";
  std::filesystem::path svg = prefix;
  svg += ".svg";
  write(csv, boundary_csv(pts));
  write(svg, boundary_svg(pts));
  return pts;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace {

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return num(j.get<double>(), "%.10g");
  return j.dump();
}

void render(const Json& j, const std::string& key, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string label = key.empty() ? "" : key + ": ";
  if (scalar(j)) {
    out += pad + label + scalar_text(j) + "\n";
  } else if (j.is_object()) {
    if (!key.empty()) out += pad + key + ":\n";
    for (auto it = j.begin(); it != j.end(); ++it) render(it.value(), it.key(), indent + (key.empty() ? 0 : 2), out);
  } else if (std::all_of(j.begin(), j.end(), scalar) && j.size() <= 8) {
    std::string items;
    for (const auto& e : j) items += (items.empty() ? "" : ", ") + scalar_text(e);
    out += pad + label + "[" + items + "]\n";
  } else if (std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_object(); })) {
    out += pad + key + ":\n";
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], "- [" + std::to_string(i) + "]", indent + 2, out);
  } else {
    out += pad + label + "[" + std::to_string(j.size()) + " entries]\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  render(report, "", 0, out);
  return out;
}

}  // namespace chan_atlas
