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

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chan_atlas/channel.hpp"
#include "chan_atlas/entropy.hpp"
#include "chan_atlas/image_geometry.hpp"
#include "chan_atlas/report.hpp"
#include "chan_atlas/spec_io.hpp"

namespace ca = chan_atlas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNonCptp = 3;

struct Globals {
  std::uint64_t seed = 0;
  double tol = -1.0;
  std::string format = "json";
  bool bits = false;
  bool timings = false;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("CHAN_ATLAS_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 0);
  if (end == s || *end != '\0') throw ca::ValidationError("CHAN_ATLAS_SEED is not an unsigned integer");
  return v;
}

ca::ReportOptions report_options(const Globals& g) {
  ca::ReportOptions o;
  o.seed = g.seed;
  if (g.tol > 0) {
    o.tol.psd = g.tol;
    o.tol.trace = g.tol;
    o.tol.map_equality = g.tol;
  }
  o.bits = g.bits;
  o.timings = g.timings;
  return o;
}

void emit(const ca::Json& j, const Globals& g) {
  if (g.format == "text") {
    std::cout << ca::render_text(j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

ca::Json cptp_json(const ca::CptpReport& r) {
  return {{"cptp", r.cptp},
          {"min_choi_eigenvalue", r.min_choi_eigenvalue},
          {"marginal_deviation", r.marginal_deviation},
          {"hermiticity_defect", r.hermiticity_defect},
          {"description", r.description}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify quantum channels by output-image geometry, entropy and fixed points"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::string seed_text;
  app.add_option("--seed", seed_text, "RNG seed (default: $CHAN_ATLAS_SEED or 0)");
  app.add_option("--tol", g.tol, "PSD, trace and map-equality tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--bits", g.bits, "Report entropies in bits instead of nats");
  app.add_flag("--timings", g.timings, "Include wall-clock timings (breaks byte-identical output)");
  app.set_version_flag("--version", std::string(ca::kToolVersion));

  std::string spec;
  std::vector<std::string> pair;
  auto add_spec = [&](CLI::App* sub) { sub->add_option("spec", spec, "Channel spec file")->required(); };
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--pair", pair, "Two channel spec files")->expected(2)->required();
  };

  CLI::App* classify = app.add_subcommand("classify", "TP, unital, CPTP, EB, CQ, eCQ, polytopic and UIA verdicts");
  add_spec(classify);

  CLI::App* image = app.add_subcommand("image", "Emit CSV and SVG of a 2D section of the output image");
  add_spec(image);
  std::string plane_name = "xy";
  int points = 256;
  std::string out_prefix = "image";
  image->add_option("--plane", plane_name, "diag, xy, xz or yz")->check(CLI::IsMember({"diag", "xy", "xz", "yz"}));
  image->add_option("--points", points, "Boundary points")->check(CLI::Range(3, 1 << 20));
  image->add_option("--out", out_prefix, "Output prefix; writes <prefix>.csv and <prefix>.svg");

  CLI::App* decompose = app.add_subcommand("decompose", "Polytopic decomposition of the output image");
  add_spec(decompose);

  CLI::App* entropy = app.add_subcommand("entropy", "Minimal output Renyi entropies");
  add_spec(entropy);
  std::vector<double> ps{1.0, 2.0};
  int restarts = 64;
  entropy->add_option("--p", ps, "Renyi orders")->delimiter(',');
  entropy->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::PositiveNumber);

  CLI::App* additivity = app.add_subcommand("additivity", "Minimal output entropy additivity gap");
  add_pair(additivity);
  double pair_p = 1.0;
  additivity->add_option("--p", pair_p, "Renyi order");
  additivity->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::PositiveNumber);

  CLI::App* image_add = app.add_subcommand("image-additivity", "Output-image additivity gap");
  add_pair(image_add);
  int directions = 200;
  image_add->add_option("--directions", directions, "Random directions")->check(CLI::PositiveNumber);

  CLI::App* fixed = app.add_subcommand("fixed-points", "Cesaro projection and fixed-point algebra");
  add_spec(fixed);

  CLI::App* report = app.add_subcommand("report", "Full pipeline");
  add_spec(report);
  report->add_option("--p", ps, "Renyi orders")->delimiter(',');

  CLI::App* verify = app.add_subcommand("verify", "Parse a spec and report its CPTP diagnostics");
  add_spec(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    g.seed = seed_text.empty() ? env_seed() : std::stoull(seed_text, nullptr, 0);
    ca::ReportOptions opts = report_options(g);

    if (*verify) {
      ca::Json j = ca::report_header("verify", opts);
      try {
        const ca::ChannelSpec s = ca::load_channel_spec(spec);
        j["kind"] = s.kind;
        j["channel"] = ca::channel_summary(s.channel);
        j["cptp"] = cptp_json(s.cptp);
      } catch (const ca::NonCptpError& e) {
        j["cptp"] = cptp_json(e.report);
      }
      emit(j, g);
      return kExitOk;
    }

    if (*additivity || *image_add) {
      const ca::ChannelSpec sa = ca::load_channel_spec(pair[0]);
      const ca::ChannelSpec sb = ca::load_channel_spec(pair[1]);
      for (const ca::ChannelSpec* s : {&sa, &sb}) {
        if (!s->cptp.cptp) throw ca::NonCptpError("additivity requires CPTP maps: " + s->cptp.description, s->cptp);
      }
      const ca::Channel& a = sa.channel;
      const ca::Channel& b = sb.channel;
      ca::Json j = ca::report_header(*additivity ? "additivity" : "image-additivity", opts);
      if (*additivity) {
        ca::EntropyOptions eo;
        eo.restarts = restarts;
        j["gap"] = ca::gap_json(ca::entropy_additivity_gap(a, b, pair_p, g.seed, eo), g.bits);
      } else {
        ca::ImageGapOptions io;
        io.n_directions = directions;
        j["gap"] = ca::gap_json(ca::image_additivity_gap(a, b, g.seed, io), g.bits);
      }
      emit(j, g);
      return kExitOk;
    }

    const ca::ChannelSpec loaded = ca::load_channel_spec(spec);
    const ca::Channel& t = loaded.channel;
    if (!loaded.cptp.cptp && !(*classify || *report || *image)) {
      throw ca::NonCptpError("this command requires a CPTP map: " + loaded.cptp.description, loaded.cptp);
    }
    if (*classify) {
      emit(ca::classify_report(t, opts), g);
    } else if (*image) {
      const ca::Plane plane = ca::parse_plane(plane_name);
      const auto pts = ca::emit_plot_data(t, plane, points, out_prefix);
      ca::Json j = ca::report_header("image", opts);
      j["plane"] = std::string(ca::to_string(plane));
      j["points"] = pts.size();
      j["csv"] = out_prefix + ".csv";
      j["svg"] = out_prefix + ".svg";
      emit(j, g);
    } else if (*decompose) {
      ca::Json j = ca::report_header("decompose", opts);
      j["polytope"] = ca::decomposition_json(ca::polytopic_decompose(t, g.seed));
      emit(j, g);
    } else if (*entropy) {
      ca::Json j = ca::report_header("entropy", opts);
      ca::EntropyOptions eo;
      eo.restarts = restarts;
      ca::Json list = ca::Json::array();
      for (std::size_t i = 0; i < ps.size(); ++i) {
        list.push_back(ca::entropy_json(ca::min_output_entropy(t, ps[i], ca::derive_seed(g.seed, 100 + i), eo), g.bits));
      }
      j["entropy"] = std::move(list);
      emit(j, g);
    } else if (*fixed) {
      ca::Json j = ca::report_header("fixed-points", opts);
      j["fixed_points"] = ca::fixed_points_report(t, opts);
      emit(j, g);
    } else if (*report) {
      opts.entropy_p = ps;
      emit(ca::run_pipeline(t, opts), g);
    }
    return kExitOk;
  } catch (const ca::NonCptpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonCptp;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: --seed is not an unsigned integer\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: --seed is out of range\n";
    return kExitInvalid;
  } catch (const ca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
