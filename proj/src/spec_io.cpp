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

#include "chan_atlas/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chan_atlas {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Complex read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or an [re, im] pair");
}

Vector read_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of scalars");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = read_complex(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) fail(rp, "expected a non-empty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) fail(rp, "ragged matrix");
  }
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          read_complex(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

template <class T, class F>
std::vector<T> read_list(const json& j, const std::string& path, F read) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Matrix> read_matrices(const json& j, const std::string& path) {
  return read_list<Matrix>(j, path, read_matrix);
}

Index read_dim(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(path, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

Channel build(const json& spec, const std::string& path) {
  auto at = [&](const std::string& key) { return path.empty() ? key : path + "." + key; };
  const std::string kind = member(spec, "kind", path).is_string()
                               ? member(spec, "kind", path).get<std::string>()
                               : (fail(at("kind"), "expected a string"), std::string());
  std::optional<Index> d_in;
  std::optional<Index> d_out;
  if (spec.contains("d_in")) d_in = read_dim(spec["d_in"], at("d_in"));
  if (spec.contains("d_out")) d_out = read_dim(spec["d_out"], at("d_out"));

  const std::string pp = at("payload");
  auto payload = [&]() -> const json& { return member(spec, "payload", path); };
  Channel t = [&]() -> Channel {
    try {
      if (kind == "kraus") return Channel::from_kraus(read_matrices(payload(), pp));
      if (kind == "choi") {
        const Matrix j = read_matrix(payload(), pp);
        if (!d_in || !d_out) fail(path.empty() ? "d_in" : path, "choi specs need d_in and d_out");
        if (j.rows() != *d_in * *d_out || j.cols() != j.rows()) {
          throw DimensionError("choi matrix size does not match d_in * d_out");
        }
        return Channel::from_choi(j, *d_in, *d_out);
      }
      if (kind == "povm") {
        return Channel::from_povm(read_matrices(member(payload(), "effects", pp), pp + ".effects"),
                                  read_matrices(member(payload(), "states", pp), pp + ".states"));
      }
      if (kind == "ecq") {
        return Channel::from_ecq(
            read_list<Vector>(member(payload(), "vectors", pp), pp + ".vectors", read_vector),
            read_matrices(member(payload(), "remainders", pp), pp + ".remainders"),
            read_matrices(member(payload(), "states", pp), pp + ".states"));
      }
      if (kind == "cq") {
        return Channel::from_cq(
            read_list<Vector>(member(payload(), "basis", pp), pp + ".basis", read_vector),
            read_matrices(member(payload(), "states", pp), pp + ".states"));
      }
      if (kind == "direct_sum") {
        const json& blocks = member(payload(), "blocks", pp);
        if (!blocks.is_array() || blocks.empty()) fail(pp + ".blocks", "expected a non-empty list");
        std::vector<Channel> out;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          out.push_back(build(blocks[i], pp + ".blocks[" + std::to_string(i) + "]"));
        }
        return Channel::from_direct_sum(std::move(out));
      }
      if (kind == "depolarizing") {
        const double r = read_real(member(spec, "r", path), at("r"));
        const Index d = spec.contains("d") ? read_dim(spec["d"], at("d")) : 2;
        return channels::depolarizing(r, d);
      }
      if (kind == "unital_qubit_diag") {
        const json& l = member(spec, "lambda", path);
        if (!l.is_array() || l.size() != 3) fail(at("lambda"), "expected three numbers");
        return channels::unital_qubit_diagonal(read_real(l[0], at("lambda[0]")),
                                               read_real(l[1], at("lambda[1]")),
                                               read_real(l[2], at("lambda[2]")));
      }
      if (kind == "trine") return channels::trine_measure_prepare();
    } catch (const ParseError&) {
      throw;
    } catch (const DimensionError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("field '" + (path.empty() ? std::string("payload") : path) + "': " + e.what());
    }
    fail(at("kind"), "unknown kind '" + kind + "'");
  }();

  if (d_in && *d_in != t.d_in()) throw DimensionError(at("d_in") + " does not match the payload");
  if (d_out && *d_out != t.d_out()) throw DimensionError(at("d_out") + " does not match the payload");
  return t;
}

}  // namespace

ChannelSpec parse_channel_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line/column.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  if (!doc.is_object()) throw ParseError("top level: expected an object");
  if (doc.contains("format_version")) {
    const json& v = doc["format_version"];
    if (!v.is_string() || v.get<std::string>() != kSpecFormatVersion) {
      fail("format_version", "unsupported version (expected \"1\")");
    }
  }
  bool allow = false;
  if (doc.contains("allow_non_cptp")) {
    if (!doc["allow_non_cptp"].is_boolean()) fail("allow_non_cptp", "expected a boolean");
    allow = doc["allow_non_cptp"].get<bool>();
  }
  Channel t = build(doc, "");
  CptpReport report = verify_cptp(t);
  if (!report.cptp && !allow) {
    throw NonCptpError("channel is not CPTP: " + report.description, report);
  }
  return {doc["kind"].get<std::string>(), std::move(t), allow, std::move(report)};
}

ChannelSpec load_channel_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_spec(buf.str());
}

}  // namespace chan_atlas
