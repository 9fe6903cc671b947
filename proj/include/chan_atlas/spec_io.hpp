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

// JSON channel specification files. Complex scalars are [re, im] pairs (a
// bare number is read as a real scalar); a matrix is a list of rows.
//
//   {"format_version": "1", "kind": "kraus", "d_in": 2, "d_out": 2,
//    "payload": [[[1, 0], [0, 1]]]}
//
// Kinds and payloads:
//   kraus              payload: list of matrices
//   choi               payload: normalized Choi matrix (trace 1)
//   povm               payload: {"effects": [...], "states": [...]}
//   ecq                payload: {"vectors": [...], "remainders": [...], "states": [...]}
//   cq                 payload: {"basis": [...], "states": [...]}
//   direct_sum         payload: {"blocks": [spec, ...]}
//   depolarizing       "r" (and optional "d", default 2)
//   unital_qubit_diag  "lambda": [l1, l2, l3]
//   trine              no payload; the qubit-to-qutrit trine channel

#include <filesystem>
#include <string>
#include <string_view>

#include "chan_atlas/channel.hpp"

namespace chan_atlas {

/// Malformed input: JSON syntax (with line and column) or a bad field.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A well-formed spec describing a map that is not CPTP.
class NonCptpError : public ValidationError {
 public:
  NonCptpError(const std::string& what, CptpReport report)
      : ValidationError(what), report(std::move(report)) {}
  CptpReport report;
};

inline constexpr std::string_view kSpecFormatVersion = "1";

struct ChannelSpec {
  std::string kind;
  Channel channel;
  bool allow_non_cptp = false;
  CptpReport cptp;
};

/// Parses and validates a spec. Throws ParseError for malformed input,
/// DimensionError when declared dimensions disagree with the payload, and
/// NonCptpError for a non-CPTP map unless "allow_non_cptp" is true.
ChannelSpec parse_channel_spec(std::string_view text);
ChannelSpec load_channel_spec(const std::filesystem::path& path);

}  // namespace chan_atlas
