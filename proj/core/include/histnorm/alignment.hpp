// Copyright 2026 The histnorm Authors.
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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "histnorm/corpus.hpp"

namespace histnorm::alignment {

struct EditOp {
  enum class Kind { kMatch, kSub, kDel, kIns };
  Kind kind;
  /// Target character for MATCH/SUB/INS; the deleted source char for DEL.
  char32_t ch;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

using EditScript = std::vector<EditOp>;

/// Unit-cost minimum edit script. Among optimal scripts the one chosen
/// prefers, reading left to right, MATCH > SUB > DEL > INS.
EditScript align(std::u32string_view hist, std::u32string_view modern);
EditScript align(std::string_view hist, std::string_view modern);

/// Number of non-MATCH operations.
std::size_t script_cost(const EditScript& script);

struct Action {
  enum class Kind { kWrite, kStep, kStop };
  Kind kind;
  char32_t ch = 0;  // only meaningful for kWrite

  static Action write(char32_t c) { return {Kind::kWrite, c}; }
  static Action step() { return {Kind::kStep, 0}; }
  static Action stop() { return {Kind::kStop, 0}; }

  friend bool operator==(const Action&, const Action&) = default;
};

/// Oracle write/advance program for one pair: exactly |source| STEPs, writes
/// that spell the modern form, and a single trailing STOP.
struct ActionSequence {
  std::u32string source;
  std::vector<Action> actions;
};

/// MATCH/SUB(c) -> WRITE(c) STEP; DEL -> STEP; INS(c) -> WRITE(c); then STOP.
ActionSequence script_to_actions(std::u32string_view source,
                                 const EditScript& script);

/// Oracle actions for a pair (align followed by script_to_actions).
ActionSequence oracle_actions(std::u32string_view hist, std::u32string_view modern);

struct ReplayResult {
  std::u32string written;
  std::size_t steps = 0;
  /// Pointer never moved backward or past the end of the source.
  bool monotone = true;
  bool stopped = false;
};

ReplayResult replay(const ActionSequence& seq);

/// Renders e.g. `W(s) S W(a) S W(i) S W(d) S STOP`.
std::string render(const std::vector<Action>& actions);

struct MonotonicityCount {
  std::size_t transpositions = 0;
  std::size_t edit_operations = 0;

  double rate() const {
    return edit_operations == 0 ? 0.0
                                : static_cast<double>(transpositions) /
                                      static_cast<double>(edit_operations);
  }
};

/// Counts non-MATCH operations and adjacent transpositions in an optimal
/// Damerau-Levenshtein (restricted) alignment of one pair.
MonotonicityCount count_transpositions(std::u32string_view hist,
                                       std::u32string_view modern);

/// Share of edit operations over the dataset that are adjacent
/// transpositions; 0 when there are no edits.
double nonmonotonicity_rate(const Dataset& train);

}  // namespace histnorm::alignment
