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

#include "histnorm/alignment.hpp"

#include <algorithm>

#include "histnorm/text.hpp"

namespace histnorm::alignment {
namespace {

/// Row-major (n+1) x (m+1) table of suffix distances.
class Table {
 public:
  Table(std::size_t n, std::size_t m) : cols_(m + 1), cells_((n + 1) * (m + 1), 0) {}
  std::size_t& operator()(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }

 private:
  std::size_t cols_;
  std::vector<std::size_t> cells_;
};

}  // namespace

EditScript align(std::u32string_view hist, std::u32string_view modern) {
  const std::size_t n = hist.size();
  const std::size_t m = modern.size();
  // d(i, j) = edit distance between hist[i:] and modern[j:]; a forward
  // trace over suffix distances applies the tie order left to right.
  Table d(n, m);
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        d(i, j) = m - j;
      } else if (j == m) {
        d(i, j) = n - i;
      } else {
        const std::size_t diag = d(i + 1, j + 1) + (hist[i] == modern[j] ? 0 : 1);
        d(i, j) = std::min({diag, d(i + 1, j) + 1, d(i, j + 1) + 1});
      }
    }
  }
  EditScript script;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const std::size_t here = d(i, j);
    if (i < n && j < m && hist[i] == modern[j] && d(i + 1, j + 1) == here) {
      script.push_back({EditOp::Kind::kMatch, modern[j]});
      ++i, ++j;
    } else if (i < n && j < m && hist[i] != modern[j] && d(i + 1, j + 1) + 1 == here) {
      script.push_back({EditOp::Kind::kSub, modern[j]});
      ++i, ++j;
    } else if (i < n && d(i + 1, j) + 1 == here) {
      script.push_back({EditOp::Kind::kDel, hist[i]});
      ++i;
    } else {
      script.push_back({EditOp::Kind::kIns, modern[j]});
      ++j;
    }
  }
  return script;
}

EditScript align(std::string_view hist, std::string_view modern) {
  return align(text::to_u32(hist), text::to_u32(modern));
}

std::size_t script_cost(const EditScript& script) {
  return static_cast<std::size_t>(std::count_if(
      script.begin(), script.end(),
      [](const EditOp& op) { return op.kind != EditOp::Kind::kMatch; }));
}

ActionSequence script_to_actions(std::u32string_view source,
                                 const EditScript& script) {
  ActionSequence seq{std::u32string(source), {}};
  seq.actions.reserve(script.size() * 2 + 1);
  for (const auto& op : script) {
    switch (op.kind) {
      case EditOp::Kind::kMatch:
      case EditOp::Kind::kSub:
        seq.actions.push_back(Action::write(op.ch));
        seq.actions.push_back(Action::step());
        break;
      case EditOp::Kind::kDel:
        seq.actions.push_back(Action::step());
        break;
      case EditOp::Kind::kIns:
        seq.actions.push_back(Action::write(op.ch));
        break;
    }
  }
  seq.actions.push_back(Action::stop());
  return seq;
}

ActionSequence oracle_actions(std::u32string_view hist, std::u32string_view modern) {
  return script_to_actions(hist, align(hist, modern));
}

ReplayResult replay(const ActionSequence& seq) {
  ReplayResult result;
  for (const auto& action : seq.actions) {
    if (result.stopped) {
      result.monotone = false;  // actions after STOP
      break;
    }
    switch (action.kind) {
      case Action::Kind::kWrite:
        result.written.push_back(action.ch);
        break;
      case Action::Kind::kStep:
        ++result.steps;
        if (result.steps > seq.source.size()) result.monotone = false;
        break;
      case Action::Kind::kStop:
        result.stopped = true;
        break;
    }
  }
  return result;
}

std::string render(const std::vector<Action>& actions) {
  std::string out;
  for (const auto& action : actions) {
    if (!out.empty()) out += ' ';
    switch (action.kind) {
      case Action::Kind::kWrite:
        out += "W(" + text::to_utf8(action.ch) + ")";
        break;
      case Action::Kind::kStep:
        out += "S";
        break;
      case Action::Kind::kStop:
        out += "STOP";
        break;
    }
  }
  return out;
}

MonotonicityCount count_transpositions(std::u32string_view hist,
                                       std::u32string_view modern) {
  const std::size_t n = hist.size();
  const std::size_t m = modern.size();
  Table d(n, m);
  auto can_swap = [&](std::size_t i, std::size_t j) {
    return i + 1 < n && j + 1 < m && hist[i] == modern[j + 1] &&
           hist[i + 1] == modern[j] && hist[i] != hist[i + 1];
  };
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        d(i, j) = m - j;
      } else if (j == m) {
        d(i, j) = n - i;
      } else {
        std::size_t best = d(i + 1, j + 1) + (hist[i] == modern[j] ? 0 : 1);
        best = std::min({best, d(i + 1, j) + 1, d(i, j + 1) + 1});
        if (can_swap(i, j)) best = std::min(best, d(i + 2, j + 2) + 1);
        d(i, j) = best;
      }
    }
  }
  MonotonicityCount count;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const std::size_t here = d(i, j);
    if (i < n && j < m && hist[i] == modern[j] && d(i + 1, j + 1) == here) {
      ++i, ++j;
      continue;
    }
    ++count.edit_operations;
    if (can_swap(i, j) && d(i + 2, j + 2) + 1 == here) {
      ++count.transpositions;
      i += 2, j += 2;
    } else if (i < n && j < m && d(i + 1, j + 1) + 1 == here) {
      ++i, ++j;
    } else if (i < n && d(i + 1, j) + 1 == here) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

double nonmonotonicity_rate(const Dataset& train) {
  MonotonicityCount total;
  for (const auto& pair : train.pairs) {
    const auto c = count_transpositions(text::to_u32(pair.hist),
                                        text::to_u32(pair.modern));
    total.transpositions += c.transpositions;
    total.edit_operations += c.edit_operations;
  }
  return total.rate();
}

}  // namespace histnorm::alignment
