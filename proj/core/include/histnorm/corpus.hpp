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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace histnorm {

/// One (historical, modern) token pair.
struct TokenPair {
  std::string hist;
  std::string modern;

  friend bool operator==(const TokenPair&, const TokenPair&) = default;
};

enum class Split { kTrain, kDev, kTest };

std::string_view to_string(Split split);

/// An ordered token-pair collection. Corpus order is significant: baseline
/// tie-breaking and prefix subsetting both depend on it.
struct Dataset {
  std::string name;
  Split split = Split::kTrain;
  std::vector<TokenPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

struct DatasetStats {
  std::size_t tokens = 0;
  std::size_t hist_types = 0;
  std::size_t modern_types = 0;
  /// Share of training pairs with hist == modern.
  double pct_no_change = 0.0;
  /// Share of evaluation tokens whose hist form never occurs in training.
  double pct_unseen = 0.0;
};

/// Parses `hist<TAB>modern` lines. Throws FormatError naming the line on a
/// wrong field count, an empty field or invalid UTF-8.
Dataset parse_dataset(std::istream& in, bool lowercase, std::string name = {},
                      Split split = Split::kTrain);

Dataset load_dataset(const std::filesystem::path& path, bool lowercase,
                     Split split = Split::kTrain);

void write_dataset(std::ostream& out, const Dataset& dataset);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

DatasetStats compute_stats(const Dataset& train, const Dataset& eval);

/// First k pairs in corpus order; 1 <= k <= |train|.
Dataset subset_tokens(const Dataset& train, std::size_t k);

/// Single-line JSON object with keys tokens, hist_types, modern_types,
/// pct_no_change, pct_unseen.
std::string stats_to_json(const DatasetStats& stats);

}  // namespace histnorm
