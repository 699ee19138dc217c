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

#include "histnorm/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "histnorm/error.hpp"
#include "histnorm/text.hpp"

namespace histnorm {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "unknown";
}

Dataset parse_dataset(std::istream& in, bool lowercase, std::string name,
                      Split split) {
  Dataset dataset{std::move(name), split, {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("expected exactly two tab-separated fields", line_no);
    }
    TokenPair pair{line.substr(0, tab), line.substr(tab + 1)};
    if (pair.hist.empty() || pair.modern.empty()) {
      throw FormatError("empty field", line_no);
    }
    if (!text::is_valid_utf8(pair.hist) || !text::is_valid_utf8(pair.modern)) {
      throw FormatError("invalid UTF-8", line_no);
    }
    if (lowercase) {
      pair.hist = text::casefold(pair.hist);
      pair.modern = text::casefold(pair.modern);
    }
    dataset.pairs.push_back(std::move(pair));
  }
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path, bool lowercase,
                     Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open dataset file: " + path.string());
  try {
    return parse_dataset(in, lowercase, path.stem().string(), split);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (const auto& pair : dataset.pairs) {
    out << pair.hist << '\t' << pair.modern << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write dataset file: " + path.string());
  write_dataset(out, dataset);
}

DatasetStats compute_stats(const Dataset& train, const Dataset& eval) {
  if (train.empty()) throw InvalidArgument("compute_stats: empty training set");
  std::unordered_set<std::string_view> hist_types;
  std::unordered_set<std::string_view> modern_types;
  std::size_t no_change = 0;
  for (const auto& pair : train.pairs) {
    hist_types.insert(pair.hist);
    modern_types.insert(pair.modern);
    if (pair.hist == pair.modern) ++no_change;
  }
  std::size_t unseen = 0;
  for (const auto& pair : eval.pairs) {
    if (!hist_types.contains(pair.hist)) ++unseen;
  }
  DatasetStats stats;
  stats.tokens = train.size();
  stats.hist_types = hist_types.size();
  stats.modern_types = modern_types.size();
  stats.pct_no_change =
      static_cast<double>(no_change) / static_cast<double>(train.size());
  stats.pct_unseen = eval.empty() ? 0.0
                                  : static_cast<double>(unseen) /
                                        static_cast<double>(eval.size());
  return stats;
}

Dataset subset_tokens(const Dataset& train, std::size_t k) {
  if (k < 1 || k > train.size()) {
    throw InvalidArgument("subset_tokens: k=" + std::to_string(k) +
                          " outside [1, " + std::to_string(train.size()) + "]");
  }
  Dataset out{train.name, train.split, {}};
  out.pairs.assign(train.pairs.begin(),
                   train.pairs.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

std::string stats_to_json(const DatasetStats& stats) {
  nlohmann::ordered_json j;
  j["tokens"] = stats.tokens;
  j["hist_types"] = stats.hist_types;
  j["modern_types"] = stats.modern_types;
  j["pct_no_change"] = stats.pct_no_change;
  j["pct_unseen"] = stats.pct_unseen;
  return j.dump();
}

}  // namespace histnorm
