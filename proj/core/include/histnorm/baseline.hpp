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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "histnorm/corpus.hpp"

namespace histnorm {

/// Naive memorization normalizer's knowledge: for every historical form, the
/// modern forms observed with it in training.
class Lexicon {
 public:
  struct Entry {
    std::string modern;
    std::size_t count = 0;
    /// Corpus position of the first occurrence of this (hist, modern) pair.
    std::size_t first_seen = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Lexicon() = default;

  /// Throws InvalidArgument on an empty dataset.
  static Lexicon build(const Dataset& train);

  bool is_seen(std::string_view hist) const;

  /// Most frequent modern form, ties to the earliest first observation;
  /// unseen forms come back unchanged.
  std::string normalize(std::string_view hist) const;

  /// Entries for hist ordered by first_seen; empty if unseen.
  std::span<const Entry> entries(std::string_view hist) const;

  std::size_t hist_type_count() const noexcept { return table_.size(); }

  /// TSV `hist<TAB>modern<TAB>count<TAB>first_seen_index`, sorted by hist
  /// then first_seen_index.
  void write(std::ostream& out) const;
  static Lexicon read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static Lexicon load(const std::filesystem::path& path);

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  struct Record {
    std::vector<Entry> entries;  // ordered by first_seen
    std::size_t best = 0;        // index into entries

    friend bool operator==(const Record&, const Record&) = default;
  };
  void finalize();

  std::map<std::string, Record, std::less<>> table_;
};

inline Lexicon build_lexicon(const Dataset& train) { return Lexicon::build(train); }

inline std::string baseline_normalize(const Lexicon& lex, std::string_view hist) {
  return lex.normalize(hist);
}

inline bool is_seen(const Lexicon& lex, std::string_view hist) {
  return lex.is_seen(hist);
}

}  // namespace histnorm
