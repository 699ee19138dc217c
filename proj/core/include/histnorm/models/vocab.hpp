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
#include <unordered_map>

#include "histnorm/corpus.hpp"

namespace histnorm::models {

/// Character <-> index map shared by encoder inputs and decoder outputs.
/// Indices below kReserved are special symbols; characters follow in order
/// of first occurrence in the training data.
class CharVocab {
 public:
  static constexpr std::size_t kBegin = 0;
  static constexpr std::size_t kEnd = 1;
  static constexpr std::size_t kUnk = 2;
  static constexpr std::size_t kStep = 3;
  static constexpr std::size_t kStop = 4;
  static constexpr std::size_t kReserved = 5;

  CharVocab() = default;

  /// Scans each pair's historical then modern form, in corpus order.
  static CharVocab build(const Dataset& train);
  static CharVocab from_chars(std::u32string chars);

  /// Index of c, or kUnk when c was never seen.
  std::size_t index(char32_t c) const;
  /// Character at a non-reserved index.
  char32_t symbol(std::size_t index) const;
  bool is_char(std::size_t index) const noexcept {
    return index >= kReserved && index < size();
  }

  std::size_t size() const noexcept { return kReserved + chars_.size(); }
  const std::u32string& chars() const noexcept { return chars_; }

  friend bool operator==(const CharVocab& a, const CharVocab& b) {
    return a.chars_ == b.chars_;
  }

 private:
  void add(char32_t c);

  std::u32string chars_;
  std::unordered_map<char32_t, std::size_t> index_;
};

}  // namespace histnorm::models
