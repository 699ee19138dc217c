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

#include "histnorm/models/vocab.hpp"

#include "histnorm/error.hpp"
#include "histnorm/text.hpp"

namespace histnorm::models {

void CharVocab::add(char32_t c) {
  if (index_.contains(c)) return;
  index_.emplace(c, kReserved + chars_.size());
  chars_.push_back(c);
}

CharVocab CharVocab::build(const Dataset& train) {
  CharVocab vocab;
  for (const auto& pair : train.pairs) {
    for (char32_t c : text::to_u32(pair.hist)) vocab.add(c);
    for (char32_t c : text::to_u32(pair.modern)) vocab.add(c);
  }
  return vocab;
}

CharVocab CharVocab::from_chars(std::u32string chars) {
  CharVocab vocab;
  for (char32_t c : chars) {
    if (vocab.index_.contains(c)) {
      throw InvalidArgument("duplicate character in vocabulary");
    }
    vocab.add(c);
  }
  return vocab;
}

std::size_t CharVocab::index(char32_t c) const {
  const auto it = index_.find(c);
  return it == index_.end() ? kUnk : it->second;
}

char32_t CharVocab::symbol(std::size_t index) const {
  if (!is_char(index)) {
    throw InvalidArgument("vocabulary index " + std::to_string(index) +
                          " is not a character");
  }
  return chars_[index - kReserved];
}

}  // namespace histnorm::models
