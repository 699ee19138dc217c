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

#include <string>
#include <string_view>

namespace histnorm::text {

/// Decodes UTF-8 into code points. Throws FormatError on invalid input.
std::u32string to_u32(std::string_view utf8);

std::string to_utf8(std::u32string_view codepoints);
std::string to_utf8(char32_t codepoint);

/// Full Unicode case folding (e.g. "Straße" -> "strasse").
std::string casefold(std::string_view utf8);

/// True when the bytes form valid UTF-8.
bool is_valid_utf8(std::string_view bytes);

}  // namespace histnorm::text
