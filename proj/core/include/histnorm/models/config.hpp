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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace histnorm::models {

enum class ModelKind { kSoft, kHard };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelConfig {
  ModelKind kind = ModelKind::kHard;
  std::size_t embedding_dim = 100;
  /// Hidden size of each encoder direction.
  std::size_t encoder_dim = 100;
  std::size_t decoder_dim = 200;
  int epochs = 50;
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  double init_scale = 0.1;

  /// Throws InvalidArgument when a dimension is zero or epochs < 0.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

}  // namespace histnorm::models
