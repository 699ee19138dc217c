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

#include "histnorm/models/config.hpp"

#include "histnorm/error.hpp"

namespace histnorm::models {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kSoft ? "soft" : "hard";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "soft") return ModelKind::kSoft;
  if (name == "hard") return ModelKind::kHard;
  return std::nullopt;
}

void ModelConfig::validate() const {
  if (embedding_dim == 0 || encoder_dim == 0 || decoder_dim == 0) {
    throw InvalidArgument("model dimensions must be >= 1");
  }
  if (epochs < 0) throw InvalidArgument("epochs must be >= 0");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
}

}  // namespace histnorm::models
