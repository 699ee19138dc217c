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

#include "histnorm/normalizer.hpp"

namespace histnorm {

NormalizerPtr make_hybrid(std::shared_ptr<const Lexicon> lexicon, NormalizerPtr model,
                          std::string name) {
  if (name.empty()) name = "hybrid(" + model->name() + ")";
  return std::make_shared<HybridNormalizer>(std::move(lexicon), std::move(model),
                                            std::move(name));
}

}  // namespace histnorm
