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

#include "histnorm/numerics/parameter.hpp"

#include <random>

#include "histnorm/error.hpp"

namespace histnorm::numerics {

Parameter::Parameter(std::string name, Tensor value)
    : name(std::move(name)), value(std::move(value)) {
  grad = Tensor(this->value.shape(), 0.0);
}

void Parameter::zero_grad() { grad.fill(0.0); }

Parameter& ParameterStore::add(std::string name, std::vector<std::size_t> shape) {
  if (find(name) != nullptr) {
    throw InvalidArgument("duplicate parameter name: " + name);
  }
  return params_.emplace_back(std::move(name), Tensor(std::move(shape), 0.0));
}

Parameter* ParameterStore::find(std::string_view name) {
  for (auto& p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Parameter* ParameterStore::find(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void ParameterStore::init_uniform(std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  for (auto& p : params_) {
    for (double& v : p.value.values()) {
      // 53 random mantissa bits mapped to [0, 1); independent of the
      // standard library's distribution implementations.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = (2.0 * u - 1.0) * scale;
    }
  }
}

void ParameterStore::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

std::size_t ParameterStore::scalar_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

}  // namespace histnorm::numerics
