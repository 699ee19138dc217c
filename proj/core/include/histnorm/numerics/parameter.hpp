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
#include <deque>
#include <string>
#include <string_view>

#include "histnorm/numerics/tensor.hpp"

namespace histnorm::numerics {

/// A trainable tensor and its gradient accumulator.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter(std::string name, Tensor value);
  void zero_grad();
};

/// Owns a model's parameters in registration order. Addresses are stable
/// for the lifetime of the store.
class ParameterStore {
 public:
  ParameterStore() = default;
  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;
  ParameterStore(ParameterStore&&) = default;
  ParameterStore& operator=(ParameterStore&&) = default;

  Parameter& add(std::string name, std::vector<std::size_t> shape);
  Parameter* find(std::string_view name);
  const Parameter* find(std::string_view name) const;

  /// Fills every parameter with U(-scale, scale) draws from a seeded
  /// mt19937_64, in registration order.
  void init_uniform(std::uint64_t seed, double scale);
  void zero_grad();

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t scalar_count() const noexcept;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::deque<Parameter> params_;
};

}  // namespace histnorm::numerics
