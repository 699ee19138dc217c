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

#include "histnorm/numerics/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "histnorm/error.hpp"

namespace histnorm::numerics {
namespace {

std::size_t element_count(const std::vector<std::size_t>& shape) {
  if (shape.empty()) throw ShapeError("tensor shape must have rank >= 1");
  std::size_t n = 1;
  for (auto d : shape) {
    if (d == 0) throw ShapeError("tensor dimensions must be positive, got " +
                                 shape_string(shape));
    n *= d;
  }
  return n;
}

}  // namespace

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), values_(element_count(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (element_count(shape_) != values_.size()) {
    throw ShapeError("tensor of shape " + numerics::shape_string(shape_) + " given " +
                     std::to_string(values_.size()) + " values");
  }
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::vector(std::vector<double> values) {
  const auto n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t({n, n}, 0.0);
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

void Tensor::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

std::string Tensor::shape_string() const { return numerics::shape_string(shape_); }

}  // namespace histnorm::numerics
