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

#include "histnorm/numerics/optimizer.hpp"

#include <cmath>

#include <Eigen/Core>

#include "histnorm/error.hpp"

namespace histnorm::numerics {
namespace {

using ArrayMap = Eigen::Map<Eigen::ArrayXd>;

void check_finite(const ParameterStore& params) {
  for (const auto& p : params) {
    const auto grad = Eigen::Map<const Eigen::ArrayXd>(
        p.grad.data(), static_cast<Eigen::Index>(p.grad.size()));
    if (!grad.allFinite()) {
      throw NumericError("non-finite gradient in parameter '" + p.name +
                         "'; optimizer step aborted");
    }
  }
}

}  // namespace

double grad_global_norm(const ParameterStore& params) {
  double sq = 0.0;
  for (const auto& p : params) {
    sq += Eigen::Map<const Eigen::VectorXd>(p.grad.data(),
                                            static_cast<Eigen::Index>(p.grad.size()))
              .squaredNorm();
  }
  return std::sqrt(sq);
}

double clip_grad_norm(ParameterStore& params, double max_norm) {
  const double norm = grad_global_norm(params);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& p : params) {
      for (double& g : p.grad.values()) g *= scale;
    }
  }
  return norm;
}

void Sgd::step(ParameterStore& params) {
  check_finite(params);
  if (clip_norm_ > 0.0) clip_grad_norm(params, clip_norm_);
  for (auto& p : params) {
    for (std::size_t i = 0; i < p.value.size(); ++i) p.value[i] -= lr_ * p.grad[i];
    p.zero_grad();
  }
}

void Adam::step(ParameterStore& params) {
  // One pass for the norm (non-finite iff some gradient is NaN/Inf or the
  // sum overflows), one fused pass for clipping, moments, update and reset.
  const double norm = grad_global_norm(params);
  if (!std::isfinite(norm)) check_finite(params);
  const double scale = options_.clip_norm > 0.0 && norm > options_.clip_norm
                           ? options_.clip_norm / norm
                           : 1.0;
  if (first_moment_.size() != params.size()) {
    first_moment_.clear();
    second_moment_.clear();
    for (const auto& p : params) {
      first_moment_.emplace_back(p.value.shape(), 0.0);
      second_moment_.emplace_back(p.value.shape(), 0.0);
    }
    step_count_ = 0;
  }
  ++step_count_;
  const double t = static_cast<double>(step_count_);
  const double step_size = options_.lr / (1.0 - std::pow(options_.beta1, t));
  const double correction2 = 1.0 - std::pow(options_.beta2, t);
  std::size_t k = 0;
  for (auto& p : params) {
    const auto n = static_cast<Eigen::Index>(p.value.size());
    ArrayMap value(p.value.data(), n);
    ArrayMap grad(p.grad.data(), n);
    ArrayMap m(first_moment_[k].data(), n);
    ArrayMap v(second_moment_[k].data(), n);
    m = options_.beta1 * m + ((1.0 - options_.beta1) * scale) * grad;
    v = options_.beta2 * v + ((1.0 - options_.beta2) * scale * scale) * grad.square();
    value -= step_size * m / ((v / correction2).sqrt() + options_.eps);
    grad.setZero();
    ++k;
  }
}

}  // namespace histnorm::numerics
