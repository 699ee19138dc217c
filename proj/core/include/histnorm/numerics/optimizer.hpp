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

#include <vector>

#include "histnorm/numerics/parameter.hpp"

namespace histnorm::numerics {

/// Global L2 norm over all parameter gradients.
double grad_global_norm(const ParameterStore& params);

/// Rescales gradients so their global norm is at most max_norm. Returns the
/// norm before clipping.
double clip_grad_norm(ParameterStore& params, double max_norm);

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// Applies one update and zeroes the gradients. Throws NumericError and
  /// leaves every value untouched if any gradient is NaN or infinite.
  virtual void step(ParameterStore& params) = 0;
};

class Sgd final : public Optimizer {
 public:
  explicit Sgd(double lr, double clip_norm = 0.0)
      : lr_(lr), clip_norm_(clip_norm) {}
  void step(ParameterStore& params) override;

 private:
  double lr_;
  double clip_norm_;
};

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Clip by global gradient norm before each step; 0 disables clipping.
  double clip_norm = 5.0;
};

class Adam final : public Optimizer {
 public:
  explicit Adam(AdamOptions options = {}) : options_(options) {}
  void step(ParameterStore& params) override;

 private:
  AdamOptions options_;
  std::vector<Tensor> first_moment_;
  std::vector<Tensor> second_moment_;
  long step_count_ = 0;
};

}  // namespace histnorm::numerics
