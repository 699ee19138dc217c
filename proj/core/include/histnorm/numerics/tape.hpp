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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "histnorm/numerics/parameter.hpp"
#include "histnorm/numerics/tensor.hpp"

namespace histnorm::numerics {

/// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

/// Records primitive ops as they execute and replays them in reverse to
/// accumulate gradients. Parameter gradients accumulate directly into
/// Parameter::grad. A tape supports a single backward pass.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  /// Registers a parameter as a leaf. Repeated calls return the same Var.
  Var param(Parameter& p);
  /// Read-only view of a parameter; no gradient flows into it.
  Var frozen(const Parameter& p);

  const Tensor& value(Var v) const;
  /// Gradient of the last backward pass w.r.t. v (zeros if v was unreached).
  const Tensor& grad(Var v);

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var concat(std::span<const Var> parts);
  Var concat(std::initializer_list<Var> parts) {
    return concat(std::span<const Var>(parts.begin(), parts.size()));
  }
  /// Stacks equal-length vectors as the rows of a matrix.
  Var stack(std::span<const Var> rows);
  Var transpose(Var a);
  Var slice(Var a, std::size_t offset, std::size_t length);
  Var sigmoid(Var a);
  Var tanh(Var a);
  Var softmax(Var a);
  /// Row `index` of a (rows x dim) table, as a vector.
  Var embedding_lookup(Var table, std::size_t index);
  Var sum(Var a);
  Var add_n(std::span<const Var> terms);
  /// -log softmax(logits)[target], log-sum-exp stabilized.
  Var cross_entropy(Var logits, std::size_t target);

  /// Runs reverse-mode differentiation from a scalar loss.
  void backward(Var loss);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool backward_done() const noexcept { return backward_done_; }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    const Tensor* external = nullptr;
    Parameter* param = nullptr;
    bool requires_grad = false;
    std::function<void(Tape&, std::size_t)> backward;
  };

  Var push(Tensor value, bool requires_grad,
           std::function<void(Tape&, std::size_t)> backward);
  Tensor& grad_slot(std::size_t id);
  bool needs_grad(Var v) const { return nodes_[v.id].requires_grad; }
  const Tensor& out_grad(std::size_t id) const { return nodes_[id].grad; }

  /// Weight-gradient outer products g x^T for parameter leaves, gathered
  /// during the reverse sweep and applied as one matrix product per
  /// parameter once the sweep ends.
  struct DeferredOuter {
    std::size_t param_node;
    std::vector<std::pair<std::size_t, std::size_t>> terms;  // (g node, x node)
  };
  void defer_outer(std::size_t param_node, std::size_t grad_node, std::size_t input_node);
  void flush_deferred();

  std::vector<Node> nodes_;
  std::vector<std::pair<const Parameter*, std::size_t>> param_index_;
  std::vector<DeferredOuter> deferred_;
  bool backward_done_ = false;
};

}  // namespace histnorm::numerics
