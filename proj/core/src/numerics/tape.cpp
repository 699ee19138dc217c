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

#include "histnorm/numerics/tape.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "histnorm/error.hpp"

namespace histnorm::numerics {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;
using MutMap = Eigen::Map<RowMatrix>;
using ConstVec = Eigen::Map<const Eigen::VectorXd>;
using MutVec = Eigen::Map<Eigen::VectorXd>;

ConstMap as_matrix(const Tensor& t) {
  return ConstMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
}

MutMap as_matrix(Tensor& t) {
  return MutMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                static_cast<Eigen::Index>(t.cols()));
}

ConstVec as_vector(const Tensor& t) {
  return ConstVec(t.data(), static_cast<Eigen::Index>(t.size()));
}

MutVec as_vector(Tensor& t) {
  return MutVec(t.data(), static_cast<Eigen::Index>(t.size()));
}

[[noreturn]] void shape_mismatch(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + a.shape_string() +
                   " and " + b.shape_string());
}

void require_vector(const char* op, const Tensor& a) {
  if (a.rank() != 1) {
    throw ShapeError(std::string(op) + ": expected a vector, got " +
                     a.shape_string());
  }
}

void softmax_into(const Tensor& x, Tensor& out) {
  const double max = *std::max_element(x.values().begin(), x.values().end());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - max);
    total += out[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] /= total;
}

}  // namespace

Var Tape::push(Tensor value, bool requires_grad,
               std::function<void(Tape&, std::size_t)> backward) {
  if (backward_done_) {
    throw Error("tape already differentiated; start a new forward pass");
  }
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  if (requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

Tensor& Tape::grad_slot(std::size_t id) {
  Node& node = nodes_[id];
  if (node.param != nullptr) return node.param->grad;
  if (node.grad.empty()) node.grad = Tensor(value(Var{id}).shape(), 0.0);
  return node.grad;
}

Var Tape::constant(Tensor value) { return push(std::move(value), false, nullptr); }

Var Tape::param(Parameter& p) {
  for (const auto& [ptr, id] : param_index_) {
    if (ptr == &p) return Var{id};
  }
  Var v = push(Tensor(), true, nullptr);
  nodes_[v.id].param = &p;
  nodes_[v.id].external = &p.value;
  param_index_.emplace_back(&p, v.id);
  return v;
}

Var Tape::frozen(const Parameter& p) {
  for (const auto& [ptr, id] : param_index_) {
    if (ptr == &p) return Var{id};
  }
  Var v = push(Tensor(), false, nullptr);
  nodes_[v.id].external = &p.value;
  param_index_.emplace_back(&p, v.id);
  return v;
}

const Tensor& Tape::value(Var v) const {
  const Node& node = nodes_.at(v.id);
  return node.external != nullptr ? *node.external : node.value;
}

const Tensor& Tape::grad(Var v) { return grad_slot(v.id); }

Var Tape::matmul(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  if (x.rank() != 2 || y.rank() > 2 || x.cols() != y.rows()) {
    shape_mismatch("matmul", x, y);
  }
  Tensor out = y.rank() == 1 ? Tensor({x.rows()}, 0.0)
                             : Tensor({x.rows(), y.cols()}, 0.0);
  as_matrix(out).noalias() = as_matrix(x) * as_matrix(y);
  return push(std::move(out), needs_grad(a) || needs_grad(b),
              [a, b](Tape& t, std::size_t self) {
                const auto g = as_matrix(t.out_grad(self));
                if (t.needs_grad(a)) {
                  if (t.nodes_[a.id].param != nullptr && t.value(b).rank() == 1) {
                    t.defer_outer(a.id, self, b.id);
                  } else {
                    as_matrix(t.grad_slot(a.id)).noalias() +=
                        g * as_matrix(t.value(b)).transpose();
                  }
                }
                if (t.needs_grad(b)) {
                  as_matrix(t.grad_slot(b.id)).noalias() +=
                      as_matrix(t.value(a)).transpose() * g;
                }
              });
}

Var Tape::add(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  if (!x.same_shape(y)) shape_mismatch("add", x, y);
  Tensor out = x;
  as_vector(out) += as_vector(y);
  return push(std::move(out), needs_grad(a) || needs_grad(b),
              [a, b](Tape& t, std::size_t self) {
                const auto g = as_vector(t.out_grad(self));
                if (t.needs_grad(a)) as_vector(t.grad_slot(a.id)) += g;
                if (t.needs_grad(b)) as_vector(t.grad_slot(b.id)) += g;
              });
}

Var Tape::sub(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  if (!x.same_shape(y)) shape_mismatch("sub", x, y);
  Tensor out = x;
  as_vector(out) -= as_vector(y);
  return push(std::move(out), needs_grad(a) || needs_grad(b),
              [a, b](Tape& t, std::size_t self) {
                const auto g = as_vector(t.out_grad(self));
                if (t.needs_grad(a)) as_vector(t.grad_slot(a.id)) += g;
                if (t.needs_grad(b)) as_vector(t.grad_slot(b.id)) -= g;
              });
}

Var Tape::mul(Var a, Var b) {
  const Tensor& x = value(a);
  const Tensor& y = value(b);
  if (!x.same_shape(y)) shape_mismatch("mul", x, y);
  Tensor out = x;
  as_vector(out).array() *= as_vector(y).array();
  return push(std::move(out), needs_grad(a) || needs_grad(b),
              [a, b](Tape& t, std::size_t self) {
                const auto g = as_vector(t.out_grad(self));
                if (t.needs_grad(a)) {
                  as_vector(t.grad_slot(a.id)).array() +=
                      g.array() * as_vector(t.value(b)).array();
                }
                if (t.needs_grad(b)) {
                  as_vector(t.grad_slot(b.id)).array() +=
                      g.array() * as_vector(t.value(a)).array();
                }
              });
}

Var Tape::concat(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  std::size_t total = 0;
  bool any_grad = false;
  for (Var p : parts) {
    require_vector("concat", value(p));
    total += value(p).size();
    any_grad = any_grad || needs_grad(p);
  }
  Tensor out({total}, 0.0);
  std::size_t offset = 0;
  for (Var p : parts) {
    const Tensor& x = value(p);
    std::copy(x.values().begin(), x.values().end(), out.data() + offset);
    offset += x.size();
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return push(std::move(out), any_grad,
              [inputs = std::move(inputs)](Tape& t, std::size_t self) {
                const Tensor& g = t.out_grad(self);
                std::size_t offset = 0;
                for (Var p : inputs) {
                  const std::size_t n = t.value(p).size();
                  if (t.needs_grad(p)) {
                    as_vector(t.grad_slot(p.id)) +=
                        ConstVec(g.data() + offset, static_cast<Eigen::Index>(n));
                  }
                  offset += n;
                }
              });
}

Var Tape::stack(std::span<const Var> rows) {
  if (rows.empty()) throw ShapeError("stack: no inputs");
  const std::size_t dim = value(rows[0]).size();
  bool any_grad = false;
  for (Var r : rows) {
    require_vector("stack", value(r));
    if (value(r).size() != dim) shape_mismatch("stack", value(rows[0]), value(r));
    any_grad = any_grad || needs_grad(r);
  }
  Tensor out({rows.size(), dim}, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Tensor& x = value(rows[i]);
    std::copy(x.values().begin(), x.values().end(), out.data() + i * dim);
  }
  std::vector<Var> inputs(rows.begin(), rows.end());
  return push(std::move(out), any_grad,
              [inputs = std::move(inputs), dim](Tape& t, std::size_t self) {
                const Tensor& g = t.out_grad(self);
                for (std::size_t i = 0; i < inputs.size(); ++i) {
                  if (!t.needs_grad(inputs[i])) continue;
                  as_vector(t.grad_slot(inputs[i].id)) +=
                      ConstVec(g.data() + i * dim, static_cast<Eigen::Index>(dim));
                }
              });
}

Var Tape::transpose(Var a) {
  const Tensor& x = value(a);
  if (x.rank() != 2) {
    throw ShapeError("transpose: expected a matrix, got " + x.shape_string());
  }
  Tensor out({x.cols(), x.rows()}, 0.0);
  as_matrix(out) = as_matrix(x).transpose();
  return push(std::move(out), needs_grad(a), [a](Tape& t, std::size_t self) {
    as_matrix(t.grad_slot(a.id)) += as_matrix(t.out_grad(self)).transpose();
  });
}

Var Tape::slice(Var a, std::size_t offset, std::size_t length) {
  const Tensor& x = value(a);
  require_vector("slice", x);
  if (length == 0 || offset + length > x.size()) {
    throw ShapeError("slice: range [" + std::to_string(offset) + ", " +
                     std::to_string(offset + length) + ") outside " +
                     x.shape_string());
  }
  std::vector<double> values(x.data() + offset, x.data() + offset + length);
  return push(Tensor::vector(std::move(values)), needs_grad(a),
              [a, offset](Tape& t, std::size_t self) {
                const Tensor& g = t.out_grad(self);
                Tensor& ga = t.grad_slot(a.id);
                for (std::size_t i = 0; i < g.size(); ++i) ga[offset + i] += g[i];
              });
}

Var Tape::sigmoid(Var a) {
  Tensor out = value(a);
  for (double& v : out.values()) v = 1.0 / (1.0 + std::exp(-v));
  return push(std::move(out), needs_grad(a), [a](Tape& t, std::size_t self) {
    const Tensor& y = t.nodes_[self].value;
    const Tensor& g = t.out_grad(self);
    Tensor& ga = t.grad_slot(a.id);
    for (std::size_t i = 0; i < y.size(); ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Var Tape::tanh(Var a) {
  Tensor out = value(a);
  for (double& v : out.values()) v = std::tanh(v);
  return push(std::move(out), needs_grad(a), [a](Tape& t, std::size_t self) {
    const Tensor& y = t.nodes_[self].value;
    const Tensor& g = t.out_grad(self);
    Tensor& ga = t.grad_slot(a.id);
    for (std::size_t i = 0; i < y.size(); ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
  });
}

Var Tape::softmax(Var a) {
  const Tensor& x = value(a);
  require_vector("softmax", x);
  Tensor out(x.shape(), 0.0);
  softmax_into(x, out);
  return push(std::move(out), needs_grad(a), [a](Tape& t, std::size_t self) {
    const Tensor& y = t.nodes_[self].value;
    const Tensor& g = t.out_grad(self);
    const double dot = as_vector(g).dot(as_vector(y));
    Tensor& ga = t.grad_slot(a.id);
    for (std::size_t i = 0; i < y.size(); ++i) ga[i] += y[i] * (g[i] - dot);
  });
}

Var Tape::embedding_lookup(Var table, std::size_t index) {
  const Tensor& x = value(table);
  if (x.rank() != 2) {
    throw ShapeError("embedding_lookup: table must be a matrix, got " +
                     x.shape_string());
  }
  if (index >= x.rows()) {
    throw ShapeError("embedding_lookup: index " + std::to_string(index) +
                     " outside table " + x.shape_string());
  }
  const std::size_t dim = x.cols();
  std::vector<double> row(x.data() + index * dim, x.data() + (index + 1) * dim);
  return push(Tensor::vector(std::move(row)), needs_grad(table),
              [table, index, dim](Tape& t, std::size_t self) {
                const Tensor& g = t.out_grad(self);
                Tensor& gt = t.grad_slot(table.id);
                for (std::size_t i = 0; i < dim; ++i) gt[index * dim + i] += g[i];
              });
}

Var Tape::sum(Var a) {
  const Tensor& x = value(a);
  return push(Tensor::scalar(as_vector(x).sum()), needs_grad(a),
              [a](Tape& t, std::size_t self) {
                const double g = t.out_grad(self)[0];
                as_vector(t.grad_slot(a.id)).array() += g;
              });
}

Var Tape::add_n(std::span<const Var> terms) {
  if (terms.empty()) throw ShapeError("add_n: no inputs");
  Tensor out = value(terms[0]);
  bool any_grad = needs_grad(terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!value(terms[i]).same_shape(out)) shape_mismatch("add_n", out, value(terms[i]));
    as_vector(out) += as_vector(value(terms[i]));
    any_grad = any_grad || needs_grad(terms[i]);
  }
  std::vector<Var> inputs(terms.begin(), terms.end());
  return push(std::move(out), any_grad,
              [inputs = std::move(inputs)](Tape& t, std::size_t self) {
                for (Var v : inputs) {
                  if (t.needs_grad(v)) {
                    as_vector(t.grad_slot(v.id)) += as_vector(t.out_grad(self));
                  }
                }
              });
}

Var Tape::cross_entropy(Var logits, std::size_t target) {
  const Tensor& x = value(logits);
  require_vector("cross_entropy", x);
  if (target >= x.size()) {
    throw InvalidArgument("cross_entropy: target " + std::to_string(target) +
                          " outside " + std::to_string(x.size()) + " classes");
  }
  const double max = *std::max_element(x.values().begin(), x.values().end());
  double total = 0.0;
  for (double v : x.values()) total += std::exp(v - max);
  const double log_normalizer = max + std::log(total);
  return push(Tensor::scalar(log_normalizer - x[target]), needs_grad(logits),
              [logits, target](Tape& t, std::size_t self) {
                const Tensor& x = t.value(logits);
                Tensor probs(x.shape(), 0.0);
                softmax_into(x, probs);
                probs[target] -= 1.0;
                const double g = t.out_grad(self)[0];
                as_vector(t.grad_slot(logits.id)) += g * as_vector(probs);
              });
}

void Tape::defer_outer(std::size_t param_node, std::size_t grad_node,
                       std::size_t input_node) {
  for (auto& d : deferred_) {
    if (d.param_node == param_node) {
      d.terms.emplace_back(grad_node, input_node);
      return;
    }
  }
  deferred_.push_back({param_node, {{grad_node, input_node}}});
}

void Tape::flush_deferred() {
  for (const auto& d : deferred_) {
    Tensor& target = grad_slot(d.param_node);
    const auto rows = static_cast<Eigen::Index>(target.rows());
    const auto cols = static_cast<Eigen::Index>(target.cols());
    const auto count = static_cast<Eigen::Index>(d.terms.size());
    Eigen::MatrixXd grads(rows, count);
    Eigen::MatrixXd inputs(cols, count);
    for (Eigen::Index k = 0; k < count; ++k) {
      const auto [g, x] = d.terms[static_cast<std::size_t>(k)];
      grads.col(k) = as_vector(nodes_[g].grad);
      inputs.col(k) = as_vector(value(Var{x}));
    }
    as_matrix(target).noalias() += grads * inputs.transpose();
  }
  deferred_.clear();
}

void Tape::backward(Var loss) {
  if (backward_done_) {
    throw Error("backward called twice on the same tape; run a new forward pass");
  }
  if (value(loss).size() != 1) {
    throw ShapeError("backward: loss must be a scalar, got " +
                     value(loss).shape_string());
  }
  backward_done_ = true;
  if (!nodes_[loss.id].requires_grad) return;
  grad_slot(loss.id)[0] += 1.0;
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.backward || node.grad.empty()) continue;
    node.backward(*this, i);
  }
  flush_deferred();
}

}  // namespace histnorm::numerics
