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

#include "histnorm/models/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "histnorm/error.hpp"
#include "histnorm/numerics/optimizer.hpp"

namespace histnorm::models {

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(epoch)};
  std::mt19937_64 rng(seq);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

namespace {

// Adam moments live here so that continued training keeps its state within
// one call; a fresh call starts a fresh optimizer.
void run_epochs(EncoderDecoder& model, const Dataset& train, int first_epoch,
                int epochs, const EpochCallback& on_epoch) {
  numerics::Adam optimizer({.lr = model.config().learning_rate,
                            .clip_norm = model.config().clip_norm});
  for (int epoch = first_epoch; epoch < first_epoch + epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const auto order = epoch_order(train.size(), model.config().seed, epoch);
    double total = 0.0;
    for (std::size_t index : order) {
      numerics::Tape tape;
      const numerics::Var loss = model.loss(tape, train.pairs[index]);
      const double value = tape.value(loss)[0];
      if (!std::isfinite(value)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) +
                           ", pair index " + std::to_string(index) + " ('" +
                           train.pairs[index].hist + "')");
      }
      total += value;
      tape.backward(loss);
      optimizer.step(model.params());
    }
    if (on_epoch) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start;
      on_epoch({epoch, total / static_cast<double>(train.size()), train.size(),
                elapsed.count()});
    }
  }
}

}  // namespace

std::unique_ptr<EncoderDecoder> train(const ModelConfig& config, const Dataset& data,
                                      const EpochCallback& on_epoch) {
  if (data.empty()) throw InvalidArgument("train: empty training set");
  config.validate();
  auto model = make_model(config, CharVocab::build(data));
  run_epochs(*model, data, 1, config.epochs, on_epoch);
  return model;
}

void train_epochs(EncoderDecoder& model, const Dataset& data, int first_epoch,
                  int epochs, const EpochCallback& on_epoch) {
  if (data.empty()) throw InvalidArgument("train: empty training set");
  run_epochs(model, data, first_epoch, epochs, on_epoch);
}

}  // namespace histnorm::models
