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
#include <memory>

#include "histnorm/corpus.hpp"
#include "histnorm/models/config.hpp"
#include "histnorm/models/model.hpp"

namespace histnorm::models {

struct EpochLog {
  int epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::size_t pairs = 0;
  double seconds = 0.0;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// Visiting order for one epoch: a Fisher-Yates shuffle driven by a
/// mt19937_64 seeded from (seed, epoch).
std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch);

/// Trains a fresh model with per-pair Adam updates for config.epochs epochs
/// and returns the final-epoch parameters. Throws NumericError naming the
/// epoch and pair index if a loss goes non-finite.
std::unique_ptr<EncoderDecoder> train(const ModelConfig& config, const Dataset& train,
                                      const EpochCallback& on_epoch = {});

/// Continues training an existing model for `epochs` more epochs.
void train_epochs(EncoderDecoder& model, const Dataset& train, int first_epoch,
                  int epochs, const EpochCallback& on_epoch = {});

}  // namespace histnorm::models
