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
#include <vector>

#include "histnorm/numerics/tape.hpp"

namespace histnorm::models {

struct LstmState {
  numerics::Var h;
  numerics::Var c;
};

/// One LSTM step. `weight` is (4*hidden x (input + hidden)) applied to
/// [input; h_prev]; gate layout is [input, forget, cell, output].
LstmState lstm_step(numerics::Tape& tape, numerics::Var weight, numerics::Var bias,
                    numerics::Var input, LstmState prev, std::size_t hidden);

/// Bidirectional encoder output: one state per position of
/// BEGIN, x_1 .. x_n, END. State i is [forward_i; backward_i].
struct EncodedInput {
  std::vector<numerics::Var> states;
  /// states stacked as rows, (n+2) x 2*encoder_dim.
  numerics::Var matrix;
  /// transpose of matrix, precomputed for attention contexts.
  numerics::Var matrix_t;
  /// [forward state at END; backward state at BEGIN].
  numerics::Var summary;

  std::size_t length() const noexcept { return states.size(); }
};

struct Attention {
  numerics::Var weights;
  numerics::Var context;
};

/// Weighted sum of encoder states.
numerics::Var attention_context(numerics::Tape& tape, const EncodedInput& enc,
                                numerics::Var weights);

/// Bilinear soft attention: score_i = enc_i . (W d), weights = softmax(scores).
/// `score_weight` is (2*encoder_dim x decoder_dim).
Attention soft_attend(numerics::Tape& tape, numerics::Var score_weight,
                      numerics::Var decoder_state, const EncodedInput& enc);

}  // namespace histnorm::models
