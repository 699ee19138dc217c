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

#include "histnorm/models/layers.hpp"

namespace histnorm::models {

using numerics::Tape;
using numerics::Var;

LstmState lstm_step(Tape& tape, Var weight, Var bias, Var input, LstmState prev,
                    std::size_t hidden) {
  const Var gates = tape.add(tape.matmul(weight, tape.concat({input, prev.h})), bias);
  const Var in_gate = tape.sigmoid(tape.slice(gates, 0, hidden));
  const Var forget_gate = tape.sigmoid(tape.slice(gates, hidden, hidden));
  const Var candidate = tape.tanh(tape.slice(gates, 2 * hidden, hidden));
  const Var out_gate = tape.sigmoid(tape.slice(gates, 3 * hidden, hidden));
  const Var c = tape.add(tape.mul(forget_gate, prev.c), tape.mul(in_gate, candidate));
  const Var h = tape.mul(out_gate, tape.tanh(c));
  return {h, c};
}

Var attention_context(Tape& tape, const EncodedInput& enc, Var weights) {
  return tape.matmul(enc.matrix_t, weights);
}

Attention soft_attend(Tape& tape, Var score_weight, Var decoder_state,
                      const EncodedInput& enc) {
  const Var query = tape.matmul(score_weight, decoder_state);
  const Var weights = tape.softmax(tape.matmul(enc.matrix, query));
  return {weights, attention_context(tape, enc, weights)};
}

}  // namespace histnorm::models
