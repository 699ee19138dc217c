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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "histnorm/alignment.hpp"
#include "histnorm/corpus.hpp"
#include "histnorm/models/config.hpp"
#include "histnorm/models/layers.hpp"
#include "histnorm/models/vocab.hpp"
#include "histnorm/numerics/parameter.hpp"
#include "histnorm/numerics/tape.hpp"

namespace histnorm::models {

struct DecodeResult {
  std::string output;
  /// Output or action budget was exhausted before STOP.
  bool truncated = false;
  /// Hard model only: the emitted actions and the attended position before
  /// each of them.
  std::vector<alignment::Action> actions;
  std::vector<std::size_t> pointer_trace;
};

/// Shared bidirectional-LSTM encoder and decoder-state initialization.
/// Subclasses add the decoder. A constructed model is immutable unless its
/// parameters are trained; const members are safe to call concurrently.
class EncoderDecoder {
 public:
  virtual ~EncoderDecoder() = default;
  EncoderDecoder(const EncoderDecoder&) = delete;
  EncoderDecoder& operator=(const EncoderDecoder&) = delete;

  ModelKind kind() const noexcept { return config_.kind; }
  const ModelConfig& config() const noexcept { return config_; }
  const CharVocab& vocab() const noexcept { return vocab_; }
  numerics::ParameterStore& params() noexcept { return params_; }
  const numerics::ParameterStore& params() const noexcept { return params_; }

  /// Seeded uniform initialization; forget-gate biases start at 1.
  void initialize();

  /// Sum of per-step cross-entropies for one pair under teacher forcing,
  /// recorded on `tape` against the live parameters.
  virtual numerics::Var loss(numerics::Tape& tape, const TokenPair& pair) = 0;

  /// Greedy decoding. Total: always terminates within the step budget.
  virtual DecodeResult decode(std::string_view hist) const = 0;

  std::string normalize(std::string_view hist) const { return decode(hist).output; }

  /// Encoder states as concrete tensors (inference path).
  std::vector<numerics::Tensor> encode(std::string_view hist) const;

 protected:
  EncoderDecoder(ModelConfig config, CharVocab vocab);

  static numerics::Var bind(numerics::Tape& tape, numerics::Parameter* p, bool live) {
    return live ? tape.param(*p) : tape.frozen(*p);
  }

  EncodedInput encode_on(numerics::Tape& tape, std::u32string_view hist,
                         bool live) const;
  /// Initial decoder state from the encoder summary.
  LstmState initial_state(numerics::Tape& tape, const EncodedInput& enc,
                          bool live) const;
  std::vector<numerics::Parameter*> lstm_biases_;

  numerics::Parameter* tgt_embedding_ = nullptr;

 private:
  ModelConfig config_;
  CharVocab vocab_;
  numerics::ParameterStore params_;

  numerics::Parameter* src_embedding_ = nullptr;
  numerics::Parameter* fwd_weight_ = nullptr;
  numerics::Parameter* fwd_bias_ = nullptr;
  numerics::Parameter* bwd_weight_ = nullptr;
  numerics::Parameter* bwd_bias_ = nullptr;
  numerics::Parameter* init_weight_ = nullptr;
  numerics::Parameter* init_bias_ = nullptr;
};

/// Encoder-decoder with an LSTM decoder attending softly over every
/// encoder position; emits characters then STOP.
class SoftAttentionModel final : public EncoderDecoder {
 public:
  SoftAttentionModel(ModelConfig config, CharVocab vocab);

  numerics::Var loss(numerics::Tape& tape, const TokenPair& pair) override;
  DecodeResult decode(std::string_view hist) const override;

  /// Output length cap for greedy decoding.
  static std::size_t max_output_length(std::size_t input_length) {
    return 2 * input_length + 10;
  }

 private:
  struct Step {
    LstmState state;
    numerics::Var context;
    numerics::Var logits;
  };
  Step step(numerics::Tape& tape, const EncodedInput& enc, std::size_t prev,
            LstmState state, numerics::Var context, bool live) const;

  numerics::Parameter* dec_weight_;
  numerics::Parameter* dec_bias_;
  numerics::Parameter* score_weight_;
  numerics::Parameter* combine_weight_;
  numerics::Parameter* combine_bias_;
  numerics::Parameter* out_weight_;
  numerics::Parameter* out_bias_;
};

/// Encoder-decoder attending to exactly one encoder position at a time.
/// The pointer starts at the first input character and only moves forward,
/// on STEP; trailing writes attend the END sentinel.
class HardAttentionModel final : public EncoderDecoder {
 public:
  HardAttentionModel(ModelConfig config, CharVocab vocab);

  numerics::Var loss(numerics::Tape& tape, const TokenPair& pair) override;
  DecodeResult decode(std::string_view hist) const override;

  /// Vocabulary indices the decoder is trained to emit for a pair, one per
  /// oracle action.
  std::vector<std::size_t> oracle_targets(const TokenPair& pair) const;

  /// Runs the decoder under a given action program (teacher forcing) and
  /// reports what it wrote and where it attended.
  DecodeResult force(std::string_view hist,
                     const std::vector<alignment::Action>& actions) const;

  /// Cap on WRITE actions; STEP is bounded by |h| and STOP ends decoding.
  static std::size_t max_writes(std::size_t input_length) {
    return 2 * input_length + 10;
  }

 private:
  struct Step {
    LstmState state;
    numerics::Var logits;
  };
  Step step(numerics::Tape& tape, const EncodedInput& enc, std::size_t prev,
            std::size_t pointer, LstmState state, bool live) const;
  std::size_t action_index(const alignment::Action& action) const;

  numerics::Parameter* dec_weight_;
  numerics::Parameter* dec_bias_;
  numerics::Parameter* out_weight_;
  numerics::Parameter* out_bias_;
};

/// Freshly initialized model of config.kind over `vocab`.
std::unique_ptr<EncoderDecoder> make_model(const ModelConfig& config, CharVocab vocab);

}  // namespace histnorm::models
