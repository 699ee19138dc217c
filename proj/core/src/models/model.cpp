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

#include "histnorm/models/model.hpp"

#include <limits>

#include "histnorm/error.hpp"
#include "histnorm/text.hpp"

namespace histnorm::models {

using alignment::Action;
using numerics::Parameter;
using numerics::Tape;
using numerics::Tensor;
using numerics::Var;

namespace {

/// Index of the largest allowed logit; ties go to the lowest index.
std::size_t masked_argmax(const Tensor& logits, const std::vector<bool>& allowed) {
  std::size_t best = logits.size();
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!allowed[i]) continue;
    if (best == logits.size() || logits[i] > best_value) {
      best = i;
      best_value = logits[i];
    }
  }
  return best;
}

}  // namespace

EncoderDecoder::EncoderDecoder(ModelConfig config, CharVocab vocab)
    : config_(config), vocab_(std::move(vocab)) {
  config_.validate();
  const std::size_t v = vocab_.size();
  const std::size_t e = config_.embedding_dim;
  const std::size_t h = config_.encoder_dim;
  src_embedding_ = &params_.add("src_embedding", {v, e});
  fwd_weight_ = &params_.add("encoder_fwd.weight", {4 * h, e + h});
  fwd_bias_ = &params_.add("encoder_fwd.bias", {4 * h});
  bwd_weight_ = &params_.add("encoder_bwd.weight", {4 * h, e + h});
  bwd_bias_ = &params_.add("encoder_bwd.bias", {4 * h});
  init_weight_ = &params_.add("decoder_init.weight", {config_.decoder_dim, 2 * h});
  init_bias_ = &params_.add("decoder_init.bias", {config_.decoder_dim});
  tgt_embedding_ = &params_.add("tgt_embedding", {v, e});
  lstm_biases_ = {fwd_bias_, bwd_bias_};
}

void EncoderDecoder::initialize() {
  params_.init_uniform(config_.seed, config_.init_scale);
  for (Parameter* bias : lstm_biases_) {
    const std::size_t hidden = bias->value.size() / 4;
    for (std::size_t i = hidden; i < 2 * hidden; ++i) bias->value[i] = 1.0;
  }
}

EncodedInput EncoderDecoder::encode_on(Tape& tape, std::u32string_view hist,
                                       bool live) const {
  const std::size_t n = hist.size() + 2;
  const std::size_t hidden = config_.encoder_dim;
  const Var table = bind(tape, src_embedding_, live);
  std::vector<Var> inputs;
  inputs.reserve(n);
  inputs.push_back(tape.embedding_lookup(table, CharVocab::kBegin));
  for (char32_t c : hist) inputs.push_back(tape.embedding_lookup(table, vocab_.index(c)));
  inputs.push_back(tape.embedding_lookup(table, CharVocab::kEnd));

  const Var zero = tape.constant(Tensor({hidden}, 0.0));
  std::vector<Var> forward(n);
  std::vector<Var> backward(n);
  {
    const Var w = bind(tape, fwd_weight_, live);
    const Var b = bind(tape, fwd_bias_, live);
    LstmState state{zero, zero};
    for (std::size_t i = 0; i < n; ++i) {
      state = lstm_step(tape, w, b, inputs[i], state, hidden);
      forward[i] = state.h;
    }
  }
  {
    const Var w = bind(tape, bwd_weight_, live);
    const Var b = bind(tape, bwd_bias_, live);
    LstmState state{zero, zero};
    for (std::size_t i = n; i-- > 0;) {
      state = lstm_step(tape, w, b, inputs[i], state, hidden);
      backward[i] = state.h;
    }
  }
  EncodedInput enc;
  enc.states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    enc.states.push_back(tape.concat({forward[i], backward[i]}));
  }
  enc.matrix = tape.stack(enc.states);
  enc.matrix_t = tape.transpose(enc.matrix);
  enc.summary = tape.concat({forward[n - 1], backward[0]});
  return enc;
}

LstmState EncoderDecoder::initial_state(Tape& tape, const EncodedInput& enc,
                                        bool live) const {
  const Var w = bind(tape, init_weight_, live);
  const Var b = bind(tape, init_bias_, live);
  const Var h = tape.tanh(tape.add(tape.matmul(w, enc.summary), b));
  const Var c = tape.constant(Tensor({config_.decoder_dim}, 0.0));
  return {h, c};
}

std::vector<Tensor> EncoderDecoder::encode(std::string_view hist) const {
  Tape tape;
  const auto enc = encode_on(tape, text::to_u32(hist), false);
  std::vector<Tensor> out;
  out.reserve(enc.length());
  for (Var v : enc.states) out.push_back(tape.value(v));
  return out;
}

// ---------------------------------------------------------------------------
// Soft attention

SoftAttentionModel::SoftAttentionModel(ModelConfig config, CharVocab vocab)
    : EncoderDecoder(config, std::move(vocab)) {
  const std::size_t v = this->vocab().size();
  const std::size_t e = this->config().embedding_dim;
  const std::size_t enc = 2 * this->config().encoder_dim;
  const std::size_t d = this->config().decoder_dim;
  dec_weight_ = &params().add("decoder.weight", {4 * d, e + enc + d});
  dec_bias_ = &params().add("decoder.bias", {4 * d});
  score_weight_ = &params().add("attention.score", {enc, d});
  combine_weight_ = &params().add("attention.combine.weight", {d, d + enc});
  combine_bias_ = &params().add("attention.combine.bias", {d});
  out_weight_ = &params().add("output.weight", {v, d});
  out_bias_ = &params().add("output.bias", {v});
  lstm_biases_.push_back(dec_bias_);
}

SoftAttentionModel::Step SoftAttentionModel::step(Tape& tape, const EncodedInput& enc,
                                                  std::size_t prev, LstmState state,
                                                  Var context, bool live) const {
  const Var emb = tape.embedding_lookup(bind(tape, tgt_embedding_, live), prev);
  const Var input = tape.concat({emb, context});
  state = lstm_step(tape, bind(tape, dec_weight_, live), bind(tape, dec_bias_, live),
                    input, state, config().decoder_dim);
  const Attention att = soft_attend(tape, bind(tape, score_weight_, live), state.h, enc);
  const Var combined = tape.tanh(
      tape.add(tape.matmul(bind(tape, combine_weight_, live),
                           tape.concat({state.h, att.context})),
               bind(tape, combine_bias_, live)));
  const Var logits = tape.add(tape.matmul(bind(tape, out_weight_, live), combined),
                              bind(tape, out_bias_, live));
  return {state, att.context, logits};
}

Var SoftAttentionModel::loss(Tape& tape, const TokenPair& pair) {
  const auto hist = text::to_u32(pair.hist);
  const auto modern = text::to_u32(pair.modern);
  const EncodedInput enc = encode_on(tape, hist, true);
  LstmState state = initial_state(tape, enc, true);
  Var context = tape.constant(Tensor({2 * config().encoder_dim}, 0.0));
  std::vector<std::size_t> targets;
  targets.reserve(modern.size() + 1);
  for (char32_t c : modern) targets.push_back(vocab().index(c));
  targets.push_back(CharVocab::kStop);

  std::vector<Var> terms;
  terms.reserve(targets.size());
  std::size_t prev = CharVocab::kBegin;
  for (std::size_t target : targets) {
    const Step s = step(tape, enc, prev, state, context, true);
    terms.push_back(tape.cross_entropy(s.logits, target));
    state = s.state;
    context = s.context;
    prev = target;
  }
  return tape.add_n(terms);
}

DecodeResult SoftAttentionModel::decode(std::string_view hist_utf8) const {
  const auto hist = text::to_u32(hist_utf8);
  Tape tape;
  const EncodedInput enc = encode_on(tape, hist, false);
  LstmState state = initial_state(tape, enc, false);
  Var context = tape.constant(Tensor({2 * config().encoder_dim}, 0.0));

  std::vector<bool> allowed(vocab().size(), false);
  for (std::size_t i = CharVocab::kReserved; i < vocab().size(); ++i) allowed[i] = true;
  allowed[CharVocab::kStop] = true;

  DecodeResult result;
  std::u32string output;
  const std::size_t max_len = max_output_length(hist.size());
  std::size_t prev = CharVocab::kBegin;
  bool stopped = false;
  while (output.size() < max_len) {
    const Step s = step(tape, enc, prev, state, context, false);
    const std::size_t choice = masked_argmax(tape.value(s.logits), allowed);
    if (choice == CharVocab::kStop) {
      stopped = true;
      break;
    }
    output.push_back(vocab().symbol(choice));
    state = s.state;
    context = s.context;
    prev = choice;
  }
  result.truncated = !stopped;
  result.output = text::to_utf8(output);
  return result;
}

// ---------------------------------------------------------------------------
// Hard monotonic attention

HardAttentionModel::HardAttentionModel(ModelConfig config, CharVocab vocab)
    : EncoderDecoder(config, std::move(vocab)) {
  const std::size_t v = this->vocab().size();
  const std::size_t e = this->config().embedding_dim;
  const std::size_t enc = 2 * this->config().encoder_dim;
  const std::size_t d = this->config().decoder_dim;
  dec_weight_ = &params().add("decoder.weight", {4 * d, e + enc + d});
  dec_bias_ = &params().add("decoder.bias", {4 * d});
  out_weight_ = &params().add("output.weight", {v, d});
  out_bias_ = &params().add("output.bias", {v});
  lstm_biases_.push_back(dec_bias_);
}

HardAttentionModel::Step HardAttentionModel::step(Tape& tape, const EncodedInput& enc,
                                                  std::size_t prev, std::size_t pointer,
                                                  LstmState state, bool live) const {
  const Var emb = tape.embedding_lookup(bind(tape, tgt_embedding_, live), prev);
  const Var input = tape.concat({emb, enc.states[pointer]});
  state = lstm_step(tape, bind(tape, dec_weight_, live), bind(tape, dec_bias_, live),
                    input, state, config().decoder_dim);
  const Var logits = tape.add(tape.matmul(bind(tape, out_weight_, live), state.h),
                              bind(tape, out_bias_, live));
  return {state, logits};
}

std::size_t HardAttentionModel::action_index(const Action& action) const {
  switch (action.kind) {
    case Action::Kind::kWrite: return vocab().index(action.ch);
    case Action::Kind::kStep: return CharVocab::kStep;
    case Action::Kind::kStop: return CharVocab::kStop;
  }
  return CharVocab::kUnk;
}

std::vector<std::size_t> HardAttentionModel::oracle_targets(const TokenPair& pair) const {
  const auto seq = alignment::oracle_actions(text::to_u32(pair.hist),
                                             text::to_u32(pair.modern));
  std::vector<std::size_t> targets;
  targets.reserve(seq.actions.size());
  for (const auto& action : seq.actions) targets.push_back(action_index(action));
  return targets;
}

Var HardAttentionModel::loss(Tape& tape, const TokenPair& pair) {
  const auto hist = text::to_u32(pair.hist);
  const auto seq = alignment::oracle_actions(hist, text::to_u32(pair.modern));
  const EncodedInput enc = encode_on(tape, hist, true);
  LstmState state = initial_state(tape, enc, true);

  std::vector<Var> terms;
  terms.reserve(seq.actions.size());
  std::size_t pointer = 1;
  std::size_t prev = CharVocab::kBegin;
  for (const auto& action : seq.actions) {
    const std::size_t target = action_index(action);
    const Step s = step(tape, enc, prev, pointer, state, true);
    terms.push_back(tape.cross_entropy(s.logits, target));
    state = s.state;
    prev = target;
    if (action.kind == Action::Kind::kStep) ++pointer;
  }
  return tape.add_n(terms);
}

DecodeResult HardAttentionModel::force(std::string_view hist_utf8,
                                       const std::vector<Action>& actions) const {
  const auto hist = text::to_u32(hist_utf8);
  const std::size_t end = hist.size() + 1;
  Tape tape;
  const EncodedInput enc = encode_on(tape, hist, false);
  LstmState state = initial_state(tape, enc, false);
  DecodeResult result;
  std::u32string output;
  std::size_t pointer = 1;
  std::size_t prev = CharVocab::kBegin;
  for (const auto& action : actions) {
    if (action.kind == Action::Kind::kStep && pointer == end) {
      throw InvalidArgument("forced action program steps past END");
    }
    state = step(tape, enc, prev, pointer, state, false).state;
    result.pointer_trace.push_back(pointer);
    result.actions.push_back(action);
    prev = action_index(action);
    if (action.kind == Action::Kind::kStop) break;
    if (action.kind == Action::Kind::kStep) {
      ++pointer;
    } else {
      output.push_back(action.ch);
    }
  }
  result.output = text::to_utf8(output);
  return result;
}

DecodeResult HardAttentionModel::decode(std::string_view hist_utf8) const {
  const auto hist = text::to_u32(hist_utf8);
  const std::size_t end = hist.size() + 1;
  const std::size_t write_cap = max_writes(hist.size());
  Tape tape;
  const EncodedInput enc = encode_on(tape, hist, false);
  LstmState state = initial_state(tape, enc, false);

  std::vector<bool> allowed(vocab().size(), false);
  DecodeResult result;
  std::u32string output;
  std::size_t pointer = 1;
  std::size_t prev = CharVocab::kBegin;
  while (true) {
    const bool can_write = output.size() < write_cap;
    for (std::size_t i = CharVocab::kReserved; i < vocab().size(); ++i) {
      allowed[i] = can_write;
    }
    allowed[CharVocab::kStep] = pointer < end;
    allowed[CharVocab::kStop] = true;

    const Step s = step(tape, enc, prev, pointer, state, false);
    const std::size_t choice = masked_argmax(tape.value(s.logits), allowed);
    result.pointer_trace.push_back(pointer);
    state = s.state;
    prev = choice;
    if (choice == CharVocab::kStop) {
      result.actions.push_back(Action::stop());
      break;
    }
    if (choice == CharVocab::kStep) {
      result.actions.push_back(Action::step());
      ++pointer;
    } else {
      const char32_t c = vocab().symbol(choice);
      result.actions.push_back(Action::write(c));
      output.push_back(c);
      if (output.size() == write_cap) result.truncated = true;
    }
  }
  result.output = text::to_utf8(output);
  return result;
}

std::unique_ptr<EncoderDecoder> make_model(const ModelConfig& config, CharVocab vocab) {
  std::unique_ptr<EncoderDecoder> model;
  if (config.kind == ModelKind::kSoft) {
    model = std::make_unique<SoftAttentionModel>(config, std::move(vocab));
  } else {
    model = std::make_unique<HardAttentionModel>(config, std::move(vocab));
  }
  model->initialize();
  return model;
}

}  // namespace histnorm::models
