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

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "histnorm/baseline.hpp"
#include "histnorm/models/model.hpp"

namespace histnorm {

/// A named, deterministic, total map from historical to modern forms.
class Normalizer {
 public:
  virtual ~Normalizer() = default;
  virtual std::string name() const = 0;
  virtual std::string normalize(std::string_view hist) const = 0;
};

using NormalizerPtr = std::shared_ptr<const Normalizer>;

class IdentityNormalizer final : public Normalizer {
 public:
  explicit IdentityNormalizer(std::string name = "identity") : name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::string normalize(std::string_view hist) const override { return std::string(hist); }

 private:
  std::string name_;
};

class BaselineNormalizer final : public Normalizer {
 public:
  explicit BaselineNormalizer(std::shared_ptr<const Lexicon> lexicon,
                              std::string name = "baseline")
      : lexicon_(std::move(lexicon)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::string normalize(std::string_view hist) const override {
    return lexicon_->normalize(hist);
  }
  const std::shared_ptr<const Lexicon>& lexicon() const noexcept { return lexicon_; }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  std::string name_;
};

class ModelNormalizer final : public Normalizer {
 public:
  ModelNormalizer(std::shared_ptr<const models::EncoderDecoder> model, std::string name)
      : model_(std::move(model)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::string normalize(std::string_view hist) const override {
    return model_->normalize(hist);
  }

 private:
  std::shared_ptr<const models::EncoderDecoder> model_;
  std::string name_;
};

/// Wraps an arbitrary callable; mostly for tests and fixed lookup systems.
class FunctionNormalizer final : public Normalizer {
 public:
  FunctionNormalizer(std::string name, std::function<std::string(std::string_view)> fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string name() const override { return name_; }
  std::string normalize(std::string_view hist) const override { return fn_(hist); }

 private:
  std::string name_;
  std::function<std::string(std::string_view)> fn_;
};

/// Seen forms go to the memorization baseline, unseen forms to `model`.
class HybridNormalizer final : public Normalizer {
 public:
  HybridNormalizer(std::shared_ptr<const Lexicon> lexicon, NormalizerPtr model,
                   std::string name)
      : lexicon_(std::move(lexicon)), model_(std::move(model)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::string normalize(std::string_view hist) const override {
    return lexicon_->is_seen(hist) ? lexicon_->normalize(hist) : model_->normalize(hist);
  }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  NormalizerPtr model_;
  std::string name_;
};

/// Default name: "hybrid(<model name>)".
NormalizerPtr make_hybrid(std::shared_ptr<const Lexicon> lexicon, NormalizerPtr model,
                          std::string name = {});

}  // namespace histnorm
