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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "histnorm/baseline.hpp"
#include "histnorm/corpus.hpp"
#include "histnorm/models/config.hpp"
#include "histnorm/normalizer.hpp"

namespace histnorm {

/// Exact-match accuracy split by whether the historical form was seen in
/// training. Accuracies are derived from integer counts.
struct EvalReport {
  std::string system;
  std::size_t train_size = 0;
  std::size_t n_seen = 0;
  std::size_t n_unseen = 0;
  std::size_t correct_seen = 0;
  std::size_t correct_unseen = 0;

  std::size_t n_all() const noexcept { return n_seen + n_unseen; }
  std::size_t correct_all() const noexcept { return correct_seen + correct_unseen; }

  /// Empty when the bucket holds no tokens.
  std::optional<double> accuracy_all() const { return ratio(correct_all(), n_all()); }
  std::optional<double> accuracy_seen() const { return ratio(correct_seen, n_seen); }
  std::optional<double> accuracy_unseen() const { return ratio(correct_unseen, n_unseen); }

  double seen_fraction() const {
    return n_all() == 0 ? 0.0 : static_cast<double>(n_seen) / static_cast<double>(n_all());
  }
  double pct_unseen() const {
    return n_all() == 0 ? 0.0
                        : static_cast<double>(n_unseen) / static_cast<double>(n_all());
  }

 private:
  static std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

/// Routes each test token through lex.is_seen and scores exact string
/// matches per bucket. Throws InvalidArgument on an empty test set.
EvalReport evaluate(const Normalizer& system, const Dataset& test, const Lexicon& lex,
                    std::size_t train_size = 0, std::size_t jobs = 1);

/// One JSON object: system, size, n_all, n_seen, n_unseen, acc_all,
/// acc_seen, acc_unseen (null for empty buckets), pct_unseen.
std::string to_json_line(const EvalReport& report);

/// Plain-text table with A/S/U accuracy columns in percent; empty buckets
/// print as "n/a".
std::string format_table(std::span<const EvalReport> reports);

// -- learning curves --------------------------------------------------------

struct LearningCurveOptions {
  /// One neural system is trained per config at every size.
  std::vector<models::ModelConfig> models;
  /// Also report hybrid(baseline, model) for every model.
  bool hybrids = false;
  std::size_t jobs = 1;
};

struct CurvePoint {
  std::size_t size = 0;
  /// Share of test tokens unseen in the size-k prefix.
  double pct_unseen = 0.0;
  std::vector<EvalReport> reports;  // baseline first, then models, then hybrids
};

/// 1000, 2000, 5000, 10000, 20000, 50000 and the full size, clipped to
/// train_size.
std::vector<std::size_t> default_curve_sizes(std::size_t train_size);

/// For each size: prefix subset, rebuild the lexicon, retrain every model,
/// evaluate all systems. Training failures are rethrown naming the size.
std::vector<CurvePoint> learning_curve(const Dataset& train, const Dataset& test,
                                       std::span<const std::size_t> sizes,
                                       const LearningCurveOptions& options);

/// CSV with header size,system,pct_unseen,n_unseen,acc_all,acc_seen,acc_unseen.
std::string curve_to_csv(std::span<const CurvePoint> points);

// -- significance -----------------------------------------------------------

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  std::size_t df = 0;
  /// Set when the differences have zero variance but nonzero mean; t is
  /// then +/-infinity and p is reported as 0.
  std::optional<std::string> warning;
};

/// Two-tailed paired t-test with n-1 degrees of freedom. Requires equal
/// lengths >= 2. All-equal pairs give t = 0, p = 1.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

}  // namespace histnorm
