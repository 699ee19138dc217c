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

#include <gtest/gtest.h>
#include <gsl/gsl_cdf.h>

#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "histnorm/baseline.hpp"
#include "histnorm/error.hpp"
#include "histnorm/evaluation.hpp"
#include "histnorm/normalizer.hpp"
#include "synthetic.hpp"

namespace histnorm {
namespace {

// 100 test tokens, 80 seen. A system defined by how many seen and unseen
// tokens it gets right; the baseline is a real lexicon built to score 72/80
// on seen tokens and 10/20 on unseen ones (10 unseen pairs have h = m).
struct WorkedExample {
  Dataset train{"train", Split::kTrain, {}};
  Dataset test{"test", Split::kTest, {}};
  std::shared_ptr<const Lexicon> lexicon;

  WorkedExample() {
    for (int i = 0; i < 80; ++i) {
      const std::string h = "s" + std::to_string(i);
      train.pairs.push_back({h, i < 72 ? "gold" + std::to_string(i) : "wrong"});
      test.pairs.push_back({h, "gold" + std::to_string(i)});
    }
    for (int i = 0; i < 20; ++i) {
      const std::string h = "u" + std::to_string(i);
      test.pairs.push_back({h, i < 10 ? h : "gold_u" + std::to_string(i)});
    }
    lexicon = std::make_shared<const Lexicon>(build_lexicon(train));
  }

  NormalizerPtr system(std::string name, int seen_right, int unseen_right) const {
    return std::make_shared<FunctionNormalizer>(
        std::move(name), [seen_right, unseen_right](std::string_view h) -> std::string {
          const int i = std::stoi(std::string(h.substr(1)));
          const bool seen = h[0] == 's';
          if (seen) return i < seen_right ? "gold" + std::to_string(i) : "x";
          return i < unseen_right ? (i < 10 ? std::string(h) : "gold_u" + std::to_string(i))
                                  : "x";
        });
  }
};

TEST(Evaluate, WorkedExampleExact) {
  const WorkedExample w;
  const BaselineNormalizer base(w.lexicon);
  const EvalReport rb = evaluate(base, w.test, *w.lexicon);
  const EvalReport ra = evaluate(*w.system("A", 64, 14), w.test, *w.lexicon);
  const EvalReport rB = evaluate(*w.system("B", 56, 18), w.test, *w.lexicon);
  const auto hybrid = make_hybrid(w.lexicon, w.system("B", 56, 18));
  const EvalReport rh = evaluate(*hybrid, w.test, *w.lexicon);

  EXPECT_EQ(rb.seen_fraction(), 0.8);
  EXPECT_EQ(*rb.accuracy_seen(), 0.9);
  EXPECT_EQ(*rb.accuracy_unseen(), 0.5);
  EXPECT_EQ(*rb.accuracy_all(), 0.82);
  EXPECT_EQ(*ra.accuracy_all(), 0.78);
  EXPECT_EQ(*rB.accuracy_all(), 0.74);
  EXPECT_EQ(*rh.accuracy_all(), 0.90);
}

TEST(Evaluate, RankingOfTheThoughtExperiment) {
  const WorkedExample w;
  const BaselineNormalizer base(w.lexicon);
  const auto acc = [&](const Normalizer& n) { return *evaluate(n, w.test, *w.lexicon).accuracy_all(); };
  const double hybrid = acc(*make_hybrid(w.lexicon, w.system("B", 56, 18)));
  EXPECT_GT(hybrid, acc(base));
  EXPECT_GT(acc(base), acc(*w.system("A", 64, 14)));
  EXPECT_GT(acc(*w.system("A", 64, 14)), acc(*w.system("B", 56, 18)));
}

TEST(Evaluate, HybridRoutesSeenTokensToTheBaseline) {
  const WorkedExample w;
  const BaselineNormalizer base(w.lexicon);
  const auto b = w.system("B", 56, 18);
  const auto hybrid = make_hybrid(w.lexicon, b);
  EXPECT_EQ(hybrid->name(), "hybrid(B)");
  const EvalReport rh = evaluate(*hybrid, w.test, *w.lexicon);
  const EvalReport rbase = evaluate(base, w.test, *w.lexicon);
  const EvalReport rb = evaluate(*b, w.test, *w.lexicon);
  EXPECT_EQ(rh.correct_seen, rbase.correct_seen);
  EXPECT_EQ(rh.correct_unseen, rb.correct_unseen);
  EXPECT_GE(*rh.accuracy_all(), std::min(*rbase.accuracy_all(), *rb.accuracy_all()));
  for (const auto& p : w.test.pairs) {
    const std::string expected =
        w.lexicon->is_seen(p.hist) ? base.normalize(p.hist) : b->normalize(p.hist);
    EXPECT_EQ(hybrid->normalize(p.hist), expected);
  }
}

TEST(Evaluate, HybridOfBaselineWithItselfIsTheBaseline) {
  const WorkedExample w;
  const auto base = std::make_shared<BaselineNormalizer>(w.lexicon);
  const auto hybrid = make_hybrid(w.lexicon, base);
  for (const auto& p : w.test.pairs) EXPECT_EQ(hybrid->normalize(p.hist), base->normalize(p.hist));
  EXPECT_EQ(hybrid->normalize("never"), "never");
}

TEST(Evaluate, IdentityOnUnchangedPairs) {
  const Dataset train{"t", Split::kTrain, {{"a", "a"}, {"b", "b"}}};
  const Dataset test{"e", Split::kTest, {{"a", "a"}, {"c", "c"}}};
  const Lexicon lex = build_lexicon(train);
  const EvalReport r = evaluate(IdentityNormalizer(), test, lex);
  EXPECT_EQ(*r.accuracy_all(), 1.0);
  EXPECT_EQ(*r.accuracy_seen(), 1.0);
  EXPECT_EQ(*r.accuracy_unseen(), 1.0);
}

TEST(Evaluate, EmptyTestIsError) {
  const Lexicon lex = build_lexicon(Dataset{"t", Split::kTrain, {{"a", "a"}}});
  EXPECT_THROW(evaluate(IdentityNormalizer(), Dataset{}, lex), InvalidArgument);
}

TEST(Evaluate, CountIdentityAndRoutingOnRandomData) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Dataset train, test;
    for (int i = 0; i < 200; ++i) {
      train.pairs.push_back({std::to_string(rng() % 50), std::to_string(rng() % 5)});
      test.pairs.push_back({std::to_string(rng() % 80), std::to_string(rng() % 5)});
    }
    const Lexicon lex = build_lexicon(train);
    const BaselineNormalizer base(std::make_shared<const Lexicon>(lex));
    const EvalReport r = evaluate(base, test, lex, 200, trial % 3 + 1);
    std::size_t seen = 0;
    for (const auto& p : test.pairs) seen += lex.is_seen(p.hist) ? 1 : 0;
    EXPECT_EQ(r.n_seen, seen);
    EXPECT_EQ(r.n_all(), test.size());
    EXPECT_EQ(r.correct_all(), r.correct_seen + r.correct_unseen);
    const double lhs = *r.accuracy_all() * static_cast<double>(r.n_all());
    double rhs = 0.0;
    if (r.n_seen) rhs += *r.accuracy_seen() * static_cast<double>(r.n_seen);
    if (r.n_unseen) rhs += *r.accuracy_unseen() * static_cast<double>(r.n_unseen);
    EXPECT_NEAR(lhs, rhs, 1e-9);
    // Baseline pass-through: unseen accuracy is the h = m share of unseen pairs.
    std::size_t unchanged = 0;
    for (const auto& p : test.pairs) {
      if (!lex.is_seen(p.hist) && p.hist == p.modern) ++unchanged;
    }
    EXPECT_EQ(r.correct_unseen, unchanged);
  }
}

TEST(Reports, JsonAndTable) {
  EvalReport r;
  r.system = "baseline";
  r.train_size = 3;
  r.n_seen = 4;
  r.correct_seen = 3;
  const std::string json = to_json_line(r);
  EXPECT_NE(json.find("\"acc_unseen\":null"), std::string::npos) << json;
  EXPECT_NE(json.find("\"acc_seen\":0.75"), std::string::npos) << json;
  EXPECT_NE(json.find("\"size\":3"), std::string::npos) << json;
  const std::vector<EvalReport> rs{r};
  const std::string table = format_table(rs);
  EXPECT_NE(table.find("n/a"), std::string::npos) << table;
  EXPECT_NE(table.find("75.0"), std::string::npos) << table;
}

TEST(LearningCurve, DefaultSizes) {
  EXPECT_EQ(default_curve_sizes(500), (std::vector<std::size_t>{500}));
  EXPECT_EQ(default_curve_sizes(3000), (std::vector<std::size_t>{1000, 2000, 3000}));
  EXPECT_EQ(default_curve_sizes(50000),
            (std::vector<std::size_t>{1000, 2000, 5000, 10000, 20000, 50000}));
  EXPECT_EQ(default_curve_sizes(60000).back(), 60000u);
}

TEST(LearningCurve, UnseenShareNonIncreasing) {
  const testing::ZipfLanguage lang(3000, 4);
  const Dataset train = lang.sample(4000, 1, "train");
  const Dataset test = lang.sample(1000, 2, "test");
  const std::vector<std::size_t> sizes{100, 250, 500, 1000, 2000, 4000};
  const auto points = learning_curve(train, test, sizes, {});
  ASSERT_EQ(points.size(), sizes.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LE(points[i].pct_unseen, points[i - 1].pct_unseen);
  }
  for (const auto& p : points) {
    ASSERT_EQ(p.reports.size(), 1u);
    EXPECT_EQ(p.reports[0].train_size, p.size);
    EXPECT_EQ(p.reports[0].pct_unseen(), p.pct_unseen);
  }
}

TEST(LearningCurve, FullSizeMatchesStandaloneEvaluation) {
  const testing::ZipfLanguage lang(500, 9);
  const Dataset train = lang.sample(600, 1, "train");
  const Dataset test = lang.sample(200, 2, "test");
  LearningCurveOptions opts;
  models::ModelConfig c;
  c.kind = models::ModelKind::kHard;
  c.embedding_dim = 4;
  c.encoder_dim = 4;
  c.decoder_dim = 4;
  c.epochs = 1;
  opts.models.push_back(c);
  opts.hybrids = true;
  const std::vector<std::size_t> sizes{train.size()};
  const auto points = learning_curve(train, test, sizes, opts);
  ASSERT_EQ(points.size(), 1u);
  ASSERT_EQ(points[0].reports.size(), 3u);
  const Lexicon lex = build_lexicon(train);
  const EvalReport direct =
      evaluate(BaselineNormalizer(std::make_shared<const Lexicon>(lex)), test, lex);
  EXPECT_EQ(points[0].reports[0].correct_seen, direct.correct_seen);
  EXPECT_EQ(points[0].reports[0].correct_unseen, direct.correct_unseen);
  // Hybrid seen bucket equals the baseline's.
  EXPECT_EQ(points[0].reports[2].correct_seen, direct.correct_seen);
  EXPECT_EQ(points[0].reports[2].correct_unseen, points[0].reports[1].correct_unseen);
  const std::string csv = curve_to_csv(points);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "size,system,pct_unseen,n_unseen,acc_all,acc_seen,acc_unseen");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(LearningCurve, InvalidSizes) {
  const Dataset train{"t", Split::kTrain, {{"a", "a"}, {"b", "b"}}};
  const Dataset test{"e", Split::kTest, {{"a", "a"}}};
  for (const std::vector<std::size_t>& sizes :
       {std::vector<std::size_t>{2, 1}, {1, 3}, {0}, {1, 1}}) {
    EXPECT_THROW(learning_curve(train, test, sizes, {}), InvalidArgument);
  }
}

TEST(LearningCurve, TrainingErrorsNameTheSize) {
  const Dataset train{"t", Split::kTrain, {{"a", "a"}, {"b", "b"}}};
  const Dataset test{"e", Split::kTest, {{"a", "a"}}};
  LearningCurveOptions opts;
  models::ModelConfig bad;
  bad.embedding_dim = 0;
  opts.models.push_back(bad);
  const std::vector<std::size_t> sizes{2};
  try {
    learning_curve(train, test, sizes, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("size 2"), std::string::npos) << e.what();
  }
}

// Textbook paired t statistic with GSL's t-distribution tail as the oracle.
std::pair<double, double> oracle_ttest(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  std::vector<double> d(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += (d[i] = a[i] - b[i]);
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double p = 2.0 * gsl_cdf_tdist_Q(std::abs(t), static_cast<double>(n - 1));
  return {t, p};
}

TEST(PairedTTest, MatchesOracle) {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> u(0.5, 0.9);
  for (std::size_t n : {2u, 3u, 10u, 20u, 84u}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = u(rng);
        b[i] = a[i] - 0.02 + 0.05 * (u(rng) - 0.7);
      }
      const auto [t, p] = oracle_ttest(a, b);
      const TTestResult r = paired_ttest(a, b);
      EXPECT_NEAR(r.t, t, 1e-10 * std::max(1.0, std::abs(t)));
      EXPECT_NEAR(r.p, p, 1e-10);
      EXPECT_EQ(r.df, n - 1);
      EXPECT_FALSE(r.warning);
    }
  }
}

TEST(PairedTTest, DegenerateCases) {
  const std::vector<double> a{1, 2, 3}, b{0, 1, 2};
  const TTestResult same = paired_ttest(a, a);
  EXPECT_EQ(same.t, 0.0);
  EXPECT_EQ(same.p, 1.0);
  EXPECT_FALSE(same.warning);
  const TTestResult constant = paired_ttest(a, b);
  EXPECT_EQ(constant.p, 0.0);
  EXPECT_TRUE(std::isinf(constant.t) && constant.t > 0);
  EXPECT_TRUE(constant.warning.has_value());
  EXPECT_TRUE(std::isinf(paired_ttest(b, a).t) && paired_ttest(b, a).t < 0);
}

TEST(PairedTTest, Preconditions) {
  const std::vector<double> one{1.0}, two{1.0, 2.0}, three{1.0, 2.0, 3.0};
  EXPECT_THROW(paired_ttest(one, one), InvalidArgument);
  EXPECT_THROW(paired_ttest(two, three), InvalidArgument);
}

}  // namespace
}  // namespace histnorm
