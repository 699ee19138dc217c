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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "histnorm/corpus.hpp"
#include "histnorm/error.hpp"
#include "histnorm/text.hpp"

namespace histnorm {
namespace {

Dataset parse(const std::string& text, bool lowercase = false) {
  std::istringstream in(text);
  return parse_dataset(in, lowercase);
}

Dataset fixture_train() {
  return {"train", Split::kTrain, {{"a", "a"}, {"b", "c"}, {"a", "a"}}};
}

TEST(LoadDataset, KeepsFileOrder) {
  const Dataset d = parse("sayed\tsaid\nthee\tthe\n");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.pairs[0], (TokenPair{"sayed", "said"}));
  EXPECT_EQ(d.pairs[1], (TokenPair{"thee", "the"}));
}

TEST(LoadDataset, LowercaseFoldsBothFields) {
  const Dataset d = parse("Said\tSaid\n", true);
  EXPECT_EQ(d.pairs.at(0), (TokenPair{"said", "said"}));
}

TEST(LoadDataset, FullCaseFolding) {
  EXPECT_EQ(text::casefold("Straße"), "strasse");
  const Dataset d = parse("ÆLFRED\tÆlfred\n", true);
  EXPECT_EQ(d.pairs.at(0).hist, "ælfred");
  EXPECT_EQ(d.pairs.at(0).modern, "ælfred");
}

TEST(LoadDataset, NoLowercaseByDefault) {
  EXPECT_EQ(parse("Said\tsaid\n").pairs.at(0).hist, "Said");
}

TEST(LoadDataset, MissingTabReportsLine) {
  try {
    parse("sayed said\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    parse("a\tb\nc\td\te\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadDataset, EmptyFieldsRejected) {
  EXPECT_THROW(parse("\tsaid\n"), FormatError);
  EXPECT_THROW(parse("said\t\n"), FormatError);
  EXPECT_THROW(parse("a\tb\n\n"), FormatError);
}

TEST(LoadDataset, InvalidUtf8Rejected) { EXPECT_THROW(parse("a\xff\tb\n"), FormatError); }

TEST(LoadDataset, ToleratesCrLfAndMissingFinalNewline) {
  const Dataset d = parse("a\tb\r\nc\td");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.pairs[0].modern, "b");
  EXPECT_EQ(d.pairs[1].modern, "d");
}

TEST(LoadDataset, MissingFileIsError) {
  EXPECT_THROW(load_dataset("/nonexistent/histnorm.tsv", false), Error);
}

TEST(LoadDataset, RoundTripThroughFile) {
  std::mt19937_64 rng(7);
  const std::u32string alphabet = U"abcdeſþæøüÿ";
  Dataset d{"rt", Split::kTrain, {}};
  for (int i = 0; i < 200; ++i) {
    auto word = [&] {
      std::u32string w;
      const auto len = 1 + rng() % 8;
      for (std::size_t k = 0; k < len; ++k) w += alphabet[rng() % alphabet.size()];
      return text::to_utf8(w);
    };
    d.pairs.push_back({word(), word()});
  }
  const auto path = std::filesystem::path(HISTNORM_TEST_TMPDIR) / "corpus_roundtrip.tsv";
  save_dataset(path, d);
  const Dataset back = load_dataset(path, false);
  EXPECT_EQ(back.pairs, d.pairs);
}

TEST(ComputeStats, HandCountedFixture) {
  const Dataset eval{"eval", Split::kTest, {{"a", "x"}, {"d", "d"}}};
  const DatasetStats s = compute_stats(fixture_train(), eval);
  EXPECT_EQ(s.tokens, 3u);
  EXPECT_EQ(s.hist_types, 2u);
  EXPECT_EQ(s.modern_types, 2u);
  EXPECT_DOUBLE_EQ(s.pct_no_change, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.pct_unseen, 0.5);
}

TEST(ComputeStats, EmptyTrainIsError) {
  EXPECT_THROW(compute_stats(Dataset{}, fixture_train()), InvalidArgument);
}

TEST(ComputeStats, SelfEvaluationHasNoUnseen) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Dataset d;
    for (int i = 0; i < 50; ++i) {
      d.pairs.push_back({std::string(1, static_cast<char>('a' + rng() % 20)),
                         std::string(1, static_cast<char>('a' + rng() % 20))});
    }
    EXPECT_EQ(compute_stats(d, d).pct_unseen, 0.0);
  }
}

TEST(ComputeStats, PermutationInvariant) {
  std::mt19937_64 rng(11);
  Dataset train, eval;
  for (int i = 0; i < 300; ++i) {
    train.pairs.push_back({std::to_string(rng() % 40), std::to_string(rng() % 30)});
    eval.pairs.push_back({std::to_string(rng() % 60), std::to_string(rng() % 30)});
  }
  const DatasetStats base = compute_stats(train, eval);
  for (int trial = 0; trial < 5; ++trial) {
    Dataset t2 = train, e2 = eval;
    std::shuffle(t2.pairs.begin(), t2.pairs.end(), rng);
    std::shuffle(e2.pairs.begin(), e2.pairs.end(), rng);
    const DatasetStats s = compute_stats(t2, e2);
    EXPECT_EQ(s.tokens, base.tokens);
    EXPECT_EQ(s.hist_types, base.hist_types);
    EXPECT_EQ(s.modern_types, base.modern_types);
    EXPECT_DOUBLE_EQ(s.pct_no_change, base.pct_no_change);
    EXPECT_DOUBLE_EQ(s.pct_unseen, base.pct_unseen);
    EXPECT_LE(s.hist_types, s.tokens);
    EXPECT_LE(s.modern_types, s.tokens);
  }
}

TEST(ComputeStats, JsonKeysInOrder) {
  const Dataset eval{"eval", Split::kTest, {{"a", "x"}, {"d", "d"}}};
  const std::string json = stats_to_json(compute_stats(fixture_train(), eval));
  const auto tokens = json.find("\"tokens\"");
  const auto hist = json.find("\"hist_types\"");
  const auto modern = json.find("\"modern_types\"");
  const auto nochange = json.find("\"pct_no_change\"");
  const auto unseen = json.find("\"pct_unseen\"");
  ASSERT_NE(unseen, std::string::npos);
  EXPECT_LT(tokens, hist);
  EXPECT_LT(hist, modern);
  EXPECT_LT(modern, nochange);
  EXPECT_LT(nochange, unseen);
  EXPECT_EQ(json.find('\n'), std::string::npos);
}

TEST(SubsetTokens, Prefixes) {
  const Dataset train = fixture_train();
  EXPECT_EQ(subset_tokens(train, 3).pairs, train.pairs);
  EXPECT_EQ(subset_tokens(train, 1).pairs, (std::vector<TokenPair>{{"a", "a"}}));
  EXPECT_EQ(subset_tokens(train, 2).pairs,
            (std::vector<TokenPair>{{"a", "a"}, {"b", "c"}}));
}

TEST(SubsetTokens, OutOfRange) {
  EXPECT_THROW(subset_tokens(fixture_train(), 0), InvalidArgument);
  EXPECT_THROW(subset_tokens(fixture_train(), 4), InvalidArgument);
}

}  // namespace
}  // namespace histnorm
