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

#include <random>

#include "histnorm/alignment.hpp"
#include "histnorm/text.hpp"
#include "oracles.hpp"

namespace histnorm::alignment {
namespace {

using K = EditOp::Kind;

EditOp M(char32_t c) { return {K::kMatch, c}; }
EditOp S(char32_t c) { return {K::kSub, c}; }
EditOp D(char32_t c) { return {K::kDel, c}; }
EditOp I(char32_t c) { return {K::kIns, c}; }

std::vector<K> kinds(const EditScript& s) {
  std::vector<K> out;
  for (const auto& op : s) out.push_back(op.kind);
  return out;
}

std::u32string random_string(std::mt19937_64& rng, std::size_t max_len,
                             std::u32string_view alphabet = U"abcd") {
  std::u32string s;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
  return s;
}

TEST(Align, Identity) {
  EXPECT_EQ(kinds(align("abc", "abc")), (std::vector<K>{K::kMatch, K::kMatch, K::kMatch}));
}

TEST(Align, SubstitutionsPreferredOverIndels) {
  const EditScript s = align("seyd", "said");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].kind, K::kMatch);
  EXPECT_EQ(s[1], S(U'a'));
  EXPECT_EQ(s[2], S(U'i'));
  EXPECT_EQ(s[3].kind, K::kMatch);
}

TEST(Align, TrailingDeletion) {
  EXPECT_EQ(kinds(align("thee", "the")),
            (std::vector<K>{K::kMatch, K::kMatch, K::kMatch, K::kDel}));
}

TEST(Align, EmptyStrings) {
  EXPECT_TRUE(align("", "").empty());
  EXPECT_EQ(align("", "ab"), (EditScript{I(U'a'), I(U'b')}));
  EXPECT_EQ(kinds(align("ab", "")), (std::vector<K>{K::kDel, K::kDel}));
}

TEST(Align, MultibyteCharacters) {
  const EditScript s = align("ſaid", "said");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], S(U's'));
  EXPECT_EQ(script_cost(s), 1u);
}

TEST(ScriptToActions, SpecExamples) {
  EXPECT_EQ(render(oracle_actions(U"sayd", U"said").actions),
            "W(s) S W(a) S W(i) S W(d) S STOP");
  EXPECT_EQ(render(oracle_actions(U"wil", U"will").actions),
            "W(w) S W(i) S W(l) S W(l) STOP");
  EXPECT_EQ(render(oracle_actions(U"thee", U"the").actions),
            "W(t) S W(h) S W(e) S S STOP");
}

TEST(ScriptToActions, FollowsTheEmissionRules) {
  const ActionSequence seq =
      script_to_actions(U"ab", EditScript{I(U'x'), M(U'a'), D(U'b'), I(U'y')});
  EXPECT_EQ(render(seq.actions), "W(x) W(a) S S W(y) STOP");
  EXPECT_EQ(seq.source, U"ab");
}

TEST(ScriptToActions, EmptyPairIsJustStop) {
  EXPECT_EQ(render(oracle_actions(U"", U"").actions), "STOP");
}

TEST(AlignmentProperties, ReconstructionAndMonotonicity) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto h = random_string(rng, 12, U"abcdefþ");
    const auto m = random_string(rng, 12, U"abcdefþ");
    const ActionSequence seq = oracle_actions(h, m);
    const ReplayResult r = replay(seq);
    ASSERT_EQ(r.written, m);
    ASSERT_EQ(r.steps, h.size());
    ASSERT_TRUE(r.monotone);
    ASSERT_TRUE(r.stopped);
    ASSERT_EQ(seq.actions.back().kind, Action::Kind::kStop);
    ASSERT_EQ(std::count_if(seq.actions.begin(), seq.actions.end(),
                            [](const Action& a) { return a.kind == Action::Kind::kStop; }),
              1);
  }
}

TEST(AlignmentProperties, CostEqualsRecursiveLevenshtein) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1500; ++trial) {
    const auto h = random_string(rng, 6);
    const auto m = random_string(rng, 6);
    ASSERT_EQ(script_cost(align(h, m)), testing::recursive_levenshtein(h, m))
        << text::to_utf8(h) << " / " << text::to_utf8(m);
  }
}

TEST(AlignmentProperties, Deterministic) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = random_string(rng, 10);
    const auto m = random_string(rng, 10);
    EXPECT_EQ(align(h, m), align(h, m));
  }
}

TEST(Replay, DetectsStepsPastTheSource) {
  ActionSequence seq{U"a", {Action::step(), Action::step(), Action::stop()}};
  EXPECT_FALSE(replay(seq).monotone);
}

TEST(Nonmonotonicity, IdentityPairsAreZero) {
  const Dataset d{"id", Split::kTrain, {{"abc", "abc"}, {"de", "de"}}};
  EXPECT_EQ(nonmonotonicity_rate(d), 0.0);
}

TEST(Nonmonotonicity, SingleTransposition) {
  const Dataset d{"t", Split::kTrain, {{"ab", "ba"}}};
  EXPECT_EQ(nonmonotonicity_rate(d), 1.0);
  const auto c = count_transpositions(U"ab", U"ba");
  EXPECT_EQ(c.transpositions, 1u);
  EXPECT_EQ(c.edit_operations, 1u);
}

TEST(Nonmonotonicity, MixedPairs) {
  // "recieve" -> "receive": one transposition; "colour" -> "color": one deletion.
  const Dataset d{"m", Split::kTrain, {{"recieve", "receive"}, {"colour", "color"}}};
  EXPECT_DOUBLE_EQ(nonmonotonicity_rate(d), 0.5);
}

TEST(Nonmonotonicity, EmptyDatasetIsZero) { EXPECT_EQ(nonmonotonicity_rate(Dataset{}), 0.0); }

}  // namespace
}  // namespace histnorm::alignment
