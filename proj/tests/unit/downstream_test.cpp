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
#include <sstream>

#include "histnorm/baseline.hpp"
#include "histnorm/downstream.hpp"
#include "histnorm/error.hpp"
#include "histnorm/normalizer.hpp"
#include "histnorm/subprocess.hpp"

namespace histnorm::downstream {
namespace {

const std::string kStub = HISTNORM_STUB_TAGGER;

std::filesystem::path write_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::path(HISTNORM_TEST_TMPDIR) / name;
  std::ofstream(path) << content;
  return path;
}

// Oracle tagger: knows the modern forms only, so corrupted spellings fall
// through to "UNK".
TaggerCommand oracle_tagger() {
  const auto lex = write_file("stub_lexicon.tsv",
                              "said\tVBD\nthe\tD\nking\tN\nwill\tMD\ncome\tVB\n");
  return {{kStub, "lexicon", lex.string()}};
}

TagMap gold_map() {
  TagMap m;
  for (const char* t : {"VBD", "D", "N", "MD", "VB"}) m.add(t, t);
  m.add("UNK", std::string(TagMap::kDiscard));
  return m;
}

std::vector<TaggedDocument> corpus() {
  std::istringstream in(
      "# id: letter1\nsayed\tVBD\nthe\tD\nking\tN\n\n"
      "# id: letter2\nthe\tD\nkyng\tN\nwil\tMD\ncome\tVB\n\n"
      "# id: letter3\nthe\tD\nking\tN\nsaid\tVBD\n");
  return parse_tagged_corpus(in, false);
}

TEST(TaggedCorpus, Parse) {
  const auto docs = corpus();
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].id, "letter1");
  EXPECT_EQ(docs[1].tokens.size(), 4u);
  EXPECT_EQ(docs[1].tokens[1], (TaggedToken{"kyng", "N"}));
  std::istringstream unnamed("A\tX\n\n\nb\tY\n");
  const auto d2 = parse_tagged_corpus(unnamed, true);
  ASSERT_EQ(d2.size(), 2u);
  EXPECT_EQ(d2[0].id, "doc1");
  EXPECT_EQ(d2[1].id, "doc2");
  EXPECT_EQ(d2[0].tokens[0].form, "a");
  EXPECT_EQ(d2[0].tokens[0].tag, "X");
  std::istringstream bad("a b\n");
  EXPECT_THROW(parse_tagged_corpus(bad, false), FormatError);
}

TEST(TagMapTest, ParseAndLookup) {
  std::istringstream in("NN\tN\nVBD\tV\nSYM\t_\n");
  const TagMap m = TagMap::parse(in);
  EXPECT_EQ(m.map("NN"), "N");
  EXPECT_EQ(m.map("SYM"), std::nullopt);
  try {
    m.map("JJ");
    FAIL();
  } catch (const UnmappedTagError& e) {
    EXPECT_EQ(e.tag(), "JJ");
    EXPECT_NE(std::string(e.what()).find("JJ"), std::string::npos);
  }
  std::istringstream bad("NN\n");
  EXPECT_THROW(TagMap::parse(bad), FormatError);
}

TEST(NormalizeDocument, IdentityAndBaseline) {
  const auto docs = corpus();
  const IdentityNormalizer id;
  for (const auto& d : docs) {
    EXPECT_EQ(normalize_document(d, id), d);
    EXPECT_EQ(normalize_document(normalize_document(d, id), id), d);
  }
  const auto lex = std::make_shared<const Lexicon>(
      build_lexicon(Dataset{"t", Split::kTrain, {{"sayed", "said"}}}));
  const TaggedDocument one{"x", {{"sayed", "VBD"}}};
  EXPECT_EQ(normalize_document(one, BaselineNormalizer(lex)),
            (TaggedDocument{"x", {{"said", "VBD"}}}));
}

TEST(TagAndScore, OracleStubScoresPerfectlyOnModernForms) {
  const TaggedDocument doc{"m", {{"the", "D"}, {"king", "N"}, {"said", "VBD"}}};
  EXPECT_EQ(tag_and_score(doc, oracle_tagger(), gold_map()), 1.0);
}

TEST(TagAndScore, ConstantTagScoresItsGoldFrequency) {
  const TaggedDocument doc{"m", {{"a", "N"}, {"b", "D"}, {"c", "N"}, {"d", "VB"}}};
  EXPECT_EQ(tag_and_score(doc, {{kStub, "constant", "N"}}, gold_map()), 0.5);
}

TEST(TagAndScore, ProtocolViolations) {
  const TaggedDocument doc{"m", {{"a", "N"}, {"b", "D"}}};
  EXPECT_THROW(tag_and_score(doc, {{kStub, "drop"}}, gold_map()), TaggerError);
  try {
    tag_and_score(doc, {{kStub, "fail"}}, gold_map());
    FAIL();
  } catch (const TaggerError& e) {
    EXPECT_NE(std::string(e.what()).find("stub tagger failure requested"), std::string::npos)
        << e.what();
  }
  EXPECT_THROW(tag_and_score(doc, {{kStub, "constant", "JJ"}}, gold_map()), UnmappedTagError);
  EXPECT_THROW(tag_and_score(doc, {{"/nonexistent/tagger"}}, gold_map()), Error);
}

TEST(TagAndScore, ShellCommand) {
  const TaggedDocument doc{"m", {{"a", "N"}}};
  EXPECT_EQ(tag_and_score(doc, TaggerCommand::shell("'" + kStub + "' constant N"), gold_map()),
            1.0);
}

TEST(CompareSystems, GoldFormsBeatUnnormalizedText) {
  const auto docs = corpus();
  const auto fix = std::make_shared<FunctionNormalizer>(
      "gold", [](std::string_view h) -> std::string {
        if (h == "sayed") return "said";
        if (h == "kyng") return "king";
        if (h == "wil") return "will";
        return std::string(h);
      });
  const std::vector<NormalizerPtr> systems{std::make_shared<IdentityNormalizer>(), fix};
  const auto r = compare_systems(docs, systems, oracle_tagger(), gold_map(), 2);
  ASSERT_EQ(r.accuracy.size(), 2u);
  EXPECT_DOUBLE_EQ(r.accuracy[0][0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.accuracy[0][1], 0.5);
  EXPECT_DOUBLE_EQ(r.accuracy[0][2], 1.0);
  for (double a : r.accuracy[1]) EXPECT_EQ(a, 1.0);
  EXPECT_GT(r.mean[1], r.mean[0]);
  EXPECT_EQ(r.stddev[1], 0.0);
  ASSERT_EQ(r.tests.size(), 1u);
  EXPECT_LT(r.tests[0].test.t, 0.0);
  EXPECT_EQ(comparison_json_lines(r, docs).size(), 6u);
}

TEST(CompareSystems, IdenticalSystemsAreIndistinguishable) {
  const auto docs = corpus();
  const std::vector<NormalizerPtr> systems{std::make_shared<IdentityNormalizer>("a"),
                                           std::make_shared<IdentityNormalizer>("b")};
  const auto r = compare_systems(docs, systems, oracle_tagger(), gold_map());
  EXPECT_EQ(r.tests[0].test.t, 0.0);
  EXPECT_EQ(r.tests[0].test.p, 1.0);
}

TEST(CompareSystems, OrderInvariant) {
  auto docs = corpus();
  const std::vector<NormalizerPtr> systems{std::make_shared<IdentityNormalizer>("a"),
                                           std::make_shared<IdentityNormalizer>("b")};
  const auto r1 = compare_systems(docs, systems, oracle_tagger(), gold_map());
  std::reverse(docs.begin(), docs.end());
  for (auto& d : docs) std::reverse(d.tokens.begin(), d.tokens.end());
  const auto r2 = compare_systems(docs, systems, oracle_tagger(), gold_map());
  EXPECT_DOUBLE_EQ(r1.mean[0], r2.mean[0]);
  EXPECT_DOUBLE_EQ(r1.stddev[0], r2.stddev[0]);
}

TEST(CompareSystems, ErrorsNameTheDocument) {
  const auto docs = corpus();
  const std::vector<NormalizerPtr> systems{std::make_shared<IdentityNormalizer>()};
  try {
    compare_systems(docs, systems, {{kStub, "constant", "JJ"}}, gold_map());
    FAIL();
  } catch (const UnmappedTagError& e) {
    EXPECT_NE(std::string(e.what()).find("letter1"), std::string::npos) << e.what();
  }
  try {
    compare_systems(docs, systems, {{kStub, "drop"}}, gold_map());
    FAIL();
  } catch (const TaggerError& e) {
    EXPECT_NE(std::string(e.what()).find("letter1"), std::string::npos) << e.what();
  }
  const std::vector<TaggedDocument> one(docs.begin(), docs.begin() + 1);
  EXPECT_THROW(compare_systems(one, systems, oracle_tagger(), gold_map()), InvalidArgument);
}

TEST(Subprocess, CapturesOutputAndExitCode) {
  const auto r = run_process({"/bin/sh", "-c", "cat; echo err >&2; exit 4"}, "hello\n");
  EXPECT_EQ(r.out, "hello\n");
  EXPECT_EQ(r.err, "err\n");
  EXPECT_EQ(r.exit_code, 4);
  // Large payloads in both directions do not deadlock.
  const std::string big(1 << 20, 'x');
  EXPECT_EQ(run_process({"cat"}, big).out.size(), big.size());
  EXPECT_EQ(run_process({"/bin/sh", "-c", "kill -9 $$"}, "").exit_code, 128 + 9);
}

}  // namespace
}  // namespace histnorm::downstream
