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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "histnorm/error.hpp"
#include "histnorm/evaluation.hpp"
#include "histnorm/normalizer.hpp"

namespace histnorm::downstream {

struct TaggedToken {
  std::string form;
  std::string tag;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedDocument {
  std::string id;
  std::vector<TaggedToken> tokens;

  friend bool operator==(const TaggedDocument&, const TaggedDocument&) = default;
};

/// `token<TAB>gold_tag` lines; blank lines separate documents; a
/// `# id: <name>` line names the document that follows. Unnamed documents
/// get ids doc1, doc2, ... in file order.
std::vector<TaggedDocument> parse_tagged_corpus(std::istream& in, bool lowercase);
std::vector<TaggedDocument> load_tagged_corpus(const std::filesystem::path& path,
                                               bool lowercase);

class UnmappedTagError : public Error {
 public:
  explicit UnmappedTagError(std::string tag, const std::string& context = {})
      : Error("tagger emitted unmapped tag '" + tag + "'" +
              (context.empty() ? std::string() : " (" + context + ")")),
        tag_(std::move(tag)) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

/// Tagger process failed or violated the line protocol.
class TaggerError : public Error {
 public:
  using Error::Error;
};

/// Maps external-tagger tags onto the gold inventory. A gold side of
/// kDiscard means the prediction never counts as correct.
class TagMap {
 public:
  static constexpr std::string_view kDiscard = "_";

  /// TSV `tagger_tag<TAB>gold_tag`.
  static TagMap parse(std::istream& in);
  static TagMap load(const std::filesystem::path& path);
  /// Maps every tag to itself.
  static TagMap identity(std::span<const std::string> tags);

  void add(std::string tagger_tag, std::string gold_tag);
  /// Gold tag for a tagger tag, nullopt for discarded tags. Throws
  /// UnmappedTagError when the tag has no entry.
  std::optional<std::string> map(std::string_view tagger_tag) const;

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

/// Tagger invocation; argv[0] is looked up on PATH.
struct TaggerCommand {
  std::vector<std::string> argv;

  /// Runs the command line through /bin/sh -c.
  static TaggerCommand shell(std::string command_line) {
    return {{"/bin/sh", "-c", std::move(command_line)}};
  }
};

/// Replaces every wordform by the system's output; tags and token count are
/// unchanged.
TaggedDocument normalize_document(const TaggedDocument& doc, const Normalizer& system);

/// Feeds one token per line to the tagger, expects `token<TAB>tag` lines
/// back in the same count and order, and returns the share of tokens whose
/// mapped predicted tag equals the gold tag.
double tag_and_score(const TaggedDocument& doc, const TaggerCommand& tagger,
                     const TagMap& map);

struct PairwiseTest {
  std::size_t a = 0;
  std::size_t b = 0;
  TTestResult test;
};

struct ComparisonResult {
  std::vector<std::string> systems;
  std::vector<std::string> documents;
  /// accuracy[system][document]
  std::vector<std::vector<double>> accuracy;
  std::vector<double> mean;
  /// Sample standard deviation across documents.
  std::vector<double> stddev;
  /// One paired t-test per unordered system pair (a < b).
  std::vector<PairwiseTest> tests;
};

/// Normalizes every document with every system, tags and scores them, and
/// compares systems with paired t-tests across documents. Needs >= 2
/// documents; tagging errors are rethrown naming the document.
ComparisonResult compare_systems(std::span<const TaggedDocument> docs,
                                 std::span<const NormalizerPtr> systems,
                                 const TaggerCommand& tagger, const TagMap& map,
                                 std::size_t jobs = 1);

/// One JSON object per (document, system): document, system, tokens, accuracy.
std::vector<std::string> comparison_json_lines(const ComparisonResult& result,
                                               std::span<const TaggedDocument> docs);

}  // namespace histnorm::downstream
