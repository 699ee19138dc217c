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

#include "histnorm/downstream.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>

#include <json.hpp>

#include "histnorm/parallel.hpp"
#include "histnorm/subprocess.hpp"
#include "histnorm/text.hpp"

namespace histnorm::downstream {

std::vector<TaggedDocument> parse_tagged_corpus(std::istream& in, bool lowercase) {
  std::vector<TaggedDocument> docs;
  TaggedDocument current;
  std::size_t unnamed = 0;
  auto flush = [&] {
    if (current.tokens.empty()) {
      if (!current.id.empty()) throw FormatError("document '" + current.id + "' is empty");
      return;
    }
    if (current.id.empty()) current.id = "doc" + std::to_string(++unnamed);
    docs.push_back(std::move(current));
    current = {};
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("# id:", 0) == 0) {
      flush();
      std::string id = line.substr(5);
      const auto first = id.find_first_not_of(" \t");
      id = first == std::string::npos ? std::string() : id.substr(first);
      if (id.empty()) throw FormatError("empty document id", line_no);
      current.id = std::move(id);
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("expected token<TAB>tag", line_no);
    }
    TaggedToken token{line.substr(0, tab), line.substr(tab + 1)};
    if (token.form.empty() || token.tag.empty()) throw FormatError("empty field", line_no);
    if (!text::is_valid_utf8(token.form) || !text::is_valid_utf8(token.tag)) {
      throw FormatError("invalid UTF-8", line_no);
    }
    if (lowercase) token.form = text::casefold(token.form);
    current.tokens.push_back(std::move(token));
  }
  flush();
  return docs;
}

std::vector<TaggedDocument> load_tagged_corpus(const std::filesystem::path& path,
                                               bool lowercase) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open tagged corpus: " + path.string());
  try {
    return parse_tagged_corpus(in, lowercase);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

TagMap TagMap::parse(std::istream& in) {
  TagMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("expected tagger_tag<TAB>gold_tag", line_no);
    }
    if (tab == 0 || tab + 1 == line.size()) throw FormatError("empty field", line_no);
    map.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return map;
}

TagMap TagMap::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open tag map: " + path.string());
  return parse(in);
}

TagMap TagMap::identity(std::span<const std::string> tags) {
  TagMap map;
  for (const auto& tag : tags) map.add(tag, tag);
  return map;
}

void TagMap::add(std::string tagger_tag, std::string gold_tag) {
  table_.insert_or_assign(std::move(tagger_tag), std::move(gold_tag));
}

std::optional<std::string> TagMap::map(std::string_view tagger_tag) const {
  const auto it = table_.find(tagger_tag);
  if (it == table_.end()) throw UnmappedTagError(std::string(tagger_tag));
  if (it->second == kDiscard) return std::nullopt;
  return it->second;
}

TaggedDocument normalize_document(const TaggedDocument& doc, const Normalizer& system) {
  TaggedDocument out{doc.id, {}};
  out.tokens.reserve(doc.tokens.size());
  for (const auto& token : doc.tokens) {
    out.tokens.push_back({system.normalize(token.form), token.tag});
  }
  return out;
}

double tag_and_score(const TaggedDocument& doc, const TaggerCommand& tagger,
                     const TagMap& map) {
  if (doc.tokens.empty()) throw InvalidArgument("tag_and_score: empty document");
  std::string input;
  for (const auto& token : doc.tokens) {
    input += token.form;
    input += '\n';
  }
  const ProcessResult run = run_process(tagger.argv, input);
  if (run.exit_code != 0) {
    std::string diag = run.err;
    while (!diag.empty() && (diag.back() == '\n' || diag.back() == '\r')) diag.pop_back();
    throw TaggerError("tagger exited with status " + std::to_string(run.exit_code) +
                      (diag.empty() ? std::string() : ": " + diag));
  }
  std::vector<std::string_view> lines;
  std::string_view rest = run.out;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
  if (lines.size() != doc.tokens.size()) {
    throw TaggerError("tagger returned " + std::to_string(lines.size()) +
                      " lines for " + std::to_string(doc.tokens.size()) + " tokens");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tab = lines[i].rfind('\t');
    if (tab == std::string_view::npos) {
      throw TaggerError("tagger line " + std::to_string(i + 1) + " lacks token<TAB>tag");
    }
    const auto predicted = map.map(lines[i].substr(tab + 1));
    if (predicted && *predicted == doc.tokens[i].tag) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(doc.tokens.size());
}

ComparisonResult compare_systems(std::span<const TaggedDocument> docs,
                                 std::span<const NormalizerPtr> systems,
                                 const TaggerCommand& tagger, const TagMap& map,
                                 std::size_t jobs) {
  if (docs.size() < 2) throw InvalidArgument("compare_systems: need >= 2 documents");
  if (systems.empty()) throw InvalidArgument("compare_systems: no systems");
  ComparisonResult result;
  for (const auto& s : systems) result.systems.push_back(s->name());
  for (const auto& d : docs) result.documents.push_back(d.id);
  result.accuracy.assign(systems.size(), std::vector<double>(docs.size(), 0.0));

  parallel_for(systems.size() * docs.size(), jobs, [&](std::size_t job) {
    const std::size_t s = job / docs.size();
    const std::size_t d = job % docs.size();
    try {
      result.accuracy[s][d] =
          tag_and_score(normalize_document(docs[d], *systems[s]), tagger, map);
    } catch (const UnmappedTagError& e) {
      throw UnmappedTagError(e.tag(), "document '" + docs[d].id + "'");
    } catch (const std::exception& e) {
      throw TaggerError("document '" + docs[d].id + "', system '" +
                        systems[s]->name() + "': " + e.what());
    }
  });

  const double n = static_cast<double>(docs.size());
  for (const auto& row : result.accuracy) {
    const double mean = std::accumulate(row.begin(), row.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : row) ss += (v - mean) * (v - mean);
    result.mean.push_back(mean);
    result.stddev.push_back(std::sqrt(ss / (n - 1.0)));
  }
  for (std::size_t a = 0; a < systems.size(); ++a) {
    for (std::size_t b = a + 1; b < systems.size(); ++b) {
      result.tests.push_back({a, b, paired_ttest(result.accuracy[a], result.accuracy[b])});
    }
  }
  return result;
}

std::vector<std::string> comparison_json_lines(const ComparisonResult& result,
                                               std::span<const TaggedDocument> docs) {
  std::vector<std::string> lines;
  for (std::size_t d = 0; d < result.documents.size(); ++d) {
    for (std::size_t s = 0; s < result.systems.size(); ++s) {
      nlohmann::ordered_json j;
      j["document"] = result.documents[d];
      j["system"] = result.systems[s];
      j["tokens"] = d < docs.size() ? docs[d].tokens.size() : 0;
      j["accuracy"] = result.accuracy[s][d];
      lines.push_back(j.dump());
    }
  }
  return lines;
}

}  // namespace histnorm::downstream
