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

#include "histnorm/baseline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>

#include "histnorm/error.hpp"

namespace histnorm {

Lexicon Lexicon::build(const Dataset& train) {
  if (train.empty()) throw InvalidArgument("build_lexicon: empty training set");
  Lexicon lex;
  for (std::size_t i = 0; i < train.pairs.size(); ++i) {
    const auto& pair = train.pairs[i];
    auto& entries = lex.table_[pair.hist].entries;
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const Entry& e) { return e.modern == pair.modern; });
    if (it == entries.end()) {
      entries.push_back({pair.modern, 1, i});
    } else {
      ++it->count;
    }
  }
  lex.finalize();
  return lex;
}

void Lexicon::finalize() {
  for (auto& [hist, record] : table_) {
    std::sort(record.entries.begin(), record.entries.end(),
              [](const Entry& a, const Entry& b) { return a.first_seen < b.first_seen; });
    record.best = 0;
    for (std::size_t i = 1; i < record.entries.size(); ++i) {
      // Strictly greater keeps the earliest-observed form on ties.
      if (record.entries[i].count > record.entries[record.best].count) {
        record.best = i;
      }
    }
  }
}

bool Lexicon::is_seen(std::string_view hist) const {
  return table_.find(hist) != table_.end();
}

std::string Lexicon::normalize(std::string_view hist) const {
  const auto it = table_.find(hist);
  if (it == table_.end()) return std::string(hist);
  return it->second.entries[it->second.best].modern;
}

std::span<const Lexicon::Entry> Lexicon::entries(std::string_view hist) const {
  const auto it = table_.find(hist);
  if (it == table_.end()) return {};
  return it->second.entries;
}

void Lexicon::write(std::ostream& out) const {
  for (const auto& [hist, record] : table_) {
    for (const auto& e : record.entries) {
      out << hist << '\t' << e.modern << '\t' << e.count << '\t' << e.first_seen
          << '\n';
    }
  }
}

namespace {

std::size_t parse_count(std::string_view field, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("expected a non-negative integer, got '" +
                          std::string(field) + "'",
                      line_no);
  }
  return value;
}

}  // namespace

Lexicon Lexicon::read(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 4) throw FormatError("expected 4 fields", line_no);
    if (fields[0].empty() || fields[1].empty()) {
      throw FormatError("empty field", line_no);
    }
    Entry entry{std::string(fields[1]), parse_count(fields[2], line_no),
                parse_count(fields[3], line_no)};
    if (entry.count == 0) throw FormatError("count must be >= 1", line_no);
    auto& entries = lex.table_[std::string(fields[0])].entries;
    for (const auto& e : entries) {
      if (e.first_seen == entry.first_seen || e.modern == entry.modern) {
        throw FormatError("duplicate lexicon entry", line_no);
      }
    }
    entries.push_back(std::move(entry));
  }
  lex.finalize();
  return lex;
}

void Lexicon::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write lexicon: " + path.string());
  write(out);
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open lexicon: " + path.string());
  return read(in);
}

}  // namespace histnorm
