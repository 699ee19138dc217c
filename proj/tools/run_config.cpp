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

#include "run_config.hpp"

#include <algorithm>
#include <fstream>

#include "histnorm/error.hpp"

namespace histnorm::cli {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool given(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

}  // namespace

KeyValues read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path.string());
  KeyValues values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_no);
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw FormatError("empty key", line_no);
    values.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return values;
}

void write_config(const std::filesystem::path& path, const KeyValues& values,
                  const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& [k, v] : values) out << k << '=' << v << '\n';
}

std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const KeyValues& config,
                                      const std::vector<std::string>& flag_keys) {
  if (args.empty()) return args;
  std::vector<std::string> extra;
  for (const auto& [key, value] : config) {
    if (given(args, key)) continue;
    if (std::find(flag_keys.begin(), flag_keys.end(), key) != flag_keys.end()) {
      if (value == "true" || value == "1") {
        extra.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw InvalidArgument("config key '" + key + "' expects true or false");
      }
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  std::vector<std::string> merged;
  merged.push_back(args[0]);
  merged.insert(merged.end(), extra.begin(), extra.end());
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

}  // namespace histnorm::cli
