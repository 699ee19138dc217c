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

// Line-protocol tagger for tests. Reads one token per line and writes
// `token<TAB>tag` per line.
//
//   stub_tagger lexicon FILE [UNKNOWN]  tag from a `token<TAB>tag` file,
//                                      UNKNOWN (default "UNK") otherwise
//   stub_tagger constant TAG           every token gets TAG
//   stub_tagger drop                   like constant X but omits the last line
//   stub_tagger fail                   prints to stderr and exits 3

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << "usage: stub_tagger MODE [ARGS]\n";
    return 2;
  }
  const std::string& mode = args[0];
  if (mode == "fail") {
    std::cerr << "stub tagger failure requested\n";
    return 3;
  }
  std::map<std::string, std::string> lexicon;
  std::string unknown = "UNK";
  std::string constant = "X";
  if (mode == "lexicon") {
    if (args.size() < 2) return 2;
    std::ifstream in(args[1]);
    std::string line;
    while (std::getline(in, line)) {
      const auto tab = line.find('\t');
      if (tab != std::string::npos) lexicon[line.substr(0, tab)] = line.substr(tab + 1);
    }
    if (args.size() > 2) unknown = args[2];
  } else if (mode == "constant") {
    if (args.size() < 2) return 2;
    constant = args[1];
  } else if (mode != "drop") {
    return 2;
  }
  std::vector<std::string> tokens;
  std::string token;
  while (std::getline(std::cin, token)) tokens.push_back(token);
  const std::size_t emit = mode == "drop" && !tokens.empty() ? tokens.size() - 1 : tokens.size();
  for (std::size_t i = 0; i < emit; ++i) {
    std::string tag = constant;
    if (mode == "lexicon") {
      const auto it = lexicon.find(tokens[i]);
      tag = it == lexicon.end() ? unknown : it->second;
    }
    std::cout << tokens[i] << '\t' << tag << '\n';
  }
  return 0;
}
