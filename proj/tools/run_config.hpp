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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace histnorm::cli {

/// Ordered `key=value` entries. Blank lines and lines starting with '#' are
/// ignored; keys are long flag names without the leading dashes.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues read_config(const std::filesystem::path& path);
/// Writes `values` with an optional leading `# comment` line.
void write_config(const std::filesystem::path& path, const KeyValues& values,
                  const std::string& comment = {});

/// Inserts config entries into argv after the subcommand, skipping keys
/// already given on the command line. Boolean keys take true/false.
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const KeyValues& config,
                                      const std::vector<std::string>& flag_keys);

/// Extracts the value of `--config`, if present.
std::string find_config_path(const std::vector<std::string>& args);

}  // namespace histnorm::cli
