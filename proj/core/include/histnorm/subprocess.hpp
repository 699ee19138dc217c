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

#include <string>
#include <string_view>
#include <vector>

namespace histnorm {

struct ProcessResult {
  /// Exit status, or 128 + signal number when the child was killed.
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs argv[0] (PATH lookup) with `input` on stdin; collects stdout and
/// stderr. Throws Error if the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input);

}  // namespace histnorm
