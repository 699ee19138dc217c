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
#include <iosfwd>
#include <memory>

#include "histnorm/error.hpp"
#include "histnorm/models/model.hpp"

namespace histnorm::models {

/// Leading bytes of every model file.
inline constexpr std::string_view kModelMagic = "HTNORM1\n";
inline constexpr int kModelFormatVersion = 1;

class ModelFileError : public Error {
 public:
  using Error::Error;
};

/// File does not start with the model magic.
class NotAModelFile : public ModelFileError {
 public:
  NotAModelFile() : ModelFileError("not a model file") {}
};

/// Header declares a format version this build cannot read.
class ModelVersionError : public ModelFileError {
 public:
  explicit ModelVersionError(int found)
      : ModelFileError("unsupported model format version " + std::to_string(found) +
                       " (expected " + std::to_string(kModelFormatVersion) + ")"),
        found_(found) {}
  int found() const noexcept { return found_; }

 private:
  int found_;
};

/// File ends before the parameter blocks declared in its header.
class TruncatedModelFile : public ModelFileError {
 public:
  using ModelFileError::ModelFileError;
};

/// Layout: magic, one JSON header line (format_version, config, vocab as
/// ordered character list, parameter manifest of name/shape/offset), then
/// little-endian float64 parameter blocks in manifest order.
void write_model(std::ostream& out, const EncoderDecoder& model);
std::unique_ptr<EncoderDecoder> read_model(std::istream& in);

void save_model(const EncoderDecoder& model, const std::filesystem::path& path);
std::unique_ptr<EncoderDecoder> load_model(const std::filesystem::path& path);

}  // namespace histnorm::models
