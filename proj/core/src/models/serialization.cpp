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

#include "histnorm/models/serialization.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "histnorm/text.hpp"

namespace histnorm::models {
namespace {

using nlohmann::json;

json config_to_json(const ModelConfig& c) {
  return {{"kind", std::string(to_string(c.kind))},
          {"embedding_dim", c.embedding_dim},
          {"encoder_dim", c.encoder_dim},
          {"decoder_dim", c.decoder_dim},
          {"epochs", c.epochs},
          {"seed", c.seed},
          {"learning_rate", c.learning_rate},
          {"clip_norm", c.clip_norm},
          {"init_scale", c.init_scale}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  const auto kind = parse_model_kind(j.at("kind").get<std::string>());
  if (!kind) throw ModelFileError("unknown model kind in header");
  c.kind = *kind;
  c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  c.encoder_dim = j.at("encoder_dim").get<std::size_t>();
  c.decoder_dim = j.at("decoder_dim").get<std::size_t>();
  c.epochs = j.at("epochs").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.clip_norm = j.at("clip_norm").get<double>();
  c.init_scale = j.at("init_scale").get<double>();
  return c;
}

void write_le(std::ostream& out, double value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<char, 8> bytes;
  for (auto& b : bytes) {
    b = static_cast<char>(bits & 0xffu);
    bits >>= 8;
  }
  out.write(bytes.data(), bytes.size());
}

double from_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_model(std::ostream& out, const EncoderDecoder& model) {
  json header;
  header["format_version"] = kModelFormatVersion;
  header["config"] = config_to_json(model.config());
  json vocab = json::array();
  for (char32_t c : model.vocab().chars()) vocab.push_back(text::to_utf8(c));
  header["vocab"] = std::move(vocab);
  json manifest = json::array();
  std::size_t offset = 0;
  for (const auto& p : model.params()) {
    manifest.push_back({{"name", p.name}, {"shape", p.value.shape()}, {"offset", offset}});
    offset += p.value.size() * sizeof(double);
  }
  header["parameters"] = std::move(manifest);

  out.write(kModelMagic.data(), static_cast<std::streamsize>(kModelMagic.size()));
  out << header.dump() << '\n';
  for (const auto& p : model.params()) {
    for (double v : p.value.values()) write_le(out, v);
  }
  if (!out) throw ModelFileError("failed writing model");
}

std::unique_ptr<EncoderDecoder> read_model(std::istream& in) {
  std::string magic(kModelMagic.size(), '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kModelMagic) {
    throw NotAModelFile();
  }
  std::string line;
  if (!std::getline(in, line)) throw TruncatedModelFile("model header missing");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ModelFileError(std::string("malformed model header: ") + e.what());
  }
  const int version = header.value("format_version", -1);
  if (version != kModelFormatVersion) throw ModelVersionError(version);

  std::unique_ptr<EncoderDecoder> model;
  try {
    std::u32string chars;
    for (const auto& c : header.at("vocab")) {
      const auto cps = text::to_u32(c.get<std::string>());
      if (cps.size() != 1) throw ModelFileError("vocabulary entry is not one character");
      chars.push_back(cps[0]);
    }
    model = make_model(config_from_json(header.at("config")),
                       CharVocab::from_chars(std::move(chars)));

    const auto& manifest = header.at("parameters");
    if (manifest.size() != model->params().size()) {
      throw ModelFileError("parameter manifest does not match model layout");
    }
    std::size_t k = 0;
    std::size_t expected_offset = 0;
    std::vector<unsigned char> buffer;
    for (auto& p : model->params()) {
      const auto& m = manifest[k++];
      if (m.at("name").get<std::string>() != p.name ||
          m.at("shape").get<std::vector<std::size_t>>() != p.value.shape() ||
          m.at("offset").get<std::size_t>() != expected_offset) {
        throw ModelFileError("parameter manifest mismatch at '" + p.name + "'");
      }
      buffer.resize(p.value.size() * sizeof(double));
      in.read(reinterpret_cast<char*>(buffer.data()),
              static_cast<std::streamsize>(buffer.size()));
      if (in.gcount() != static_cast<std::streamsize>(buffer.size())) {
        throw TruncatedModelFile("model file truncated in parameter '" + p.name + "'");
      }
      for (std::size_t i = 0; i < p.value.size(); ++i) {
        p.value[i] = from_le(buffer.data() + i * sizeof(double));
      }
      expected_offset += buffer.size();
    }
  } catch (const json::exception& e) {
    throw ModelFileError(std::string("malformed model header: ") + e.what());
  }
  return model;
}

void save_model(const EncoderDecoder& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelFileError("cannot write model file: " + path.string());
  write_model(out, model);
}

std::unique_ptr<EncoderDecoder> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError("cannot open model file: " + path.string());
  return read_model(in);
}

}  // namespace histnorm::models
