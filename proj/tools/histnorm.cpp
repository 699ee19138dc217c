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

// histnorm command-line tool.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "histnorm/alignment.hpp"
#include "histnorm/baseline.hpp"
#include "histnorm/corpus.hpp"
#include "histnorm/downstream.hpp"
#include "histnorm/error.hpp"
#include "histnorm/evaluation.hpp"
#include "histnorm/models/serialization.hpp"
#include "histnorm/models/trainer.hpp"
#include "histnorm/normalizer.hpp"
#include "histnorm/text.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace histnorm::cli {
namespace {

constexpr const char* kModelFile = "model.htn";
constexpr const char* kLexiconFile = "lexicon.tsv";
constexpr const char* kRunConfigFile = "run_config.txt";
constexpr const char* kTrainLogFile = "train_log.jsonl";

// Thrown for conditions the user can fix by changing the invocation.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string train;
  std::string test;
  std::string model;
  std::string lexicon;
  std::vector<std::string> kinds;
  bool hybrid = false;
  bool lowercase = false;
  std::uint64_t seed = 1;
  int epochs = 50;
  std::string out;
  std::size_t jobs = 1;
  std::string config;
  std::size_t embedding_dim = 100;
  std::size_t encoder_dim = 100;
  std::size_t decoder_dim = 200;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  double init_scale = 0.1;
  // command specific
  std::string input;
  std::vector<std::size_t> sizes;
  bool csv = false;
  bool json_out = false;
  std::string corpus;
  std::string tagger;
  std::string tagmap;
};

const std::vector<std::string> kFlagKeys = {"hybrid", "lowercase", "csv", "json"};

std::string kind(const Options& o) { return o.kinds.empty() ? "baseline" : o.kinds.front(); }

models::ModelConfig model_config(const Options& o, const std::string& kind_name) {
  models::ModelConfig c;
  const auto k = models::parse_model_kind(kind_name);
  if (!k) throw UsageError("not a neural model kind: " + kind_name);
  c.kind = *k;
  c.embedding_dim = o.embedding_dim;
  c.encoder_dim = o.encoder_dim;
  c.decoder_dim = o.decoder_dim;
  c.epochs = o.epochs;
  c.seed = o.seed;
  c.learning_rate = o.learning_rate;
  c.clip_norm = o.clip_norm;
  c.init_scale = o.init_scale;
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::string shortest(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

// Resolved settings, written next to every output so a run can be repeated
// with `--config <out>/run_config.txt`.
KeyValues run_config(const Options& o) {
  KeyValues kv;
  auto put = [&](const std::string& k, const std::string& v) {
    if (!v.empty()) kv.emplace_back(k, v);
  };
  put("train", o.train);
  put("test", o.test);
  put("model", o.model);
  put("lexicon", o.lexicon);
  for (const auto& k : o.kinds) put("kind", k);
  kv.emplace_back("hybrid", o.hybrid ? "true" : "false");
  kv.emplace_back("lowercase", o.lowercase ? "true" : "false");
  kv.emplace_back("seed", std::to_string(o.seed));
  kv.emplace_back("epochs", std::to_string(o.epochs));
  kv.emplace_back("jobs", std::to_string(o.jobs));
  kv.emplace_back("embedding-dim", std::to_string(o.embedding_dim));
  kv.emplace_back("encoder-dim", std::to_string(o.encoder_dim));
  kv.emplace_back("decoder-dim", std::to_string(o.decoder_dim));
  kv.emplace_back("learning-rate", shortest(o.learning_rate));
  kv.emplace_back("clip-norm", shortest(o.clip_norm));
  kv.emplace_back("init-scale", shortest(o.init_scale));
  if (!o.sizes.empty()) {
    std::string s;
    for (std::size_t size : o.sizes) s += (s.empty() ? "" : ",") + std::to_string(size);
    kv.emplace_back("sizes", s);
  }
  put("corpus", o.corpus);
  put("tagger", o.tagger);
  put("tagmap", o.tagmap);
  return kv;
}

fs::path prepare_out(const Options& o, const std::string& command) {
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_config(dir / kRunConfigFile, run_config(o), "command: " + command);
  return dir;
}

Dataset require_dataset(const std::string& path, const char* flag, bool lowercase,
                        Split split) {
  if (path.empty()) throw UsageError(std::string("missing required --") + flag);
  if (!fs::exists(path)) throw UsageError(std::string("--") + flag + ": no such file: " + path);
  return load_dataset(path, lowercase, split);
}

std::shared_ptr<const Lexicon> find_lexicon(const Options& o) {
  if (!o.lexicon.empty()) return std::make_shared<const Lexicon>(Lexicon::load(o.lexicon));
  if (!o.model.empty() && fs::is_directory(o.model) &&
      fs::exists(fs::path(o.model) / kLexiconFile)) {
    return std::make_shared<const Lexicon>(Lexicon::load(fs::path(o.model) / kLexiconFile));
  }
  if (!o.model.empty() && fs::path(o.model).extension() == ".tsv") {
    return std::make_shared<const Lexicon>(Lexicon::load(o.model));
  }
  if (!o.train.empty()) {
    return std::make_shared<const Lexicon>(
        build_lexicon(require_dataset(o.train, "train", o.lowercase, Split::kTrain)));
  }
  return nullptr;
}

std::shared_ptr<const models::EncoderDecoder> find_model(const Options& o) {
  if (o.model.empty()) return nullptr;
  fs::path path(o.model);
  if (fs::is_directory(path)) path /= kModelFile;
  if (!fs::exists(path)) throw UsageError("--model: no such file: " + path.string());
  return models::load_model(path);
}

bool has_model_file(const Options& o) {
  if (o.model.empty()) return false;
  const fs::path path(o.model);
  if (fs::is_directory(path)) return fs::exists(path / kModelFile);
  return path.extension() != ".tsv";
}

// Builds the system named by --kind (plus its hybrid with --hybrid). Neural
// kinds use --model when given and otherwise train on --train.
std::vector<NormalizerPtr> build_systems(const Options& o, const Dataset* train_data,
                                         std::shared_ptr<const Lexicon> lexicon) {
  std::vector<NormalizerPtr> systems;
  std::shared_ptr<const models::EncoderDecoder> model;
  if (o.kinds.empty() && has_model_file(o)) model = find_model(o);
  const std::string k = model ? std::string(models::to_string(model->kind())) : kind(o);
  if (k == "baseline") {
    if (!lexicon) throw UsageError("baseline needs --train, --lexicon or a --model directory");
    systems.push_back(std::make_shared<BaselineNormalizer>(lexicon));
    return systems;
  }
  if (!model) model = find_model(o);
  if (!model) {
    if (train_data == nullptr) throw UsageError(k + " needs --model or --train");
    model = models::train(model_config(o, k), *train_data);
  }
  if (models::to_string(model->kind()) != k) {
    throw UsageError("--kind " + k + " but the model file holds a " +
                     std::string(models::to_string(model->kind())) + " model");
  }
  auto system = std::make_shared<ModelNormalizer>(model, k);
  systems.push_back(system);
  if (o.hybrid) {
    if (!lexicon) throw UsageError("--hybrid needs --train, --lexicon or a --model directory");
    systems.push_back(make_hybrid(lexicon, system));
  }
  return systems;
}

// -- commands ---------------------------------------------------------------

int cmd_stats(const Options& o) {
  const Dataset train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  const Dataset eval = o.test.empty()
                           ? train
                           : require_dataset(o.test, "test", o.lowercase, Split::kTest);
  const std::string line = stats_to_json(compute_stats(train, eval));
  std::cout << line << '\n';
  if (!o.out.empty()) {
    std::ofstream(prepare_out(o, "stats") / "stats.json") << line << '\n';
  }
  return 0;
}

int cmd_train(const Options& o) {
  if (o.out.empty()) throw UsageError("missing required --out");
  const Dataset train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  const std::string k = kind(o);
  const models::ModelConfig config =
      k == "baseline" ? models::ModelConfig{} : model_config(o, k);
  const fs::path dir = prepare_out(o, "train");
  build_lexicon(train).save(dir / kLexiconFile);
  if (k == "baseline") return 0;
  std::ofstream log(dir / kTrainLogFile);
  auto model = models::train(config, train, [&](const models::EpochLog& e) {
    json line;
    line["epoch"] = e.epoch;
    line["loss"] = e.mean_loss;
    line["pairs"] = e.pairs;
    line["seconds"] = e.seconds;
    log << line.dump() << '\n' << std::flush;
    std::cerr << "epoch " << e.epoch << " loss " << e.mean_loss << '\n';
  });
  models::save_model(*model, dir / kModelFile);
  return 0;
}

std::vector<std::string> read_tokens(const Options& o) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!o.input.empty() && o.input != "-") {
    file.open(o.input);
    if (!file) throw UsageError("--input: cannot open " + o.input);
    in = &file;
  }
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::is_valid_utf8(line)) throw FormatError("invalid UTF-8", line_no);
    tokens.push_back(o.lowercase ? text::casefold(line) : line);
  }
  return tokens;
}

int cmd_normalize(const Options& o) {
  const auto lexicon = find_lexicon(o);
  const auto systems = build_systems(o, nullptr, lexicon);
  const Normalizer& system = *systems.back();
  for (const auto& token : read_tokens(o)) std::cout << system.normalize(token) << '\n';
  return 0;
}

int cmd_evaluate(const Options& o) {
  const Dataset train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  const Dataset test = require_dataset(o.test, "test", o.lowercase, Split::kTest);
  const auto lexicon = std::make_shared<const Lexicon>(build_lexicon(train));
  std::vector<NormalizerPtr> systems{std::make_shared<BaselineNormalizer>(lexicon)};
  if (kind(o) != "baseline") {
    const auto extra = build_systems(o, &train, lexicon);
    systems.insert(systems.end(), extra.begin(), extra.end());
  }
  std::vector<EvalReport> reports;
  for (const auto& s : systems) {
    reports.push_back(evaluate(*s, test, *lexicon, train.size(), o.jobs));
  }
  std::ostringstream lines;
  for (const auto& r : reports) lines << to_json_line(r) << '\n';
  std::cout << (o.json_out ? lines.str() : format_table(reports));
  if (!o.out.empty()) {
    const fs::path dir = prepare_out(o, "evaluate");
    std::ofstream(dir / "report.jsonl") << lines.str();
    std::ofstream(dir / "report.txt") << format_table(reports);
  }
  return 0;
}

int cmd_curve(const Options& o) {
  const Dataset train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  const Dataset test = require_dataset(o.test, "test", o.lowercase, Split::kTest);
  LearningCurveOptions opts;
  opts.hybrids = o.hybrid;
  opts.jobs = o.jobs;
  for (const auto& k : o.kinds) {
    if (k != "baseline") opts.models.push_back(model_config(o, k));
  }
  const std::vector<std::size_t> sizes =
      o.sizes.empty() ? default_curve_sizes(train.size()) : o.sizes;
  std::vector<CurvePoint> points;
  try {
    points = learning_curve(train, test, sizes, opts);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream lines;
  for (const auto& p : points) {
    for (const auto& r : p.reports) lines << to_json_line(r) << '\n';
  }
  std::cout << (o.csv ? curve_to_csv(points) : lines.str());
  if (!o.out.empty()) {
    const fs::path dir = prepare_out(o, "curve");
    std::ofstream(dir / "curve.jsonl") << lines.str();
    std::ofstream(dir / "curve.csv") << curve_to_csv(points);
  }
  return 0;
}

int cmd_tageval(const Options& o) {
  if (o.corpus.empty()) throw UsageError("missing required --corpus");
  if (o.tagger.empty()) throw UsageError("missing required --tagger");
  if (o.tagmap.empty()) throw UsageError("missing required --tagmap");
  if (!fs::exists(o.corpus)) throw UsageError("--corpus: no such file: " + o.corpus);
  if (!fs::exists(o.tagmap)) throw UsageError("--tagmap: no such file: " + o.tagmap);
  const auto docs = downstream::load_tagged_corpus(o.corpus, o.lowercase);
  const auto map = downstream::TagMap::load(o.tagmap);
  std::vector<NormalizerPtr> systems{std::make_shared<IdentityNormalizer>("unnormalized")};
  std::optional<Dataset> train;
  if (!o.train.empty()) train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  if (!o.kinds.empty() || !o.model.empty()) {
    const auto lexicon = train ? std::make_shared<const Lexicon>(build_lexicon(*train))
                               : find_lexicon(o);
    const auto extra = build_systems(o, train ? &*train : nullptr, lexicon);
    systems.insert(systems.end(), extra.begin(), extra.end());
  }
  const auto result = downstream::compare_systems(
      docs, systems, downstream::TaggerCommand::shell(o.tagger), map, o.jobs);
  std::ostringstream out;
  for (const auto& line : downstream::comparison_json_lines(result, docs)) out << line << '\n';
  for (std::size_t s = 0; s < result.systems.size(); ++s) {
    json line;
    line["system"] = result.systems[s];
    line["documents"] = result.documents.size();
    line["mean"] = result.mean[s];
    line["stddev"] = result.stddev[s];
    out << line.dump() << '\n';
  }
  for (const auto& t : result.tests) {
    json line;
    line["system_a"] = result.systems[t.a];
    line["system_b"] = result.systems[t.b];
    line["t"] = std::isfinite(t.test.t) ? json(t.test.t) : json(t.test.t > 0 ? "inf" : "-inf");
    line["p"] = t.test.p;
    line["df"] = t.test.df;
    if (t.test.warning) {
      line["warning"] = *t.test.warning;
      std::cerr << "warning: " << *t.test.warning << '\n';
    }
    out << line.dump() << '\n';
  }
  std::cout << out.str();
  if (!o.out.empty()) std::ofstream(prepare_out(o, "tageval") / "tageval.jsonl") << out.str();
  return 0;
}

int cmd_align(const Options& o) {
  const Dataset train = require_dataset(o.train, "train", o.lowercase, Split::kTrain);
  for (const auto& p : train.pairs) {
    const auto seq = alignment::oracle_actions(text::to_u32(p.hist), text::to_u32(p.modern));
    std::cout << p.hist << '\t' << p.modern << '\t' << alignment::render(seq.actions) << '\n';
  }
  json summary;
  summary["nonmonotonicity_rate"] = alignment::nonmonotonicity_rate(train);
  std::cerr << summary.dump() << '\n';
  return 0;
}

// -- option wiring ----------------------------------------------------------

void add_shared(CLI::App* cmd, Options& o, bool multi_kind = false) {
  cmd->add_option("--train", o.train, "Training pairs, hist<TAB>modern per line");
  cmd->add_option("--test", o.test, "Test pairs");
  cmd->add_option("--model", o.model, "Model file, lexicon TSV, or a train --out directory");
  cmd->add_option("--lexicon", o.lexicon, "Baseline lexicon TSV");
  auto* k = cmd->add_option("--kind", o.kinds, "baseline, soft or hard")
                ->check(CLI::IsMember({"baseline", "soft", "hard"}));
  if (!multi_kind) k->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::Throw);
  cmd->add_flag("--hybrid", o.hybrid, "Route seen tokens to the baseline");
  cmd->add_flag("--lowercase", o.lowercase, "Case-fold all tokens");
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "Training epochs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--jobs", o.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--config", o.config, "Flat key=value file; flags win");
  cmd->add_option("--embedding-dim", o.embedding_dim)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--encoder-dim", o.encoder_dim)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--decoder-dim", o.decoder_dim)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--learning-rate", o.learning_rate)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--clip-norm", o.clip_norm)->capture_default_str();
  cmd->add_option("--init-scale", o.init_scale)->capture_default_str();
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const std::string config_path = find_config_path(args);
  if (!config_path.empty()) {
    if (!fs::exists(config_path)) throw UsageError("--config: no such file: " + config_path);
    try {
      args = merge_config(args, read_config(config_path), kFlagKeys);
    } catch (const Error& e) {
      throw UsageError(std::string("--config: ") + e.what());
    }
  }

  Options o;
  CLI::App app{"Historical spelling normalization toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "histnorm 0.1.0");

  auto* stats = app.add_subcommand("stats", "Dataset statistics as JSON");
  add_shared(stats, o);

  auto* train = app.add_subcommand("train", "Train a normalizer into --out");
  add_shared(train, o);

  auto* normalize = app.add_subcommand("normalize", "Normalize one token per line");
  add_shared(normalize, o);
  normalize->add_option("--input", o.input, "Token list (default: stdin)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Seen/unseen accuracy report");
  add_shared(evaluate_cmd, o);
  evaluate_cmd->add_flag("--json", o.json_out, "Print JSON lines instead of the table");

  auto* curve = app.add_subcommand("curve", "Learning curve over training-set prefixes");
  add_shared(curve, o, true);
  curve->add_option("--sizes", o.sizes, "Comma-separated prefix sizes")->delimiter(',');
  curve->add_flag("--csv", o.csv, "Print CSV instead of JSON lines");

  auto* tageval = app.add_subcommand("tageval", "Downstream tagging evaluation");
  add_shared(tageval, o);
  tageval->add_option("--corpus", o.corpus, "Tagged corpus, token<TAB>gold_tag");
  tageval->add_option("--tagger", o.tagger, "Tagger command line (run via /bin/sh)");
  tageval->add_option("--tagmap", o.tagmap, "tagger_tag<TAB>gold_tag mapping");

  auto* align = app.add_subcommand("align", "Print oracle action sequences for --train");
  add_shared(align, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*stats) return cmd_stats(o);
  if (*train) return cmd_train(o);
  if (*normalize) return cmd_normalize(o);
  if (*evaluate_cmd) return cmd_evaluate(o);
  if (*curve) return cmd_curve(o);
  if (*tageval) return cmd_tageval(o);
  if (*align) return cmd_align(o);
  return 2;
}

}  // namespace
}  // namespace histnorm::cli

int main(int argc, char** argv) {
  try {
    return histnorm::cli::run(argc, argv);
  } catch (const histnorm::cli::UsageError& e) {
    std::cerr << "histnorm: " << e.what() << '\n';
    return 2;
  } catch (const histnorm::FormatError& e) {
    std::cerr << "histnorm: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "histnorm: " << e.what() << '\n';
    return 1;
  }
}
