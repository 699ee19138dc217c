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

#include "histnorm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <json.hpp>

#include "histnorm/error.hpp"
#include "histnorm/models/trainer.hpp"
#include "histnorm/parallel.hpp"

namespace histnorm {

EvalReport evaluate(const Normalizer& system, const Dataset& test, const Lexicon& lex,
                    std::size_t train_size, std::size_t jobs) {
  if (test.empty()) throw InvalidArgument("evaluate: empty test set");
  // 0 = unseen wrong, 1 = unseen right, 2 = seen wrong, 3 = seen right
  std::vector<unsigned char> outcome(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    const auto& pair = test.pairs[i];
    const bool seen = lex.is_seen(pair.hist);
    const bool correct = system.normalize(pair.hist) == pair.modern;
    outcome[i] = static_cast<unsigned char>((seen ? 2 : 0) + (correct ? 1 : 0));
  });
  EvalReport report;
  report.system = system.name();
  report.train_size = train_size;
  for (unsigned char o : outcome) {
    if (o >= 2) {
      ++report.n_seen;
      if (o == 3) ++report.correct_seen;
    } else {
      ++report.n_unseen;
      if (o == 1) ++report.correct_unseen;
    }
  }
  return report;
}

std::string to_json_line(const EvalReport& r) {
  auto opt = [](std::optional<double> v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["system"] = r.system;
  j["size"] = r.train_size;
  j["n_all"] = r.n_all();
  j["n_seen"] = r.n_seen;
  j["n_unseen"] = r.n_unseen;
  j["acc_all"] = opt(r.accuracy_all());
  j["acc_seen"] = opt(r.accuracy_seen());
  j["acc_unseen"] = opt(r.accuracy_unseen());
  j["pct_unseen"] = r.pct_unseen();
  return j.dump();
}

namespace {

std::string percent(std::optional<double> v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << 100.0 * *v;
  return s.str();
}

std::string format_number(std::optional<double> v) {
  if (!v) return "";
  std::ostringstream s;
  s << std::setprecision(17) << *v;
  return s.str();
}

}  // namespace

std::string format_table(std::span<const EvalReport> reports) {
  std::size_t name_width = 6;
  for (const auto& r : reports) name_width = std::max(name_width, r.system.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "System" << std::right
      << std::setw(8) << "A" << std::setw(8) << "S" << std::setw(8) << "U"
      << std::setw(9) << "N" << std::setw(9) << "%uns" << '\n';
  for (const auto& r : reports) {
    out << std::left << std::setw(static_cast<int>(name_width)) << r.system << std::right
        << std::setw(8) << percent(r.accuracy_all()) << std::setw(8)
        << percent(r.accuracy_seen()) << std::setw(8) << percent(r.accuracy_unseen())
        << std::setw(9) << r.n_all() << std::setw(9) << percent(r.pct_unseen()) << '\n';
  }
  return out.str();
}

std::vector<std::size_t> default_curve_sizes(std::size_t train_size) {
  std::vector<std::size_t> sizes;
  for (std::size_t s : {1000, 2000, 5000, 10000, 20000, 50000}) {
    if (s < train_size) sizes.push_back(s);
  }
  if (train_size > 0) sizes.push_back(train_size);
  return sizes;
}

std::vector<CurvePoint> learning_curve(const Dataset& train, const Dataset& test,
                                       std::span<const std::size_t> sizes,
                                       const LearningCurveOptions& options) {
  if (sizes.empty()) throw InvalidArgument("learning_curve: no sizes given");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || sizes[i] > train.size()) {
      throw InvalidArgument("learning_curve: size " + std::to_string(sizes[i]) +
                            " outside [1, " + std::to_string(train.size()) + "]");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw InvalidArgument("learning_curve: sizes must be strictly ascending");
    }
  }
  const std::size_t n_models = options.models.size();
  std::vector<std::shared_ptr<const Lexicon>> lexicons(sizes.size());
  std::vector<Dataset> subsets(sizes.size());
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    subsets[s] = subset_tokens(train, sizes[s]);
    lexicons[s] = std::make_shared<const Lexicon>(Lexicon::build(subsets[s]));
  }

  // Every (size, model) training job is independent.
  std::vector<std::shared_ptr<const models::EncoderDecoder>> trained(sizes.size() * n_models);
  parallel_for(trained.size(), options.jobs, [&](std::size_t job) {
    const std::size_t s = job / n_models;
    try {
      trained[job] = models::train(options.models[job % n_models], subsets[s]);
    } catch (const std::exception& e) {
      throw Error("learning curve at size " + std::to_string(sizes[s]) + ": " + e.what());
    }
  });

  std::vector<CurvePoint> points;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    CurvePoint point;
    point.size = sizes[s];
    std::vector<NormalizerPtr> systems;
    systems.push_back(std::make_shared<BaselineNormalizer>(lexicons[s]));
    std::vector<NormalizerPtr> neural;
    for (std::size_t m = 0; m < n_models; ++m) {
      neural.push_back(std::make_shared<ModelNormalizer>(
          trained[s * n_models + m],
          std::string(models::to_string(options.models[m].kind))));
    }
    systems.insert(systems.end(), neural.begin(), neural.end());
    if (options.hybrids) {
      for (const auto& model : neural) systems.push_back(make_hybrid(lexicons[s], model));
    }
    for (const auto& system : systems) {
      point.reports.push_back(evaluate(*system, test, *lexicons[s], sizes[s], options.jobs));
    }
    point.pct_unseen = point.reports.front().pct_unseen();
    points.push_back(std::move(point));
  }
  return points;
}

std::string curve_to_csv(std::span<const CurvePoint> points) {
  std::ostringstream out;
  out << "size,system,pct_unseen,n_unseen,acc_all,acc_seen,acc_unseen\n";
  for (const auto& point : points) {
    for (const auto& r : point.reports) {
      out << point.size << ',' << r.system << ',' << format_number(point.pct_unseen)
          << ',' << r.n_unseen << ',' << format_number(r.accuracy_all()) << ','
          << format_number(r.accuracy_seen()) << ','
          << format_number(r.accuracy_unseen()) << '\n';
    }
  }
  return out.str();
}

TTestResult paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("paired_ttest: unequal sample sizes");
  if (a.size() < 2) throw InvalidArgument("paired_ttest: need at least 2 pairs");
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

  TTestResult result;
  result.df = n - 1;
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / static_cast<double>(n);
  const bool constant =
      std::all_of(diff.begin(), diff.end(), [&](double d) { return d == diff[0]; });
  if (constant) {
    if (diff[0] == 0.0) return result;  // t = 0, p = 1
    result.t = diff[0] > 0.0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    result.p = 0.0;
    result.warning = "differences have zero variance; reporting p = 0";
    return result;
  }
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double df = static_cast<double>(result.df);
  // Two-tailed tail mass of Student's t: I_{df/(df+t^2)}(df/2, 1/2).
  result.p = boost::math::ibeta(df / 2.0, 0.5, df / (df + result.t * result.t));
  return result;
}

}  // namespace histnorm
