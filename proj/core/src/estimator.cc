// Copyright 2026 The ldpmean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpmean/estimator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {
namespace {

// Child index of a trial stream reserved for drawing the trial's input.
constexpr uint64_t kInputStream = std::numeric_limits<uint64_t>::max();

absl::StatusOr<double> RunOneTrial(const TrialConfig& config,
                                   const LocalRandomizer& randomizer,
                                   uint64_t trial) {
  const RngStream trial_rng = RngStream(config.seed, 0).Derive(trial);
  RngStream input_rng = trial_rng.Derive(kInputStream);
  LDPMEAN_ASSIGN_OR_RETURN(const UnitVector input,
                           SampleUniformSphere(randomizer.dim(), input_rng));
  const std::vector<UnitVector> users(config.n, input);
  LDPMEAN_ASSIGN_OR_RETURN(const std::vector<double> estimate,
                           EstimateMean(users, randomizer, trial_rng));
  double sq = 0.0;
  for (int i = 0; i < randomizer.dim(); ++i) {
    const double diff = estimate[i] - input[i];
    sq += diff * diff;
  }
  return sq;
}

}  // namespace

absl::StatusOr<std::vector<double>> EstimateMean(
    std::span<const UnitVector> vectors, const LocalRandomizer& randomizer,
    const RngStream& rng) {
  if (vectors.empty()) {
    return absl::InvalidArgumentError("cannot aggregate an empty set of users");
  }
  const int d = randomizer.dim();
  std::vector<double> sum(d, 0.0);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "user ", i, " has dimension ", vectors[i].dim(), ", expected ", d));
    }
    RngStream user_rng = rng.Derive(i);
    LDPMEAN_ASSIGN_OR_RETURN(const std::vector<double> z,
                             randomizer.Randomize(vectors[i], user_rng));
    for (int j = 0; j < d; ++j) sum[j] += z[j];
  }
  const double inv_n = 1.0 / static_cast<double>(vectors.size());
  for (double& x : sum) x *= inv_n;
  return sum;
}

absl::StatusOr<TrialReport> RunTrials(const TrialConfig& config,
                                      const LocalRandomizer& randomizer) {
  if (config.n < 1 || config.trials < 1 || config.workers < 1) {
    return absl::InvalidArgumentError(
        "n, trials and workers must all be positive");
  }
  std::vector<double> squared(config.trials, 0.0);
  std::vector<absl::Status> statuses(config.trials);
  const int workers = std::min(config.workers, config.trials);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < config.trials; t += workers) {
          auto sq = RunOneTrial(config, randomizer, static_cast<uint64_t>(t));
          if (sq.ok()) {
            squared[t] = *sq;
          } else {
            statuses[t] = sq.status();
          }
        }
      });
    }
  }
  for (const absl::Status& status : statuses) {
    LDPMEAN_RETURN_IF_ERROR(status);
  }

  double mean = 0.0;
  for (double x : squared) mean += x;
  mean /= config.trials;
  double var = 0.0;
  for (double x : squared) var += (x - mean) * (x - mean);
  TrialReport report;
  report.n = config.n;
  report.trials = config.trials;
  report.seed = config.seed;
  report.empirical_mse = mean;
  report.analytic_err_per_user = randomizer.AnalyticError().err;
  report.standard_error =
      config.trials >= 2
          ? std::sqrt(var / (config.trials - 1.0) / config.trials)
          : 0.0;
  return report;
}

absl::StatusOr<TrialReport> RunTrials(const TrialConfig& config) {
  LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned,
                           Tune(config.eps, config.d, config.alg));
  LDPMEAN_ASSIGN_OR_RETURN(const auto randomizer, MakeRandomizer(tuned));
  return RunTrials(config, *randomizer);
}

}  // namespace ldpmean
