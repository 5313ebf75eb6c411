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

// Additive aggregation of randomized vectors and a seeded Monte Carlo harness
// comparing its empirical mean squared error with the analytic error.

#ifndef LDPMEAN_ESTIMATOR_H_
#define LDPMEAN_ESTIMATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpmean/randomizer.h"
#include "ldpmean/rng.h"
#include "ldpmean/sphere.h"
#include "ldpmean/tuner.h"

namespace ldpmean {

// (1/n) sum_i R(v_i). User i randomizes with rng.Derive(i); the sum is
// accumulated in user order.
absl::StatusOr<std::vector<double>> EstimateMean(
    std::span<const UnitVector> vectors, const LocalRandomizer& randomizer,
    const RngStream& rng);

struct TrialConfig {
  int n = 1;
  int d = 2;
  double eps = 1.0;
  Algorithm alg = Algorithm::kPrivUnitG;
  int trials = 1;
  uint64_t seed = 0;
  // Threads used to run trials; the report does not depend on it.
  int workers = 1;
};

struct TrialReport {
  int n = 0;
  int trials = 0;
  double empirical_mse = 0.0;
  double analytic_err_per_user = 0.0;
  double standard_error = 0.0;
  uint64_t seed = 0;
};

// Tunes the randomizer for (eps, d, alg) and runs `trials` independent
// trials. Each trial draws one input uniformly on the sphere, gives it to
// all n users, and records ||estimate - input||^2. Trial t uses the stream
// RngStream(seed, 0).Derive(t).
absl::StatusOr<TrialReport> RunTrials(const TrialConfig& config);

// As above with an explicit randomizer; config.d, eps and alg are ignored.
absl::StatusOr<TrialReport> RunTrials(const TrialConfig& config,
                                      const LocalRandomizer& randomizer);

}  // namespace ldpmean

#endif  // LDPMEAN_ESTIMATOR_H_
