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

// Parameter selection under a privacy budget and the optimal-error
// constants C_{eps,d} = eps * err*_{eps,d} / d.

#ifndef LDPMEAN_TUNER_H_
#define LDPMEAN_TUNER_H_

#include <memory>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "ldpmean/privacy.h"
#include "ldpmean/privunit.h"
#include "ldpmean/privunitg.h"
#include "ldpmean/randomizer.h"

namespace ldpmean {

enum class Algorithm { kPrivUnit, kPrivUnitG };

// Accepts "privunit" and "privunitg".
absl::StatusOr<Algorithm> ParseAlgorithm(std::string_view name);
std::string_view AlgorithmName(Algorithm alg);

// eps = eps0 + eps1 with p = e^{eps0} / (e^{eps0} + 1) and
// q = e^{eps1} / (e^{eps1} + 1), so that (p / (1-p)) (q / (1-q)) = e^eps.
struct BudgetSplit {
  double eps = 0.0;
  double eps0 = 0.0;
  double eps1 = 0.0;

  // Requires eps > 0 and eps1 in [0, eps].
  static absl::StatusOr<BudgetSplit> Saturated(double eps, double eps1);

  Probability p() const { return Probability::FromLogOdds(eps0); }
  Probability q() const { return Probability::FromLogOdds(eps1); }
};

struct TunedResult {
  Algorithm alg;
  int d;
  BudgetSplit split;
  std::variant<CapParams, GaussParams> params;
  ErrorBreakdown breakdown;
  double err_star;
  double c_const;  // eps * err_star / d

  double p() const;
  double q() const;
  double gamma() const;
  double m() const;
};

// Analytic error of `alg` at (p, q) in dimension d.
absl::StatusOr<ErrorBreakdown> ErrorAtProbabilities(int d, Algorithm alg,
                                                    const Probability& p,
                                                    const Probability& q);

// Analytic error at the saturated split with q-component eps1.
absl::StatusOr<double> ErrorAtSplit(double eps, double eps1, int d,
                                    Algorithm alg);

// Minimizes the analytic error over saturated splits: a 65-point grid on
// eps1 in [0, eps], then golden-section search on the bracket around the
// best grid point down to a width of 1e-8.
absl::StatusOr<TunedResult> Tune(double eps, int d, Algorithm alg);

// C_{eps,d_limit} for PrivUnitG (analytic; no sampling).
absl::StatusOr<double> CEps(double eps, int d_limit = 50000);

// Error of averaging k independent (eps/k)-private runs, which is eps-private
// by composition: Tune(eps / k, d).err_star / k.
absl::StatusOr<double> RepetitionErr(double eps, int k, int d,
                                     Algorithm alg = Algorithm::kPrivUnitG);

// The randomizer configured by a tuning result.
absl::StatusOr<std::unique_ptr<LocalRandomizer>> MakeRandomizer(
    const TunedResult& tuned);

}  // namespace ldpmean

#endif  // LDPMEAN_TUNER_H_
