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

#include "ldpmean/tuner.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {
namespace {

constexpr int kGridPoints = 65;
constexpr double kGoldenWidth = 1e-8;

absl::Status ValidateBudget(double eps, int d) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be finite and positive, got ", eps));
  }
  if (d < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be at least 2, got ", d));
  }
  return absl::OkStatus();
}

struct Candidate {
  double eps1;
  double err;
};

TunedResult MakeResult(Algorithm alg, int d, const BudgetSplit& split,
                       std::variant<CapParams, GaussParams> params,
                       const ErrorBreakdown& breakdown) {
  return TunedResult{.alg = alg,
                     .d = d,
                     .split = split,
                     .params = std::move(params),
                     .breakdown = breakdown,
                     .err_star = breakdown.err,
                     .c_const = split.eps * breakdown.err / d};
}

}  // namespace

absl::StatusOr<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "privunit") return Algorithm::kPrivUnit;
  if (name == "privunitg") return Algorithm::kPrivUnitG;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown algorithm '", std::string(name),
      "' (expected privunit or privunitg)"));
}

std::string_view AlgorithmName(Algorithm alg) {
  return alg == Algorithm::kPrivUnit ? "privunit" : "privunitg";
}

absl::StatusOr<BudgetSplit> BudgetSplit::Saturated(double eps, double eps1) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be finite and positive, got ", eps));
  }
  if (!(eps1 >= 0.0 && eps1 <= eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps1 must lie in [0, ", eps, "], got ", eps1));
  }
  return BudgetSplit{eps, eps - eps1, eps1};
}

double TunedResult::p() const {
  return std::visit([](const auto& prm) { return prm.p(); }, params);
}
double TunedResult::q() const {
  return std::visit([](const auto& prm) { return prm.q(); }, params);
}
double TunedResult::gamma() const {
  return std::visit([](const auto& prm) { return prm.gamma(); }, params);
}
double TunedResult::m() const {
  return std::visit([](const auto& prm) { return prm.m(); }, params);
}

absl::StatusOr<ErrorBreakdown> ErrorAtProbabilities(int d, Algorithm alg,
                                                    const Probability& p,
                                                    const Probability& q) {
  if (alg == Algorithm::kPrivUnit) {
    LDPMEAN_ASSIGN_OR_RETURN(const CapParams params,
                             CapParams::FromProbabilities(d, p, q));
    return AnalyticErr(params);
  }
  LDPMEAN_ASSIGN_OR_RETURN(const GaussParams params,
                           GaussParams::FromProbabilities(d, p, q));
  return AnalyticErrG(params);
}

absl::StatusOr<double> ErrorAtSplit(double eps, double eps1, int d,
                                    Algorithm alg) {
  LDPMEAN_ASSIGN_OR_RETURN(const BudgetSplit split,
                           BudgetSplit::Saturated(eps, eps1));
  LDPMEAN_ASSIGN_OR_RETURN(const ErrorBreakdown breakdown,
                           ErrorAtProbabilities(d, alg, split.p(), split.q()));
  return breakdown.err;
}

absl::StatusOr<TunedResult> Tune(double eps, int d, Algorithm alg) {
  LDPMEAN_RETURN_IF_ERROR(ValidateBudget(eps, d));
  absl::Status last_error = absl::OkStatus();
  // Points where the parameters degenerate are skipped.
  auto evaluate = [&](double eps1) {
    const auto err = ErrorAtSplit(eps, eps1, d, alg);
    if (!err.ok()) {
      last_error = err.status();
      return std::numeric_limits<double>::infinity();
    }
    return *err;
  };

  std::vector<double> grid(kGridPoints);
  std::vector<double> values(kGridPoints);
  int best = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = i == kGridPoints - 1 ? eps : eps * i / (kGridPoints - 1);
    values[i] = evaluate(grid[i]);
    if (values[i] < values[best]) best = i;
  }
  if (!std::isfinite(values[best])) {
    return absl::FailedPreconditionError(absl::StrCat(
        "every budget split is degenerate: ", last_error.message()));
  }

  // Golden-section search on [grid[best-1], grid[best+1]].
  Candidate winner{grid[best], values[best]};
  double lo = grid[best > 0 ? best - 1 : 0];
  double hi = grid[best < kGridPoints - 1 ? best + 1 : kGridPoints - 1];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = evaluate(x1);
  double f2 = evaluate(x2);
  while (hi - lo > kGoldenWidth) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = evaluate(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = evaluate(x2);
    }
  }
  for (const Candidate c : {Candidate{x1, f1}, Candidate{x2, f2}}) {
    if (c.err < winner.err) winner = c;
  }

  LDPMEAN_ASSIGN_OR_RETURN(const BudgetSplit split,
                           BudgetSplit::Saturated(eps, winner.eps1));
  if (alg == Algorithm::kPrivUnit) {
    LDPMEAN_ASSIGN_OR_RETURN(
        const CapParams params,
        CapParams::FromProbabilities(d, split.p(), split.q()));
    return MakeResult(alg, d, split, params, AnalyticErr(params));
  }
  LDPMEAN_ASSIGN_OR_RETURN(
      const GaussParams params,
      GaussParams::FromProbabilities(d, split.p(), split.q()));
  return MakeResult(alg, d, split, params, AnalyticErrG(params));
}

absl::StatusOr<double> CEps(double eps, int d_limit) {
  LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned,
                           Tune(eps, d_limit, Algorithm::kPrivUnitG));
  return tuned.c_const;
}

absl::StatusOr<double> RepetitionErr(double eps, int k, int d, Algorithm alg) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("repetition count must be at least 1, got ", k));
  }
  LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned, Tune(eps / k, d, alg));
  return tuned.err_star / k;
}

absl::StatusOr<std::unique_ptr<LocalRandomizer>> MakeRandomizer(
    const TunedResult& tuned) {
  if (const auto* cap = std::get_if<CapParams>(&tuned.params)) {
    LDPMEAN_ASSIGN_OR_RETURN(PrivUnit randomizer, PrivUnit::Create(*cap));
    return std::make_unique<PrivUnit>(std::move(randomizer));
  }
  return std::make_unique<PrivUnitG>(std::get<GaussParams>(tuned.params));
}

}  // namespace ldpmean
