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

#include "ldpmean/privunit.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/specfun.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {
namespace {

// E[W_1 1{W_1 >= gamma}] = (1 - gamma^2)^a / ((d - 1) B(1/2, a)), a = (d-1)/2.
// Note B(1/2, a) = 2^{d-2} B(a, a).
absl::StatusOr<double> LogCapFirstMoment(int d, double gamma) {
  const double shape = 0.5 * (d - 1);
  LDPMEAN_ASSIGN_OR_RETURN(const double log_beta, LogBeta(0.5, shape));
  return shape * std::log1p(-gamma * gamma) - std::log(d - 1.0) - log_beta;
}

absl::StatusOr<double> ComputeM(int d, const Probability& p,
                                const Probability& q, double gamma) {
  LDPMEAN_ASSIGN_OR_RETURN(const double log_first,
                           LogCapFirstMoment(d, gamma));
  // The (1 - p) term enters with a minus sign: E[W_1] = 0 splits into equal
  // and opposite contributions from the two caps.
  const double bracket =
      p.value() / q.complement() - p.complement() / q.value();
  const double m = std::exp(log_first) * bracket;
  if (!(m > 0.0) || !std::isfinite(m)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate PrivUnit parameters: normalizer m=", m, " (d=", d,
        " p=", p.value(), " gamma=", gamma, ")"));
  }
  return m;
}

}  // namespace

absl::StatusOr<CapParams> CapParams::Build(int d, Probability p, Probability q,
                                           double gamma) {
  LDPMEAN_ASSIGN_OR_RETURN(const double m, ComputeM(d, p, q, gamma));
  return CapParams(d, p, q, gamma, m);
}

absl::StatusOr<CapParams> CapParams::Create(int d, double p, double gamma) {
  if (d < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be at least 2, got ", d));
  }
  if (!(p >= 0.5 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("p must lie in [1/2, 1], got ", p));
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in [0, 1), got ", gamma));
  }
  LDPMEAN_ASSIGN_OR_RETURN(const double below, MarginalCdf(gamma, d));
  LDPMEAN_ASSIGN_OR_RETURN(const double above, MarginalCdf(-gamma, d));
  LDPMEAN_ASSIGN_OR_RETURN(const Probability q,
                           Probability::FromValueAndComplement(below, above));
  LDPMEAN_ASSIGN_OR_RETURN(const Probability pp, Probability::FromValue(p));
  return Build(d, pp, q, gamma);
}

absl::StatusOr<CapParams> CapParams::FromProbabilities(int d, Probability p,
                                                       Probability q) {
  if (d < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be at least 2, got ", d));
  }
  if (!(p.value() >= 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("p must lie in [1/2, 1], got ", p.value()));
  }
  if (!(q.value() >= 0.5) || !(q.complement() > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("q must lie in [1/2, 1), got ", q.value()));
  }
  double gamma = 0.0;
  if (q.value() != 0.5) {
    LDPMEAN_ASSIGN_OR_RETURN(const double lower,
                             InvMarginalCdf(q.complement(), d));
    gamma = -lower;
  }
  if (!(gamma < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("cap threshold saturated at 1 for q=", q.value()));
  }
  return Build(d, p, q, gamma);
}

absl::StatusOr<double> NormalizerM(int d, double p, double gamma) {
  LDPMEAN_ASSIGN_OR_RETURN(const CapParams params,
                           CapParams::Create(d, p, gamma));
  return params.m();
}

ErrorBreakdown AnalyticErr(const CapParams& params) {
  ErrorBreakdown out;
  out.d = params.d();
  out.m = params.m();
  out.err = 1.0 / (out.m * out.m) - 1.0;
  // E[W_1^2 1{W_1 >= gamma}] = gamma E[W_1 1{W_1 >= gamma}]
  //                            + P_{d+2}(W_1 >= gamma) / d,
  // by parts, where P_{d+2} is the marginal law one dimension pair higher.
  // Summing both caps with their mixture weights leaves gamma * m.
  const int d = params.d();
  const double gamma = params.gamma();
  const auto above = MarginalCdf(-gamma, d + 2);
  const auto below = MarginalCdf(gamma, d + 2);
  if (above.ok() && below.ok()) {
    const Probability& p = params.p_prob();
    const Probability& q = params.q_prob();
    out.alpha_sq = gamma * out.m + (p.value() * *above / q.complement() +
                                    p.complement() * *below / q.value()) /
                                       d;
  } else {
    out.alpha_sq = std::nan("");
  }
  return out;
}

absl::StatusOr<PrivUnit> PrivUnit::Create(const CapParams& params) {
  LDPMEAN_ASSIGN_OR_RETURN(SphericalCap cap,
                           SphericalCap::Create(params.d(), params.gamma()));
  return PrivUnit(params, cap);
}

absl::StatusOr<std::vector<double>> PrivUnit::Randomize(const UnitVector& v,
                                                        RngStream& rng) const {
  if (v.dim() != params_.d()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "input has dimension ", v.dim(), ", randomizer expects ", params_.d()));
  }
  const bool above = rng.Bernoulli(params_.p());
  LDPMEAN_ASSIGN_OR_RETURN(std::vector<double> draw, cap_.Sample(above, rng));
  LDPMEAN_ASSIGN_OR_RETURN(std::vector<double> out, RotateFromE1(v, draw));
  const double scale = 1.0 / params_.m();
  for (double& x : out) x *= scale;
  return out;
}

absl::StatusOr<double> PrivUnit::LogDensity(std::span<const double> u,
                                            const UnitVector& v) const {
  if (static_cast<int>(u.size()) != params_.d() || v.dim() != params_.d()) {
    return absl::InvalidArgumentError("dimension mismatch in LogDensity");
  }
  const double m = params_.m();
  if (std::abs(Norm(u) * m - 1.0) > 1e-6) {
    return absl::InvalidArgumentError(absl::StrCat(
        "point is off the support sphere of radius ", 1.0 / m));
  }
  const Probability& p = params_.p_prob();
  const Probability& q = params_.q_prob();
  if (Dot(u, v.coords()) * m >= params_.gamma()) {
    return std::log(p.value()) - std::log(q.complement());
  }
  return std::log(p.complement()) - std::log(q.value());
}

}  // namespace ldpmean
