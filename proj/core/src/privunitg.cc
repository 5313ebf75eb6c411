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

#include "ldpmean/privunitg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/specfun.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {

absl::StatusOr<GaussParams> GaussParams::FromProbabilities(int d, Probability p,
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
  const double sigma = 1.0 / std::sqrt(static_cast<double>(d));
  double z = 0.0;
  if (q.value() != 0.5) {
    LDPMEAN_ASSIGN_OR_RETURN(z, InvStdNormalUpperTail(q.complement()));
  }
  const double gamma = sigma * z;
  const double m = sigma * StdNormalPdf(z) *
                   (p.value() / q.complement() - p.complement() / q.value());
  if (!(m > 0.0) || !std::isfinite(m)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate PrivUnitG parameters: normalizer m=", m, " (d=", d,
        " p=", p.value(), " q=", q.value(), ")"));
  }
  return GaussParams(d, p, q, sigma, gamma, m);
}

absl::StatusOr<GaussParams> GaussParams::Create(int d, double p, double q) {
  LDPMEAN_ASSIGN_OR_RETURN(const Probability pp, Probability::FromValue(p));
  LDPMEAN_ASSIGN_OR_RETURN(const Probability qq, Probability::FromValue(q));
  return FromProbabilities(d, pp, qq);
}

absl::StatusOr<double> NormalizerMG(int d, double p, double q) {
  LDPMEAN_ASSIGN_OR_RETURN(const GaussParams params,
                           GaussParams::Create(d, p, q));
  return params.m();
}

absl::StatusOr<double> AlphaSecondMoment(int d, double p, double q) {
  LDPMEAN_ASSIGN_OR_RETURN(const GaussParams params,
                           GaussParams::Create(d, p, q));
  LDPMEAN_ASSIGN_OR_RETURN(
      const TruncGaussMoments moments,
      TruncatedGaussianMoments(params.gamma(), params.sigma()));
  return p * moments.s_above + (1.0 - p) * moments.s_below;
}

ErrorBreakdown AnalyticErrG(const GaussParams& params) {
  ErrorBreakdown out;
  out.d = params.d();
  out.m = params.m();
  const double sigma_sq = params.sigma() * params.sigma();
  out.alpha_sq = sigma_sq + params.gamma() * out.m;
  out.err = (out.alpha_sq + (out.d - 1.0) / out.d) / (out.m * out.m) - 1.0;
  return out;
}

absl::StatusOr<PrivUnitG::Draw> PrivUnitG::Sample(const UnitVector& v,
                                                  RngStream& rng) const {
  const int d = params_.d();
  if (v.dim() != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "input has dimension ", v.dim(), ", randomizer expects ", d));
  }
  const Probability& q = params_.q_prob();
  const double sigma = params_.sigma();
  const double gamma = params_.gamma();
  const bool above = rng.Bernoulli(params_.p());
  const double mass = above ? q.complement() : q.value();
  if (mass < 1e-300) {
    return absl::OutOfRangeError(
        absl::StrCat("truncated Gaussian tail mass ", mass, " underflows"));
  }
  const double u = rng.UniformOpen() * mass;
  double alpha;
  if (above) {
    LDPMEAN_ASSIGN_OR_RETURN(const double z, InvStdNormalUpperTail(u));
    alpha = std::max(sigma * z, gamma);
  } else {
    LDPMEAN_ASSIGN_OR_RETURN(const double z, InvStdNormalCdf(u));
    alpha = sigma * z;
    if (alpha >= gamma) alpha = std::nextafter(gamma, -HUGE_VAL);
  }

  // V_perp: isotropic Gaussian with its v-component removed.
  const auto dir = v.coords();
  std::vector<double> out(d);
  for (double& x : out) x = sigma * rng.Normal();
  const double along = Dot(out, dir);
  const double inv_m = 1.0 / params_.m();
  for (int i = 0; i < d; ++i) {
    out[i] = (out[i] + (alpha - along) * dir[i]) * inv_m;
  }
  return Draw{std::move(out), alpha};
}

absl::StatusOr<std::vector<double>> PrivUnitG::Randomize(const UnitVector& v,
                                                         RngStream& rng) const {
  LDPMEAN_ASSIGN_OR_RETURN(Draw draw, Sample(v, rng));
  return std::move(draw.output);
}

absl::StatusOr<double> PrivUnitG::LogDensity(std::span<const double> u,
                                             const UnitVector& v) const {
  const int d = params_.d();
  if (static_cast<int>(u.size()) != d || v.dim() != d) {
    return absl::InvalidArgumentError("dimension mismatch in LogDensity");
  }
  const double m = params_.m();
  const double sigma = params_.sigma();
  const double w_sq = m * m * Dot(u, u);
  const double along = m * Dot(u, v.coords());
  const double log_gauss =
      -0.5 * d * std::log(2.0 * std::numbers::pi * sigma * sigma) -
      0.5 * w_sq / (sigma * sigma);
  const Probability& p = params_.p_prob();
  const Probability& q = params_.q_prob();
  const double log_switch =
      along >= params_.gamma()
          ? std::log(p.value()) - std::log(q.complement())
          : std::log(p.complement()) - std::log(q.value());
  return log_gauss + log_switch + d * std::log(m);
}

}  // namespace ldpmean
