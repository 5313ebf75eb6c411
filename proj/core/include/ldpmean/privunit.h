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

// PrivUnit(p, gamma): with probability p output a uniform point of the cap
// {u : <u, v> >= gamma}, otherwise a uniform point of its complement, scaled
// by 1 / m so that the output is unbiased.

#ifndef LDPMEAN_PRIVUNIT_H_
#define LDPMEAN_PRIVUNIT_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpmean/privacy.h"
#include "ldpmean/randomizer.h"
#include "ldpmean/rng.h"
#include "ldpmean/sphere.h"

namespace ldpmean {

// Validated PrivUnit parameters with cached q = P(W_1 <= gamma) and
// normalizer m. Immutable.
class CapParams {
 public:
  // Requires d >= 2, p in [1/2, 1], gamma in [0, 1). Fails with
  // FailedPrecondition when the parameters give m <= 0 (p = 1/2, gamma = 0).
  static absl::StatusOr<CapParams> Create(int d, double p, double gamma);

  // Same, parameterized by q instead of gamma; requires q in [1/2, 1).
  static absl::StatusOr<CapParams> FromProbabilities(int d, Probability p,
                                                     Probability q);

  int d() const { return d_; }
  double p() const { return p_.value(); }
  double gamma() const { return gamma_; }
  double q() const { return q_.value(); }
  double m() const { return m_; }
  double shape_alpha() const { return 0.5 * (d_ - 1); }
  double tau() const { return 0.5 * (1.0 + gamma_); }
  const Probability& p_prob() const { return p_; }
  const Probability& q_prob() const { return q_; }

  // ln(p / (1 - p)) + ln(q / (1 - q)).
  double Epsilon() const { return PrivacyEpsilon(p_, q_); }

 private:
  CapParams(int d, Probability p, Probability q, double gamma, double m)
      : d_(d), p_(p), q_(q), gamma_(gamma), m_(m) {}

  static absl::StatusOr<CapParams> Build(int d, Probability p, Probability q,
                                         double gamma);

  int d_;
  Probability p_;
  Probability q_;
  double gamma_;
  double m_;
};

// E[<unscaled output, e_1>] for PrivUnit(p, gamma):
//   m = (1 - gamma^2)^a / (2^{d-2} (d - 1))
//       * [p / (B(a, a) - B(tau; a, a)) - (1 - p) / B(tau; a, a)]
// with a = (d - 1) / 2 and tau = (1 + gamma) / 2, evaluated in log space.
absl::StatusOr<double> NormalizerM(int d, double p, double gamma);

// Exact error 1 / m^2 - 1 (the output lies on the sphere of radius 1 / m).
// alpha_sq = E[W_1^2] under the cap mixture, recorded for reference.
ErrorBreakdown AnalyticErr(const CapParams& params);

class PrivUnit final : public LocalRandomizer {
 public:
  static absl::StatusOr<PrivUnit> Create(const CapParams& params);

  const CapParams& params() const { return params_; }

  int dim() const override { return params_.d(); }
  double Epsilon() const override { return params_.Epsilon(); }
  ErrorBreakdown AnalyticError() const override { return AnalyticErr(params_); }

  absl::StatusOr<std::vector<double>> Randomize(const UnitVector& v,
                                                RngStream& rng) const override;

  // Density w.r.t. the uniform probability measure on the sphere of radius
  // 1 / m: p / (1 - q) on the closed cap <u, v> m >= gamma, (1 - p) / q
  // elsewhere. InvalidArgument if | ||u|| m - 1 | > 1e-6.
  absl::StatusOr<double> LogDensity(std::span<const double> u,
                                    const UnitVector& v) const override;

 private:
  PrivUnit(CapParams params, SphericalCap cap)
      : params_(params), cap_(cap) {}

  CapParams params_;
  SphericalCap cap_;
};

}  // namespace ldpmean

#endif  // LDPMEAN_PRIVUNIT_H_
