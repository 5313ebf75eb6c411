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

// PrivUnitG(p, q): the Gaussian analogue of PrivUnit. The coordinate along
// the input is a N(0, 1/d) variable truncated to [gamma, inf) with
// probability p and to (-inf, gamma) otherwise, gamma = Phi^{-1}(q) / sqrt(d);
// the orthogonal part is N(0, (1/d)(I - v v^T)). The sum is scaled by 1 / m.

#ifndef LDPMEAN_PRIVUNITG_H_
#define LDPMEAN_PRIVUNITG_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpmean/privacy.h"
#include "ldpmean/randomizer.h"
#include "ldpmean/rng.h"
#include "ldpmean/sphere.h"

namespace ldpmean {

class GaussParams {
 public:
  // Requires d >= 2, p in [1/2, 1], q in [1/2, 1). FailedPrecondition when
  // m <= 0.
  static absl::StatusOr<GaussParams> Create(int d, double p, double q);
  static absl::StatusOr<GaussParams> FromProbabilities(int d, Probability p,
                                                       Probability q);

  int d() const { return d_; }
  double p() const { return p_.value(); }
  double q() const { return q_.value(); }
  double sigma() const { return sigma_; }
  double gamma() const { return gamma_; }
  double m() const { return m_; }
  const Probability& p_prob() const { return p_; }
  const Probability& q_prob() const { return q_; }

  double Epsilon() const { return PrivacyEpsilon(p_, q_); }

 private:
  GaussParams(int d, Probability p, Probability q, double sigma, double gamma,
              double m)
      : d_(d), p_(p), q_(q), sigma_(sigma), gamma_(gamma), m_(m) {}

  int d_;
  Probability p_;
  Probability q_;
  double sigma_;
  double gamma_;
  double m_;
};

// m = sigma phi(gamma / sigma) (p / (1 - q) - (1 - p) / q) = E[alpha].
absl::StatusOr<double> NormalizerMG(int d, double p, double q);

// E[alpha^2] = p E[U^2 | U >= gamma] + (1 - p) E[U^2 | U < gamma], from the
// truncated-Gaussian moments. Equals sigma^2 + gamma m.
absl::StatusOr<double> AlphaSecondMoment(int d, double p, double q);

// err = (E[alpha^2] + (d - 1) / d) / m^2 - 1 with E[alpha^2] = sigma^2 +
// gamma m.
ErrorBreakdown AnalyticErrG(const GaussParams& params);

class PrivUnitG final : public LocalRandomizer {
 public:
  // The output together with the sampled alpha = <unscaled output, v>.
  struct Draw {
    std::vector<double> output;
    double alpha;
  };

  explicit PrivUnitG(const GaussParams& params) : params_(params) {}

  const GaussParams& params() const { return params_; }

  int dim() const override { return params_.d(); }
  double Epsilon() const override { return params_.Epsilon(); }
  ErrorBreakdown AnalyticError() const override {
    return AnalyticErrG(params_);
  }

  absl::StatusOr<Draw> Sample(const UnitVector& v, RngStream& rng) const;

  absl::StatusOr<std::vector<double>> Randomize(const UnitVector& v,
                                                RngStream& rng) const override;

  // With w = m u: log N(w; 0, sigma^2 I) + ln(p / (1 - q)) if <w, v> >= gamma
  // else ln((1 - p) / q), plus d ln m for the change of variables.
  absl::StatusOr<double> LogDensity(std::span<const double> u,
                                    const UnitVector& v) const override;

 private:
  GaussParams params_;
};

}  // namespace ldpmean

#endif  // LDPMEAN_PRIVUNITG_H_
