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

#include "ldpmean/privacy.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {

Probability Probability::FromLogOdds(double log_odds) {
  if (log_odds == std::numeric_limits<double>::infinity()) {
    return Probability(1.0, 0.0);
  }
  return Probability(1.0 / (1.0 + std::exp(-log_odds)),
                     1.0 / (1.0 + std::exp(log_odds)));
}

absl::StatusOr<Probability> Probability::FromValue(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("probability must lie in [0, 1], got ", value));
  }
  return Probability(value, 1.0 - value);
}

absl::StatusOr<Probability> Probability::FromValueAndComplement(
    double value, double complement) {
  if (!(value >= 0.0 && value <= 1.0 && complement >= 0.0 &&
        complement <= 1.0) ||
      std::abs(value + complement - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(absl::StrCat(
        "inconsistent probability pair: value=", value,
        " complement=", complement));
  }
  return Probability(value, complement);
}

double Probability::LogOdds() const {
  return std::log(value_) - std::log(complement_);
}

double PrivacyEpsilon(const Probability& p, const Probability& q) {
  if (p.value() == 0.0 || p.complement() == 0.0 || q.value() == 0.0 ||
      q.complement() == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return p.LogOdds() + q.LogOdds();
}

absl::StatusOr<double> PrivacyEpsilon(double p, double q) {
  LDPMEAN_ASSIGN_OR_RETURN(const Probability pp, Probability::FromValue(p));
  LDPMEAN_ASSIGN_OR_RETURN(const Probability qq, Probability::FromValue(q));
  return PrivacyEpsilon(pp, qq);
}

}  // namespace ldpmean
