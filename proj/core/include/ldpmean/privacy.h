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

#ifndef LDPMEAN_PRIVACY_H_
#define LDPMEAN_PRIVACY_H_

#include "absl/status/statusor.h"

namespace ldpmean {

// A probability stored together with its complement, so that values within
// machine epsilon of 1 (e.g. e^eps / (e^eps + 1) for eps ~ 40) keep a
// meaningful 1 - value.
class Probability {
 public:
  // value = e^x / (e^x + 1), complement = 1 / (e^x + 1). x may be +inf.
  static Probability FromLogOdds(double log_odds);

  // Requires value in [0, 1].
  static absl::StatusOr<Probability> FromValue(double value);

  // For a value and complement computed separately (e.g. two tails of a
  // distribution). Requires both in [0, 1] and |value + complement - 1| <=
  // 1e-12.
  static absl::StatusOr<Probability> FromValueAndComplement(double value,
                                                            double complement);

  double value() const { return value_; }
  double complement() const { return complement_; }

  // ln(value / complement); +inf when complement is 0, -inf when value is 0.
  double LogOdds() const;

 private:
  Probability(double value, double complement)
      : value_(value), complement_(complement) {}

  double value_;
  double complement_;
};

// Privacy budget certified by the two-level cap condition
// (p / (1 - p)) * (q / (1 - q)) <= e^eps, returned as
// ln(p / (1 - p)) + ln(q / (1 - q)). Either probability at an endpoint
// {0, 1} yields +infinity (no finite budget certifies it).
double PrivacyEpsilon(const Probability& p, const Probability& q);

// As above for plain probabilities; InvalidArgument outside [0, 1].
absl::StatusOr<double> PrivacyEpsilon(double p, double q);

}  // namespace ldpmean

#endif  // LDPMEAN_PRIVACY_H_
