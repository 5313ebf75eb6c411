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

#ifndef LDPMEAN_RANDOMIZER_H_
#define LDPMEAN_RANDOMIZER_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpmean/rng.h"
#include "ldpmean/sphere.h"

namespace ldpmean {

// Analytic moments of alpha = <unscaled output, v> and the resulting squared
// error E ||R(v) - v||^2 of an unbiased randomizer.
struct ErrorBreakdown {
  double m = 0.0;         // E[alpha], the normalizer
  double alpha_sq = 0.0;  // E[alpha^2]
  double err = 0.0;       // squared error
  int d = 0;

  // m^2 * err, which tends to 1 as d grows for the Gaussian randomizer.
  double LimitRatio() const { return m * m * err; }
};

// An unbiased local randomizer on S^{d-1}. Implementations are immutable;
// concurrent calls are safe as long as each uses its own RngStream.
class LocalRandomizer {
 public:
  virtual ~LocalRandomizer() = default;

  virtual int dim() const = 0;

  // Privacy budget certified by the parameters.
  virtual double Epsilon() const = 0;

  virtual ErrorBreakdown AnalyticError() const = 0;

  // Returns a privatized copy of `v` with E[output] = v.
  virtual absl::StatusOr<std::vector<double>> Randomize(
      const UnitVector& v, RngStream& rng) const = 0;

  // Log density of the output law at `u` given input `v`.
  virtual absl::StatusOr<double> LogDensity(std::span<const double> u,
                                            const UnitVector& v) const = 0;
};

}  // namespace ldpmean

#endif  // LDPMEAN_RANDOMIZER_H_
