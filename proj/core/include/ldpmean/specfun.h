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

// Special functions used by the randomizers: log-gamma and log-beta, the
// regularized incomplete beta function and its inverse, the standard normal
// distribution, and moments of a Gaussian truncated at a threshold.
//
// All functions are pure and may be called concurrently.

#ifndef LDPMEAN_SPECFUN_H_
#define LDPMEAN_SPECFUN_H_

#include "absl/status/statusor.h"

namespace ldpmean {

// Accuracy targets and iteration limits for the iterative routines.
struct Tolerances {
  // Absolute residual accepted by the inverse routines.
  double abs_tol = 1e-12;
  // Relative step size at which Newton-type iterations stop.
  double rel_tol = 1e-10;
  // Iteration cap for continued fractions and root finders.
  int max_iter = 200;
};

// Returns an InvalidArgument error unless `tol` satisfies abs_tol > 0,
// rel_tol > 0 and max_iter >= 1.
absl::Status ValidateTolerances(const Tolerances& tol);

// ln Gamma(x) for finite x > 0.
absl::StatusOr<double> LogGamma(double x);

// ln B(a, b) for a, b > 0. Uses a Stirling-difference form when both
// arguments are large so that B(a, a) stays accurate for a ~ 1e6.
absl::StatusOr<double> LogBeta(double a, double b);

// Regularized incomplete beta I_x(a, b) = B(x; a, b) / B(a, b).
//
// Evaluated by a modified-Lentz continued fraction on whichever of
// I_x(a, b) and 1 - I_{1-x}(b, a) converges faster. The prefactor is built
// in log space, so a = b = (d - 1) / 2 is fine for very large d.
absl::StatusOr<double> RegIncBeta(double x, double a, double b,
                                  const Tolerances& tol = {});

// Inverse of RegIncBeta in x: returns x with I_x(a, b) = y.
absl::StatusOr<double> InvRegIncBeta(double y, double a, double b,
                                     const Tolerances& tol = {});

double StdNormalPdf(double x);
double StdNormalCdf(double x);

// Quantile of the standard normal law. Requires p in (0, 1).
absl::StatusOr<double> InvStdNormalCdf(double p);

// Returns x with P(Z >= x) = tail for Z ~ N(0, 1). Keeps full relative
// precision for tails far below machine epsilon, where 1 - tail rounds to 1.
absl::StatusOr<double> InvStdNormalUpperTail(double tail);

// Conditional moments of U ~ N(0, sigma^2) on either side of `gamma`.
struct TruncGaussMoments {
  double m_above;  // E[U | U >= gamma]
  double s_above;  // E[U^2 | U >= gamma]
  double m_below;  // E[U | U < gamma]
  double s_below;  // E[U^2 | U < gamma]
  double p_above;  // P(U >= gamma)
  double p_below;  // P(U < gamma)
};

// Uses the inverse Mills ratio phi(z) / (1 - Phi(z)) with z = gamma / sigma.
// Fails with OutOfRange when either side carries probability below 1e-300.
absl::StatusOr<TruncGaussMoments> TruncatedGaussianMoments(double gamma,
                                                           double sigma);

}  // namespace ldpmean

#endif  // LDPMEAN_SPECFUN_H_
