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

#include "ldpmean/specfun.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = 1e-300;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Below this argument log-gamma switches from Stirling to Lanczos.
constexpr double kStirlingCutoff = 10.0;

// Remainder of Stirling's series: ln Gamma(x) - [(x - 1/2) ln x - x +
// ln(2 pi) / 2]. Accurate to ~1e-17 for x >= 10.
double StirlingRemainder(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 +
          inv2 * (-1.0 / 360.0 +
                  inv2 * (1.0 / 1260.0 +
                          inv2 * (-1.0 / 1680.0 +
                                  inv2 * (1.0 / 1188.0 +
                                          inv2 * (-691.0 / 360360.0))))));
}

// Lanczos approximation with g = 7, n = 9; valid for x >= 0.5.
double LanczosLogGamma(double x) {
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double series = kCoef[0];
  for (int i = 1; i < 9; ++i) series += kCoef[i] / (z + i);
  const double t = z + 7.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double LogGammaUnchecked(double x) {
  if (x >= kStirlingCutoff) {
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + StirlingRemainder(x);
  }
  if (x >= 0.5) return LanczosLogGamma(x);
  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
         LanczosLogGamma(1.0 - x);
}

double LogBetaUnchecked(double a, double b) {
  if (a >= kStirlingCutoff && b >= kStirlingCutoff) {
    // (a - 1/2) ln a + (b - 1/2) ln b - (a + b - 1/2) ln(a + b), regrouped so
    // that the large terms cancel analytically.
    const double s = a + b;
    return kHalfLog2Pi - 0.5 * std::log(b) - (a - 0.5) * std::log1p(b / a) -
           b * std::log1p(a / b) + StirlingRemainder(a) +
           StirlingRemainder(b) - StirlingRemainder(s);
  }
  return LogGammaUnchecked(a) + LogGammaUnchecked(b) - LogGammaUnchecked(a + b);
}

absl::Status ValidateShape(double a, double b) {
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta shape parameters must be finite and positive, got a=",
                     a, " b=", b));
  }
  return absl::OkStatus();
}

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for
// x < (a + 1) / (a + b + 2).
absl::StatusOr<double> BetaContinuedFraction(double x, double a, double b,
                                             int max_iter) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEpsilon) return h;
  }
  return absl::InternalError(absl::StrCat(
      "incomplete beta continued fraction did not converge in ", max_iter,
      " iterations (x=", x, " a=", a, " b=", b, ")"));
}

// z - ln(1 + z), accurate for small |z|.
double Rlog1(double z) {
  if (std::abs(z) < 0.1) {
    // sum_{k >= 2} (-1)^k z^k / k
    double term = z * z;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      const double next = term / k;
      sum += (k % 2 == 0) ? next : -next;
      if (std::abs(next) <= kEpsilon * std::abs(sum)) break;
      term *= z;
    }
    return sum;
  }
  return z - std::log1p(z);
}

// ln[x^a (1 - x)^b / B(a, b)].
double LogBetaKernel(double x, double a, double b, double log_beta) {
  if (a >= kStirlingCutoff && b >= kStirlingCutoff) {
    // Centered at the mode x0 = a / (a + b): the O(a) terms of the direct
    // form cancel analytically, which matters once a is ~1e5.
    const double s = a + b;
    const double shift = std::fma(x, s, -a);  // x s - a = -(y s - b)
    return -a * Rlog1(shift / a) - b * Rlog1(-shift / b) +
           0.5 * std::log(a * b / s) - kHalfLog2Pi -
           (StirlingRemainder(a) + StirlingRemainder(b) -
            StirlingRemainder(s));
  }
  return a * std::log(x) + b * std::log1p(-x) - log_beta;
}

// I_x(a, b) evaluated directly by the continued fraction.
absl::StatusOr<double> LowerIncBeta(double x, double a, double b,
                                    double log_beta, int max_iter) {
  LDPMEAN_ASSIGN_OR_RETURN(const double cf,
                           BetaContinuedFraction(x, a, b, max_iter));
  return std::exp(LogBetaKernel(x, a, b, log_beta) - std::log(a)) * cf;
}

absl::StatusOr<double> RegIncBetaImpl(double x, double a, double b,
                                      double log_beta, int max_iter) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) {
    LDPMEAN_ASSIGN_OR_RETURN(const double upper,
                             LowerIncBeta(1.0 - x, b, a, log_beta, max_iter));
    return std::clamp(1.0 - upper, 0.0, 1.0);
  }
  LDPMEAN_ASSIGN_OR_RETURN(const double lower,
                           LowerIncBeta(x, a, b, log_beta, max_iter));
  return std::clamp(lower, 0.0, 1.0);
}

// Starting point for the inverse incomplete beta (Numerical Recipes, 3rd ed.,
// section 6.14), with a power-law tail fallback when it degenerates.
double InitialBetaGuess(double y, double a, double b, double log_beta) {
  double x;
  if (a >= 1.0 && b >= 1.0) {
    const double pp = (y < 0.5) ? y : 1.0 - y;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (y < 0.5) z = -z;
    const double al = (z * z - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w =
        z * std::sqrt(al + h) / h -
        (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) *
            (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    x = a / (a + b * std::exp(2.0 * w));
  } else {
    const double lna = std::log(a / (a + b));
    const double lnb = std::log(b / (a + b));
    const double t = std::exp(a * lna) / a;
    const double u = std::exp(b * lnb) / b;
    const double w = t + u;
    if (y < t / w) {
      x = std::pow(a * w * y, 1.0 / a);
    } else {
      x = 1.0 - std::pow(b * w * (1.0 - y), 1.0 / b);
    }
  }
  if (!(x > 0.0 && x < 1.0)) {
    // I_x(a, b) ~ x^a / (a B(a, b)) as x -> 0.
    x = std::exp((std::log(a) + log_beta + std::log(y)) / a);
    if (!(x > 0.0 && x < 1.0)) x = 0.5;
  }
  return x;
}

// Solves I_x(a, b) = y for a root x <= 1/2 by Halley iteration kept inside
// a shrinking bracket.
absl::StatusOr<double> InvLowerIncBeta(double y, double a, double b,
                                       const Tolerances& tol) {
  const double log_beta = LogBetaUnchecked(a, b);
  double x = InitialBetaGuess(y, a, b, log_beta);
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    LDPMEAN_ASSIGN_OR_RETURN(const double value,
                             RegIncBetaImpl(x, a, b, log_beta, tol.max_iter));
    const double f = value - y;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double log_density =
        (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta;
    const double u = f / std::exp(log_density);
    const double curvature = (a - 1.0) / x - (b - 1.0) / (1.0 - x);
    double next = x - u / (1.0 - 0.5 * std::min(1.0, u * curvature));
    bool halley_step = true;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
      halley_step = false;
    }
    const double step = std::abs(next - x);
    x = next;
    // A Halley step of relative size rel_tol leaves an error far below it.
    if ((halley_step && step <= tol.rel_tol * x) ||
        hi - lo <= 4.0 * kEpsilon * x) {
      break;
    }
  }
  LDPMEAN_ASSIGN_OR_RETURN(const double value,
                           RegIncBetaImpl(x, a, b, log_beta, tol.max_iter));
  if (std::abs(value - y) > tol.abs_tol) {
    return absl::InternalError(absl::StrCat(
        "inverse incomplete beta did not converge (y=", y, " a=", a,
        " b=", b, " residual=", value - y, ")"));
  }
  return x;
}

// Wichura's AS 241 (PPND16) for p <= 1/2.
double Ppnd16Lower(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = std::sqrt(-std::log(p));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value =
        (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
              0.24178072517745061177) * r + 1.27045825245236838258) * r +
            3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734) /
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
              0.0151986665636164571966) * r + 0.14810397642748007459) * r +
            0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              0.0012426609473880784386) * r + 0.026532189526576123093) * r +
            0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772) /
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
              1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
            0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
  }
  return -value;
}

// Quantile for p <= 1/2 refined by Halley steps on the lower-tail cdf.
double LowerNormalQuantile(double p) {
  double x = Ppnd16Lower(p);
  for (int i = 0; i < 2; ++i) {
    const double e = StdNormalCdf(x) - p;
    if (e == 0.0) break;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    const double next = x - u / (1.0 + 0.5 * x * u);
    if (!std::isfinite(next)) break;
    x = next;
  }
  return x;
}

}  // namespace

absl::Status ValidateTolerances(const Tolerances& tol) {
  if (!(tol.abs_tol > 0) || !(tol.rel_tol > 0) || tol.max_iter < 1) {
    return absl::InvalidArgumentError(
        "tolerances require abs_tol > 0, rel_tol > 0 and max_iter >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> LogGamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat("log-gamma requires finite x > 0, got ", x));
  }
  return LogGammaUnchecked(x);
}

absl::StatusOr<double> LogBeta(double a, double b) {
  LDPMEAN_RETURN_IF_ERROR(ValidateShape(a, b));
  return LogBetaUnchecked(a, b);
}

absl::StatusOr<double> RegIncBeta(double x, double a, double b,
                                  const Tolerances& tol) {
  LDPMEAN_RETURN_IF_ERROR(ValidateTolerances(tol));
  LDPMEAN_RETURN_IF_ERROR(ValidateShape(a, b));
  if (!(x >= 0.0 && x <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("incomplete beta requires x in [0, 1], got ", x));
  }
  return RegIncBetaImpl(x, a, b, LogBetaUnchecked(a, b), tol.max_iter);
}

absl::StatusOr<double> InvRegIncBeta(double y, double a, double b,
                                     const Tolerances& tol) {
  LDPMEAN_RETURN_IF_ERROR(ValidateTolerances(tol));
  LDPMEAN_RETURN_IF_ERROR(ValidateShape(a, b));
  if (!(y >= 0.0 && y <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("inverse incomplete beta requires y in [0, 1], got ", y));
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  // Solve for whichever of x, 1 - x is at most 1/2 so that the root is
  // resolved with full relative precision.
  LDPMEAN_ASSIGN_OR_RETURN(
      const double at_half,
      RegIncBetaImpl(0.5, a, b, LogBetaUnchecked(a, b), tol.max_iter));
  if (y > at_half) {
    // I_x(a, b) = y  <=>  I_{1-x}(b, a) = 1 - y.
    LDPMEAN_ASSIGN_OR_RETURN(const double x, InvLowerIncBeta(1.0 - y, b, a, tol));
    return 1.0 - x;
  }
  return InvLowerIncBeta(y, a, b, tol);
}

double StdNormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double StdNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

absl::StatusOr<double> InvStdNormalCdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("normal quantile requires p in (0, 1), got ", p));
  }
  if (p > 0.5) return -LowerNormalQuantile(1.0 - p);
  return LowerNormalQuantile(p);
}

absl::StatusOr<double> InvStdNormalUpperTail(double tail) {
  LDPMEAN_ASSIGN_OR_RETURN(const double x, InvStdNormalCdf(tail));
  return -x;
}

absl::StatusOr<TruncGaussMoments> TruncatedGaussianMoments(double gamma,
                                                           double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma) || !std::isfinite(gamma)) {
    return absl::InvalidArgumentError(
        "truncated moments require finite gamma and sigma > 0");
  }
  const double z = gamma / sigma;
  TruncGaussMoments out;
  out.p_above = StdNormalCdf(-z);
  out.p_below = StdNormalCdf(z);
  if (out.p_above < 1e-300 || out.p_below < 1e-300) {
    return absl::OutOfRangeError(absl::StrCat(
        "truncated Gaussian saturated: tail mass below 1e-300 at gamma/sigma=",
        z));
  }
  const double density = StdNormalPdf(z);
  const double mills_above = density / out.p_above;
  const double mills_below = density / out.p_below;
  out.m_above = sigma * mills_above;
  out.s_above = sigma * sigma * (1.0 + z * mills_above);
  out.m_below = -sigma * mills_below;
  out.s_below = sigma * sigma * (1.0 - z * mills_below);
  return out;
}

}  // namespace ldpmean
