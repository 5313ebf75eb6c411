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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace ldpmean {
namespace {

using ::testing::DoubleNear;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(TolerancesTest, DefaultsAreValid) {
  EXPECT_TRUE(ValidateTolerances(Tolerances{}).ok());
  EXPECT_EQ(Tolerances{}.abs_tol, 1e-12);
  EXPECT_EQ(Tolerances{}.rel_tol, 1e-10);
  EXPECT_EQ(Tolerances{}.max_iter, 200);
}

TEST(TolerancesTest, RejectsNonPositive) {
  EXPECT_EQ(ValidateTolerances({.abs_tol = 0.0}).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ValidateTolerances({.rel_tol = -1.0}).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ValidateTolerances({.max_iter = 0}).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(RegIncBeta(0.3, 2, 2, {.max_iter = 0}).ok());
}

TEST(LogGammaTest, Examples) {
  EXPECT_EQ(*LogGamma(1.0), 0.0);
  // ln sqrt(pi).
  EXPECT_THAT(*LogGamma(0.5),
              DoubleNear(0.5 * std::log(std::numbers::pi), 1e-15));
  // ln 9! = ln 362880.
  EXPECT_THAT(*LogGamma(10.0), DoubleNear(std::log(362880.0), 1e-13));
}

TEST(LogGammaTest, MatchesLibmOverRange) {
  for (double x = 1e-3; x <= 1e6; x *= 1.37) {
    const double expected = std::lgamma(x);
    EXPECT_NEAR(*LogGamma(x), expected, 1e-12 * std::max(1.0, std::abs(expected)))
        << "x=" << x;
  }
}

TEST(LogGammaTest, DomainErrors) {
  for (double x : {0.0, -1.0, -2.5, kNaN, kInf}) {
    EXPECT_EQ(LogGamma(x).status().code(), absl::StatusCode::kInvalidArgument)
        << x;
  }
}

TEST(LogBetaTest, AgreesWithLogGamma) {
  for (double a : {0.5, 1.0, 3.0, 31.5, 4000.0, 5e5}) {
    for (double b : {0.5, 2.0, 31.5, 5e5}) {
      const double expected = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
      EXPECT_NEAR(*LogBeta(a, b), expected,
                  1e-11 * std::max(1.0, std::abs(expected)))
          << a << "," << b;
    }
  }
}

TEST(RegIncBetaTest, Examples) {
  for (double a : {0.1, 0.5, 1.0, 7.0, 31.5, 499999.5}) {
    // The continued fraction needs O(sqrt(a)) terms near the mean.
    const Tolerances tol{.max_iter = 8000};
    EXPECT_NEAR(*RegIncBeta(0.5, a, a, tol), 0.5, 1e-12) << a;
  }
  EXPECT_NEAR(*RegIncBeta(0.3, 1, 1), 0.3, 1e-15);
  // 3x^2 - 2x^3 at x = 1/4.
  EXPECT_NEAR(*RegIncBeta(0.25, 2, 2), 0.15625, 1e-15);
}

TEST(RegIncBetaTest, Endpoints) {
  EXPECT_EQ(*RegIncBeta(0.0, 3, 4), 0.0);
  EXPECT_EQ(*RegIncBeta(1.0, 3, 4), 1.0);
}

TEST(RegIncBetaTest, DomainErrors) {
  EXPECT_EQ(RegIncBeta(-0.1, 2, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(RegIncBeta(1.1, 2, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(RegIncBeta(0.5, 0, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(RegIncBeta(0.5, 2, -1).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(RegIncBeta(kNaN, 2, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RegIncBetaTest, NonConvergenceIsInternal) {
  EXPECT_EQ(RegIncBeta(0.5, 5000, 5000, {.max_iter = 2}).status().code(),
            absl::StatusCode::kInternal);
}

TEST(RegIncBetaTest, MonotoneInX) {
  for (double a : {0.5, 2.0, 31.5}) {
    for (double b : {0.5, 3.0, 31.5}) {
      double prev = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double value = *RegIncBeta(i / 200.0, a, b);
        EXPECT_GE(value, prev) << a << "," << b << "," << i;
        EXPECT_LE(value, 1.0);
        prev = value;
      }
    }
  }
}

TEST(RegIncBetaTest, ReflectionIdentity) {
  for (double a : {0.5, 2.0, 17.0}) {
    for (double b : {1.0, 4.5, 40.0}) {
      for (double x : {0.01, 0.2, 0.5, 0.77, 0.99}) {
        EXPECT_NEAR(*RegIncBeta(x, a, b) + *RegIncBeta(1 - x, b, a), 1.0,
                    1e-13);
      }
    }
  }
}

TEST(RegIncBetaTest, AgreesWithQuadratureOnGrid) {
  int cases = 0;
  for (double a : {0.5, 1.0, 3.0, 10.0, 30.0}) {
    for (double b : {0.5, 2.0, 7.0, 25.0}) {
      for (double x : {0.05, 0.3, 0.5, 0.7, 0.95}) {
        EXPECT_NEAR(*RegIncBeta(x, a, b), oracle::IncBeta(x, a, b), 1e-8)
            << "x=" << x << " a=" << a << " b=" << b;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 100);
}

TEST(InvRegIncBetaTest, Examples) {
  for (double a : {0.5, 3.0, 499999.5}) {
    EXPECT_NEAR(*InvRegIncBeta(0.5, a, a, {.max_iter = 8000}), 0.5, 1e-12);
  }
  EXPECT_NEAR(*InvRegIncBeta(0.3, 1, 1), 0.3, 1e-12);
  EXPECT_NEAR(*InvRegIncBeta(0.15625, 2, 2), 0.25, 1e-12);
  EXPECT_EQ(*InvRegIncBeta(0.0, 2, 3), 0.0);
  EXPECT_EQ(*InvRegIncBeta(1.0, 2, 3), 1.0);
}

TEST(InvRegIncBetaTest, DomainErrors) {
  EXPECT_EQ(InvRegIncBeta(-0.01, 2, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(InvRegIncBeta(1.5, 2, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(InvRegIncBeta(0.5, 2, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(InvRegIncBetaTest, RoundTripGrid) {
  const std::vector<double> shapes = {0.5, 1.0, 2.0, 17.0, 0.5, 1.0, 31.5, 511.5};
  for (double a : shapes) {
    for (double b : shapes) {
      for (int k = 1; k <= 99; ++k) {
        const double y = k / 100.0;
        const absl::StatusOr<double> x = InvRegIncBeta(y, a, b);
        ASSERT_TRUE(x.ok()) << x.status() << " y=" << y << " a=" << a
                            << " b=" << b;
        EXPECT_NEAR(*RegIncBeta(*x, a, b), y, 1e-9)
            << "y=" << y << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(NormalTest, Examples) {
  EXPECT_EQ(StdNormalCdf(0.0), 0.5);
  EXPECT_NEAR(StdNormalPdf(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi),
              1e-16);
  EXPECT_NEAR(StdNormalPdf(0.0), 0.3989422804014327, 1e-16);
  const double p = oracle::NormalCdf(1.0);
  EXPECT_NEAR(p, 0.841344746068543, 1e-15);
  EXPECT_NEAR(oracle::NormalQuantile(p), 1.0, 1e-12);
  EXPECT_NEAR(*InvStdNormalCdf(0.841344746068543), 1.0, 1e-9);
}

TEST(NormalTest, CdfAgreesWithSeriesOracle) {
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    EXPECT_NEAR(StdNormalCdf(x), oracle::NormalCdf(x), 1e-15) << x;
  }
}

TEST(NormalTest, CdfSymmetricAndMonotone) {
  double prev = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    EXPECT_NEAR(StdNormalCdf(-x), 1.0 - StdNormalCdf(x), 2.3e-16) << x;
    EXPECT_GE(StdNormalCdf(x), prev);
    prev = StdNormalCdf(x);
  }
}

TEST(NormalTest, QuantileDomainErrors) {
  for (double p : {0.0, 1.0, -0.5, 1.5, kNaN}) {
    EXPECT_EQ(InvStdNormalCdf(p).status().code(),
              absl::StatusCode::kInvalidArgument)
        << p;
  }
  EXPECT_EQ(InvStdNormalUpperTail(0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(NormalTest, QuantileResidual) {
  std::vector<double> probs = {1e-15, 1e-12, 1e-9, 1e-6, 1e-3};
  for (int i = 1; i < 100; ++i) probs.push_back(i / 100.0);
  for (double p : {1e-3, 1e-6, 1e-9, 1e-12, 1e-15}) probs.push_back(1.0 - p);
  for (double p : probs) {
    EXPECT_NEAR(StdNormalCdf(*InvStdNormalCdf(p)), p, 1e-12) << p;
  }
}

TEST(NormalTest, QuantileAgreesWithBisectionOracle) {
  // The series oracle loses relative accuracy in the far tails.
  for (double p : {1e-5, 0.01, 0.2, 0.5, 0.6, 0.95, 0.999999}) {
    EXPECT_NEAR(*InvStdNormalCdf(p), oracle::NormalQuantile(p), 1e-9) << p;
  }
}

// cdf -> quantile loses |dx| ~ 1e-16 / pdf(x) on the upper side because the
// probability itself is rounded near 1; past x ~ 5 the upper-tail pair is
// the well-conditioned one.
TEST(NormalTest, RoundTrip) {
  for (double x = -6.0; x <= 6.0; x += 0.01) {
    if (x <= 5.0) {
      EXPECT_NEAR(*InvStdNormalCdf(StdNormalCdf(x)), x, 1e-9) << x;
    }
    if (x > 0.0) {
      EXPECT_NEAR(*InvStdNormalUpperTail(StdNormalCdf(-x)), x, 1e-9) << x;
    }
  }
}

TEST(TruncatedMomentsTest, Examples) {
  const TruncGaussMoments at_zero = *TruncatedGaussianMoments(0.0, 1.0);
  const double oracle_mean =
      oracle::Integrate([](double u) { return u * oracle::NormalPdf(u); }, 0,
                        40) /
      0.5;
  EXPECT_NEAR(at_zero.m_above, std::sqrt(2.0 / std::numbers::pi), 1e-14);
  EXPECT_NEAR(at_zero.m_above, oracle_mean, 1e-12);
  EXPECT_NEAR(at_zero.s_above, 1.0, 1e-14);
  EXPECT_NEAR(at_zero.m_below, -std::sqrt(2.0 / std::numbers::pi), 1e-14);

  const TruncGaussMoments at_one = *TruncatedGaussianMoments(1.0, 1.0);
  const double tail = 1.0 - oracle::NormalCdf(1.0);
  const double quad =
      oracle::Integrate([](double u) { return u * oracle::NormalPdf(u); }, 1,
                        40) /
      tail;
  EXPECT_NEAR(quad, 1.5251352761609812, 1e-10);
  EXPECT_NEAR(at_one.m_above, quad, 1e-10);
}

TEST(TruncatedMomentsTest, AgreesWithQuadrature) {
  for (double sigma : {0.05, 0.5, 1.0, 3.0}) {
    for (double z : {-3.0, -0.7, 0.0, 0.4, 2.5, 5.0}) {
      const double gamma = z * sigma;
      const TruncGaussMoments t = *TruncatedGaussianMoments(gamma, sigma);
      // Each side is rescaled by its peak density so the quadrature
      // tolerance is relative to the side's mass.
      const double peak_above = oracle::NormalPdf(std::max(gamma, 0.0), sigma);
      const double peak_below = oracle::NormalPdf(std::min(gamma, 0.0), sigma);
      auto above = [&](double u) {
        return oracle::NormalPdf(u, sigma) / peak_above;
      };
      auto below = [&](double u) {
        return oracle::NormalPdf(u, sigma) / peak_below;
      };
      const double hi = std::max(gamma, 0.0) + 40 * sigma;
      const double lo = std::min(gamma, 0.0) - 40 * sigma;
      const double p_above = oracle::Integrate(above, gamma, hi) * peak_above;
      const double p_below = oracle::Integrate(below, lo, gamma) * peak_below;
      const double m1 =
          oracle::Integrate([&](double u) { return u * above(u); }, gamma, hi) *
          peak_above;
      const double m2 = oracle::Integrate(
                            [&](double u) { return u * u * above(u); }, gamma,
                            hi) *
                        peak_above;
      const double l1 =
          oracle::Integrate([&](double u) { return u * below(u); }, lo, gamma) *
          peak_below;
      const double l2 = oracle::Integrate(
                            [&](double u) { return u * u * below(u); }, lo,
                            gamma) *
                        peak_below;
      const double scale = sigma * sigma;
      EXPECT_NEAR(t.p_above, p_above, 1e-12);
      EXPECT_NEAR(t.p_below, p_below, 1e-12);
      EXPECT_NEAR(t.m_above, m1 / p_above, 1e-9 * sigma) << sigma << "," << z;
      EXPECT_NEAR(t.s_above, m2 / p_above, 1e-9 * scale) << sigma << "," << z;
      EXPECT_NEAR(t.m_below, l1 / p_below, 1e-9 * sigma) << sigma << "," << z;
      EXPECT_NEAR(t.s_below, l2 / p_below, 1e-9 * scale) << sigma << "," << z;
    }
  }
}

TEST(TruncatedMomentsTest, TotalMomentIdentities) {
  for (double sigma : {0.01, 0.125, 1.0, 4.0}) {
    for (double z = -8.0; z <= 8.0; z += 0.25) {
      const double gamma = z * sigma;
      const TruncGaussMoments t = *TruncatedGaussianMoments(gamma, sigma);
      EXPECT_NEAR(t.p_above, 1.0 - StdNormalCdf(z), 1e-15);
      EXPECT_NEAR(t.p_above * t.m_above + t.p_below * t.m_below, 0.0, 1e-10)
          << sigma << "," << z;
      EXPECT_NEAR(t.p_above * t.s_above + t.p_below * t.s_below,
                  sigma * sigma, 1e-10)
          << sigma << "," << z;
    }
  }
}

TEST(TruncatedMomentsTest, Errors) {
  EXPECT_EQ(TruncatedGaussianMoments(0.0, 0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(TruncatedGaussianMoments(kInf, 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(TruncatedGaussianMoments(40.0, 1.0).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(TruncatedGaussianMoments(-40.0, 1.0).status().code(),
            absl::StatusCode::kOutOfRange);
}

}  // namespace
}  // namespace ldpmean
