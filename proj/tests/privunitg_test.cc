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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ldpmean/privunit.h"
#include "ldpmean/rng.h"
#include "ldpmean/specfun.h"
#include "ldpmean/sphere.h"
#include "ldpmean/tuner.h"
#include "oracles.h"

namespace ldpmean {
namespace {

GaussParams TunedGauss(double eps, int d) {
  return std::get<GaussParams>(Tune(eps, d, Algorithm::kPrivUnitG)->params);
}

// E[alpha^k] for the two-sided truncated Gaussian mixture, by quadrature on
// each side of gamma.
double AlphaMomentQuadrature(int k, int d, double p, double q) {
  const double sigma = 1.0 / std::sqrt(static_cast<double>(d));
  const double gamma = sigma * oracle::NormalQuantile(q);
  const double peak_above = oracle::NormalPdf(std::max(gamma, 0.0), sigma);
  const double peak_below = oracle::NormalPdf(std::min(gamma, 0.0), sigma);
  auto integrand = [&](double peak, int power) {
    // Powers of u / sigma keep the integrand O(1) at every d.
    return [=](double u) {
      return std::pow(u / sigma, power) * oracle::NormalPdf(u, sigma) / peak;
    };
  };
  const double hi = std::max(gamma, 0.0) + 40 * sigma;
  const double lo = std::min(gamma, 0.0) - 40 * sigma;
  const double mass_above = oracle::Integrate(integrand(peak_above, 0), gamma, hi);
  const double mass_below = oracle::Integrate(integrand(peak_below, 0), lo, gamma);
  const double above =
      oracle::Integrate(integrand(peak_above, k), gamma, hi) / mass_above;
  const double below =
      oracle::Integrate(integrand(peak_below, k), lo, gamma) / mass_below;
  return (p * above + (1 - p) * below) * std::pow(sigma, k);
}

TEST(GaussParamsTest, Validation) {
  EXPECT_EQ(GaussParams::Create(1, 0.9, 0.6).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(GaussParams::Create(4, 0.4, 0.6).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(GaussParams::Create(4, 0.9, 0.4).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(GaussParams::Create(4, 0.9, 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(GaussParams::Create(4, 0.5, 0.5).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(GaussParamsTest, DerivedFields) {
  const GaussParams params = *GaussParams::Create(25, 0.8, 0.9);
  EXPECT_DOUBLE_EQ(params.sigma(), 0.2);
  EXPECT_NEAR(params.gamma(), 0.2 * oracle::NormalQuantile(0.9), 1e-12);
}

TEST(GaussParamsTest, GammaBoundAtTunedParams) {
  for (double eps : {1.0, 4.0, 8.0, 16.0, 35.0}) {
    for (int d : {4, 64, 4096, 50000}) {
      const GaussParams params = TunedGauss(eps, d);
      EXPECT_LE(params.gamma() * params.gamma(),
                2.0 * std::log(std::exp(eps) + 1.0) / d)
          << eps << "," << d;
      EXPECT_LE(params.Epsilon(), eps * (1 + 1e-12));
    }
  }
}

TEST(NormalizerMGTest, Examples) {
  EXPECT_NEAR(*NormalizerMG(4, 1.0, 0.5), 0.5 * std::sqrt(2.0 / std::numbers::pi),
              1e-15);
  EXPECT_NEAR(*NormalizerMG(4, 1.0, 0.5), 0.3989422804014327, 1e-15);
  for (int d : {2, 10, 1000}) {
    EXPECT_EQ(NormalizerMG(d, 0.5, 0.5).status().code(),
              absl::StatusCode::kFailedPrecondition);
  }
}

TEST(NormalizerMGTest, MatchesTruncatedMoments) {
  const int d = 64;
  const double p = 0.9;
  const double q = 0.8;
  const GaussParams params = *GaussParams::Create(d, p, q);
  const TruncGaussMoments t =
      *TruncatedGaussianMoments(params.gamma(), params.sigma());
  EXPECT_NEAR(params.m(), p * t.m_above + (1 - p) * t.m_below, 1e-12);
  EXPECT_NEAR(params.m(), AlphaMomentQuadrature(1, d, p, q), 1e-9);
}

TEST(AlphaSecondMomentTest, Examples) {
  for (int d : {2, 16, 999}) {
    EXPECT_NEAR(*AlphaSecondMoment(d, 1.0, 0.5), 1.0 / d, 1e-15);
  }
  const GaussParams params = *GaussParams::Create(16, 0.9, 0.8);
  const double closed = params.sigma() * params.sigma() +
                        params.gamma() * params.m();
  EXPECT_NEAR(*AlphaSecondMoment(16, 0.9, 0.8), closed, 1e-12);
  EXPECT_NEAR(*AlphaSecondMoment(16, 0.9, 0.8),
              AlphaMomentQuadrature(2, 16, 0.9, 0.8), 1e-8);
  EXPECT_NEAR(AnalyticErrG(params).alpha_sq, closed, 1e-15);
}

TEST(AlphaSecondMomentTest, ClosedFormOnGrid) {
  int points = 0;
  for (int d : {2, 9, 100, 4000, 60000}) {
    for (double p : {0.55, 0.8, 0.99}) {
      for (double q : {0.5, 0.75, 0.999, 1 - 1e-9}) {
        if (points == 50) break;
        const GaussParams params = *GaussParams::Create(d, p, q);
        const double closed = params.sigma() * params.sigma() +
                              params.gamma() * params.m();
        const double second = *AlphaSecondMoment(d, p, q);
        EXPECT_NEAR(second, closed, 1e-12) << d << "," << p << "," << q;
        EXPECT_GE(second, params.m() * params.m());
        if (q < 0.9999) {
          EXPECT_NEAR(second, AlphaMomentQuadrature(2, d, p, q),
                      1e-8 * second)
              << d << "," << p << "," << q;
        }
        ++points;
      }
    }
  }
  EXPECT_GE(points, 50);
}

TEST(AnalyticErrGTest, Examples) {
  const GaussParams params = *GaussParams::Create(4, 1.0, 0.5);
  const ErrorBreakdown e = AnalyticErrG(params);
  EXPECT_NEAR(e.err, 5.2832, 1e-3);
  EXPECT_NEAR(e.err, 1.0 / (0.5 * 0.5 * 2.0 / std::numbers::pi) - 1.0, 1e-12);
}

TEST(AnalyticErrGTest, BreakdownIdentity) {
  for (double eps : {0.5, 4.0, 20.0}) {
    for (int d : {2, 50, 5000}) {
      const ErrorBreakdown e = AnalyticErrG(TunedGauss(eps, d));
      EXPECT_NEAR(e.err, (e.alpha_sq + (d - 1.0) / d) / (e.m * e.m) - 1.0,
                  1e-12 * e.err);
      EXPECT_GT(e.err, 0.0);
    }
  }
}

TEST(AnalyticErrGTest, LimitRatio) {
  EXPECT_NEAR(AnalyticErrG(TunedGauss(8.0, 10000)).LimitRatio(), 1.0, 0.05);
  for (int d : {10000, 100000}) {
    for (double eps : {1.0, 4.0, 8.0, 16.0}) {
      EXPECT_NEAR(AnalyticErrG(TunedGauss(eps, d)).LimitRatio(), 1.0, 0.1)
          << d << "," << eps;
    }
  }
}

TEST(AnalyticErrGTest, RatioToPrivUnitDecays) {
  for (double eps : {4.0, 8.0, 16.0}) {
    double prev = std::numeric_limits<double>::infinity();
    double first = 0.0;
    for (int d = 64; d <= 4096; d *= 2) {
      const TunedResult tuned = *Tune(eps, d, Algorithm::kPrivUnitG);
      const ErrorBreakdown pu = *ErrorAtProbabilities(
          d, Algorithm::kPrivUnit, tuned.split.p(), tuned.split.q());
      const double ratio = tuned.err_star / pu.err;
      EXPECT_GE(ratio, 1.0 - 1e-9) << eps << "," << d;
      EXPECT_LT(ratio, prev) << eps << "," << d;
      if (d == 64) first = ratio;
      prev = ratio;
    }
    EXPECT_LE(prev, first);
  }
}

TEST(PrivUnitGTest, OrthogonalComplement) {
  const GaussParams params = TunedGauss(4.0, 20);
  const PrivUnitG randomizer(params);
  RngStream rng(20, 0);
  for (int i = 0; i < 1000; ++i) {
    const UnitVector v = *SampleUniformSphere(20, rng);
    const PrivUnitG::Draw draw = *randomizer.Sample(v, rng);
    std::vector<double> residual = draw.output;
    for (int j = 0; j < 20; ++j) {
      residual[j] = residual[j] * params.m() - draw.alpha * v[j];
    }
    EXPECT_NEAR(Dot(residual, v.coords()), 0.0, 1e-10);
  }
}

TEST(PrivUnitGTest, AlphaRespectsSide) {
  const GaussParams params = *GaussParams::Create(9, 1.0, 0.9);
  const PrivUnitG randomizer(params);
  RngStream rng(21, 0);
  const UnitVector v = *UnitVector::E1(9);
  for (int i = 0; i < 5000; ++i) {
    EXPECT_GE(randomizer.Sample(v, rng)->alpha, params.gamma());
  }
}

TEST(PrivUnitGTest, UnbiasedAlongInput) {
  const GaussParams params = TunedGauss(8.0, 32);
  const PrivUnitG randomizer(params);
  RngStream rng(22, 0);
  const UnitVector v = *SampleUniformSphere(32, rng);
  constexpr int kN = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double x = Dot(*randomizer.Randomize(v, rng), v.coords());
    s += x;
    s2 += x * x;
  }
  const double mean = s / kN;
  const double se = std::sqrt((s2 / kN - mean * mean) / kN);
  EXPECT_NEAR(mean, 1.0, 3.0 * se);
}

TEST(PrivUnitGTest, EmpiricalErrorMatchesAnalytic) {
  const GaussParams params = TunedGauss(8.0, 32);
  const PrivUnitG randomizer(params);
  RngStream rng(23, 0);
  const UnitVector v = *SampleUniformSphere(32, rng);
  constexpr int kN = 1000000;
  double s = 0.0;
  for (int i = 0; i < kN; ++i) {
    const std::vector<double> z = *randomizer.Randomize(v, rng);
    for (int j = 0; j < 32; ++j) s += (z[j] - v[j]) * (z[j] - v[j]);
  }
  EXPECT_NEAR(s / kN / AnalyticErrG(params).err, 1.0, 0.02);
}

TEST(PrivUnitGTest, DimensionMismatch) {
  const PrivUnitG randomizer(TunedGauss(2.0, 4));
  RngStream rng(0, 0);
  EXPECT_EQ(randomizer.Randomize(*UnitVector::E1(3), rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(randomizer.LogDensity(std::vector<double>(3, 0.0),
                                  *UnitVector::E1(4))
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(LogDensityGTest, WorstCaseRatioIsTwoLevel) {
  for (double eps : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const int d = 12;
    const GaussParams params = TunedGauss(eps, d);
    const PrivUnitG randomizer(params);
    RngStream rng(24, 0);
    std::vector<UnitVector> inputs;
    for (int i = 0; i < 30; ++i) inputs.push_back(*SampleUniformSphere(d, rng));
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
      const std::vector<double> u =
          *randomizer.Randomize(inputs[i % inputs.size()], rng);
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (const UnitVector& v : inputs) {
        const double ld = *randomizer.LogDensity(u, v);
        hi = std::max(hi, ld);
        lo = std::min(lo, ld);
      }
      worst = std::max(worst, hi - lo);
    }
    const double expected =
        std::exp(params.p_prob().LogOdds() + params.q_prob().LogOdds());
    EXPECT_NEAR(std::exp(worst) / expected, 1.0, 1e-12) << eps;
    EXPECT_LE(expected, std::exp(eps) * (1 + 1e-12));
  }
}

TEST(LogDensityGTest, BoundaryBelongsToCap) {
  const GaussParams params = *GaussParams::Create(2, 0.8, 0.7);
  const PrivUnitG randomizer(params);
  const double m = params.m();
  double u0 = params.gamma() / m;
  while (m * u0 < params.gamma()) u0 = std::nextafter(u0, 1e9);
  while (m * u0 > params.gamma()) u0 = std::nextafter(u0, -1e9);
  ASSERT_EQ(m * u0, params.gamma());
  const std::vector<double> u = {u0, 0.3};
  const UnitVector v = *UnitVector::E1(2);
  const double w_sq = m * m * (u0 * u0 + 0.09);
  const double sigma_sq = params.sigma() * params.sigma();
  const double expected = -std::log(2 * std::numbers::pi * sigma_sq) -
                          0.5 * w_sq / sigma_sq + std::log(0.8) -
                          std::log(0.3) + 2 * std::log(m);
  EXPECT_NEAR(*randomizer.LogDensity(u, v), expected, 1e-12);
}

TEST(LogDensityGTest, IntegratesToOneInTwoDimensions) {
  const GaussParams params = TunedGauss(4.0, 2);
  const PrivUnitG randomizer(params);
  const UnitVector v = *UnitVector::E1(2);
  const double m = params.m();
  const double reach = 12.0 * params.sigma() / m;
  const double split = params.gamma() / m;
  constexpr int kN = 1500;
  double total = 0.0;
  const double h2 = 2 * reach / kN;
  for (int side = 0; side < 2; ++side) {
    const double lo = side == 0 ? -reach : split;
    const double hi = side == 0 ? split : reach;
    const double h1 = (hi - lo) / kN;
    for (int i = 0; i < kN; ++i) {
      const double u1 = lo + (i + 0.5) * h1;
      for (int j = 0; j < kN; ++j) {
        const double u2 = -reach + (j + 0.5) * h2;
        const std::vector<double> u = {u1, u2};
        total += std::exp(*randomizer.LogDensity(u, v)) * h1 * h2;
      }
    }
  }
  EXPECT_NEAR(total, 1.0, 1e-4);
}

}  // namespace
}  // namespace ldpmean
