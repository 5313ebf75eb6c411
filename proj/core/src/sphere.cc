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

#include "ldpmean/sphere.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ldpmean/specfun.h"
#include "ldpmean/status_macros.h"

namespace ldpmean {
namespace {

// The continued fraction needs O(sqrt(a)) terms when a = b is large and x
// sits near 1/2, which is where the sphere marginal lives.
Tolerances MarginalTolerances(int d) {
  Tolerances tol;
  tol.max_iter = std::max(tol.max_iter, static_cast<int>(8.0 * std::sqrt(d)));
  return tol;
}

absl::Status ValidateDimension(int d) {
  if (d < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be at least 2, got ", d));
  }
  return absl::OkStatus();
}

// Uniform point on S^{k-1} written into `out` (k = out.size() >= 1). For
// k = 1 this is a random sign.
void FillUniformSphere(std::span<double> out, RngStream& rng) {
  if (out.size() == 1) {
    out[0] = rng.Bernoulli(0.5) ? 1.0 : -1.0;
    return;
  }
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& x : out) {
      x = rng.Normal();
      norm_sq += x * x;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : out) x *= inv;
}

}  // namespace

absl::StatusOr<UnitVector> UnitVector::Create(std::vector<double> coords,
                                              double tolerance) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(static_cast<int>(coords.size())));
  for (double x : coords) {
    if (!std::isfinite(x)) {
      return absl::InvalidArgumentError("unit vector has non-finite entries");
    }
  }
  const double norm = Norm(coords);
  if (std::abs(norm - 1.0) > tolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("vector norm ", norm, " is not within ", tolerance,
                     " of 1"));
  }
  return UnitVector(std::move(coords));
}

absl::StatusOr<UnitVector> UnitVector::Normalize(std::vector<double> coords) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(static_cast<int>(coords.size())));
  const double norm = Norm(coords);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    return absl::InvalidArgumentError("cannot normalize a zero or non-finite vector");
  }
  for (double& x : coords) x /= norm;
  return UnitVector(std::move(coords));
}

absl::StatusOr<UnitVector> UnitVector::E1(int d) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(d));
  std::vector<double> coords(d, 0.0);
  coords[0] = 1.0;
  return UnitVector(std::move(coords));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

absl::StatusOr<UnitVector> SampleUniformSphere(int d, RngStream& rng) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(d));
  std::vector<double> coords(d);
  FillUniformSphere(coords, rng);
  return UnitVector::Normalize(std::move(coords));
}

absl::StatusOr<double> MarginalCdf(double t, int d) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(d));
  if (!(t >= -1.0 && t <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sphere coordinate must lie in [-1, 1], got ", t));
  }
  if (t == 0.0) return 0.5;  // exact by symmetry
  const double shape = 0.5 * (d - 1);
  if (t > 0.0) {
    LDPMEAN_ASSIGN_OR_RETURN(const double upper,
                             RegIncBeta(0.5 * (1.0 - t), shape, shape,
                                        MarginalTolerances(d)));
    return 1.0 - upper;
  }
  return RegIncBeta(0.5 * (1.0 + t), shape, shape, MarginalTolerances(d));
}

absl::StatusOr<double> InvMarginalCdf(double q, int d) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(d));
  if (!(q > 0.0 && q < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("marginal quantile requires q in (0, 1), got ", q));
  }
  if (q == 0.5) return 0.0;
  const double shape = 0.5 * (d - 1);
  // Solve on the lower half, where x = (1 + t) / 2 carries full precision.
  const double lower = std::min(q, 1.0 - q);
  LDPMEAN_ASSIGN_OR_RETURN(
      const double x,
      InvRegIncBeta(lower, shape, shape, MarginalTolerances(d)));
  const double t = std::clamp(2.0 * x - 1.0, -1.0, 0.0);
  return q < 0.5 ? t : -t;
}

absl::StatusOr<SphericalCap> SphericalCap::Create(int d, double gamma) {
  LDPMEAN_RETURN_IF_ERROR(ValidateDimension(d));
  if (!(gamma > -1.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cap threshold must lie in (-1, 1), got ", gamma));
  }
  LDPMEAN_ASSIGN_OR_RETURN(const double above, MarginalCdf(-gamma, d));
  LDPMEAN_ASSIGN_OR_RETURN(const double below, MarginalCdf(gamma, d));
  return SphericalCap(d, gamma, above, below);
}

absl::StatusOr<std::vector<double>> SphericalCap::Sample(bool above,
                                                         RngStream& rng) const {
  const double mass = above ? mass_above_ : mass_below_;
  if (mass < 1e-300) {
    return absl::OutOfRangeError(absl::StrCat(
        "spherical cap mass ", mass, " is below 1e-300 (gamma=", gamma_,
        ", d=", d_, ")"));
  }
  const double u = rng.UniformOpen() * mass;
  double first;
  if (above) {
    // P(W_1 >= x) = P(W_1 <= -x), so invert the lower tail.
    LDPMEAN_ASSIGN_OR_RETURN(const double t, InvMarginalCdf(u, d_));
    first = std::clamp(-t, gamma_, 1.0);
  } else {
    LDPMEAN_ASSIGN_OR_RETURN(first, InvMarginalCdf(u, d_));
    if (first >= gamma_) first = std::nextafter(gamma_, -2.0);
    first = std::max(first, -1.0);
  }
  std::vector<double> out(d_);
  out[0] = first;
  const double radius = std::sqrt(std::max(0.0, (1.0 - first) * (1.0 + first)));
  std::span<double> rest(out.begin() + 1, out.end());
  FillUniformSphere(rest, rng);
  for (double& x : rest) x *= radius;
  return out;
}

absl::StatusOr<UnitVector> SampleCap(int d, double gamma, bool above,
                                     RngStream& rng) {
  LDPMEAN_ASSIGN_OR_RETURN(const SphericalCap cap,
                           SphericalCap::Create(d, gamma));
  LDPMEAN_ASSIGN_OR_RETURN(std::vector<double> coords, cap.Sample(above, rng));
  return UnitVector::Create(std::move(coords));
}

absl::StatusOr<std::vector<double>> RotateFromE1(const UnitVector& v,
                                                 std::span<const double> u) {
  const int d = v.dim();
  if (static_cast<int>(u.size()) != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: vector has ", u.size(), " entries, expected ", d));
  }
  std::vector<double> out(u.begin(), u.end());
  const auto c = v.coords();
  bool is_axis = true;
  for (int i = 1; i < d; ++i) is_axis = is_axis && c[i] == 0.0;
  if (is_axis && c[0] == 1.0) return out;
  if (is_axis && c[0] == -1.0) {
    for (double& x : out) x = -x;
    return out;
  }
  // w = e_1 - v (v_1 <= 0) or w = e_1 + v (v_1 > 0); the reflection
  // I - 2 w w^T / |w|^2 maps e_1 to v or -v respectively.
  const bool flip = c[0] > 0.0;
  std::vector<double> w(d);
  for (int i = 0; i < d; ++i) w[i] = flip ? c[i] : -c[i];
  w[0] += 1.0;
  const double w_sq = Dot(w, w);
  const double coef = 2.0 * Dot(w, u) / w_sq;
  for (int i = 0; i < d; ++i) {
    out[i] -= coef * w[i];
    if (flip) out[i] = -out[i];
  }
  return out;
}

}  // namespace ldpmean
