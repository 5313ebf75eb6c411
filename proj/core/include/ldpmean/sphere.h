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

// Geometry and sampling on the unit sphere S^{d-1}.

#ifndef LDPMEAN_SPHERE_H_
#define LDPMEAN_SPHERE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpmean/rng.h"

namespace ldpmean {

// Maximum deviation of ||coords||_2 from 1 accepted by UnitVector::Create.
inline constexpr double kUnitNormTolerance = 1e-9;

// A point on S^{d-1}, d >= 2.
class UnitVector {
 public:
  // Validates d >= 2, finite entries and | ||coords|| - 1 | <= `tolerance`.
  static absl::StatusOr<UnitVector> Create(
      std::vector<double> coords, double tolerance = kUnitNormTolerance);

  // Rescales a nonzero finite vector to unit length.
  static absl::StatusOr<UnitVector> Normalize(std::vector<double> coords);

  // The first standard basis vector in dimension d.
  static absl::StatusOr<UnitVector> E1(int d);

  int dim() const { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  explicit UnitVector(std::vector<double> coords)
      : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);

// Uniform draw from S^{d-1} by normalizing a standard Gaussian vector.
absl::StatusOr<UnitVector> SampleUniformSphere(int d, RngStream& rng);

// P(W_1 <= t) for W uniform on S^{d-1}. W_1 has the law of 2B - 1 with
// B ~ Beta((d-1)/2, (d-1)/2).
absl::StatusOr<double> MarginalCdf(double t, int d);

// Inverse of MarginalCdf in t, for q in (0, 1).
absl::StatusOr<double> InvMarginalCdf(double q, int d);

// Uniform sampler on the cap {u : u_1 >= gamma} or on its complement
// {u : u_1 < gamma}, in the e_1 frame. Both cap masses are computed once at
// construction.
//
// The first coordinate is drawn by inverting the conditioned marginal cdf,
// so the cost per draw does not depend on how small the cap is. The
// remaining d - 1 coordinates are uniform on S^{d-2} scaled by
// sqrt(1 - u_1^2).
class SphericalCap {
 public:
  static absl::StatusOr<SphericalCap> Create(int d, double gamma);

  int dim() const { return d_; }
  double gamma() const { return gamma_; }
  // P(W_1 >= gamma).
  double mass_above() const { return mass_above_; }
  // P(W_1 < gamma).
  double mass_below() const { return mass_below_; }

  absl::StatusOr<std::vector<double>> Sample(bool above, RngStream& rng) const;

 private:
  SphericalCap(int d, double gamma, double mass_above, double mass_below)
      : d_(d), gamma_(gamma), mass_above_(mass_above), mass_below_(mass_below) {}

  int d_;
  double gamma_;
  double mass_above_;
  double mass_below_;
};

// One-shot cap draw; see SphericalCap.
absl::StatusOr<UnitVector> SampleCap(int d, double gamma, bool above,
                                     RngStream& rng);

// Applies an orthogonal map T(v) with T(v) e_1 = v to `u`. T(e_1) is the
// identity and T(-e_1) = -I; otherwise T(v) is a Householder reflection
// (composed with -I when v_1 > 0 so that the reflection vector never
// suffers cancellation).
absl::StatusOr<std::vector<double>> RotateFromE1(const UnitVector& v,
                                                 std::span<const double> u);

}  // namespace ldpmean

#endif  // LDPMEAN_SPHERE_H_
