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

// The optimal-randomizer linear program on the circle (d = 2), discretized
// into K equal arcs. For input e_1 the program maximizes
//   alpha = sum_i f_i |B_i| xbar_i   (xbar_i = mean of u_1 over arc i)
// over densities f with e^{-eps/2} P <= f_i <= e^{eps/2} P for a free base
// level P > 0, f symmetric under reflection about the x-axis, and
// sum_i f_i |B_i| = 1.
//
// Eliminating P through the mass constraint turns this into maximizing the
// ratio sum g_i xbar_i / sum g_i over g in the box [e^{-eps/2}, e^{eps/2}],
// whose optimum puts every arc at a bound: high on the arcs with the largest
// xbar, i.e. a cap around e_1.

#ifndef LDPMEAN_CAPSTRUCT_LP_H_
#define LDPMEAN_CAPSTRUCT_LP_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace ldpmean {

class LpInstance {
 public:
  // Requires an even arc count >= 8 and eps > 0. Arc i covers angles
  // [-pi + i h, -pi + (i + 1) h) with h = 2 pi / K, so the midpoints are
  // symmetric about the x-axis and no arc is its own reflection.
  static absl::StatusOr<LpInstance> Create(int arc_count, double eps);

  int arc_count() const { return static_cast<int>(midpoints_.size()); }
  double eps() const { return eps_; }
  double arc_measure() const { return arc_measure_; }
  std::span<const double> midpoints() const { return midpoints_; }
  // Arc mean of the first coordinate: cos(theta_i) sin(h/2) / (h/2).
  std::span<const double> mean_x() const { return mean_x_; }
  // Index of the mirror image of arc i under (x, y) -> (x, -y).
  int Reflect(int i) const { return arc_count() - 1 - i; }
  double low_factor() const;   // e^{-eps/2}
  double high_factor() const;  // e^{eps/2}

 private:
  LpInstance(double eps, double arc_measure, std::vector<double> midpoints,
             std::vector<double> mean_x)
      : eps_(eps),
        arc_measure_(arc_measure),
        midpoints_(std::move(midpoints)),
        mean_x_(std::move(mean_x)) {}

  double eps_;
  double arc_measure_;
  std::vector<double> midpoints_;
  std::vector<double> mean_x_;
};

struct LpSolution {
  std::vector<double> levels;  // density per arc
  double base_p = 0.0;
  int threshold_count = 0;  // arcs at the high level
  double alpha = 0.0;       // E[<U, e_1>]
  double err_implied = 0.0;  // 1 / alpha^2 - 1
};

// alpha of the two-level density that is high on `high` and low elsewhere:
// sum g_i xbar_i / sum g_i. The base level cancels.
double AlphaOfHighSet(const LpInstance& instance, std::span<const char> high);

// Orders reflection pairs by descending xbar and, for every count k of high
// pairs, fixes P from the mass constraint and evaluates alpha with prefix
// sums; returns the best k. The box optimum of a ratio objective is always a
// vertex, so no fractional transitional pair is ever produced.
LpSolution SolveGreedy(const LpInstance& instance);

// Certifies that `solution` is feasible and optimal with cap structure:
// total mass 1 (to 1e-12), levels inside [e^{-eps/2}, e^{eps/2}] P, reflection
// symmetry, at most one transitional pair, high arcs forming one contiguous
// band symmetric about angle 0, and no profitable exchange (no arc below the
// upper bound has larger xbar than an arc above the lower bound, and every
// arc with xbar > alpha (< alpha) sits at the upper (lower) bound).
bool VerifyCapStructure(const LpInstance& instance, const LpSolution& solution);

}  // namespace ldpmean

#endif  // LDPMEAN_CAPSTRUCT_LP_H_
