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

#include "ldpmean/capstruct_lp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ldpmean {
namespace {

constexpr double kMassTolerance = 1e-12;

enum class Level { kLow, kTransitional, kHigh };

}  // namespace

absl::StatusOr<LpInstance> LpInstance::Create(int arc_count, double eps) {
  if (arc_count < 8 || arc_count % 2 != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "arc count must be an even integer >= 8, got ", arc_count));
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must be finite and positive, got ", eps));
  }
  const double h = 2.0 * std::numbers::pi / arc_count;
  const double shrink = std::sin(0.5 * h) / (0.5 * h);
  std::vector<double> midpoints(arc_count);
  std::vector<double> mean_x(arc_count);
  for (int i = 0; i < arc_count; ++i) {
    // Built from the centre outwards so mirrored arcs get bit-identical
    // values.
    const int offset = i < arc_count / 2 ? arc_count / 2 - 1 - i
                                         : i - arc_count / 2;
    const double angle = (offset + 0.5) * h;
    midpoints[i] = i < arc_count / 2 ? -angle : angle;
    mean_x[i] = std::cos(angle) * shrink;
  }
  return LpInstance(eps, h, std::move(midpoints), std::move(mean_x));
}

double LpInstance::low_factor() const { return std::exp(-0.5 * eps_); }
double LpInstance::high_factor() const { return std::exp(0.5 * eps_); }

double AlphaOfHighSet(const LpInstance& instance, std::span<const char> high) {
  const double lo = instance.low_factor();
  const double hi = instance.high_factor();
  const auto x = instance.mean_x();
  double weighted = 0.0;
  double total = 0.0;
  for (int i = 0; i < instance.arc_count(); ++i) {
    const double g = high[i] ? hi : lo;
    weighted += g * x[i];
    total += g;
  }
  return weighted / total;
}

LpSolution SolveGreedy(const LpInstance& instance) {
  const int arcs = instance.arc_count();
  const int pairs = arcs / 2;
  const auto x = instance.mean_x();
  const double lo = instance.low_factor();
  const double hi = instance.high_factor();

  // Representative arc of each reflection pair (the one with angle >= 0),
  // ordered by descending xbar.
  std::vector<int> order(pairs);
  std::iota(order.begin(), order.end(), pairs);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });

  const double total_x = std::accumulate(x.begin(), x.end(), 0.0);
  double prefix = 0.0;
  int best_k = 0;
  double best_alpha = total_x / arcs;
  for (int k = 1; k <= pairs; ++k) {
    prefix += 2.0 * x[order[k - 1]];
    const double alpha = (hi * prefix + lo * (total_x - prefix)) /
                         (hi * 2.0 * k + lo * (arcs - 2.0 * k));
    if (alpha > best_alpha) {
      best_alpha = alpha;
      best_k = k;
    }
  }

  auto mask_for = [&](int k) {
    std::vector<char> high(arcs, 0);
    for (int j = 0; j < k; ++j) {
      high[order[j]] = 1;
      high[instance.Reflect(order[j])] = 1;
    }
    return high;
  };
  // Settle near-ties between neighbouring counts with the reference
  // evaluation, so the reported alpha is the one AlphaOfHighSet gives.
  std::vector<char> best_mask = mask_for(best_k);
  double alpha = AlphaOfHighSet(instance, best_mask);
  for (int k : {best_k - 1, best_k + 1}) {
    if (k < 0 || k > pairs) continue;
    std::vector<char> mask = mask_for(k);
    const double candidate = AlphaOfHighSet(instance, mask);
    if (candidate > alpha) {
      alpha = candidate;
      best_k = k;
      best_mask = std::move(mask);
    }
  }

  LpSolution out;
  out.threshold_count = 2 * best_k;
  out.base_p = 1.0 / (instance.arc_measure() *
                      (hi * out.threshold_count +
                       lo * (arcs - out.threshold_count)));
  out.levels.resize(arcs);
  for (int i = 0; i < arcs; ++i) {
    out.levels[i] = (best_mask[i] ? hi : lo) * out.base_p;
  }
  out.alpha = alpha;
  out.err_implied = 1.0 / (alpha * alpha) - 1.0;
  return out;
}

bool VerifyCapStructure(const LpInstance& instance, const LpSolution& solution) {
  const int arcs = instance.arc_count();
  if (static_cast<int>(solution.levels.size()) != arcs ||
      !(solution.base_p > 0.0)) {
    return false;
  }
  const auto x = instance.mean_x();
  const double upper = instance.high_factor() * solution.base_p;
  const double lower = instance.low_factor() * solution.base_p;
  const double tol = 1e-12 * std::max(1.0, upper);

  double mass = 0.0;
  double moment = 0.0;
  for (int i = 0; i < arcs; ++i) {
    mass += solution.levels[i] * instance.arc_measure();
    moment += solution.levels[i] * instance.arc_measure() * x[i];
  }
  if (std::abs(mass - 1.0) > kMassTolerance) return false;
  if (std::abs(moment - solution.alpha) > 1e-12) return false;

  // For eps -> 0 both bounds coincide and an arc can sit at both.
  std::vector<char> at_upper(arcs);
  std::vector<char> at_lower(arcs);
  std::vector<Level> level(arcs);
  for (int i = 0; i < arcs; ++i) {
    const double f = solution.levels[i];
    if (f < lower - tol || f > upper + tol) return false;
    if (std::abs(f - solution.levels[instance.Reflect(i)]) > tol) return false;
    at_upper[i] = std::abs(f - upper) <= tol;
    at_lower[i] = std::abs(f - lower) <= tol;
    level[i] = at_upper[i]   ? Level::kHigh
               : at_lower[i] ? Level::kLow
                             : Level::kTransitional;
  }

  // Walking outwards from angle 0 the classes must read high*, at most one
  // transitional pair, then low*.
  int transitional_pairs = 0;
  Level previous = Level::kHigh;
  for (int i = arcs / 2; i < arcs; ++i) {
    const Level current = level[i];
    if (current == Level::kTransitional) ++transitional_pairs;
    if (static_cast<int>(current) > static_cast<int>(previous)) return false;
    previous = current;
  }
  if (transitional_pairs > 1) return false;

  // Exchange test: moving mass from an arc above its lower bound to one below
  // its upper bound with larger xbar would increase alpha.
  double min_x_decreasable = HUGE_VAL;
  double max_x_increasable = -HUGE_VAL;
  for (int i = 0; i < arcs; ++i) {
    if (!at_lower[i]) {
      min_x_decreasable = std::min(min_x_decreasable, x[i]);
    }
    if (!at_upper[i]) {
      max_x_increasable = std::max(max_x_increasable, x[i]);
    }
  }
  if (max_x_increasable > min_x_decreasable + 1e-15) return false;

  // With the base level free, the optimum of the ratio is characterized by
  // g_i at its upper bound iff xbar_i > alpha.
  for (int i = 0; i < arcs; ++i) {
    if (x[i] > solution.alpha + 1e-12 && !at_upper[i]) return false;
    if (x[i] < solution.alpha - 1e-12 && !at_lower[i]) return false;
  }
  return true;
}

}  // namespace ldpmean
