/* Copyright 2026 The entmax Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "entmax/exact15.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <functional>
#include <optional>
#include <span>

#include "entmax/error.hpp"

namespace entmax {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Welford-style running mean and sum of squared deviations.
struct RunningMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double sq_dev = 0.0;

  void push(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    sq_dev += delta * (v - mean);
  }

  double tau() const {
    if (sq_dev > 1.0) return TauCandidate::kInfiniteTau;
    return mean - std::sqrt((1.0 - sq_dev) / static_cast<double>(n));
  }
};

struct ScanHit {
  std::size_t rho = 0;
  double tau = 0.0;
};

struct ScanResult {
  std::optional<ScanHit> hit;
  // tau(rho) became infinite inside the prefix, so no larger rho can work.
  bool exhausted = false;
};

// First rho in [1, top.size()] with x_[rho+1] <= tau(rho) <= x_[rho].
// `top` holds the largest entries in descending order; `next_below` is the
// entry that follows them (-inf when `top` is the whole vector).
ScanResult scan(std::span<const double> top, double next_below) {
  RunningMoments m;
  for (std::size_t r = 0; r < top.size(); ++r) {
    m.push(top[r]);
    const double tau = m.tau();
    if (tau == TauCandidate::kInfiniteTau) return {std::nullopt, true};
    const double lower = r + 1 < top.size() ? top[r + 1] : next_below;
    if (lower <= tau && tau <= top[r]) return {ScanHit{r + 1, tau}, false};
  }
  return {};
}

// Rounding can open a gap between adjacent windows when the exact
// threshold sits on a score. Pick the rho whose window is violated least.
ScanHit closest_window(std::span<const double> top, double next_below) {
  RunningMoments m;
  ScanHit best;
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < top.size(); ++r) {
    m.push(top[r]);
    const double tau = m.tau();
    if (tau == TauCandidate::kInfiniteTau) break;
    const double lower = r + 1 < top.size() ? top[r + 1] : next_below;
    const double violation =
        std::max(0.0, lower - tau) + std::max(0.0, tau - top[r]);
    if (violation < best_violation) {
      best_violation = violation;
      best = {r + 1, tau};
    }
  }
  // Scores are max-shifted and halved, so windows live on an O(1) scale.
  if (!(best_violation <= 1e-9)) {
    throw InternalError("exact 1.5-entmax found no valid support size");
  }
  return best;
}

std::vector<double> halved_shifted(const ScoreVector& z, double z_max) {
  std::vector<double> x(z.size());
  std::transform(z.begin(), z.end(), x.begin(),
                 [z_max](double v) { return 0.5 * (v - z_max); });
  return x;
}

ThresholdedSolution assemble(std::span<const double> x, double tau,
                             double z_max) {
  std::vector<double> p(x.size());
  std::transform(x.begin(), x.end(), p.begin(), [tau](double v) {
    const double r = v - tau;
    return r > 0.0 ? r * r : 0.0;
  });
  // tau carries one rounding from the square root; renormalise so that the
  // output sums to 1 to the last ulp.
  const double mass = std::accumulate(p.begin(), p.end(), 0.0);
  if (mass != 1.0) {
    for (double& v : p) v /= mass;
  }
  ThresholdedSolution out;
  out.support_size = count_positive(p);
  out.p = ProbabilityVector::trusted(std::move(p));
  out.tau = tau + 0.5 * z_max;
  return out;
}

}  // namespace

std::vector<TauCandidate> tau_candidates(const ScoreVector& z) {
  std::vector<double> x(z.size());
  std::transform(z.begin(), z.end(), x.begin(),
                 [](double v) { return 0.5 * v; });
  std::sort(x.begin(), x.end(), std::greater<>());

  std::vector<TauCandidate> out;
  out.reserve(x.size());
  RunningMoments m;
  for (double v : x) {
    m.push(v);
    out.push_back({m.n, m.mean, m.sq_dev, m.tau()});
  }
  return out;
}

ThresholdedSolution entmax15_exact(const ScoreVector& z) {
  const double z_max = *std::max_element(z.begin(), z.end());
  const std::vector<double> x = halved_shifted(z, z_max);
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const ScanResult r = scan(sorted, kNegInf);
  const double tau = r.hit ? r.hit->tau : closest_window(sorted, kNegInf).tau;
  return assemble(x, tau, z_max);
}

ThresholdedSolution entmax15_partial(const ScoreVector& z,
                                     std::size_t initial_k,
                                     PartialStats* stats) {
  if (initial_k < 1) {
    throw ConfigurationError("entmax15_partial needs initial_k >= 1");
  }
  const std::size_t d = z.size();
  const double z_max = *std::max_element(z.begin(), z.end());
  const std::vector<double> x = halved_shifted(z, z_max);

  std::vector<double> work;
  std::size_t k = std::min(initial_k, d);
  int rounds = 0;
  for (;;) {
    ++rounds;
    work = x;
    std::nth_element(work.begin(), work.begin() + (k - 1), work.end(),
                     std::greater<>());
    std::sort(work.begin(), work.begin() + k, std::greater<>());
    const double next_below =
        k < d ? *std::max_element(work.begin() + k, work.end()) : kNegInf;
    const std::span<const double> top(work.data(), k);

    const ScanResult r = scan(top, next_below);
    double tau = 0.0;
    if (r.hit) {
      tau = r.hit->tau;
    } else if (r.exhausted || k == d) {
      tau = closest_window(top, next_below).tau;
    } else {
      k = std::min(2 * k, d);
      continue;
    }
    if (stats) *stats = {rounds, k};
    return assemble(x, tau, z_max);
  }
}

}  // namespace entmax
