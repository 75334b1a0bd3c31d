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

#include "entmax/bisect.hpp"

#include <algorithm>
#include <cmath>

#include "entmax/error.hpp"

namespace entmax {
namespace {

// Largest probability that may be cleared for an uncertain residual.
constexpr double kDustMass = 1e-15;

// v^exponent for v > 0; exact for the integer exponents of alpha = 2 and
// alpha = 1.5, exp(log) otherwise so huge exponents underflow to zero.
inline double positive_power(double v, double exponent) {
  if (exponent == 1.0) return v;
  if (exponent == 2.0) return v * v;
  return std::exp(exponent * std::log(v));
}

inline double clipped_power(double v, double exponent) {
  return v > 0.0 ? positive_power(v, exponent) : 0.0;
}

double mass_at(std::span<const double> x, double tau, double exponent) {
  double z = 0.0;
  for (double v : x) z += clipped_power(v - tau, exponent);
  return z;
}

void require_sparse_alpha(Alpha alpha) {
  if (alpha.value() <= 1.0) {
    throw ConfigurationError("bisection requires alpha > 1");
  }
}

}  // namespace

std::vector<double> p_of_tau(std::span<const double> z_scaled, double tau,
                             Alpha alpha) {
  require_sparse_alpha(alpha);
  const double exponent = 1.0 / (alpha.value() - 1.0);
  std::vector<double> p(z_scaled.size());
  std::transform(z_scaled.begin(), z_scaled.end(), p.begin(), [&](double v) {
    return clipped_power(v - tau, exponent);
  });
  return p;
}

std::pair<double, double> bisect_bracket(const ScoreVector& z, Alpha alpha) {
  require_sparse_alpha(alpha);
  const double am1 = alpha.value() - 1.0;
  const double x_max = am1 * *std::max_element(z.begin(), z.end());
  const double d = static_cast<double>(z.size());
  return {x_max - 1.0, x_max - std::exp(-am1 * std::log(d))};
}

BisectResult entmax_bisect_detailed(const ScoreVector& z, Alpha alpha,
                                    const BisectConfig& cfg) {
  require_sparse_alpha(alpha);
  if (cfg.max_iters < 1) {
    throw ConfigurationError("bisection needs max_iters >= 1");
  }
  const double am1 = alpha.value() - 1.0;
  const double exponent = 1.0 / am1;
  const std::size_t d = z.size();

  // Work on shifted scores so max(x) = 0; tau is shifted back at the end.
  const double z_max = *std::max_element(z.begin(), z.end());
  std::vector<double> x(d);
  std::transform(z.begin(), z.end(), x.begin(),
                 [&](double v) { return am1 * (v - z_max); });

  double lo = -1.0;
  double hi = -std::exp(-am1 * std::log(static_cast<double>(d)));
  double tau = lo;
  double mass = 0.0;
  for (int t = 0; t < cfg.max_iters; ++t) {
    tau = 0.5 * (lo + hi);
    mass = mass_at(x, tau, exponent);
    if (mass < 1.0) {
      hi = tau;
    } else {
      lo = tau;
    }
  }

  // tau is within (hi - lo) of the exact threshold, so entries with a
  // residual inside that band are not certified to be in the support. They
  // are dropped when their mass is also negligible; for alpha > 2 an
  // uncertain residual can still carry visible mass and keeps the midpoint
  // estimate.
  const double band = hi - lo;
  std::vector<double> p(d);
  double kept = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = x[i] - tau;
    if (r > 0.0) {
      const double v = positive_power(r, exponent);
      p[i] = r > band || v >= kDustMass ? v : 0.0;
    }
    kept += p[i];
  }
  if (cfg.normalize) {
    for (double& v : p) v /= kept;
  }

  BisectResult out;
  out.solution.support_size = count_positive(p);
  out.solution.p = ProbabilityVector::trusted(std::move(p));
  out.solution.tau = tau + am1 * z_max;
  out.tau_lo = lo + am1 * z_max;
  out.tau_hi = hi + am1 * z_max;
  out.mass = mass;
  return out;
}

ThresholdedSolution entmax_bisect(const ScoreVector& z, Alpha alpha,
                                  const BisectConfig& cfg) {
  return entmax_bisect_detailed(z, alpha, cfg).solution;
}

}  // namespace entmax
