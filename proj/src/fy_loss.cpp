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

#include "entmax/fy_loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entmax/error.hpp"
#include "entmax/simplex.hpp"
#include "fy_loss_internal.hpp"

namespace entmax {
namespace {

constexpr double kNegativeLossSlack = 1e-12;

// Per-coordinate entropy term h(t), with h(0) = 0.
double entropy_term(double t, double alpha) {
  if (!(t > 0.0)) return 0.0;
  if (alpha == 1.0) return -t * std::log(t);
  // t - t^alpha = -t * expm1((alpha - 1) log t)
  return -t * std::expm1((alpha - 1.0) * std::log(t)) /
         (alpha * (alpha - 1.0));
}

// h(1 - eps) without forming 1 - eps first.
double entropy_term_near_one(double eps, double alpha) {
  if (eps >= 1.0) return 0.0;
  const double log_t = std::log1p(-eps);
  if (alpha == 1.0) return -(1.0 - eps) * log_t;
  return -(1.0 - eps) * std::expm1((alpha - 1.0) * log_t) /
         (alpha * (alpha - 1.0));
}

double clamp_residue(double loss) {
  return (loss < 0.0 && loss >= -kNegativeLossSlack) ? 0.0 : loss;
}

void check_label(const ScoreVector& z, std::size_t y) {
  if (y >= z.size()) {
    throw InvalidInputError("label " + std::to_string(y) +
                            " out of range for " + std::to_string(z.size()) +
                            " classes");
  }
}

}  // namespace

LabeledScores::LabeledScores(ScoreVector scores, std::size_t label)
    : z(std::move(scores)), y(label) {
  check_label(z, y);
}

double tsallis_entropy(const ProbabilityVector& p, Alpha alpha) {
  double h = 0.0;
  for (double v : p) h += entropy_term(v, alpha.value());
  return h;
}

double entmax_loss(const LabeledScores& lz, Alpha alpha) {
  check_label(lz.z, lz.y);
  const ThresholdedSolution sol = entmax(lz.z, alpha);
  const double a = alpha.value();
  const std::size_t d = lz.z.size();
  const double z_y = lz.z[lz.y];
  const double p_y = sol.p[lz.y];

  // With sum(p) = 1, (p - e_y)^T z = sum_{j != y} p_j (z_j - z_y). Working
  // with the off-target mass keeps the result accurate near zero loss.
  double off_mass = 0.0;
  double inner = 0.0;
  double entropy = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (j == lz.y) continue;
    const double p = sol.p[j];
    off_mass += p;
    inner += p * (lz.z[j] - z_y);
    entropy += entropy_term(p, a);
  }
  entropy += p_y > 0.5 ? entropy_term_near_one(off_mass, a)
                       : entropy_term(p_y, a);
  return clamp_residue(inner + entropy);
}

double entmax_loss(const ScoreVector& z, const ProbabilityVector& target,
                   Alpha alpha) {
  if (target.size() != z.size()) {
    throw InvalidInputError("target length does not match scores");
  }
  const ThresholdedSolution sol = entmax(z, alpha);
  const double z_max = *std::max_element(z.begin(), z.end());
  double inner = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    inner += (sol.p[j] - target[j]) * (z[j] - z_max);
  }
  return clamp_residue(inner + tsallis_entropy(sol.p, alpha) -
                       tsallis_entropy(target, alpha));
}

std::vector<double> entmax_loss_grad(const LabeledScores& lz, Alpha alpha) {
  check_label(lz.z, lz.y);
  std::vector<double> g = entmax(lz.z, alpha).p.vector();
  g[lz.y] -= 1.0;
  return g;
}

std::vector<double> entmax_loss_grad(const ScoreVector& z,
                                     const ProbabilityVector& target,
                                     Alpha alpha) {
  if (target.size() != z.size()) {
    throw InvalidInputError("target length does not match scores");
  }
  std::vector<double> g = entmax(z, alpha).p.vector();
  for (std::size_t j = 0; j < g.size(); ++j) g[j] -= target[j];
  return g;
}

EntmaxJacobian loss_hessian(const LabeledScores& lz, Alpha alpha) {
  check_label(lz.z, lz.y);
  return jacobian_from_p(entmax(lz.z, alpha).p, alpha);
}

bool margin_satisfied(const LabeledScores& lz, Alpha alpha) {
  if (alpha.value() <= 1.0) {
    throw ConfigurationError("softmax loss has no separation margin");
  }
  check_label(lz.z, lz.y);
  double best_other = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < lz.z.size(); ++j) {
    if (j != lz.y) best_other = std::max(best_other, lz.z[j]);
  }
  return lz.z[lz.y] >= best_other + 1.0 / (alpha.value() - 1.0);
}

namespace detail {

double entmax_loss_scaled_regularizer(const ScoreVector& z, std::size_t y,
                                      Alpha alpha, double t) {
  check_label(z, y);
  // argmax p^T z - t * Omega(p) is the unscaled mapping at z / t.
  std::vector<double> scaled(z.begin(), z.end());
  for (double& v : scaled) v /= t;
  const ProbabilityVector p = entmax(ScoreVector(std::move(scaled)), alpha).p;
  // t * Omega(e_y) - t * Omega(p) + z^T (p - e_y), Omega = -H, H(e_y) = 0.
  double inner = -z[y];
  for (std::size_t j = 0; j < z.size(); ++j) inner += p[j] * z[j];
  return t * tsallis_entropy(p, alpha) + inner;
}

}  // namespace detail
}  // namespace entmax
