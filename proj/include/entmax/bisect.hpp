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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entmax/types.hpp"

namespace entmax {

struct BisectConfig {
  // Number of interval halvings.
  int max_iters = 50;
  // Divide the final p(tau) by its mass so the output lies on the simplex.
  bool normalize = true;
};

// Unnormalized [z_scaled - tau]_+^(1 / (alpha - 1)). `z_scaled` must already
// be multiplied by (alpha - 1). Requires alpha > 1.
std::vector<double> p_of_tau(std::span<const double> z_scaled, double tau,
                             Alpha alpha);

struct BisectResult {
  ThresholdedSolution solution;
  // Final bracket on the scaled scores; the exact threshold lies inside.
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  // Unnormalized mass at the returned tau.
  double mass = 0.0;
};

// Initial bracket [max(x) - 1, max(x) - d^(1 - alpha)] on x = (alpha - 1) z.
std::pair<double, double> bisect_bracket(const ScoreVector& z, Alpha alpha);

// alpha-entmax by bisection on the threshold. Accurate to roughly
// 2^-max_iters in tau; never exact.
ThresholdedSolution entmax_bisect(const ScoreVector& z, Alpha alpha,
                                  const BisectConfig& cfg = {});

BisectResult entmax_bisect_detailed(const ScoreVector& z, Alpha alpha,
                                    const BisectConfig& cfg = {});

}  // namespace entmax
