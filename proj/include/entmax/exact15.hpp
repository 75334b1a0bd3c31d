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
#include <limits>
#include <vector>

#include "entmax/types.hpp"

namespace entmax {

// Threshold candidate for support size rho, on the halved sorted scores x.
//   mean   = M(rho), mean of the rho largest x
//   sq_dev = S(rho) = sum over those entries of (x - M(rho))^2
//   tau    = M(rho) - sqrt((1 - S(rho)) / rho), or +inf when S(rho) > 1
struct TauCandidate {
  std::size_t rho = 0;
  double mean = 0.0;
  double sq_dev = 0.0;
  double tau = 0.0;

  bool finite() const noexcept { return tau != kInfiniteTau; }

  static constexpr double kInfiniteTau =
      std::numeric_limits<double>::infinity();
};

// Candidates for rho = 1..d, computed with O(1) updates per step.
std::vector<TauCandidate> tau_candidates(const ScoreVector& z);

// Exact 1.5-entmax by full sort and candidate scan. The reported tau is on
// the z / 2 scale.
ThresholdedSolution entmax15_exact(const ScoreVector& z);

struct PartialStats {
  // Number of top-k selections performed.
  int rounds = 0;
  std::size_t final_k = 0;
};

inline constexpr std::size_t kDefaultInitialK = 32;

// Exact 1.5-entmax that only orders the k largest entries, doubling k until
// the support fits.
ThresholdedSolution entmax15_partial(const ScoreVector& z,
                                     std::size_t initial_k = kDefaultInitialK,
                                     PartialStats* stats = nullptr);

}  // namespace entmax
