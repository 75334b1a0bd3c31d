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
#include <vector>

#include "entmax/jacobian.hpp"
#include "entmax/types.hpp"

namespace entmax {

// Scores with a gold class index in [0, d).
struct LabeledScores {
  LabeledScores(ScoreVector scores, std::size_t label);

  ScoreVector z;
  std::size_t y;
};

// Tsallis alpha-entropy; Shannon entropy (natural log) at alpha = 1.
double tsallis_entropy(const ProbabilityVector& p, Alpha alpha);

// L_alpha(y, z) = (p* - e_y)^T z + H_alpha(p*), p* = alpha-entmax(z).
// Nonnegative: floating-point residue down to -1e-12 is clamped to zero.
double entmax_loss(const LabeledScores& lz, Alpha alpha);

// Same loss against a soft target q on the simplex:
// H_alpha(p*) - H_alpha(q) + z^T (p* - q).
double entmax_loss(const ScoreVector& z, const ProbabilityVector& target,
                   Alpha alpha);

// Gradient with respect to z: p* - e_y.
std::vector<double> entmax_loss_grad(const LabeledScores& lz, Alpha alpha);
std::vector<double> entmax_loss_grad(const ScoreVector& z,
                                     const ProbabilityVector& target,
                                     Alpha alpha);

// Hessian with respect to z, which is the Jacobian of the mapping at p*.
EntmaxJacobian loss_hessian(const LabeledScores& lz, Alpha alpha);

// z_y >= max_{y' != y} z_y' + 1 / (alpha - 1). Requires alpha > 1.
bool margin_satisfied(const LabeledScores& lz, Alpha alpha);

}  // namespace entmax
