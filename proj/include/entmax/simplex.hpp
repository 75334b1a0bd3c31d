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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entmax/bisect.hpp"
#include "entmax/types.hpp"

namespace entmax {

enum class Method {
  kAuto,
  kBisect,
  kExact15,
  kExact15Partial,
  kSparsemaxSort,
  kSoftmax,
};

std::string_view method_name(Method m) noexcept;
// Accepts the names produced by method_name plus the CLI alias "sort2".
std::optional<Method> parse_method(std::string_view name) noexcept;

// Concrete solver for (alpha, method). Throws ConfigurationError when the
// method cannot compute alpha-entmax at this alpha.
Method resolve_method(Alpha alpha, Method method);

// Max-shifted softmax. Strictly positive output.
ProbabilityVector softmax(const ScoreVector& z);

// Euclidean projection onto the simplex, p = [z - tau]_+.
ThresholdedSolution sparsemax(const ScoreVector& z);

// alpha-entmax front door. alpha = 1 gives softmax (tau not reported),
// alpha = 2 sparsemax, alpha = 1.5 the exact solver, anything else bisection.
ThresholdedSolution entmax(const ScoreVector& z, Alpha alpha,
                           Method method = Method::kAuto,
                           const BisectConfig& bisect = {});

// Ascending indices with p_j > tol.
std::vector<std::size_t> support(const ProbabilityVector& p, double tol = 0.0);

// Row-wise entmax. Rows may be evaluated on several threads; results are
// identical to calling entmax on each row.
std::vector<ThresholdedSolution> entmax_batch(
    std::span<const ScoreVector> rows, Alpha alpha,
    Method method = Method::kAuto, const BisectConfig& bisect = {},
    std::size_t workers = 0);

}  // namespace entmax
