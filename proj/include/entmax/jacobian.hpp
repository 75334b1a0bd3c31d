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
#include <functional>
#include <span>
#include <vector>

#include "entmax/types.hpp"

namespace entmax {

// J = diag(s) - s s^T / ||s||_1, stored as s.
//
// The same factored form covers softmax (s = p), sparsemax (s = support
// indicator) and every alpha in between (s = p^(2 - alpha) on the support).
// It is also the Hessian of the entmax loss.
class EntmaxJacobian {
 public:
  // Throws InvalidInputError if s has a negative or non-finite entry or sums
  // to zero.
  explicit EntmaxJacobian(std::vector<double> s);

  std::size_t size() const noexcept { return s_.size(); }
  std::span<const double> s() const noexcept { return s_; }
  double s_sum() const noexcept { return s_sum_; }

  // Entry (i, j) of the dense matrix.
  double entry(std::size_t i, std::size_t j) const noexcept;

 private:
  std::vector<double> s_;
  double s_sum_ = 0.0;
};

// Jacobian of alpha-entmax at the output point p_star.
EntmaxJacobian jacobian_from_p(const ProbabilityVector& p_star, Alpha alpha);

// Separable regularizer sum_i g(p_i): s_i = 1 / g''(p_i) on the support.
// g_second must be finite and strictly positive at every support value.
EntmaxJacobian generalized_jacobian(
    const ProbabilityVector& p_star,
    const std::function<double(double)>& g_second);

// J v without forming J.
std::vector<double> jvp(const EntmaxJacobian& J, std::span<const double> v);

// Same as above, writing into `out` (size d). No allocation.
void jvp_into(const EntmaxJacobian& J, std::span<const double> v,
              std::span<double> out);

inline constexpr std::size_t kDefaultDenseCap = 4096;

// Row-major d x d matrix. Throws ResourceError when d > cap.
std::vector<double> dense_jacobian(const EntmaxJacobian& J,
                                   std::size_t cap = kDefaultDenseCap);

}  // namespace entmax
