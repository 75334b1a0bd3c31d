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

#include "entmax/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "entmax/error.hpp"

namespace entmax {

ScoreVector::ScoreVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw InvalidInputError("score vector must have at least one entry");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidInputError("score vector entry " + std::to_string(i) +
                              " is not finite");
    }
  }
}

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value) || value < 1.0) {
    throw ConfigurationError("alpha must be a finite value >= 1, got " +
                             std::to_string(value));
  }
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs,
                                     double sum_tolerance)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw InvalidInputError("probability vector must be non-empty");
  }
  double sum = 0.0;
  for (double v : probs_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInputError("probability entries must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > sum_tolerance) {
    throw InvalidInputError("probabilities sum to " + std::to_string(sum) +
                            ", not 1");
  }
}

ProbabilityVector ProbabilityVector::trusted(
    std::vector<double> probs) noexcept {
  ProbabilityVector out;
  out.probs_ = std::move(probs);
  return out;
}

std::size_t count_positive(std::span<const double> values) noexcept {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(),
                    [](double v) { return v > 0.0; }));
}

}  // namespace entmax
