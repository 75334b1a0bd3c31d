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

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace entmax {

// Raw real-valued scores. Always non-empty and finite.
class ScoreVector {
 public:
  explicit ScoreVector(std::vector<double> values);
  ScoreVector(std::initializer_list<double> values)
      : ScoreVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
};

// Entropic family parameter, alpha >= 1.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const noexcept { return value_; }
  bool is_softmax() const noexcept { return value_ == 1.0; }
  bool is_sparsemax() const noexcept { return value_ == 2.0; }
  bool is_entmax15() const noexcept { return value_ == 1.5; }

 private:
  double value_;
};

// Point on the probability simplex.
class ProbabilityVector {
 public:
  // Default tolerance admits the output of approximate solvers.
  static constexpr double kDefaultSumTolerance = 1e-8;

  ProbabilityVector() = default;

  // Validates nonnegativity, finiteness and |sum - 1| <= sum_tolerance.
  explicit ProbabilityVector(std::vector<double> probs,
                             double sum_tolerance = kDefaultSumTolerance);
  ProbabilityVector(std::initializer_list<double> probs)
      : ProbabilityVector(std::vector<double>(probs)) {}

  // For solver outputs that are simplex points by construction.
  static ProbabilityVector trusted(std::vector<double> probs) noexcept;

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> values() const noexcept { return probs_; }
  const std::vector<double>& vector() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

 private:
  std::vector<double> probs_;
};

// Mapping output with its threshold and support size.
//
// For alpha > 1, p_j = [(alpha - 1) z_j - tau]_+^(1 / (alpha - 1)). The
// softmax path has no threshold and reports tau = kNoThreshold (NaN).
struct ThresholdedSolution {
  static constexpr double kNoThreshold =
      std::numeric_limits<double>::quiet_NaN();

  ProbabilityVector p;
  double tau = kNoThreshold;
  std::size_t support_size = 0;

  bool has_tau() const noexcept { return !std::isnan(tau); }
};

// Number of strictly positive entries.
std::size_t count_positive(std::span<const double> values) noexcept;

}  // namespace entmax
