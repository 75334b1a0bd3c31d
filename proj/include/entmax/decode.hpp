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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entmax/types.hpp"

namespace entmax {

using Token = int;
using Tokens = std::vector<Token>;

// Token 0 terminates every sequence.
inline constexpr Token kStopToken = 0;

// Toy autoregressive model: prefix -> scores over a small vocabulary.
class TableModel {
 public:
  using ScoreFn = std::function<std::vector<double>(std::span<const Token>)>;

  TableModel(std::size_t vocab_size, std::size_t max_len, ScoreFn score_fn);

  // Explicit table keyed by prefix. Prefixes missing from the table use
  // `fallback` if given, otherwise scoring them is an error.
  static TableModel from_table(std::size_t vocab_size, std::size_t max_len,
                               std::map<Tokens, std::vector<double>> table,
                               std::optional<std::vector<double>> fallback = {});

  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::size_t max_len() const noexcept { return max_len_; }

  // Validated scores for `prefix`. Throws InvalidInputError when the model
  // has no entry or returns the wrong number of scores.
  ScoreVector scores(std::span<const Token> prefix) const;

 private:
  std::size_t vocab_size_;
  std::size_t max_len_;
  ScoreFn score_fn_;
};

struct Hypothesis {
  Tokens tokens;
  // Product of per-step probabilities; always > 0.
  double prob = 0.0;
  // Ends in the stop token. Incomplete hypotheses ran into max_len.
  bool complete = false;
};

struct ExactnessCertificate {
  // No nonzero-probability hypothesis was pruned and every one of them
  // reached the stop token within max_len.
  bool exact = true;
  // Total probability of pruned and truncated hypotheses: an upper bound on
  // the mass of complete sequences missing from the result.
  double dropped_mass_bound = 0.0;
  // Steps at which the nonzero continuations outnumbered the beam.
  int steps_saturated = 0;
};

struct BeamResult {
  std::vector<Hypothesis> hypotheses;
  ExactnessCertificate certificate;
};

// Probability first (descending), then tokens (lexicographic ascending).
bool ranks_before(const Hypothesis& a, const Hypothesis& b) noexcept;

// entmax(scores(prefix), alpha). Requires prefix.size() < max_len.
ProbabilityVector next_distribution(const TableModel& model,
                                    std::span<const Token> prefix,
                                    Alpha alpha);

// Beam search keeping at most `beam` nonzero-probability continuations per
// step. Output is ranked with ranks_before.
BeamResult beam_search(const TableModel& model, Alpha alpha,
                       std::size_t beam);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// Every complete sequence with nonzero probability, ranked. Throws
// ResourceError after `cap` prefix expansions.
std::vector<Hypothesis> exhaustive_enumerate(
    const TableModel& model, Alpha alpha,
    std::size_t cap = kDefaultEnumerationCap);

// "" for the empty prefix, otherwise tokens joined by commas: "3,1,2".
std::string prefix_key(std::span<const Token> prefix);

// Fixture document:
//   {"vocab_size": V, "max_len": L, "stop": 0,
//    "table": {"": [..V scores..], "1": [...], "1,2": [...]},
//    "default": [..V scores..]}          <- optional
TableModel parse_model_fixture(std::string_view text);
TableModel load_model_fixture(const std::string& path);

// Random sparse model for property tests. Scores are a deterministic
// function of (seed, prefix), Gaussian with the given scale, and the stop
// token gets an extra `stop_bias * prefix.size()`.
TableModel random_sparse_model(std::uint64_t seed, std::size_t vocab_size,
                               std::size_t max_len, double scale = 2.0,
                               double stop_bias = 0.75);

}  // namespace entmax
