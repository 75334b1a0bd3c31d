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
#include <iosfwd>
#include <string>
#include <vector>

#include "entmax/random.hpp"
#include "entmax/simplex.hpp"

namespace entmax::cli {

// map: JSON lines in, one result line per input line, same order.
struct MapOptions {
  double alpha = 1.5;
  std::string algorithm = "auto";
  int iters = 50;
  std::string input = "-";
  std::string output = "-";
};

// Per-line failures are written as {"line": n, "id": ..., "error": ...}
// records and make the result kExitFailure. Bad flags throw
// ConfigurationError before any input is read.
int run_map(const MapOptions& opts, std::istream& in, std::ostream& out);

// curve: CSV with t and entmax([t, 0], alpha)_1 per alpha.
struct CurveOptions {
  std::vector<double> alphas{1.0, 1.5, 2.0};
  std::string range = "-3:3:0.01";
  std::string output = "-";
};

// Grid points of "start:stop:step", stop included. Decimal inputs are
// evaluated as exact integer ratios so that e.g. t = 1 comes out as 1.0.
// Throws ConfigurationError for malformed or empty ranges.
std::vector<double> parse_range(const std::string& range);

int run_curve(const CurveOptions& opts, std::ostream& out);

// check: randomized invariant suites.
struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  int trials = 100;
  std::vector<std::size_t> dims{2, 16, 256};
  std::vector<double> alphas{1.0, 1.5, 2.0};
  // Replaces the mapping under test. Lets the harness test itself.
  std::function<ThresholdedSolution(const ScoreVector&, Alpha)> solver;
};

struct SuiteReport {
  std::string name;
  int passed = 0;
  int total = 0;
  double max_error = 0.0;
  // JSON reproduction record of the first failure, empty when all passed.
  std::string counterexample;
  bool ok() const noexcept { return passed == total; }
};

std::vector<SuiteReport> run_check_suites(const CheckOptions& opts);
int run_check(const CheckOptions& opts, std::ostream& out);

// bench: forward (and optionally jvp) timings over a fixed random batch.
struct BenchOptions {
  std::size_t dim = 32768;
  std::size_t batch = 64;
  double alpha = 1.5;
  std::string algorithm = "auto";
  int iters = 50;
  int repeats = 10;
  int warmup = 2;
  std::uint64_t seed = kDefaultSeed;
  // Gaussian scores with standard deviation 4 instead of 1; the support
  // then stays a few entries wide at large d.
  bool peaked = false;
  bool jvp = false;
  // 0 = ENTMAX_THREADS / hardware.
  std::size_t workers = 0;
  std::string output = "-";
};

struct BenchReport {
  std::string algorithm_used;
  std::vector<double> seconds;  // one entry per timed repeat
  double median = 0.0;
  double p90 = 0.0;
  double rows_per_second = 0.0;
  std::vector<double> jvp_seconds;
  double jvp_median = 0.0;
  double mean_support = 0.0;
};

BenchReport run_bench_report(const BenchOptions& opts);
std::string bench_json(const BenchOptions& opts, const BenchReport& report);
int run_bench(const BenchOptions& opts, std::ostream& out);

// decode: beam search over a fixture model, optionally checked against
// exhaustive enumeration.
struct DecodeOptions {
  std::string model;
  double alpha = 1.5;
  std::size_t beam = 5;
  bool enumerate = false;
  std::string output = "-";
};

// kExitFailure when the certificate claims exactness but enumeration
// disagrees.
int run_decode(const DecodeOptions& opts, std::ostream& out);

}  // namespace entmax::cli
