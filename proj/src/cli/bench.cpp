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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <vector>

#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/error.hpp"
#include "entmax/jacobian.hpp"
#include "entmax/parallel.hpp"
#include "json.hpp"

namespace entmax::cli {
namespace {

constexpr double kPeakedScale = 4.0;

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Nearest-rank percentile.
double percentile_of(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * xs.size()));
  return xs[std::max<std::size_t>(rank, 1) - 1];
}

template <class Fn>
double seconds(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

BenchReport run_bench_report(const BenchOptions& opts) {
  if (opts.dim < 2) throw ConfigurationError("--dim must be >= 2");
  if (opts.batch < 1) throw ConfigurationError("--batch must be >= 1");
  if (opts.repeats < 1) throw ConfigurationError("--repeats must be >= 1");
  if (opts.warmup < 0) throw ConfigurationError("--warmup must be >= 0");
  if (opts.iters < 1) throw ConfigurationError("--iters must be >= 1");
  const Alpha alpha(opts.alpha);
  const auto requested = parse_method(opts.algorithm);
  if (!requested) {
    throw ConfigurationError("unknown algorithm \"" + opts.algorithm + "\"");
  }
  const Method method = resolve_method(alpha, *requested);
  const BisectConfig bisect{opts.iters, true};
  const std::size_t workers = opts.workers ? opts.workers : worker_count_from_env();

  Rng rng(opts.seed);
  std::vector<ScoreVector> rows;
  rows.reserve(opts.batch);
  for (std::size_t i = 0; i < opts.batch; ++i) {
    rows.emplace_back(rng.normal_vector(opts.dim, opts.peaked ? kPeakedScale : 1.0));
  }

  BenchReport rep;
  rep.algorithm_used = method_name(method);
  std::vector<ThresholdedSolution> out;
  const auto forward = [&] {
    out = entmax_batch(rows, alpha, method, bisect, workers);
  };
  for (int i = 0; i < opts.warmup; ++i) forward();
  for (int i = 0; i < opts.repeats; ++i) rep.seconds.push_back(seconds(forward));
  rep.median = median_of(rep.seconds);
  rep.p90 = percentile_of(rep.seconds, 0.9);
  rep.rows_per_second = rep.median > 0 ? opts.batch / rep.median : INFINITY;
  double support = 0;
  for (const auto& s : out) support += static_cast<double>(s.support_size);
  rep.mean_support = support / static_cast<double>(out.size());

  if (opts.jvp) {
    std::vector<EntmaxJacobian> jacobians;
    for (const auto& s : out) jacobians.push_back(jacobian_from_p(s.p, alpha));
    const auto v = rng.normal_vector(opts.dim);
    std::vector<std::vector<double>> results(rows.size(),
                                             std::vector<double>(opts.dim));
    const auto backward = [&] {
      parallel_for(rows.size(),
                   [&](std::size_t i) { jvp_into(jacobians[i], v, results[i]); },
                   workers);
    };
    for (int i = 0; i < opts.warmup; ++i) backward();
    for (int i = 0; i < opts.repeats; ++i) rep.jvp_seconds.push_back(seconds(backward));
    rep.jvp_median = median_of(rep.jvp_seconds);
  }
  return rep;
}

std::string bench_json(const BenchOptions& opts, const BenchReport& rep) {
  nlohmann::ordered_json j;
  j["dim"] = opts.dim;
  j["batch"] = opts.batch;
  j["alpha"] = opts.alpha;
  j["algorithm"] = opts.algorithm;
  j["algorithm_used"] = rep.algorithm_used;
  j["iters"] = opts.iters;
  j["repeats"] = opts.repeats;
  j["warmup"] = opts.warmup;
  j["seed"] = opts.seed;
  j["peaked"] = opts.peaked;
  j["mean_support"] = rep.mean_support;
  j["median_seconds"] = rep.median;
  j["p90_seconds"] = rep.p90;
  j["rows_per_second"] = rep.rows_per_second;
  j["seconds"] = rep.seconds;
  if (opts.jvp) {
    j["jvp_median_seconds"] = rep.jvp_median;
    j["jvp_seconds"] = rep.jvp_seconds;
  }
  return j.dump(2);
}

int run_bench(const BenchOptions& opts, std::ostream& out) {
  out << bench_json(opts, run_bench_report(opts)) << '\n';
  out.flush();
  return kExitOk;
}

}  // namespace entmax::cli
