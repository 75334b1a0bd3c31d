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

#include "entmax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "entmax/bisect.hpp"
#include "entmax/error.hpp"
#include "entmax/exact15.hpp"
#include "entmax/parallel.hpp"

namespace entmax {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kAuto: return "auto";
    case Method::kBisect: return "bisect";
    case Method::kExact15: return "exact15";
    case Method::kExact15Partial: return "exact15-partial";
    case Method::kSparsemaxSort: return "sparsemax-sort";
    case Method::kSoftmax: return "softmax";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "auto") return Method::kAuto;
  if (name == "bisect") return Method::kBisect;
  if (name == "exact15") return Method::kExact15;
  if (name == "exact15-partial") return Method::kExact15Partial;
  if (name == "sparsemax-sort" || name == "sort2") return Method::kSparsemaxSort;
  if (name == "softmax") return Method::kSoftmax;
  return std::nullopt;
}

Method resolve_method(Alpha alpha, Method method) {
  const double a = alpha.value();
  auto reject = [&](const char* need) {
    throw ConfigurationError(std::string(method_name(method)) +
                             " requires " + need + ", got alpha = " +
                             std::to_string(a));
  };
  switch (method) {
    case Method::kAuto:
      if (alpha.is_softmax()) return Method::kSoftmax;
      if (alpha.is_sparsemax()) return Method::kSparsemaxSort;
      if (alpha.is_entmax15()) return Method::kExact15;
      return Method::kBisect;
    case Method::kBisect:
      if (a <= 1.0) reject("alpha > 1");
      break;
    case Method::kExact15:
    case Method::kExact15Partial:
      if (!alpha.is_entmax15()) reject("alpha = 1.5");
      break;
    case Method::kSparsemaxSort:
      if (!alpha.is_sparsemax()) reject("alpha = 2");
      break;
    case Method::kSoftmax:
      if (!alpha.is_softmax()) reject("alpha = 1");
      break;
  }
  return method;
}

ProbabilityVector softmax(const ScoreVector& z) {
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return ProbabilityVector::trusted(std::move(p));
}

ThresholdedSolution sparsemax(const ScoreVector& z) {
  const std::size_t d = z.size();
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> sorted(d);
  std::transform(z.begin(), z.end(), sorted.begin(),
                 [m](double v) { return v - m; });
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with 1 + k * y_(k) > sum_{j <= k} y_(j); k = 1 always holds.
  double cumsum = 0.0;
  double support_sum = 0.0;
  std::size_t k = 0;
  for (std::size_t j = 0; j < d; ++j) {
    cumsum += sorted[j];
    if (1.0 + static_cast<double>(j + 1) * sorted[j] > cumsum) {
      k = j + 1;
      support_sum = cumsum;
    }
  }
  const double tau = (support_sum - 1.0) / static_cast<double>(k);

  std::vector<double> p(d);
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = std::max(z[i] - m - tau, 0.0);
  }
  ThresholdedSolution out;
  out.support_size = count_positive(p);
  out.p = ProbabilityVector::trusted(std::move(p));
  out.tau = tau + m;
  return out;
}

ThresholdedSolution entmax(const ScoreVector& z, Alpha alpha, Method method,
                           const BisectConfig& bisect) {
  switch (resolve_method(alpha, method)) {
    case Method::kSoftmax: {
      ThresholdedSolution out;
      out.p = softmax(z);
      out.support_size = count_positive(out.p.values());
      return out;
    }
    case Method::kSparsemaxSort:
      return sparsemax(z);
    case Method::kExact15:
      return entmax15_exact(z);
    case Method::kExact15Partial:
      return entmax15_partial(z);
    case Method::kBisect:
    case Method::kAuto:
      break;
  }
  return entmax_bisect(z, alpha, bisect);
}

std::vector<std::size_t> support(const ProbabilityVector& p, double tol) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > tol) idx.push_back(i);
  }
  return idx;
}

std::vector<ThresholdedSolution> entmax_batch(
    std::span<const ScoreVector> rows, Alpha alpha, Method method,
    const BisectConfig& bisect, std::size_t workers) {
  const Method resolved = resolve_method(alpha, method);
  std::vector<ThresholdedSolution> out(rows.size());
  parallel_for(
      rows.size(),
      [&](std::size_t i) { out[i] = entmax(rows[i], alpha, resolved, bisect); },
      workers);
  return out;
}

}  // namespace entmax
