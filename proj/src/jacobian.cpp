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

#include "entmax/jacobian.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "entmax/error.hpp"

namespace entmax {

EntmaxJacobian::EntmaxJacobian(std::vector<double> s) : s_(std::move(s)) {
  for (double v : s_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInputError("jacobian vector s must be finite and >= 0");
    }
  }
  s_sum_ = std::accumulate(s_.begin(), s_.end(), 0.0);
  if (!(s_sum_ > 0.0)) {
    throw InvalidInputError("jacobian vector s must have positive mass");
  }
}

double EntmaxJacobian::entry(std::size_t i, std::size_t j) const noexcept {
  const double off = s_[i] * s_[j] / s_sum_;
  return i == j ? s_[i] - off : -off;
}

EntmaxJacobian jacobian_from_p(const ProbabilityVector& p_star, Alpha alpha) {
  const double exponent = 2.0 - alpha.value();
  std::vector<double> s(p_star.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double p = p_star[i];
    if (!(p > 0.0)) continue;
    if (exponent == 0.0) {
      s[i] = 1.0;
    } else if (exponent == 1.0) {
      s[i] = p;
    } else if (exponent == 0.5) {
      s[i] = std::sqrt(p);
    } else {
      s[i] = std::exp(exponent * std::log(p));
    }
  }
  return EntmaxJacobian(std::move(s));
}

EntmaxJacobian generalized_jacobian(
    const ProbabilityVector& p_star,
    const std::function<double(double)>& g_second) {
  std::vector<double> s(p_star.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double p = p_star[i];
    if (!(p > 0.0)) continue;
    const double h = g_second(p);
    if (!std::isfinite(h) || !(h > 0.0)) {
      throw InvalidInputError("g'' must be finite and positive on the support"
                              " (index " + std::to_string(i) + ")");
    }
    s[i] = 1.0 / h;
  }
  return EntmaxJacobian(std::move(s));
}

void jvp_into(const EntmaxJacobian& J, std::span<const double> v,
              std::span<double> out) {
  const std::size_t d = J.size();
  if (v.size() != d || out.size() != d) {
    throw InvalidInputError("jvp: vector length " + std::to_string(v.size()) +
                            " does not match jacobian size " +
                            std::to_string(d));
  }
  const auto s = J.s();
  double sv = 0.0;
  for (std::size_t i = 0; i < d; ++i) sv += s[i] * v[i];
  const double scale = sv / J.s_sum();
  for (std::size_t i = 0; i < d; ++i) out[i] = s[i] * v[i] - s[i] * scale;
}

std::vector<double> jvp(const EntmaxJacobian& J, std::span<const double> v) {
  std::vector<double> out(J.size());
  jvp_into(J, v, out);
  return out;
}

std::vector<double> dense_jacobian(const EntmaxJacobian& J, std::size_t cap) {
  const std::size_t d = J.size();
  if (d > cap) {
    throw ResourceError("dense jacobian of size " + std::to_string(d) +
                        " exceeds cap " + std::to_string(cap));
  }
  std::vector<double> m(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i * d + j] = J.entry(i, j);
  }
  return m;
}

}  // namespace entmax
