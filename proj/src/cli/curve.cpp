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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/error.hpp"

namespace entmax::cli {
namespace {

constexpr std::size_t kMaxRows = 10'000'000;
constexpr int kMaxDecimals = 9;

struct Decimal {
  std::int64_t mantissa;
  int decimals;
};

// Plain "-12.345"-style literals only; anything else goes through doubles.
std::optional<Decimal> parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  std::int64_t m = 0;
  int decimals = 0, digits = 0;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.' && !dot) {
      dot = true;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    if (++digits > 15) return std::nullopt;
    m = m * 10 + (s[i] - '0');
    if (dot) ++decimals;
  }
  if (digits == 0 || decimals > kMaxDecimals) return std::nullopt;
  return Decimal{neg ? -m : m, decimals};
}

double parse_number(std::string_view s, const std::string& range) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigurationError("bad range \"" + range +
                             "\": expected start:stop:step");
  }
  return v;
}

std::int64_t pow10(int k) {
  std::int64_t p = 1;
  while (k-- > 0) p *= 10;
  return p;
}

std::string alpha_label(double a) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, a);
  return std::string(buf, r.ptr);
}

}  // namespace

std::vector<double> parse_range(const std::string& range) {
  std::vector<std::string_view> parts;
  std::string_view rest = range;
  for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos;) {
    parts.push_back(rest.substr(0, pos));
    rest.remove_prefix(pos + 1);
  }
  parts.push_back(rest);
  if (parts.size() != 3) {
    throw ConfigurationError("bad range \"" + range +
                             "\": expected start:stop:step");
  }
  const double start = parse_number(parts[0], range);
  const double stop = parse_number(parts[1], range);
  const double step = parse_number(parts[2], range);
  if (!(step > 0) || stop < start) {
    throw ConfigurationError("empty range \"" + range + "\"");
  }

  std::vector<double> ts;
  const auto a = parse_decimal(parts[0]), b = parse_decimal(parts[1]),
             c = parse_decimal(parts[2]);
  if (a && b && c) {
    const int k = std::max({a->decimals, b->decimals, c->decimals});
    const auto scaled = [k](const Decimal& d) {
      return d.mantissa * pow10(k - d.decimals);
    };
    const std::int64_t lo = scaled(*a), hi = scaled(*b), dt = scaled(*c);
    const auto n = static_cast<std::size_t>((hi - lo) / dt) + 1;
    if (n > kMaxRows) throw ConfigurationError("range has too many points");
    const double denom = static_cast<double>(pow10(k));
    for (std::size_t i = 0; i < n; ++i) {
      ts.push_back(static_cast<double>(lo + static_cast<std::int64_t>(i) * dt) /
                   denom);
    }
    return ts;
  }
  const double span = (stop - start) / step;
  if (span > static_cast<double>(kMaxRows)) {
    throw ConfigurationError("range has too many points");
  }
  const auto n = static_cast<std::size_t>(std::floor(span * (1 + 1e-12))) + 1;
  for (std::size_t i = 0; i < n; ++i) ts.push_back(start + i * step);
  return ts;
}

int run_curve(const CurveOptions& opts, std::ostream& out) {
  if (opts.alphas.empty()) throw ConfigurationError("no alpha values given");
  std::vector<Alpha> alphas;
  for (double a : opts.alphas) alphas.emplace_back(a);
  const auto ts = parse_range(opts.range);

  out << 't';
  for (double a : opts.alphas) out << ",alpha=" << alpha_label(a);
  out << '\n';
  for (double t : ts) {
    const ScoreVector z({t, 0.0});
    out << format_double(t);
    for (const Alpha& a : alphas) {
      out << ',' << format_double(entmax::entmax(z, a).p[0]);
    }
    out << '\n';
  }
  out.flush();
  return kExitOk;
}

}  // namespace entmax::cli
