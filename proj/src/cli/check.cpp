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
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "entmax/bisect.hpp"
#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/decode.hpp"
#include "entmax/error.hpp"
#include "entmax/exact15.hpp"
#include "entmax/fy_loss.hpp"
#include "entmax/jacobian.hpp"
#include "json.hpp"

namespace entmax::cli {
namespace {

using Solver = std::function<ThresholdedSolution(const ScoreVector&, Alpha)>;

constexpr double kSimplexTol = 1e-9;
constexpr double kEquivarianceTol = 1e-9;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGradientTol = 1e-5;
constexpr double kFdStep = 1e-4;
constexpr std::size_t kFdMaxDim = 32;
constexpr double kBisectTol = 1e-6;
constexpr double kExactTol = 1e-12;
constexpr double kCertificateTol = 1e-12;

class Tally {
 public:
  Tally(std::string name, std::uint64_t seed) { r_.name = std::move(name); seed_ = seed; }

  // `make` builds the reproduction record; only called for the first failure.
  template <class Make>
  void record(bool ok, double err, Make&& make) {
    ++r_.total;
    if (std::isfinite(err)) r_.max_error = std::max(r_.max_error, err);
    if (ok) {
      ++r_.passed;
    } else if (r_.counterexample.empty()) {
      nlohmann::json j = make();
      j["suite"] = r_.name;
      j["seed"] = seed_;
      j["error"] = std::isfinite(err) ? nlohmann::json(err) : nlohmann::json();
      r_.counterexample = j.dump();
    }
  }
  SuiteReport take() { return std::move(r_); }

 private:
  SuiteReport r_;
  std::uint64_t seed_;
};

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> random_scores(Rng& rng, std::size_t d) {
  return rng.normal_vector(d, rng.uniform(0.1, 5.0));
}

nlohmann::json case_json(double alpha, const std::vector<double>& z) {
  return {{"alpha", alpha}, {"z", z}};
}

std::vector<double> solve_p(const Solver& solve, const std::vector<double>& z,
                            Alpha a) {
  return solve(ScoreVector(z), a).p.vector();
}

SuiteReport simplex_suite(const CheckOptions& o, const Solver& solve,
                          std::uint64_t seed) {
  Tally t("simplex", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    for (std::size_t d : o.dims) {
      for (int i = 0; i < o.trials; ++i) {
        const auto z = random_scores(rng, d);
        const auto sol = solve(ScoreVector(z), Alpha(a));
        double sum = 0, neg = 0;
        bool finite = true;
        for (double v : sol.p.values()) {
          sum += v;
          neg = std::max(neg, -v);
          finite &= std::isfinite(v);
        }
        const double err = std::max(std::abs(sum - 1), neg);
        const bool ok = finite && err <= kSimplexTol &&
                        sol.support_size == count_positive(sol.p.values());
        t.record(ok, err, [&] { return case_json(a, z); });
      }
    }
  }
  return t.take();
}

SuiteReport equivariance_suite(const CheckOptions& o, const Solver& solve,
                               std::uint64_t seed) {
  Tally t("equivariance", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    for (std::size_t d : o.dims) {
      for (int i = 0; i < o.trials; ++i) {
        const auto z = random_scores(rng, d);
        const double c = rng.uniform(-50, 50);
        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = d; k > 1; --k) std::swap(perm[k - 1], perm[rng.below(k)]);

        std::vector<double> shifted(d), permuted(d);
        for (std::size_t k = 0; k < d; ++k) {
          shifted[k] = z[k] + c;
          permuted[k] = z[perm[k]];
        }
        const auto p = solve_p(solve, z, Alpha(a));
        const auto ps = solve_p(solve, shifted, Alpha(a));
        const auto pp = solve_p(solve, permuted, Alpha(a));
        std::vector<double> expected(d);
        for (std::size_t k = 0; k < d; ++k) expected[k] = p[perm[k]];
        // Rounding of z by a few ulps perturbs the residuals by delta ~
        // eps (a-1) |z|; through the power 1/(a-1) < 1 that moves p by at
        // most delta^(1/(a-1)), which only exceeds delta for alpha > 2.
        double zmag = std::abs(c);
        for (double v : z) zmag = std::max(zmag, std::abs(v) + std::abs(c));
        const double delta = 64 * kEps * (1 + zmag) * std::max(1.0, a - 1);
        const double tol =
            kEquivarianceTol + (a > 2 ? std::pow(delta, 1 / (a - 1)) : 0.0);
        const double err = std::max(max_abs_diff(p, ps), max_abs_diff(pp, expected));
        t.record(err <= tol, err, [&] {
          auto j = case_json(a, z);
          j["shift"] = c;
          j["permutation"] = perm;
          return j;
        });
      }
    }
  }
  return t.take();
}

std::vector<bool> mask(const std::vector<double>& p) {
  std::vector<bool> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = p[i] > 0;
  return m;
}

SuiteReport gradient_suite(const CheckOptions& o, const Solver& solve,
                           std::uint64_t seed) {
  Tally t("gradient", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    const Alpha alpha(a);
    for (std::size_t d0 : o.dims) {
      const std::size_t d = std::min(d0, kFdMaxDim);
      for (int i = 0; i < o.trials; ++i) {
        std::vector<double> z = random_scores(rng, d);
        const std::size_t y = rng.below(d);
        const auto p = solve_p(solve, z, alpha);
        const auto base = mask(p);
        // A support residual p_i^(alpha-1) below the probe scale is beyond
        // what double-precision differences resolve.
        bool resolvable = true;
        for (double v : p) {
          if (v > 0 && a > 1 && std::pow(v, a - 1) < 10 * (a - 1) * kFdStep) {
            resolvable = false;
          }
        }
        if (!resolvable) continue;

        // Columns of the finite-difference Jacobian, Richardson-extrapolated
        // from steps h and h/2 (plain central differences lose ~1e-5 to
        // truncation near the support edge when alpha > 2). Points where a
        // probe changes the support are skipped.
        std::vector<double> fd(d * d), grad_fd(d);
        bool stable = true;
        for (std::size_t j = 0; j < d && stable; ++j) {
          const double zj = z[j];
          double col[2][kFdMaxDim], gcol[2];
          for (int level = 0; level < 2 && stable; ++level) {
            const double h = level ? kFdStep / 2 : kFdStep;
            z[j] = zj + h;
            const auto hi = solve_p(solve, z, alpha);
            const double lhi = entmax_loss(LabeledScores(ScoreVector(z), y), alpha);
            z[j] = zj - h;
            const auto lo = solve_p(solve, z, alpha);
            const double llo = entmax_loss(LabeledScores(ScoreVector(z), y), alpha);
            z[j] = zj;
            stable = mask(hi) == base && mask(lo) == base;
            for (std::size_t k = 0; k < d; ++k) col[level][k] = (hi[k] - lo[k]) / (2 * h);
            gcol[level] = (lhi - llo) / (2 * h);
          }
          for (std::size_t k = 0; k < d; ++k) {
            fd[k * d + j] = (4 * col[1][k] - col[0][k]) / 3;
          }
          grad_fd[j] = (4 * gcol[1] - gcol[0]) / 3;
        }
        if (!stable) continue;

        const auto J = dense_jacobian(jacobian_from_p(
            ProbabilityVector::trusted(p), alpha));
        const auto g = entmax_loss_grad(LabeledScores(ScoreVector(z), y), alpha);
        // Relative to the Jacobian scale, which exceeds 1 only for alpha > 2
        // (entries grow like p^(2 - alpha) on small coordinates).
        double scale = 1;
        for (double v : J) scale = std::max(scale, std::abs(v));
        const double err =
            std::max(max_abs_diff(J, fd), max_abs_diff(g, grad_fd)) / scale;
        t.record(err <= kGradientTol, err, [&] {
          auto j = case_json(a, z);
          j["y"] = y;
          return j;
        });
      }
    }
  }
  return t.take();
}

std::vector<double> softmax_long_double(const std::vector<double>& z) {
  const long double m = *std::max_element(z.begin(), z.end());
  std::vector<long double> e(z.size());
  long double s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) s += e[i] = std::exp(z[i] - m);
  std::vector<double> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = static_cast<double>(e[i] / s);
  return p;
}

SuiteReport oracle_suite(const CheckOptions& o, const Solver& solve,
                         std::uint64_t seed) {
  Tally t("oracle", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    const Alpha alpha(a);
    for (std::size_t d : o.dims) {
      for (int i = 0; i < o.trials; ++i) {
        const auto z = random_scores(rng, d);
        const ScoreVector sz(z);
        const auto p = solve_p(solve, z, alpha);
        double err;
        bool ok;
        if (alpha.is_softmax()) {
          err = max_abs_diff(p, softmax_long_double(z));
          ok = err <= kExactTol;
        } else {
          const auto bis = entmax_bisect(sz, alpha).p.vector();
          std::vector<double> ref;
          if (alpha.is_entmax15()) {
            ref = entmax15_exact(sz).p.vector();
            // The partial-sort variant must agree bit for bit.
            ok = entmax15_partial(sz).p.vector() == ref;
          } else if (alpha.is_sparsemax()) {
            ref = sparsemax(sz).p.vector();
            ok = true;
          } else {
            ref = bis;
            ok = true;
          }
          err = std::max(max_abs_diff(bis, ref), max_abs_diff(p, ref));
          ok = ok && err <= kBisectTol;
        }
        t.record(ok, err, [&] { return case_json(a, z); });
      }
    }
  }
  return t.take();
}

SuiteReport margin_suite(const CheckOptions& o, const Solver& solve,
                         std::uint64_t seed) {
  Tally t("margin", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    if (a <= 1) continue;
    const Alpha alpha(a);
    const double margin = 1 / (a - 1);
    for (std::size_t d0 : o.dims) {
      const std::size_t d = std::max<std::size_t>(d0, 2);
      for (int i = 0; i < o.trials; ++i) {
        std::vector<double> z = random_scores(rng, d);
        const std::size_t y = rng.below(d);
        double other = -INFINITY;
        for (std::size_t j = 0; j < d; ++j) if (j != y) other = std::max(other, z[j]);
        // Below the margin the gap is built from a runner-up probability q
        // for the two-entry problem: (1-q)^(a-1) - q^(a-1) in x units. A
        // fixed relative offset would leave residuals of order q^(a-1) that
        // double precision cannot resolve at large alpha.
        const bool above = i % 2 == 0;
        if (above) {
          z[y] = other + margin * rng.uniform(1.0 + 1e-6, 2.0);
        } else {
          const double q_min = std::min(0.45, std::max(0.05, std::pow(1e-8, 1 / (a - 1))));
          const double q = rng.uniform(q_min, 0.49);
          z[y] = other + (std::pow(1 - q, a - 1) - std::pow(q, a - 1)) * margin;
        }

        const LabeledScores lz{ScoreVector(z), y};
        const double loss = entmax_loss(lz, alpha);
        const auto p = solve_p(solve, z, alpha);
        std::vector<double> e(d, 0.0);
        e[y] = 1.0;
        const double dev = max_abs_diff(p, e);
        const bool ok = above ? (loss <= 1e-10 && dev <= 1e-8 &&
                                 margin_satisfied(lz, alpha))
                              : (loss > 0 && dev > 0 && !margin_satisfied(lz, alpha));
        t.record(ok, above ? loss : 0.0, [&] {
          auto j = case_json(a, z);
          j["y"] = y;
          j["loss"] = loss;
          return j;
        });
      }
    }
  }
  return t.take();
}

SuiteReport certificate_suite(const CheckOptions& o, std::uint64_t seed) {
  Tally t("certificate", seed);
  Rng rng(seed);
  for (double a : o.alphas) {
    if (a <= 1) continue;
    const Alpha alpha(a);
    for (int i = 0; i < o.trials; ++i) {
      const std::uint64_t model_seed = rng.next_u64();
      const std::size_t V = 2 + rng.below(7), L = 1 + rng.below(5);
      const std::size_t beam = 1 + rng.below(8);
      const auto model = random_sparse_model(model_seed, V, L);
      const auto r = beam_search(model, alpha, beam);
      const auto all = exhaustive_enumerate(model, alpha);
      double mass = 0;
      for (const auto& h : all) mass += h.prob;
      double err = 0;
      bool ok = mass <= 1 + 1e-9;
      if (r.certificate.exact) {
        ok = ok && r.hypotheses.size() == all.size();
        for (std::size_t k = 0; ok && k < all.size(); ++k) {
          ok = r.hypotheses[k].tokens == all[k].tokens;
          err = std::max(err, std::abs(r.hypotheses[k].prob - all[k].prob));
        }
        ok = ok && err <= kCertificateTol;
      }
      t.record(ok, err, [&] {
        return nlohmann::json{{"alpha", a},          {"model_seed", model_seed},
                              {"vocab_size", V},     {"max_len", L},
                              {"beam", beam},        {"mass", mass}};
      });
    }
  }
  return t.take();
}

}  // namespace

std::vector<SuiteReport> run_check_suites(const CheckOptions& opts) {
  if (opts.trials < 1) throw ConfigurationError("--trials must be >= 1");
  if (opts.dims.empty() || opts.alphas.empty()) {
    throw ConfigurationError("--dims and --alphas need at least one value");
  }
  for (std::size_t d : opts.dims) {
    if (d < 1) throw ConfigurationError("--dims entries must be >= 1");
  }
  for (double a : opts.alphas) (void)Alpha(a);

  const Solver solve = opts.solver ? opts.solver
                                   : Solver([](const ScoreVector& z, Alpha a) {
                                       return entmax::entmax(z, a);
                                     });
  const auto s = [&](std::uint64_t k) { return mix_seed(opts.seed + k); };
  std::vector<SuiteReport> out;
  out.push_back(simplex_suite(opts, solve, s(1)));
  out.push_back(equivariance_suite(opts, solve, s(2)));
  out.push_back(gradient_suite(opts, solve, s(3)));
  out.push_back(oracle_suite(opts, solve, s(4)));
  out.push_back(margin_suite(opts, solve, s(5)));
  out.push_back(certificate_suite(opts, s(6)));
  return out;
}

int run_check(const CheckOptions& opts, std::ostream& out) {
  const auto reports = run_check_suites(opts);
  char line[128];
  std::snprintf(line, sizeof line, "%-14s %8s %8s  %s\n", "suite", "passed",
                "total", "max_error");
  out << line;
  bool all_ok = true;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-14s %8d %8d  %.3e\n", r.name.c_str(),
                  r.passed, r.total, r.max_error);
    out << line;
    all_ok &= r.ok();
  }
  for (const auto& r : reports) {
    if (!r.ok()) out << "FAILED " << r.name << ": " << r.counterexample << '\n';
  }
  out << (all_ok ? "all suites passed\n" : "some suites failed\n");
  out.flush();
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace entmax::cli
