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

#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/error.hpp"

namespace cli = entmax::cli;

int main(int argc, char** argv) {
  CLI::App app{"Sparse probability mappings from the alpha-entmax family"};
  app.require_subcommand(1);
  std::function<int()> run;

  cli::MapOptions map;
  auto* m = app.add_subcommand("map", "Map JSON-lines score vectors to entmax outputs");
  m->add_option("--alpha", map.alpha, "alpha >= 1")->capture_default_str();
  m->add_option("--algorithm", map.algorithm, "auto, bisect, exact15, exact15-partial or sort2")
      ->capture_default_str();
  m->add_option("--iters", map.iters, "bisection iterations")->capture_default_str();
  m->add_option("--input", map.input, "input file, - for stdin")->capture_default_str();
  m->add_option("--output", map.output, "output file, - for stdout")->capture_default_str();
  m->callback([&] {
    run = [&] {
      cli::InputSource in(map.input, std::cin);
      cli::OutputTarget out(map.output, std::cout);
      return cli::run_map(map, in.stream(), out.stream());
    };
  });

  cli::CurveOptions curve;
  auto* c = app.add_subcommand("curve", "Two-dimensional curve entmax([t, 0])_1 as CSV");
  c->add_option("--alpha", curve.alphas, "alpha values")->delimiter(',')->capture_default_str();
  c->add_option("--range", curve.range, "start:stop:step")->capture_default_str();
  c->add_option("--output", curve.output, "output file, - for stdout")->capture_default_str();
  c->callback([&] {
    run = [&] {
      cli::OutputTarget out(curve.output, std::cout);
      return cli::run_curve(curve, out.stream());
    };
  });

  cli::CheckOptions check;
  auto* k = app.add_subcommand("check", "Run the randomized invariant suites");
  k->add_option("--seed", check.seed)->capture_default_str();
  k->add_option("--trials", check.trials, "trials per (alpha, dim)")->capture_default_str();
  k->add_option("--dims", check.dims)->delimiter(',')->capture_default_str();
  k->add_option("--alphas", check.alphas)->delimiter(',')->capture_default_str();
  k->callback([&] { run = [&] { return cli::run_check(check, std::cout); }; });

  cli::BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Time forward (and jvp) passes");
  b->add_option("--dim", bench.dim)->capture_default_str();
  b->add_option("--batch", bench.batch)->capture_default_str();
  b->add_option("--alpha", bench.alpha)->capture_default_str();
  b->add_option("--algorithm", bench.algorithm)->capture_default_str();
  b->add_option("--iters", bench.iters, "bisection iterations")->capture_default_str();
  b->add_option("--repeats", bench.repeats)->capture_default_str();
  b->add_option("--warmup", bench.warmup)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_flag("--peaked", bench.peaked, "scores with standard deviation 4");
  b->add_flag("--jvp", bench.jvp, "also time Jacobian-vector products");
  b->add_option("--output", bench.output, "output file, - for stdout")->capture_default_str();
  b->callback([&] {
    run = [&] {
      cli::OutputTarget out(bench.output, std::cout);
      return cli::run_bench(bench, out.stream());
    };
  });

  cli::DecodeOptions decode;
  auto* d = app.add_subcommand("decode", "Beam search over a model fixture");
  d->add_option("--model,model", decode.model, "fixture file")->required();
  d->add_option("--alpha", decode.alpha)->capture_default_str();
  d->add_option("--beam", decode.beam)->capture_default_str();
  d->add_flag("--enumerate", decode.enumerate, "compare with exhaustive enumeration");
  d->add_option("--output", decode.output, "output file, - for stdout")->capture_default_str();
  d->callback([&] {
    run = [&] {
      cli::OutputTarget out(decode.output, std::cout);
      return cli::run_decode(decode, out.stream());
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    return run();
  } catch (const entmax::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
}
