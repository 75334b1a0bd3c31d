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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/cli/records.hpp"
#include "entmax/error.hpp"
#include "entmax/parallel.hpp"
#include "json.hpp"

namespace entmax::cli {
namespace {

constexpr std::size_t kChunkLines = 4096;

std::string id_json(const std::optional<std::string>& id) {
  return id ? nlohmann::json(*id).dump() : "null";
}

struct Job {
  std::size_t line_no = 0;
  std::string text;
  std::string result;
  bool failed = false;
};

}  // namespace

int run_map(const MapOptions& opts, std::istream& in, std::ostream& out) {
  const Alpha alpha(opts.alpha);
  const auto requested = parse_method(opts.algorithm);
  if (!requested) {
    throw ConfigurationError("unknown algorithm \"" + opts.algorithm + "\"");
  }
  const Method method = resolve_method(alpha, *requested);
  if (opts.iters < 1) throw ConfigurationError("--iters must be >= 1");
  const BisectConfig bisect{opts.iters, true};
  const std::string used = nlohmann::json(method_name(method)).dump();

  const auto solve = [&](Job& job) {
    std::optional<std::string> id;
    try {
      VectorRecord rec = parse_record(job.text);
      id = rec.id;
      const auto sol = entmax::entmax(ScoreVector(std::move(rec.z)), alpha,
                                      method, bisect);
      job.result = "{\"id\":" + id_json(id) + ",\"p\":" +
                   format_array(sol.p.values()) +
                   ",\"tau\":" + format_double(sol.tau) +
                   ",\"support_size\":" + std::to_string(sol.support_size) +
                   ",\"algorithm_used\":" + used + "}";
    } catch (const Error& e) {
      job.failed = true;
      job.result = "{\"line\":" + std::to_string(job.line_no) +
                   ",\"id\":" + id_json(id) +
                   ",\"error\":" + nlohmann::json(std::string(e.what())).dump() +
                   "}";
    }
  };

  bool any_failed = false;
  std::size_t line_no = 0;
  std::vector<Job> chunk;
  std::string line;
  const auto flush = [&] {
    parallel_for(chunk.size(), [&](std::size_t i) { solve(chunk[i]); });
    for (const Job& job : chunk) {
      any_failed |= job.failed;
      out << job.result << '\n';
    }
    chunk.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    chunk.push_back({line_no, std::move(line), {}, false});
    if (chunk.size() == kChunkLines) flush();
  }
  flush();
  out.flush();
  return any_failed ? kExitFailure : kExitOk;
}

}  // namespace entmax::cli
