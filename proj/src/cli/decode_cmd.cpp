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

#include <cmath>
#include <iostream>

#include "entmax/cli/commands.hpp"
#include "entmax/cli/format.hpp"
#include "entmax/decode.hpp"
#include "entmax/error.hpp"
#include "json.hpp"

namespace entmax::cli {
namespace {

constexpr double kAgreementTol = 1e-12;

nlohmann::ordered_json hypotheses_json(const std::vector<Hypothesis>& hs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& h : hs) {
    nlohmann::ordered_json j;
    j["tokens"] = h.tokens;
    j["prob"] = h.prob;
    j["complete"] = h.complete;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

int run_decode(const DecodeOptions& opts, std::ostream& out) {
  if (opts.beam < 1) throw ConfigurationError("--beam must be >= 1");
  const Alpha alpha(opts.alpha);
  const TableModel model = load_model_fixture(opts.model);
  const BeamResult r = beam_search(model, alpha, opts.beam);

  nlohmann::ordered_json doc;
  doc["alpha"] = opts.alpha;
  doc["beam"] = opts.beam;
  doc["hypotheses"] = hypotheses_json(r.hypotheses);
  doc["certificate"] = {{"exact", r.certificate.exact},
                        {"dropped_mass_bound", r.certificate.dropped_mass_bound},
                        {"steps_saturated", r.certificate.steps_saturated}};

  int code = kExitOk;
  if (opts.enumerate) {
    const auto all = exhaustive_enumerate(model, alpha);
    double mass = 0;
    for (const auto& h : all) mass += h.prob;
    bool same = all.size() == r.hypotheses.size();
    for (std::size_t i = 0; same && i < all.size(); ++i) {
      same = all[i].tokens == r.hypotheses[i].tokens &&
             std::abs(all[i].prob - r.hypotheses[i].prob) <= kAgreementTol;
    }
    doc["enumeration"] = {{"count", all.size()},
                          {"mass", mass},
                          {"agrees", same}};
    if (r.certificate.exact && !same) code = kExitFailure;
  }
  out << doc.dump(2) << '\n';
  out.flush();
  return code;
}

}  // namespace entmax::cli
