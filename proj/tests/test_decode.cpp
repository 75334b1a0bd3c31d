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
#include <string>
#include <vector>

#include "doctest.h"
#include "entmax/decode.hpp"
#include "entmax/error.hpp"
#include "entmax/random.hpp"
#include "entmax/simplex.hpp"

using namespace entmax;

namespace {

const std::string kFixtures = ENTMAX_FIXTURE_DIR;

TableModel constant_model(std::vector<double> scores, std::size_t vocab,
                          std::size_t max_len) {
  return TableModel(vocab, max_len,
                    [s = std::move(scores)](std::span<const Token>) { return s; });
}

bool same_set(const std::vector<Hypothesis>& a, const std::vector<Hypothesis>& b,
              double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].tokens != b[i].tokens || std::abs(a[i].prob - b[i].prob) > tol) {
      return false;
    }
  }
  return true;
}

double total_mass(const std::vector<Hypothesis>& hs) {
  double m = 0;
  for (const auto& h : hs) m += h.prob;
  return m;
}

}  // namespace

TEST_CASE("next_distribution examples") {
  const auto chain = constant_model({5, 0, 0, 0}, 4, 3);
  CHECK(next_distribution(chain, {}, Alpha(2)).vector() ==
        std::vector<double>{1, 0, 0, 0});
  const auto tie = constant_model({0, 1, 1, -3}, 4, 3);
  CHECK(next_distribution(tie, {}, Alpha(2)).vector() ==
        std::vector<double>{0, 0.5, 0.5, 0});
  const auto dense = next_distribution(tie, {}, Alpha(1));
  for (double v : dense.vector()) CHECK(v > 0);

  const Tokens long_prefix{1, 2, 3};
  CHECK_THROWS_AS(next_distribution(chain, long_prefix, Alpha(2)),
                  InvalidInputError);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(constant_model({0}, 1, 3), InvalidInputError);
  CHECK_THROWS_AS(constant_model({0, 0}, 2, 0), InvalidInputError);
  const auto wrong = constant_model({0, 0, 0}, 4, 2);
  CHECK_THROWS_AS(wrong.scores({}), InvalidInputError);
  const auto sparse = TableModel::from_table(3, 2, {{{}, {0, 5, 0}}});
  CHECK_THROWS_AS(sparse.scores(Tokens{1}), InvalidInputError);
  CHECK_THROWS_AS(beam_search(sparse, Alpha(2), 0), InvalidInputError);
  CHECK(prefix_key(Tokens{}) == "");
  CHECK(prefix_key(Tokens{3, 1, 2}) == "3,1,2");
}

TEST_CASE("deterministic chain") {
  const auto model = load_model_fixture(kFixtures + "/chain.json");
  for (std::size_t beam : {1u, 2u, 7u}) {
    const auto r = beam_search(model, Alpha(1.5), beam);
    REQUIRE(r.hypotheses.size() == 1);
    CHECK(r.hypotheses[0].tokens == Tokens{1, 2, 0});
    CHECK(r.hypotheses[0].prob == 1.0);
    CHECK(r.hypotheses[0].complete);
    CHECK(r.certificate.exact);
    CHECK(r.certificate.dropped_mass_bound == 0.0);
    CHECK(r.certificate.steps_saturated == 0);
  }
  const auto all = exhaustive_enumerate(model, Alpha(2));
  REQUIRE(all.size() == 1);
  CHECK(all[0].prob == 1.0);

  // Immediate stop.
  const auto stop = constant_model({5, 0, 0, 0}, 4, 3);
  const auto r = beam_search(stop, Alpha(2), 1);
  REQUIRE(r.hypotheses.size() == 1);
  CHECK(r.hypotheses[0].tokens == Tokens{0});
  CHECK(r.certificate.exact);
}

TEST_CASE("three-way root") {
  const auto model = load_model_fixture(kFixtures + "/three_way.json");
  const auto r = beam_search(model, Alpha(1.5), 5);
  REQUIRE(r.hypotheses.size() == 3);
  CHECK(r.certificate.exact);
  const std::vector<Tokens> tokens{{1, 0}, {2, 0}, {3, 0}};
  const double probs[] = {0.664, 0.322, 0.014};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.hypotheses[i].tokens == tokens[i]);
    CHECK(r.hypotheses[i].prob == doctest::Approx(probs[i]).epsilon(1e-12));
  }
  const auto all = exhaustive_enumerate(model, Alpha(1.5));
  CHECK(same_set(all, r.hypotheses, 1e-15));

  const auto narrow = beam_search(model, Alpha(1.5), 2);
  CHECK_FALSE(narrow.certificate.exact);
  CHECK(narrow.certificate.steps_saturated == 1);
  CHECK(narrow.certificate.dropped_mass_bound ==
        doctest::Approx(0.014).epsilon(1e-9));
  CHECK(narrow.hypotheses.size() == 2);

  const auto dense = beam_search(model, Alpha(1), 5);
  CHECK_FALSE(dense.certificate.exact);
}

TEST_CASE("softmax never certifies") {
  const auto model = random_sparse_model(9, 4, 3);
  const auto r = beam_search(model, Alpha(1), 2);
  CHECK_FALSE(r.certificate.exact);
  CHECK(r.certificate.dropped_mass_bound > 0);
}

TEST_CASE("truncation clears the certificate") {
  // Never stops: every path reaches max_len incomplete.
  const auto model = constant_model({-5, 5, 0}, 3, 2);
  const auto r = beam_search(model, Alpha(2), 4);
  REQUIRE(r.hypotheses.size() == 1);
  CHECK_FALSE(r.hypotheses[0].complete);
  CHECK(r.hypotheses[0].tokens == Tokens{1, 1});
  CHECK_FALSE(r.certificate.exact);
  CHECK(r.certificate.dropped_mass_bound == 1.0);
  CHECK(exhaustive_enumerate(model, Alpha(2)).empty());
}

TEST_CASE("enumeration cap") {
  const auto dense = random_sparse_model(3, 6, 6);
  CHECK_THROWS_AS(exhaustive_enumerate(dense, Alpha(1), 1000), ResourceError);
  CHECK_NOTHROW(exhaustive_enumerate(dense, Alpha(2)));
}

TEST_CASE("ranking ties are lexicographic") {
  const auto model = TableModel::from_table(
      3, 2, {{{}, {0, 1, 1}}, {{1}, {5, 0, 0}}, {{2}, {5, 0, 0}}});
  const auto r = beam_search(model, Alpha(2), 3);
  REQUIRE(r.hypotheses.size() == 2);
  CHECK(r.hypotheses[0].tokens == Tokens{1, 0});
  CHECK(r.hypotheses[1].tokens == Tokens{2, 0});
  CHECK(r.hypotheses[0].prob == r.hypotheses[1].prob);
}

TEST_CASE("certificate soundness on random models") {
  Rng rng(77);
  int exact = 0, inexact = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t V = 2 + rng.below(7);
    const std::size_t L = 1 + rng.below(6);
    const double a = rng.below(2) ? 1.5 : 2.0;
    const std::size_t beam = 1 + rng.below(12);
    const auto model = random_sparse_model(rng.next_u64(), V, L);
    const auto r = beam_search(model, Alpha(a), beam);
    const auto all = exhaustive_enumerate(model, Alpha(a));

    const double mass = total_mass(all);
    REQUIRE(mass <= 1 + 1e-9);
    for (const auto& h : r.hypotheses) REQUIRE(h.prob > 0);
    REQUIRE(std::is_sorted(r.hypotheses.begin(), r.hypotheses.end(), ranks_before));
    if (r.certificate.exact) {
      ++exact;
      REQUIRE(same_set(r.hypotheses, all, 1e-12));
      REQUIRE(std::abs(mass - 1) <= 1e-9);
      REQUIRE(r.certificate.dropped_mass_bound == 0.0);
    } else {
      ++inexact;
      double complete = 0;
      for (const auto& h : r.hypotheses) if (h.complete) complete += h.prob;
      // Missing complete mass is covered by the bound.
      REQUIRE(mass - complete <= r.certificate.dropped_mass_bound + 1e-9);
    }
  }
  CHECK(exact > 100);
  CHECK(inexact > 100);
}

TEST_CASE("widening an exact beam changes nothing") {
  Rng rng(78);
  for (int trial = 0; trial < 300; ++trial) {
    const auto model = random_sparse_model(rng.next_u64(), 2 + rng.below(7),
                                           1 + rng.below(6));
    const Alpha a(rng.below(2) ? 1.5 : 2.0);
    bool was_exact = false;
    BeamResult prev;
    for (std::size_t beam = 1; beam <= 16; ++beam) {
      auto r = beam_search(model, a, beam);
      if (was_exact) {
        REQUIRE(r.certificate.exact);
        REQUIRE(same_set(r.hypotheses, prev.hypotheses, 0));
      }
      was_exact = r.certificate.exact;
      prev = std::move(r);
    }
  }
}

TEST_CASE("a wider inexact beam can drop a hypothesis") {
  // Root: a=1 at 0.51, b=2 at 0.49. a has three children at 0.17, b two at
  // 0.245; beam 1 follows a, beam 2 keeps only b's children.
  const double ra = 0.51, rb = 0.49;
  const auto model = TableModel::from_table(
      6, 3,
      {{{}, {-9, 1 + ra, 1 + rb, -9, -9, -9}},
       {{1}, {-9, -9, -9, 1, 1, 1}},
       {{2}, {-9, -9, -9, 1, 1, -9}}},
      std::vector<double>{9, 0, 0, 0, 0, 0});
  const Alpha a(2);
  const auto one = beam_search(model, a, 1);
  const auto two = beam_search(model, a, 2);
  CHECK(one.hypotheses.front().tokens[0] == 1);
  for (const auto& h : two.hypotheses) CHECK(h.tokens[0] == 2);
  CHECK_FALSE(two.certificate.exact);
}

TEST_CASE("fixture parse errors") {
  const auto where = [](std::string_view text) -> std::string {
    try {
      parse_model_fixture(text);
    } catch (const ParseError& e) {
      return e.where() + ": " + e.message();
    }
    return "no error";
  };
  CHECK(where("{\"vocab_size\": 3,\n  \"max_len\" 2}") ==
        "line 2, column 13: malformed JSON");
  CHECK(where("[]") == ": fixture must be a JSON object");
  CHECK(where(R"({"max_len": 2, "table": {}})") == "vocab_size: missing field");
  CHECK(where(R"({"vocab_size": 1, "max_len": 2, "table": {}})").starts_with(
      "vocab_size: expected an integer"));
  CHECK(where(R"({"vocab_size": 3, "max_len": 2, "stop": 2, "table": {}})") ==
        "stop: the stop token must be index 0");
  CHECK(where(R"({"vocab_size": 3, "max_len": 2})").starts_with("table:"));
  CHECK(where(R"({"vocab_size": 3, "max_len": 2, "table": {"1": [0, 0]}})")
            .starts_with("table[\"1\"]: expected 3"));
  CHECK(where(R"({"vocab_size": 3, "max_len": 2, "table": {"1,x": [0, 0, 0]}})")
            .starts_with("table[\"1,x\"]: bad token"));
  CHECK(where(R"({"vocab_size": 3, "max_len": 2, "table": {"": [0, "a", 0]}})")
            .starts_with("table[\"\"]: scores must be numbers"));
  CHECK(where(R"({"vocab_size": 2, "max_len": 1, "table": {"": [0, 1e999]}})") ==
        ": number out of range");
  CHECK_THROWS_AS(load_model_fixture(kFixtures + "/missing.json"), ParseError);
}

TEST_CASE("random model is a pure function of seed and prefix") {
  const auto a = random_sparse_model(5, 6, 4), b = random_sparse_model(5, 6, 4);
  const Tokens p{3, 1};
  CHECK(a.scores(p).vector() == b.scores(p).vector());
  CHECK(a.scores(p).vector() != random_sparse_model(6, 6, 4).scores(p).vector());
}
