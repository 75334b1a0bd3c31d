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

#include "entmax/decode.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "entmax/error.hpp"
#include "entmax/random.hpp"
#include "entmax/simplex.hpp"
#include "json.hpp"

namespace entmax {

using nlohmann::json;

TableModel::TableModel(std::size_t vocab_size, std::size_t max_len,
                       ScoreFn score_fn)
    : vocab_size_(vocab_size), max_len_(max_len),
      score_fn_(std::move(score_fn)) {
  if (vocab_size_ < 2) {
    throw InvalidInputError("vocab_size must be >= 2 (stop plus one token)");
  }
  if (max_len_ < 1) throw InvalidInputError("max_len must be >= 1");
  if (!score_fn_) throw InvalidInputError("score function is empty");
}

TableModel TableModel::from_table(std::size_t vocab_size, std::size_t max_len,
                                  std::map<Tokens, std::vector<double>> table,
                                  std::optional<std::vector<double>> fallback) {
  auto fn = [table = std::move(table), fallback = std::move(fallback)](
                std::span<const Token> prefix) -> std::vector<double> {
    const auto it = table.find(Tokens(prefix.begin(), prefix.end()));
    if (it != table.end()) return it->second;
    if (fallback) return *fallback;
    throw InvalidInputError("model has no scores for prefix \"" +
                            prefix_key(prefix) + "\"");
  };
  return TableModel(vocab_size, max_len, std::move(fn));
}

ScoreVector TableModel::scores(std::span<const Token> prefix) const {
  std::vector<double> s = score_fn_(prefix);
  if (s.size() != vocab_size_) {
    throw InvalidInputError("prefix \"" + prefix_key(prefix) + "\" has " +
                            std::to_string(s.size()) + " scores, expected " +
                            std::to_string(vocab_size_));
  }
  return ScoreVector(std::move(s));
}

bool ranks_before(const Hypothesis& a, const Hypothesis& b) noexcept {
  if (a.prob != b.prob) return a.prob > b.prob;
  return a.tokens < b.tokens;
}

ProbabilityVector next_distribution(const TableModel& model,
                                    std::span<const Token> prefix,
                                    Alpha alpha) {
  if (prefix.size() >= model.max_len()) {
    throw InvalidInputError("prefix of length " +
                            std::to_string(prefix.size()) +
                            " reaches max_len " +
                            std::to_string(model.max_len()));
  }
  return entmax(model.scores(prefix), alpha).p;
}

BeamResult beam_search(const TableModel& model, Alpha alpha,
                       std::size_t beam) {
  if (beam < 1) throw InvalidInputError("beam must be >= 1");

  BeamResult result;
  ExactnessCertificate& cert = result.certificate;
  std::vector<Hypothesis> live{Hypothesis{{}, 1.0, false}};
  std::vector<Hypothesis> candidates;

  while (!live.empty()) {
    candidates.clear();
    for (const Hypothesis& h : live) {
      const ProbabilityVector dist = next_distribution(model, h.tokens, alpha);
      for (std::size_t v = 0; v < dist.size(); ++v) {
        const double prob = h.prob * dist[v];
        if (!(prob > 0.0)) continue;
        Hypothesis next{h.tokens, prob, static_cast<Token>(v) == kStopToken};
        next.tokens.push_back(static_cast<Token>(v));
        candidates.push_back(std::move(next));
      }
    }
    std::sort(candidates.begin(), candidates.end(), ranks_before);
    if (candidates.size() > beam) {
      cert.exact = false;
      ++cert.steps_saturated;
      for (std::size_t i = beam; i < candidates.size(); ++i) {
        cert.dropped_mass_bound += candidates[i].prob;
      }
      candidates.resize(beam);
    }

    live.clear();
    for (Hypothesis& c : candidates) {
      if (c.complete) {
        result.hypotheses.push_back(std::move(c));
      } else if (c.tokens.size() >= model.max_len()) {
        cert.exact = false;
        cert.dropped_mass_bound += c.prob;
        result.hypotheses.push_back(std::move(c));
      } else {
        live.push_back(std::move(c));
      }
    }
  }
  std::sort(result.hypotheses.begin(), result.hypotheses.end(), ranks_before);
  return result;
}

namespace {

void enumerate_from(const TableModel& model, Alpha alpha, Tokens& prefix,
                    double prob, std::size_t cap, std::size_t& expansions,
                    std::vector<Hypothesis>& out) {
  if (++expansions > cap) {
    throw ResourceError("exhaustive enumeration exceeded " +
                        std::to_string(cap) + " expansions");
  }
  const ProbabilityVector dist = next_distribution(model, prefix, alpha);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    const double next = prob * dist[v];
    if (!(next > 0.0)) continue;
    prefix.push_back(static_cast<Token>(v));
    if (static_cast<Token>(v) == kStopToken) {
      out.push_back({prefix, next, true});
    } else if (prefix.size() < model.max_len()) {
      enumerate_from(model, alpha, prefix, next, cap, expansions, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Hypothesis> exhaustive_enumerate(const TableModel& model,
                                             Alpha alpha, std::size_t cap) {
  std::vector<Hypothesis> out;
  Tokens prefix;
  std::size_t expansions = 0;
  enumerate_from(model, alpha, prefix, 1.0, cap, expansions, out);
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

std::string prefix_key(std::span<const Token> prefix) {
  std::string key;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(prefix[i]);
  }
  return key;
}

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::size_t positive_field(const json& doc, const char* name,
                           std::size_t minimum) {
  if (!doc.contains(name)) throw ParseError(name, "missing field");
  const json& v = doc.at(name);
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<std::size_t>() < minimum) {
    throw ParseError(name, "expected an integer >= " +
                               std::to_string(minimum));
  }
  return v.get<std::size_t>();
}

Tokens parse_prefix(const std::string& key, std::size_t vocab_size,
                    const std::string& where) {
  Tokens out;
  if (key.empty()) return out;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = std::min(key.find(',', pos), key.size());
    Token t = 0;
    const char* first = key.data() + pos;
    const char* last = key.data() + comma;
    const auto [ptr, ec] = std::from_chars(first, last, t);
    if (ec != std::errc() || ptr != last || t < 0 ||
        static_cast<std::size_t>(t) >= vocab_size) {
      throw ParseError(where, "bad token \"" + std::string(first, last) +
                                  "\" in prefix key");
    }
    out.push_back(t);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_row(const json& v, std::size_t vocab_size,
                              const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of scores");
  if (v.size() != vocab_size) {
    throw ParseError(where, "expected " + std::to_string(vocab_size) +
                                " scores, got " + std::to_string(v.size()));
  }
  std::vector<double> row;
  row.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) throw ParseError(where, "scores must be numbers");
    row.push_back(x.get<double>());
  }
  return row;
}

}  // namespace

TableModel parse_model_fixture(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte), "malformed JSON");
  } catch (const json::exception&) {
    throw ParseError("", "number out of range");
  }
  if (!doc.is_object()) throw ParseError("", "fixture must be a JSON object");

  const std::size_t vocab = positive_field(doc, "vocab_size", 2);
  const std::size_t max_len = positive_field(doc, "max_len", 1);
  if (doc.contains("stop")) {
    const json& s = doc.at("stop");
    if (!s.is_number_integer() || s.get<long long>() != kStopToken) {
      throw ParseError("stop", "the stop token must be index 0");
    }
  }
  if (!doc.contains("table") || !doc.at("table").is_object()) {
    throw ParseError("table", "missing object mapping prefixes to scores");
  }

  std::map<Tokens, std::vector<double>> table;
  for (const auto& [key, row] : doc.at("table").items()) {
    const std::string where = "table[\"" + key + "\"]";
    table[parse_prefix(key, vocab, where)] = parse_row(row, vocab, where);
  }
  std::optional<std::vector<double>> fallback;
  if (doc.contains("default")) {
    fallback = parse_row(doc.at("default"), vocab, "default");
  }
  return TableModel::from_table(vocab, max_len, std::move(table),
                                std::move(fallback));
}

TableModel load_model_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open fixture");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_fixture(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.message());
  }
}

TableModel random_sparse_model(std::uint64_t seed, std::size_t vocab_size,
                               std::size_t max_len, double scale,
                               double stop_bias) {
  auto fn = [=](std::span<const Token> prefix) {
    std::uint64_t h = mix_seed(seed);
    for (Token t : prefix) h = mix_seed(h ^ static_cast<std::uint64_t>(t));
    h = mix_seed(h ^ prefix.size());
    Rng rng(h);
    std::vector<double> s = rng.normal_vector(vocab_size, scale);
    s[kStopToken] += stop_bias * static_cast<double>(prefix.size());
    return s;
  };
  return TableModel(vocab_size, max_len, std::move(fn));
}

}  // namespace entmax
