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

#include "entmax/cli/records.hpp"

#include <cmath>

#include "entmax/error.hpp"
#include "json.hpp"

namespace entmax::cli {

using nlohmann::json;

VectorRecord parse_record(std::string_view line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("column " + std::to_string(e.byte), "malformed JSON");
  } catch (const json::exception&) {
    throw ParseError("", "number out of range");
  }
  if (!doc.is_object()) throw ParseError("", "record must be a JSON object");

  VectorRecord r;
  if (doc.contains("id")) {
    const json& id = doc["id"];
    if (id.is_string()) {
      r.id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      r.id = id.dump();
    } else if (!id.is_null()) {
      throw ParseError("id", "expected a string");
    }
  }

  if (!doc.contains("z")) throw ParseError("z", "missing field");
  const json& z = doc["z"];
  if (!z.is_array()) throw ParseError("z", "expected an array of numbers");
  if (z.empty()) throw InvalidInputError("z is empty");
  r.z.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!z[i].is_number()) {
      throw ParseError("z[" + std::to_string(i) + "]", "expected a number");
    }
    const double v = z[i].get<double>();
    if (!std::isfinite(v)) {
      throw InvalidInputError("z[" + std::to_string(i) + "] is not finite");
    }
    r.z.push_back(v);
  }

  if (doc.contains("y") && !doc["y"].is_null()) {
    const json& y = doc["y"];
    if (!y.is_number_integer()) throw ParseError("y", "expected an integer");
    const long long v = y.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= r.z.size()) {
      throw InvalidInputError("y = " + std::to_string(v) + " is out of range");
    }
    r.y = static_cast<std::size_t>(v);
  }
  return r;
}

}  // namespace entmax::cli
