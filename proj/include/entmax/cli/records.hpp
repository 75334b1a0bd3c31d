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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entmax::cli {

// One line of batch input: {"z": [...], "y": 3, "id": "row-7"}.
struct VectorRecord {
  std::vector<double> z;
  std::optional<std::size_t> y;
  std::optional<std::string> id;
};

// Throws ParseError for malformed JSON or fields ("z", "y", "id"), and
// InvalidInputError for non-finite or empty z or y out of range.
VectorRecord parse_record(std::string_view line);

}  // namespace entmax::cli
