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

#include "entmax/cli/format.hpp"

#include <cmath>
#include <iostream>

#include "entmax/error.hpp"
#include "json.hpp"

namespace entmax::cli {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  return nlohmann::json(x).dump();
}

std::string format_array(std::span<const double> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s + "]";
}

int exit_code_for(const std::exception& e) noexcept {
  return dynamic_cast<const ConfigurationError*>(&e) ? kExitUsage : kExitFailure;
}

OutputTarget::OutputTarget(const std::string& path, std::ostream& fallback)
    : out_(&fallback) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file_) throw ConfigurationError("cannot open output file " + path);
  out_ = file_.get();
}

InputSource::InputSource(const std::string& path, std::istream& fallback)
    : in_(&fallback) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file_) throw ConfigurationError("cannot open input file " + path);
  in_ = file_.get();
}

}  // namespace entmax::cli
