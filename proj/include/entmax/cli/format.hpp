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

#include <exception>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <span>

namespace entmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Shortest text that parses back to the same double; integral values keep
// a trailing ".0". Non-finite values print as "null".
std::string format_double(double x);
std::string format_array(std::span<const double> xs);

// Configuration errors map to kExitUsage, everything else to kExitFailure.
int exit_code_for(const std::exception& e) noexcept;

// "-" selects the fallback stream. Throws ConfigurationError when a file
// cannot be opened.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback);
  std::ostream& stream() noexcept { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

class InputSource {
 public:
  InputSource(const std::string& path, std::istream& fallback);
  std::istream& stream() noexcept { return *in_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* in_;
};

}  // namespace entmax::cli
