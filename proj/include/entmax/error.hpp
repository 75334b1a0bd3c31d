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

#include <stdexcept>
#include <string>

namespace entmax {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data: non-finite scores, length mismatches, out-of-range labels.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A valid input paired with an unsupported parameter combination,
// e.g. the exact 1.5 solver requested at alpha != 1.5.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A configured size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A postcondition that the math guarantees failed to hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Fixture or record could not be decoded. `where()` names the line and/or
// field that failed.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what),
        where_(std::move(where)),
        message_(what) {}

  const std::string& where() const noexcept { return where_; }
  // The error without its location prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

}  // namespace entmax
