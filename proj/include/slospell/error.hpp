// Copyright 2026 The slospell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slospell {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input bytes are not well-formed UTF-8.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t byte_offset, const std::string& what)
      : Error("invalid UTF-8 at byte " + std::to_string(byte_offset) + ": " +
              what),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Bad configuration value, unknown key, or invalid parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed record or data file; the message carries file/line context.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Predictions and gold data do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

inline std::string at_line(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace slospell
