//
// Copyright 2026 The synaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SYNAUG_ERROR_H_
#define SYNAUG_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synaug {

// Base class of every error raised by the toolkit. The CLI maps these to
// exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line()` is 1-based; 0 when the position is not a
// line (binary formats report a record index in the message instead).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

  // Same error with `prefix` (typically the file path) put in front.
  ParseError WithContext(const std::string& prefix) const {
    return ParseError(prefix + ": " + what(), line_, Raw{});
  }

 private:
  struct Raw {};
  ParseError(const std::string& what, std::size_t line, Raw)
      : Error(what), line_(line) {}

  std::size_t line_;
};

// Invalid UTF-8 in raw text.
class DecodeError : public Error {
 public:
  explicit DecodeError(std::size_t byte_offset)
      : Error("invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Argument outside the domain of a mathematical operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace synaug

#endif  // SYNAUG_ERROR_H_
