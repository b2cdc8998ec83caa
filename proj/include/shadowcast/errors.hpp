// Copyright 2026 The Shadowcast Authors
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

#ifndef SHADOWCAST_ERRORS_HPP_
#define SHADOWCAST_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace shadowcast {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value lies outside the domain of an operation. field() names the
// offending input (e.g. "r_w").
class DomainError : public Error {
 public:
  DomainError(std::string field, const std::string& detail)
      : Error(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The geometry has no well-defined answer (coincident points, zero distance).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// Non-finite controller input.
class ControllerInputError : public Error {
 public:
  using Error::Error;
};

// Every silhouette ray left the height field.
class EmptyFootprint : public Error {
 public:
  using Error::Error;
};

// Malformed file or message. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace shadowcast

#endif  // SHADOWCAST_ERRORS_HPP_
