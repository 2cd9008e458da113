// Copyright 2026 The epinet Authors
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

#ifndef EPINET_ERRORS_H_
#define EPINET_ERRORS_H_

#include <stdexcept>
#include <string>

namespace epinet {

// Malformed or out-of-range caller input (bad flag, bad size, bad range).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A required column or configuration field is missing or has the wrong type.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A data row could not be parsed. Carries the 1-based line number.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A model parameter violates one of its invariants.
class InvariantError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Internal arrays disagree in size (graph vs node array, etc.).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace epinet

#endif  // EPINET_ERRORS_H_
