// Copyright 2026 The drsub Authors.
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

#ifndef DRSUB_ERRORS_H_
#define DRSUB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace drsub {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed configuration, out-of-range parameters, bad files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  DimensionError(std::size_t expected, std::size_t actual)
      : ValidationError("dimension mismatch: expected " +
                        std::to_string(expected) + ", got " +
                        std::to_string(actual)) {}
};

class InvalidBudget : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateObjective : public Error {
 public:
  using Error::Error;
};

// A solver ran past its proven iteration bound.
class IterationCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace drsub

#endif  // DRSUB_ERRORS_H_
