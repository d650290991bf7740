// Copyright 2026 The wtype Authors
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

#ifndef WTYPE_ERRORS_HPP
#define WTYPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wtype {

// Malformed input (dimension mismatch, bad indices, probabilities that do
// not sum to one) is reported with std::invalid_argument.

/// The request is well-formed but impossible: infeasible ensemble, state
/// outside the W class, malformed protocol.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotWTypeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical routine failed to reach its accuracy target.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wtype

#endif  // WTYPE_ERRORS_HPP
