// Copyright 2026 The Polyflow Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyflow {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input supplied by the caller.
class InputError : public Error {
 public:
  using Error::Error;
};

// The ratio nu(F)/D(F) asked for with D(F) = 0.
class UndefinedSparsityError : public InputError {
 public:
  using InputError::InputError;
};

// A documented precondition of an algorithm was violated by its arguments.
class ContractError : public InputError {
 public:
  using InputError::InputError;
};

// A brute-force or enumeration limit would be exceeded.
class CapabilityError : public Error {
 public:
  CapabilityError(const std::string& what, std::size_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

// The LP solver lost feasibility or ran out of iterations. Carries the last
// basis so a failing solve can be reproduced.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<std::size_t> basis)
      : Error(what), basis_(std::move(basis)) {}
  const std::vector<std::size_t>& last_basis() const { return basis_; }

 private:
  std::vector<std::size_t> basis_;
};

// An invariant the algorithms guarantee did not hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyflow
