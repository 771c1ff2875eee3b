// Copyright 2026 The scq Authors
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

#include <stdexcept>
#include <string>

namespace scq {

/// Base class of every error raised by the library. `category()` is a short
/// machine-readable tag used by the CLI when reporting failures.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

/// The Fock truncation cannot represent the requested state faithfully.
class CutoffError : public Error {
 public:
  explicit CutoffError(const std::string& message)
      : Error("cutoff-too-small", message) {}
};

/// Operands live in different spaces or have incompatible shapes.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error("dimension-mismatch", message) {}
};

/// A precondition on numeric arguments was violated.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid-argument", message) {}
};

/// Time integration failed (step-size collapse, invariant violation, ...).
class IntegratorError : public Error {
 public:
  explicit IntegratorError(const std::string& message)
      : Error("integrator-failure", message) {}
};

/// A least-squares fit could not be performed on the supplied data.
class FitError : public Error {
 public:
  explicit FitError(const std::string& message)
      : Error("fit-failure", message) {}
};

/// Internal consistency check failed; indicates a bug rather than bad input.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& message)
      : Error("consistency-failure", message) {}
};

}  // namespace scq
