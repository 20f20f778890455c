// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace uccvqe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (FCIDUMP, manifests, configs).
class ParseError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Input data that contradicts itself, e.g. conflicting duplicate integrals.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the dense engines.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge or produced a non-finite value.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Operator or data violates an algebraic contract (non-Hermitian, wrong spin, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Linear system too ill-conditioned to factorize.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition) : Error(what), condition_(condition) {}
  double condition_estimate() const { return condition_; }

 private:
  double condition_;
};

}  // namespace uccvqe
