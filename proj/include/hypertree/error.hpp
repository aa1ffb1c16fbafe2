#pragma once

#include <stdexcept>
#include <string>

namespace hypertree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the model (r < 2, s < 2, n < 1) or a failed
/// divisibility requirement.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or exact evaluation would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling gave up before producing a simple hypergraph.
class RejectionLimit : public Error {
 public:
  using Error::Error;
};

/// A real-valued formula was evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypertree
