#pragma once

#include <stdexcept>
#include <string>

namespace eqcat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed objects, out-of-range parameters, inconsistent tables.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search or free construction exceeded its caller-supplied bound.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The Segal maps of a precategory are not pi0-bijective, so Ho(X) is undefined here.
class SegalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace eqcat
