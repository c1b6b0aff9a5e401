#pragma once

#include <stdexcept>
#include <string>

namespace slicelab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A family that was required to be linearly independent is not. */
struct LinearlyDependentInput : Error {
  using Error::Error;
};

/* An exhaustive search or enumeration would exceed its configured budget.
   lower_bound, when >= 0, is the best value proven before giving up. */
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg, long long bound = -1)
      : Error(msg), lower_bound(bound) {}
  long long lower_bound;
};

struct SingularChange : Error {
  using Error::Error;
};

struct NonZeroShiftSum : Error {
  using Error::Error;
};

struct NotZero : Error {
  using Error::Error;
};

struct DependentFamilies : Error {
  using Error::Error;
};

struct MismatchedOneVariableFunctions : Error {
  using Error::Error;
};

struct DifferentTensors : Error {
  using Error::Error;
};

struct DimsTooSmall : Error {
  using Error::Error;
};

struct HypothesesViolated : Error {
  using Error::Error;
};

/* Raised when a conclusion that is guaranteed to hold fails to hold;
   always indicates a bug rather than bad input. */
struct InternalContradiction : Error {
  using Error::Error;
};

struct NotOfRankK : Error {
  using Error::Error;
};

struct PreconditionFailed : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

}  // namespace slicelab
