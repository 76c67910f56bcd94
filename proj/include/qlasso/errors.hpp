#pragma once

#include <stdexcept>
#include <string>

namespace qlasso {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct AllZeroObservations : Error {
  using Error::Error;
};

struct EmptyPath : Error {
  using Error::Error;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct NotActive : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct ZeroVector : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct EmptyDomain : Error {
  using Error::Error;
};

struct ContractViolation : Error {
  using Error::Error;
};

struct KinkBudgetExceeded : Error {
  using Error::Error;
};

struct StationaryStall : Error {
  using Error::Error;
};

struct ZeroResidual : Error {
  using Error::Error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace qlasso
