#pragma once

#include <stdexcept>
#include <string>

namespace airytrap {

// Every failure raised by the library derives from Error; name() is the
// machine-readable tag the CLI reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept { return "Error"; }
};

#define AIRYTRAP_DEFINE_ERROR(Type)                               \
  class Type : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* name() const noexcept override { return #Type; }  \
  };

AIRYTRAP_DEFINE_ERROR(DomainError)
AIRYTRAP_DEFINE_ERROR(AccuracyError)
AIRYTRAP_DEFINE_ERROR(ConvergenceError)
AIRYTRAP_DEFINE_ERROR(BranchError)
AIRYTRAP_DEFINE_ERROR(SingularError)
AIRYTRAP_DEFINE_ERROR(QuadratureError)
AIRYTRAP_DEFINE_ERROR(StabilityError)
AIRYTRAP_DEFINE_ERROR(ConfigError)
AIRYTRAP_DEFINE_ERROR(FitError)
AIRYTRAP_DEFINE_ERROR(EmptyDataError)

#undef AIRYTRAP_DEFINE_ERROR

}  // namespace airytrap
