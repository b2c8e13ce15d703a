#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Base class for every failure raised by the library. `kind()` is a short
// stable tag used in reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

#define QSERIES_DEFINE_ERROR(Name, tag)                          \
  class Name : public Error {                                    \
   public:                                                       \
    using Error::Error;                                          \
    const char* kind() const noexcept override { return tag; }   \
  };

QSERIES_DEFINE_ERROR(GranularityError, "granularity")
QSERIES_DEFINE_ERROR(DivisionByZeroError, "division-by-zero")
QSERIES_DEFINE_ERROR(AlgebraicRootError, "algebraic-root")
QSERIES_DEFINE_ERROR(DomainError, "domain")
QSERIES_DEFINE_ERROR(PrecisionError, "precision")
QSERIES_DEFINE_ERROR(PoleError, "pole")
QSERIES_DEFINE_ERROR(DivergenceError, "divergence")
QSERIES_DEFINE_ERROR(ZeroProductError, "zero-product")
QSERIES_DEFINE_ERROR(RegistryError, "registry")

#undef QSERIES_DEFINE_ERROR

}  // namespace qseries
