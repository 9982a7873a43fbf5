#pragma once

#include <stdexcept>
#include <string>

namespace cambrian {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CAMBRIAN_DEFINE_ERROR(Name)                      \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what) : Error(what) {} \
  }

// coxeter-core
CAMBRIAN_DEFINE_ERROR(BadMatrix);
CAMBRIAN_DEFINE_ERROR(RootClosureDiverged);
CAMBRIAN_DEFINE_ERROR(OrderCapExceeded);
CAMBRIAN_DEFINE_ERROR(InvalidGenerator);

// sortable
CAMBRIAN_DEFINE_ERROR(NotACoxeterWord);
CAMBRIAN_DEFINE_ERROR(NotInitial);

// congruence / projections
CAMBRIAN_DEFINE_ERROR(NotJoinIrreducible);
CAMBRIAN_DEFINE_ERROR(NotACongruence);
/// Raised when a computed structure fails a check that holds by theory;
/// signals a bug, not bad input.
CAMBRIAN_DEFINE_ERROR(InternalInvariantViolation);

// cli
CAMBRIAN_DEFINE_ERROR(ParseError);
CAMBRIAN_DEFINE_ERROR(UnsupportedRank);
CAMBRIAN_DEFINE_ERROR(IoError);
CAMBRIAN_DEFINE_ERROR(VerificationFailed);

#undef CAMBRIAN_DEFINE_ERROR

}  // namespace cambrian
