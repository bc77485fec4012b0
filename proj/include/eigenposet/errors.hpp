#pragma once

#include <stdexcept>
#include <string>

namespace eigenposet {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EIGENPOSET_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

EIGENPOSET_ERROR(DivisionByZero);
EIGENPOSET_ERROR(DimensionMismatch);
EIGENPOSET_ERROR(SingularMatrix);
EIGENPOSET_ERROR(BudgetExceeded);
EIGENPOSET_ERROR(InvalidArgument);
EIGENPOSET_ERROR(ParseError);
EIGENPOSET_ERROR(EmptyPoset);
EIGENPOSET_ERROR(NotAnIdeal);
EIGENPOSET_ERROR(EmptyUpperSet);
EIGENPOSET_ERROR(ElementNotFound);
EIGENPOSET_ERROR(NotASubposet);
EIGENPOSET_ERROR(NotASubgroup);
EIGENPOSET_ERROR(NotConcentrated);
EIGENPOSET_ERROR(UnknownGroup);
EIGENPOSET_ERROR(IoError);

#undef EIGENPOSET_ERROR

}  // namespace eigenposet
