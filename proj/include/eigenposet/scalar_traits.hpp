#pragma once

// Eigen glue for the exact scalars: CycNum, mpq_class, mpz_class.

#include <gmpxx.h>

#include <Eigen/Core>

#include "eigenposet/cyclo.hpp"

namespace eigenposet::detail {

template <class T>
struct ExactNumTraits : Eigen::GenericNumTraits<T> {
  using Real = T;
  using NonInteger = T;
  using Literal = T;
  using Nested = T;
  enum {
    IsComplex = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 32
  };
  static inline T epsilon() { return T(0); }
  static inline T dummy_precision() { return T(0); }
  static inline int digits10() { return 0; }
};

}  // namespace eigenposet::detail

namespace Eigen {

template <>
struct NumTraits<eigenposet::CycNum> : eigenposet::detail::ExactNumTraits<eigenposet::CycNum> {
  enum { IsInteger = 0 };
};

template <>
struct NumTraits<mpq_class> : eigenposet::detail::ExactNumTraits<mpq_class> {
  enum { IsInteger = 0 };
};

template <>
struct NumTraits<mpz_class> : eigenposet::detail::ExactNumTraits<mpz_class> {
  enum { IsInteger = 1 };
};

}  // namespace Eigen
