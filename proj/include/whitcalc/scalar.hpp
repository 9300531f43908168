#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>

namespace whitcalc {

// Exact arbitrary-precision integer. Everything in this library is computed
// over Z (or F_2 after reduction); no floating point anywhere.
using Int = mpz_class;

inline int sign_of(const Int& x) { return sgn(x); }

inline Int abs_of(const Int& x) { return abs(x); }

inline std::string to_string(const Int& x) { return x.get_str(); }

inline Int int_from_string(const std::string& s) { return Int(s, 10); }

// True quotient of truncated division, matching C++ semantics for mpz_class.
inline Int tdiv(const Int& a, const Int& b) { return a / b; }

inline bool is_even(const Int& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

}  // namespace whitcalc

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = long;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 100,
  };
};

// Allow plain integer literals in matrix expressions.
template <typename BinaryOp>
struct ScalarBinaryOpTraits<int, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, int, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<long, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, long, BinaryOp> {
  typedef mpz_class ReturnType;
};

}  // namespace Eigen
