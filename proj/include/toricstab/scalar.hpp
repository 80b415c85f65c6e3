#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace toricstab {

using Integer = mpz_class;
using Rational = mpq_class;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using LatticeVector = Vector<Integer>;
using RationalVector = Vector<Rational>;

/// Reduced rational p/q. mpq_class does not canonicalise on construction.
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when the denominator is 1. ASCII minus.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Human-facing form: U+2212 for the minus sign.
std::string pretty(const Rational& q);

/// Accepts "p", "-p", "p/q", "-p/q" (q > 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline Rational to_rational(const Integer& z) { return Rational(z); }

RationalVector to_rational(const LatticeVector& v);
Matrix<Rational> to_rational(const Matrix<Integer>& m);

/// Multiplies by the lcm of denominators and divides by the gcd of numerators.
/// The zero vector maps to itself.
LatticeVector clear_denominators(const RationalVector& v);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

}  // namespace toricstab
