#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricstab/scalar.hpp"

namespace toricstab {

/// Polynomial in ε with rational coefficients; coefficient k multiplies ε^k.
class EpsPolynomial {
 public:
  EpsPolynomial() = default;
  explicit EpsPolynomial(std::vector<Rational> coeffs);
  EpsPolynomial(std::initializer_list<Rational> coeffs) : EpsPolynomial(std::vector<Rational>(coeffs)) {}

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& eps) const;

  /// Index of the lowest nonzero coefficient.
  std::optional<std::size_t> lowest_order() const;

  /// Sign of p(ε) for all sufficiently small ε > 0.
  int sign_near_zero() const;

  /// b > 0 such that p has no root in (0, b). The zero polynomial is rejected.
  Rational root_free_bound() const;

  EpsPolynomial& operator+=(const EpsPolynomial& o);
  EpsPolynomial& operator-=(const EpsPolynomial& o);
  friend EpsPolynomial operator+(EpsPolynomial a, const EpsPolynomial& b) { return a += b; }
  friend EpsPolynomial operator-(EpsPolynomial a, const EpsPolynomial& b) { return a -= b; }
  friend EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b);
  friend EpsPolynomial operator*(const Rational& c, const EpsPolynomial& p);
  friend bool operator==(const EpsPolynomial&, const EpsPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// "1 − 10/3·eps + 1·eps^2"; the zero polynomial prints as "0".
std::string to_text(const EpsPolynomial& p);

}  // namespace toricstab
