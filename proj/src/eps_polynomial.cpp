#include "toricstab/eps_polynomial.hpp"

#include <algorithm>

#include "toricstab/errors.hpp"

namespace toricstab {

EpsPolynomial::EpsPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void EpsPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational EpsPolynomial::operator()(const Rational& eps) const {
  Rational v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * eps + *it;
  return v;
}

std::optional<std::size_t> EpsPolynomial::lowest_order() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return k;
  return std::nullopt;
}

int EpsPolynomial::sign_near_zero() const {
  const auto k = lowest_order();
  return k ? sign(coeffs_[*k]) : 0;
}

Rational EpsPolynomial::root_free_bound() const {
  const auto k = lowest_order();
  if (!k) throw ComputationError("zero polynomial has no isolated roots");
  const Rational lead = abs(coeffs_[*k]);
  Rational tail = 0;
  for (std::size_t j = *k + 1; j < coeffs_.size(); ++j) tail = std::max(tail, Rational(abs(coeffs_[j])));
  // For 0 < ε < b: |Σ_{j>k} a_j ε^{j-k}| ≤ tail·ε/(1-ε) < |a_k|.
  return lead / (lead + tail);
}

EpsPolynomial& EpsPolynomial::operator+=(const EpsPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

EpsPolynomial& EpsPolynomial::operator-=(const EpsPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

EpsPolynomial operator*(const EpsPolynomial& a, const EpsPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return EpsPolynomial(std::move(c));
}

EpsPolynomial operator*(const Rational& c, const EpsPolynomial& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return EpsPolynomial(std::move(out));
}

std::string to_text(const EpsPolynomial& p) {
  std::string out;
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const bool negative = c[k] < 0;
    if (out.empty())
      out += negative ? "−" : "";
    else
      out += negative ? " − " : " + ";
    out += to_string(Rational(abs(c[k])));
    if (k >= 1) out += "·eps";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace toricstab
