#pragma once

#include <map>
#include <optional>
#include <vector>

#include "toricstab/fan.hpp"

namespace toricstab {

/// Invariant Q-divisor Σ a_ρ D_ρ, stored densely (one coefficient per ray).
using InvariantDivisor = RationalVector;

InvariantDivisor zero_divisor(const Fan& f);
InvariantDivisor prime_divisor(const Fan& f, int ray);

/// div(χ^m) = Σ ⟨m, u_ρ⟩ D_ρ.
InvariantDivisor divisor_of_character(const Fan& f, const RationalVector& m);

/// Which maximal cone supplies the dual vector used to eliminate a repeated ray.
enum class ReductionChoice { first_cone, last_cone };

/// Intersection numbers of invariant divisors on a complete simplicial fan.
/// Monomials in the D_ρ are memoized, so reuse one ring for many products.
class IntersectionRing {
 public:
  /// Throws ComputationError unless f is complete and simplicial.
  /// The fan must outlive the ring.
  explicit IntersectionRing(const Fan& f, ReductionChoice choice = ReductionChoice::first_cone);

  const Fan& fan() const { return *fan_; }

  /// D_{r_1} ··· D_{r_n} for a multiset of exactly n rays.
  Rational monomial(std::vector<int> rays);

  /// D_1 ··· D_n, expanded multilinearly.
  Rational intersect(const std::vector<InvariantDivisor>& divisors);

  /// D · L^{n-1}.
  Rational degree(const InvariantDivisor& d, const InvariantDivisor& l);

  /// deg_L(D_ρ) for every ray.
  RationalVector degrees(const InvariantDivisor& l);

 private:
  Rational reduce(const std::vector<int>& sorted);
  void expand(const std::vector<InvariantDivisor>& divisors, std::size_t pos, std::vector<int>& picked,
              const Rational& coeff, Rational& total);
  bool in_common_cone(const std::vector<int>& rays) const;

  const Fan* fan_;
  ReductionChoice choice_;
  std::vector<Matrix<Rational>> dual_;  // per maximal cone: column j pairs to 1 with its j-th ray
  std::vector<Rational> inverse_mult_;
  std::map<std::vector<int>, Rational> memo_;
};

Rational intersection_number(const Fan& f, const std::vector<InvariantDivisor>& divisors,
                             ReductionChoice choice = ReductionChoice::first_cone);
Rational degree(const Fan& f, const InvariantDivisor& d, const InvariantDivisor& l);

/// Per maximal cone σ, m_σ with ⟨m_σ, u_ρ⟩ = −a_ρ for ρ ∈ σ(1).
struct CartierData {
  std::vector<RationalVector> m;
};

/// Empty when the divisor is not Q-Cartier. Requires full-dimensional maximal cones.
std::optional<CartierData> cartier_data(const Fan& f, const InvariantDivisor& d);

struct CartierClass {
  bool q_cartier = false;
  bool nef = false;
  bool ample = false;
  std::optional<CartierData> data;
};

/// Q-Cartier test plus nef/ample via ⟨m_σ, u_ρ⟩ ≥ −a_ρ (> for ample) for all
/// maximal σ and ρ ∉ σ(1). Throws ComputationError for an incomplete fan.
CartierClass cartier_and_ample(const Fan& f, const InvariantDivisor& d);

/// Linear combination helper: Σ c_i D_i.
InvariantDivisor combine(const std::vector<std::pair<Rational, InvariantDivisor>>& terms);

}  // namespace toricstab
