#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "toricstab/eps_polynomial.hpp"
#include "toricstab/fan.hpp"
#include "toricstab/intersection.hpp"
#include "toricstab/sheaf.hpp"

namespace toricstab {

/// Flipping cone Cone(ν_1, ..., ν_{n+1}) with its wall relation Σ b_i ν_i = 0.
/// All index sets hold global ray indices of the base fan.
struct FlippingCone {
  Cone cone;
  std::vector<Integer> relation;  // b_i, aligned with cone.rays
  std::vector<int> j_plus, j_minus, j_zero;

  /// The same cone with the relation negated (J₊ and J₋ swapped).
  FlippingCone reversed() const;
};

/// Computes and normalizes the relation (primitive; the coefficient of the
/// smallest ray index with b ≠ 0 is made negative) and checks |J±| ≥ 2.
FlippingCone validate_flipping_cone(const Fan& f0, const Cone& c);

struct FlipData {
  FanPtr sigma0;  // X₀
  FanPtr x;       // Σ: σ₀ subdivided by Σ₊ = {σ_J : J₋ ⊄ J}
  FanPtr xprime;  // Σ′: σ₀ subdivided by Σ₋ = {σ_J : J₊ ⊄ J}
  FlippingCone fc;
  InvariantDivisor d_plus;  // Σ_{i ∈ J₊} D_i
};

/// Builds Σ and Σ′, checks both are complete and simplicial, and that −D₊ is
/// relatively ample over σ₀ on Σ and D₊ on Σ′. Throws ComputationError.
FlipData build_flip(FanPtr f0, const FlippingCone& fc);

struct ExceptionalData {
  int dim_exceptional_x;       // dim V(σ_{J₊}) in X
  int dim_exceptional_xprime;  // dim V(σ_{J₋}) in X′
  int dim_contracted;          // dim V(σ_{J₋ ∪ J₊}) in X₀
  FanPtr xr;                   // fan of X_R in N_{σ_{J₋∪J₊}} / N_{σ_{J₋}}
  bool anticanonical_ample;
};

/// Throws ComputationError("flip datum inconsistent: ...") when a check fails.
ExceptionalData exceptional_data(const FlipData& fd);

/// ψ_*: the same filtrations re-hosted on Σ′.
ToricSheaf flip_functor(const FlipData& fd, const ToricSheaf& s);

enum class Side { x, xprime };

/// L₋ε = L₀ − εD₊ on X, or Lε = L₀ + εD₊ on X′.
struct PolarisationFamily {
  std::shared_ptr<const FlipData> flip;
  InvariantDivisor l0;
  Side side = Side::x;

  const Fan& fan() const;
  FanPtr fan_ptr() const;
  /// ∓D₊ with the sign of the side.
  InvariantDivisor direction() const;
  InvariantDivisor at(const Rational& eps) const;
};

/// deg_{L(ε)}(D_ρ) as polynomials in ε, one per ray.
std::vector<EpsPolynomial> degree_polynomials(const PolarisationFamily& pf);

EpsPolynomial epsilon_slope(const PolarisationFamily& pf, const ToricSheaf& s);
/// Slope of the subsheaf induced on F.
EpsPolynomial epsilon_slope(const PolarisationFamily& pf, const ToricSheaf& s, const Subspace& f);

/// Supremum of ε > 0 keeping the family ample; empty when every ε > 0 works.
/// Throws NotAmpleError if L₀ is not ample on X₀, ComputationError if no ε > 0 works.
std::optional<Rational> ample_epsilon_range(const PolarisationFamily& pf);

struct SmallEpsVerdict {
  Stability status = Stability::stable;
  EpsPolynomial slope;
  std::optional<Subspace> witness;
  EpsPolynomial witness_slope;
  std::vector<Subspace> maximizers;
  std::optional<Rational> threshold;  // verdict holds on (0, threshold); empty = all ε > 0
};

SmallEpsVerdict small_eps_verdict(const PolarisationFamily& pf, const ToricSheaf& s);

enum class FlipCase { case_i, case_ii, case_iii, case_iv, first_order_inconclusive };
const char* to_string(FlipCase c);

struct ClassifierReport {
  FlipCase outcome;
  StabilityVerdict constant_term;    // φ_*S against L₀
  std::vector<Subspace> equal_slope;  // proper candidates with μ_{L₀}(F) = μ_{L₀}(E)
  Rational x_e;                       // c₁(E)·D₊·L₀^{n−2} / rank
  std::vector<Rational> x_f;          // same for each equal-slope subspace
  SmallEpsVerdict x_side;
  SmallEpsVerdict xprime_side;
};

/// S lives on fd->x; L₀ must be ample on X₀.
ClassifierReport classify_flip(std::shared_ptr<const FlipData> fd, const InvariantDivisor& l0,
                                         const ToricSheaf& s);

struct LogCheck {
  bool preserves = false;
  bool vacuous = false;
  std::optional<Rational> ratio;                 // c with deg_α = c·deg_α′ off Δ
  std::optional<std::pair<int, int>> witness;    // rays whose ratios differ
  RationalVector degrees_alpha, degrees_alpha_prime;
};

/// α must be ample on X and α′ on X′ (NotAmpleError otherwise).
LogCheck log_preservation_check(const FlipData& fd, const std::vector<int>& delta, const InvariantDivisor& alpha,
                                const InvariantDivisor& alpha_prime);

/// O(d·deg(D_{r2})·D_{r1}) ⊕ O(d·deg(D_{r1})·D_{r2}), d clearing both denominators.
ToricSheaf log_witness_sheaf(FanPtr fan, const RationalVector& degrees, int r1, int r2);

}  // namespace toricstab
