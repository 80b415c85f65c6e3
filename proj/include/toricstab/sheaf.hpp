#pragma once

#include <optional>
#include <vector>

#include "toricstab/fan.hpp"
#include "toricstab/intersection.hpp"
#include "toricstab/subspace.hpp"

namespace toricstab {

struct Jump {
  int level;
  Subspace space;
  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Bounded increasing filtration of E stored as its jumps: E(i) is the space
/// of the last jump with level ≤ i, and 0 below the first jump.
class Filtration {
 public:
  Filtration() = default;
  /// Throws SemanticError unless levels and spaces strictly increase, the
  /// first space is nonzero and the last one is all of E.
  Filtration(Eigen::Index ambient_dim, std::vector<Jump> jumps);

  /// 0 below `level`, E from `level` on.
  static Filtration single_jump(Eigen::Index ambient_dim, int level);

  Eigen::Index ambient_dim() const { return ambient_; }
  const std::vector<Jump>& jumps() const { return jumps_; }

  Subspace at(int level) const;

  /// ι = Σ i (dim E(i) − dim E(i−1)).
  int iota() const;
  /// ι of the induced filtration F ∩ E(i) on a subspace F.
  int iota(const Subspace& f) const;

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  Eigen::Index ambient_ = 0;
  std::vector<Jump> jumps_;
};

/// Klyachko data of an equivariant reflexive sheaf: one filtration of E = Q^rank per ray.
class ToricSheaf {
 public:
  /// Throws SemanticError on a missing filtration or an ambient mismatch.
  ToricSheaf(FanPtr fan, Eigen::Index rank, std::vector<Filtration> filtrations);

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  Eigen::Index rank() const { return rank_; }
  const Filtration& filtration(int ray) const { return filtrations_.at(static_cast<std::size_t>(ray)); }
  const std::vector<Filtration>& filtrations() const { return filtrations_; }

  /// Same fan (by value) and identical filtrations.
  friend bool operator==(const ToricSheaf& a, const ToricSheaf& b);

 private:
  FanPtr fan_;
  Eigen::Index rank_;
  std::vector<Filtration> filtrations_;
};

/// Span(u_ρ) at level −1 and E at level 0 for every ray.
ToricSheaf tangent_sheaf(FanPtr fan);

/// Tangent filtrations off Δ, a single jump at level 0 on Δ.
ToricSheaf log_tangent_sheaf(FanPtr fan, const std::vector<int>& delta);

/// O(Σ a_ρ D_ρ): a single jump at level −a_ρ. Throws SemanticError for non-integer a_ρ.
ToricSheaf rank_one_sheaf(FanPtr fan, const InvariantDivisor& d);

ToricSheaf structure_sheaf(FanPtr fan);

/// Throws SemanticError when the fans differ.
ToricSheaf direct_sum(const ToricSheaf& a, const ToricSheaf& b);

struct IotaData {
  std::vector<int> iota;  // per ray
  InvariantDivisor c1;    // −Σ ι_ρ D_ρ
};

IotaData iota_vector(const ToricSheaf& s);

/// deg_L(D_ρ) per ray. Throws NotAmpleError unless L is ample (or force is set).
RationalVector polarisation_degrees(const Fan& f, const InvariantDivisor& l, bool force = false);

/// −(1/rank) Σ ι_ρ deg_ρ.
Rational slope_for_degrees(const ToricSheaf& s, const RationalVector& degrees);
/// Slope of the subsheaf induced on F (0 ≠ F ⊆ E).
Rational subspace_slope(const ToricSheaf& s, const Subspace& f, const RationalVector& degrees);

Rational slope(const ToricSheaf& s, const InvariantDivisor& l, bool force = false);

/// Filtrations F ∩ E(i), expressed in the canonical basis of F.
/// F = E returns s; F = 0 throws SemanticError.
ToricSheaf induced_subsheaf(const ToricSheaf& s, const Subspace& f);

/// Cap on candidate_subspaces; TORICSTAB_CANDIDATE_CAP overrides the default 10000.
std::size_t default_candidate_cap();

/// Proper nonzero subspaces to test: the filtration spaces closed under
/// pairwise intersection, then under pairwise sum. Empty for rank one.
/// When no filtration space is proper (all single jumps), every line has the
/// same slope and Span(e₁) stands in for all of them.
/// Throws ComputationError("candidate set overflow") past the cap.
std::vector<Subspace> candidate_subspaces(const ToricSheaf& s, std::size_t cap = default_candidate_cap());

enum class Stability { stable, strictly_semistable, unstable };

const char* to_string(Stability s);

struct StabilityVerdict {
  Stability status = Stability::stable;
  Rational slope;                     // of the sheaf itself
  std::optional<Subspace> witness;    // first slope maximizer
  Rational witness_slope;
  std::vector<Subspace> maximizers;   // every candidate reaching the maximal slope
};

StabilityVerdict verdict_for_degrees(const ToricSheaf& s, const RationalVector& degrees);
StabilityVerdict stability_verdict(const ToricSheaf& s, const InvariantDivisor& l, bool force = false);

/// Stable equal-slope summands, or empty when no splitting into stable
/// summands is found among candidate and coordinate subspaces.
std::optional<std::vector<ToricSheaf>> decomposition_for_degrees(const ToricSheaf& s,
                                                                 const RationalVector& degrees);
std::optional<std::vector<ToricSheaf>> polystable_decomposition(const ToricSheaf& s,
                                                                const InvariantDivisor& l,
                                                                bool force = false);

/// Per maximal cone σ: dim ∩_{ρ ∈ σ(1)} E^ρ(⟨m, u_ρ⟩).
std::vector<int> characteristic_function(const ToricSheaf& s, const LatticeVector& m);

/// Every ray of Δ carries a single jump from 0 to E.
bool log_membership(const ToricSheaf& s, const std::vector<int>& delta);

}  // namespace toricstab
