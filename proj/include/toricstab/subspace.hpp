#pragma once

#include <compare>
#include <string>
#include <vector>

#include "toricstab/scalar.hpp"

namespace toricstab {

/// A linear subspace of Q^n in canonical form: reduced row echelon basis,
/// each row then scaled to a primitive integer vector (positive leading
/// entry). Equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Eigen::Index ambient_dim);
  static Subspace full(Eigen::Index ambient_dim);
  /// Span of the rows of `generators` (any number of rows, possibly dependent).
  static Subspace span(const Matrix<Rational>& generators);
  static Subspace span(const std::vector<RationalVector>& generators, Eigen::Index ambient_dim);
  static Subspace line(const RationalVector& v);

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Canonical basis rows.
  const Matrix<Rational>& basis() const { return basis_; }

  bool contains(const RationalVector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  /// Total order: by ambient dim, then dim, then basis entries.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  std::string to_string() const;

 private:
  Subspace(Eigen::Index ambient, Matrix<Rational> basis)
      : ambient_(ambient), basis_(std::move(basis)) {}

  Eigen::Index ambient_ = 0;
  Matrix<Rational> basis_;
};

enum class MeetJoin { intersect, sum };

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// Throws ComputationError on ambient mismatch.
Subspace subspace_meet_join(MeetJoin mode, const Subspace& a, const Subspace& b);

/// { m : <m, v> = 0 for all v in a } for the standard pairing.
Subspace annihilator(const Subspace& a);

/// Coordinates of w ⊆ frame with respect to the canonical basis of `frame`;
/// the result lives in Q^{dim frame}.
Subspace coordinates_in(const Subspace& w, const Subspace& frame);

/// a ⊕ b inside Q^{n_a + n_b} (a in the leading block).
Subspace block_sum(const Subspace& a, const Subspace& b);

}  // namespace toricstab
