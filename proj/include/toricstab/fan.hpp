#pragma once

#include <memory>
#include <string>
#include <vector>

#include "toricstab/scalar.hpp"

namespace toricstab {

/// A cone of a fan, referenced by sorted global ray indices.
struct Cone {
  std::vector<int> rays;

  Cone() = default;
  Cone(std::vector<int> r);  // sorts and deduplicates
  Cone(std::initializer_list<int> r) : Cone(std::vector<int>(r)) {}

  std::size_t size() const { return rays.size(); }
  bool contains_ray(int r) const;
  bool contains(const Cone& other) const;
  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone&, const Cone&) = default;
};

struct FanReport {
  bool is_valid = false;
  bool is_simplicial = false;
  bool is_complete = false;
  int ray_count = 0;
  int max_cone_count = 0;
  std::vector<std::string> diagnostics;
};

/// A rational polyhedral fan given by primitive rays and maximal cones.
/// Construction rejects malformed data (bad lengths, non-primitive or
/// repeated rays, out-of-range indices) with SemanticError; geometric
/// problems are reported through report().
class Fan {
 public:
  Fan(int rank, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones);

  int rank() const { return rank_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(int i) const { return rays_.at(static_cast<std::size_t>(i)); }
  const std::vector<Cone>& maximal_cones() const { return cones_; }
  const FanReport& report() const { return report_; }

  /// Rows are the generators of `c`.
  Matrix<Integer> generator_matrix(const Cone& c) const;
  Matrix<Rational> rational_generators(const Cone& c) const;

  /// Is `c` a face of one of the maximal cones?
  bool has_cone(const Cone& c) const;

  /// Index of the first (or last) maximal cone containing every ray of `c`
  /// as a face, or -1.
  int find_maximal_cone(const Cone& c, bool last = false) const;

  /// Same rank, rays and set of maximal cones.
  friend bool operator==(const Fan& a, const Fan& b);

 private:
  int rank_;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
  FanReport report_;
};

using FanPtr = std::shared_ptr<const Fan>;

FanPtr make_fan(int rank, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones);

FanReport analyze_fan(const Fan& f);

/// Dimension of the linear span of the cone's generators.
int cone_dimension(const Fan& f, const Cone& c);

/// Ray sets of the facets of a cone (relative to its own span).
std::vector<Cone> cone_facets(const Fan& f, const Cone& c);

/// Is `face` a face of the cone `c` (both given by ray indices of f)?
bool is_face_of(const Fan& f, const Cone& face, const Cone& c);

/// Index of the lattice generated by a simplicial cone's rays in span ∩ N.
/// Throws ComputationError for non-simplicial cones.
Integer multiplicity(const Fan& f, const Cone& c);

struct StarQuotient {
  Fan fan;                      // lives in N / N_c
  Matrix<Integer> projection;   // (n - dim c) x n, surjective onto Z^{n - dim c}
  std::vector<int> ray_origin;  // star ray -> ray of f it comes from
};

/// Fan of the orbit closure V(c): images of the cones containing c in N/N_c.
/// Throws ComputationError if c is not a cone of f.
StarQuotient star_quotient_fan(const Fan& f, const Cone& c);

LatticeVector lattice_vector(std::initializer_list<long> coords);

}  // namespace toricstab
