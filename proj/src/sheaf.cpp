#include "toricstab/sheaf.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "toricstab/errors.hpp"

namespace toricstab {

Filtration::Filtration(Eigen::Index ambient_dim, std::vector<Jump> jumps)
    : ambient_(ambient_dim), jumps_(std::move(jumps)) {
  if (jumps_.empty()) throw SemanticError("filtration has no jumps");
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const auto& j = jumps_[k];
    if (j.space.ambient_dim() != ambient_) throw SemanticError("filtration space has wrong ambient dimension");
    if (k == 0) {
      if (j.space.is_zero()) throw SemanticError("filtration not increasing: first jump is to 0");
      continue;
    }
    const auto& prev = jumps_[k - 1];
    if (j.level <= prev.level) throw SemanticError("filtration levels not strictly increasing");
    if (!j.space.contains(prev.space) || j.space.dim() == prev.space.dim())
      throw SemanticError("filtration not increasing: spaces must strictly grow");
  }
  if (!jumps_.back().space.is_full()) throw SemanticError("filtration does not reach the whole space");
}

Filtration Filtration::single_jump(Eigen::Index ambient_dim, int level) {
  return Filtration(ambient_dim, {{level, Subspace::full(ambient_dim)}});
}

Subspace Filtration::at(int level) const {
  Subspace out = Subspace::zero(ambient_);
  for (const auto& j : jumps_) {
    if (j.level > level) break;
    out = j.space;
  }
  return out;
}

int Filtration::iota() const {
  int total = 0;
  Eigen::Index prev = 0;
  for (const auto& j : jumps_) {
    total += j.level * static_cast<int>(j.space.dim() - prev);
    prev = j.space.dim();
  }
  return total;
}

int Filtration::iota(const Subspace& f) const {
  int total = 0;
  Eigen::Index prev = 0;
  for (const auto& j : jumps_) {
    const Eigen::Index d = intersect(f, j.space).dim();
    total += j.level * static_cast<int>(d - prev);
    prev = d;
  }
  return total;
}

ToricSheaf::ToricSheaf(FanPtr fan, Eigen::Index rank, std::vector<Filtration> filtrations)
    : fan_(std::move(fan)), rank_(rank), filtrations_(std::move(filtrations)) {
  if (!fan_) throw SemanticError("sheaf without a fan");
  if (rank_ < 1) throw SemanticError("sheaf rank must be positive");
  if (static_cast<int>(filtrations_.size()) != fan_->ray_count())
    throw SemanticError("sheaf needs one filtration per ray");
  for (const auto& f : filtrations_)
    if (f.ambient_dim() != rank_) throw SemanticError("filtration ambient dimension differs from the rank");
}

bool operator==(const ToricSheaf& a, const ToricSheaf& b) {
  return a.rank_ == b.rank_ && *a.fan_ == *b.fan_ && a.filtrations_ == b.filtrations_;
}

ToricSheaf tangent_sheaf(FanPtr fan) { return log_tangent_sheaf(std::move(fan), {}); }

ToricSheaf log_tangent_sheaf(FanPtr fan, const std::vector<int>& delta) {
  const Eigen::Index n = fan->rank();
  std::vector<Filtration> filts;
  for (int r = 0; r < fan->ray_count(); ++r) {
    if (std::find(delta.begin(), delta.end(), r) != delta.end()) {
      filts.push_back(Filtration::single_jump(n, 0));
      continue;
    }
    const Subspace line = Subspace::line(to_rational(fan->ray(r)));
    if (line.is_full())
      filts.push_back(Filtration::single_jump(n, -1));
    else
      filts.emplace_back(n, std::vector<Jump>{{-1, line}, {0, Subspace::full(n)}});
  }
  for (int r : delta)
    if (r < 0 || r >= fan->ray_count()) throw SemanticError("unknown ray " + std::to_string(r));
  return ToricSheaf(std::move(fan), n, std::move(filts));
}

ToricSheaf rank_one_sheaf(FanPtr fan, const InvariantDivisor& d) {
  if (d.size() != fan->ray_count()) throw SemanticError("divisor has wrong number of coefficients");
  std::vector<Filtration> filts;
  for (int r = 0; r < fan->ray_count(); ++r) {
    if (d(r).get_den() != 1) throw SemanticError("rank-one sheaf needs integer coefficients");
    const Integer a = d(r).get_num();
    if (!a.fits_sint_p()) throw SemanticError("coefficient out of range");
    filts.push_back(Filtration::single_jump(1, -static_cast<int>(a.get_si())));
  }
  return ToricSheaf(std::move(fan), 1, std::move(filts));
}

ToricSheaf structure_sheaf(FanPtr fan) {
  const InvariantDivisor zero = zero_divisor(*fan);
  return rank_one_sheaf(std::move(fan), zero);
}

ToricSheaf direct_sum(const ToricSheaf& a, const ToricSheaf& b) {
  if (!(a.fan() == b.fan())) throw SemanticError("direct sum of sheaves on different fans");
  const Eigen::Index n = a.rank() + b.rank();
  std::vector<Filtration> filts;
  for (int r = 0; r < a.fan().ray_count(); ++r) {
    std::set<int> levels;
    for (const auto& j : a.filtration(r).jumps()) levels.insert(j.level);
    for (const auto& j : b.filtration(r).jumps()) levels.insert(j.level);
    std::vector<Jump> jumps;
    for (int l : levels) {
      Subspace s = block_sum(a.filtration(r).at(l), b.filtration(r).at(l));
      if (jumps.empty() ? !s.is_zero() : s.dim() > jumps.back().space.dim())
        jumps.push_back({l, std::move(s)});
    }
    filts.emplace_back(n, std::move(jumps));
  }
  return ToricSheaf(a.fan_ptr(), n, std::move(filts));
}

IotaData iota_vector(const ToricSheaf& s) {
  IotaData out;
  out.c1 = zero_divisor(s.fan());
  for (int r = 0; r < s.fan().ray_count(); ++r) {
    const int i = s.filtration(r).iota();
    out.iota.push_back(i);
    out.c1(r) = -i;
  }
  return out;
}

RationalVector polarisation_degrees(const Fan& f, const InvariantDivisor& l, bool force) {
  if (!force && !cartier_and_ample(f, l).ample) throw NotAmpleError("polarisation is not ample");
  IntersectionRing ring(f);
  return ring.degrees(l);
}

namespace {

Rational weighted_slope(const std::vector<int>& iota, Eigen::Index rank, const RationalVector& degrees) {
  Rational total = 0;
  for (std::size_t r = 0; r < iota.size(); ++r) total += iota[r] * degrees(static_cast<Eigen::Index>(r));
  return -total / Rational(rank);
}

void check_degrees(const ToricSheaf& s, const RationalVector& degrees) {
  if (degrees.size() != s.fan().ray_count()) throw SemanticError("degree vector has wrong length");
}

}  // namespace

Rational slope_for_degrees(const ToricSheaf& s, const RationalVector& degrees) {
  check_degrees(s, degrees);
  return weighted_slope(iota_vector(s).iota, s.rank(), degrees);
}

Rational subspace_slope(const ToricSheaf& s, const Subspace& f, const RationalVector& degrees) {
  check_degrees(s, degrees);
  if (f.is_zero()) throw SemanticError("slope of the zero subspace");
  std::vector<int> iota;
  for (int r = 0; r < s.fan().ray_count(); ++r) iota.push_back(s.filtration(r).iota(f));
  return weighted_slope(iota, f.dim(), degrees);
}

Rational slope(const ToricSheaf& s, const InvariantDivisor& l, bool force) {
  return slope_for_degrees(s, polarisation_degrees(s.fan(), l, force));
}

ToricSheaf induced_subsheaf(const ToricSheaf& s, const Subspace& f) {
  if (f.ambient_dim() != s.rank()) throw SemanticError("subspace has wrong ambient dimension");
  if (f.is_zero()) throw SemanticError("induced subsheaf on the zero subspace");
  if (f.is_full()) return s;
  std::vector<Filtration> filts;
  for (const auto& filt : s.filtrations()) {
    std::vector<Jump> jumps;
    for (const auto& j : filt.jumps()) {
      Subspace w = coordinates_in(intersect(f, j.space), f);
      if (jumps.empty() ? !w.is_zero() : w.dim() > jumps.back().space.dim())
        jumps.push_back({j.level, std::move(w)});
    }
    filts.emplace_back(f.dim(), std::move(jumps));
  }
  return ToricSheaf(s.fan_ptr(), f.dim(), std::move(filts));
}

std::size_t default_candidate_cap() {
  if (const char* env = std::getenv("TORICSTAB_CANDIDATE_CAP")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 10000;
}

namespace {

// Closes `items` under a binary operation, keeping proper nonzero results.
void close_under(std::vector<Subspace>& items, std::set<Subspace>& seen, MeetJoin mode, std::size_t cap) {
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Subspace s = subspace_meet_join(mode, items[i], items[j]);
      if (s.is_zero() || s.is_full() || !seen.insert(s).second) continue;
      if (seen.size() > cap) throw ComputationError("candidate set overflow");
      items.push_back(std::move(s));
    }
}

}  // namespace

std::vector<Subspace> candidate_subspaces(const ToricSheaf& s, std::size_t cap) {
  if (s.rank() < 2) return {};
  std::set<Subspace> seen;
  std::vector<Subspace> items;
  for (const auto& filt : s.filtrations())
    for (const auto& j : filt.jumps())
      if (!j.space.is_full() && seen.insert(j.space).second) items.push_back(j.space);
  if (seen.size() > cap) throw ComputationError("candidate set overflow");
  close_under(items, seen, MeetJoin::intersect, cap);
  close_under(items, seen, MeetJoin::sum, cap);
  if (seen.empty()) {
    RationalVector e1 = RationalVector::Zero(s.rank());
    e1(0) = 1;
    seen.insert(Subspace::line(e1));
  }
  return {seen.begin(), seen.end()};
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::strictly_semistable: return "strictly semistable";
    case Stability::unstable: return "unstable";
  }
  return "?";
}

StabilityVerdict verdict_for_degrees(const ToricSheaf& s, const RationalVector& degrees) {
  StabilityVerdict v;
  v.slope = slope_for_degrees(s, degrees);
  const auto candidates = candidate_subspaces(s);
  if (candidates.empty()) return v;
  std::vector<Rational> slopes;
  for (const auto& f : candidates) slopes.push_back(subspace_slope(s, f, degrees));
  const Rational best = *std::max_element(slopes.begin(), slopes.end());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (slopes[i] == best) v.maximizers.push_back(candidates[i]);
  v.witness = v.maximizers.front();
  v.witness_slope = best;
  if (best > v.slope)
    v.status = Stability::unstable;
  else if (best == v.slope)
    v.status = Stability::strictly_semistable;
  return v;
}

StabilityVerdict stability_verdict(const ToricSheaf& s, const InvariantDivisor& l, bool force) {
  return verdict_for_degrees(s, polarisation_degrees(s.fan(), l, force));
}

namespace {

// E(i) = (F ∩ E(i)) ⊕ (G ∩ E(i)) at every jump of every ray.
bool splits(const ToricSheaf& s, const Subspace& f, const Subspace& g) {
  for (const auto& filt : s.filtrations())
    for (const auto& j : filt.jumps())
      if (intersect(f, j.space).dim() + intersect(g, j.space).dim() != j.space.dim()) return false;
  return true;
}

std::vector<Subspace> coordinate_subspaces(Eigen::Index n) {
  std::vector<Subspace> out;
  if (n > 12) return out;
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    std::vector<RationalVector> gens;
    for (Eigen::Index i = 0; i < n; ++i)
      if (mask & (1UL << i)) {
        RationalVector e = RationalVector::Zero(n);
        e(i) = 1;
        gens.push_back(e);
      }
    out.push_back(Subspace::span(gens, n));
  }
  return out;
}

}  // namespace

std::optional<std::vector<ToricSheaf>> decomposition_for_degrees(const ToricSheaf& s,
                                                                 const RationalVector& degrees) {
  const StabilityVerdict v = verdict_for_degrees(s, degrees);
  if (v.status == Stability::stable) return std::vector<ToricSheaf>{s};
  if (v.status == Stability::unstable) return std::nullopt;

  const auto candidates = candidate_subspaces(s);
  std::set<Subspace> pool(candidates.begin(), candidates.end());
  for (auto& c : coordinate_subspaces(s.rank())) pool.insert(std::move(c));

  for (const auto& f : candidates) {
    if (subspace_slope(s, f, degrees) != v.slope) continue;
    for (const auto& g : pool) {
      if (g.dim() + f.dim() != s.rank() || !intersect(f, g).is_zero() || !splits(s, f, g)) continue;
      auto left = decomposition_for_degrees(induced_subsheaf(s, f), degrees);
      if (!left) continue;
      auto right = decomposition_for_degrees(induced_subsheaf(s, g), degrees);
      if (!right) continue;
      left->insert(left->end(), right->begin(), right->end());
      return left;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<ToricSheaf>> polystable_decomposition(const ToricSheaf& s,
                                                                const InvariantDivisor& l, bool force) {
  return decomposition_for_degrees(s, polarisation_degrees(s.fan(), l, force));
}

std::vector<int> characteristic_function(const ToricSheaf& s, const LatticeVector& m) {
  if (m.size() != s.fan().rank()) throw SemanticError("character has wrong length");
  std::vector<int> out;
  for (const auto& c : s.fan().maximal_cones()) {
    Subspace acc = Subspace::full(s.rank());
    for (int r : c.rays) {
      const Integer pairing = s.fan().ray(r).dot(m);
      acc = intersect(acc, s.filtration(r).at(static_cast<int>(pairing.get_si())));
    }
    out.push_back(static_cast<int>(acc.dim()));
  }
  return out;
}

bool log_membership(const ToricSheaf& s, const std::vector<int>& delta) {
  for (int r : delta) {
    if (r < 0 || r >= s.fan().ray_count()) throw SemanticError("unknown ray " + std::to_string(r));
    if (s.filtration(r).jumps().size() != 1) return false;
  }
  return true;
}

}  // namespace toricstab
