#include "toricstab/intersection.hpp"

#include <algorithm>

#include "toricstab/errors.hpp"
#include "toricstab/lattice.hpp"

namespace toricstab {

InvariantDivisor zero_divisor(const Fan& f) { return InvariantDivisor::Zero(f.ray_count()); }

InvariantDivisor prime_divisor(const Fan& f, int ray) {
  if (ray < 0 || ray >= f.ray_count()) throw SemanticError("unknown ray " + std::to_string(ray));
  InvariantDivisor d = zero_divisor(f);
  d(ray) = 1;
  return d;
}

InvariantDivisor divisor_of_character(const Fan& f, const RationalVector& m) {
  if (m.size() != f.rank()) throw SemanticError("character has wrong length");
  InvariantDivisor d(f.ray_count());
  for (int r = 0; r < f.ray_count(); ++r) d(r) = to_rational(f.ray(r)).dot(m);
  return d;
}

InvariantDivisor combine(const std::vector<std::pair<Rational, InvariantDivisor>>& terms) {
  if (terms.empty()) return {};
  InvariantDivisor out = InvariantDivisor::Zero(terms.front().second.size());
  for (const auto& [c, d] : terms) out += c * d;
  return out;
}

IntersectionRing::IntersectionRing(const Fan& f, ReductionChoice choice) : fan_(&f), choice_(choice) {
  const auto& rep = f.report();
  if (!rep.is_complete || !rep.is_simplicial)
    throw ComputationError("intersection numbers need a complete simplicial fan");
  for (const auto& c : f.maximal_cones()) {
    const Matrix<Rational> g = f.rational_generators(c);
    dual_.push_back(inverse(g));
    inverse_mult_.push_back(Rational(1) / Rational(multiplicity(f, c)));
  }
}

bool IntersectionRing::in_common_cone(const std::vector<int>& rays) const {
  for (const auto& c : fan_->maximal_cones())
    if (std::all_of(rays.begin(), rays.end(), [&](int r) { return c.contains_ray(r); })) return true;
  return false;
}

Rational IntersectionRing::monomial(std::vector<int> rays) {
  if (static_cast<int>(rays.size()) != fan_->rank())
    throw ComputationError("need exactly " + std::to_string(fan_->rank()) + " divisors");
  std::sort(rays.begin(), rays.end());
  return reduce(rays);
}

Rational IntersectionRing::reduce(const std::vector<int>& ms) {
  if (auto it = memo_.find(ms); it != memo_.end()) return it->second;

  std::vector<int> distinct = ms;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  // In a simplicial fan every subset of a cone's rays spans a face.
  int cone_index = -1;
  const auto& cones = fan_->maximal_cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (!std::all_of(distinct.begin(), distinct.end(), [&](int r) { return cones[i].contains_ray(r); }))
      continue;
    cone_index = static_cast<int>(i);
    if (choice_ == ReductionChoice::first_cone) break;
  }

  Rational value = 0;
  if (cone_index >= 0) {
    const Cone& sigma = fan_->maximal_cones()[static_cast<std::size_t>(cone_index)];
    if (distinct.size() == ms.size()) {
      // n distinct rays spanning a cone of a simplicial fan: the cone is maximal.
      value = inverse_mult_[static_cast<std::size_t>(cone_index)];
    } else {
      int pick = distinct.front();
      long best = 0;
      for (int r : distinct) {
        const long cnt = std::count(ms.begin(), ms.end(), r);
        if (cnt > best) best = cnt, pick = r;
      }
      const auto pos = std::find(sigma.rays.begin(), sigma.rays.end(), pick) - sigma.rays.begin();
      const RationalVector m = dual_[static_cast<std::size_t>(cone_index)].col(pos);
      // D_pick ~ −Σ_{ρ ∉ σ} ⟨m, u_ρ⟩ D_ρ.
      std::vector<int> rest = ms;
      rest.erase(std::find(rest.begin(), rest.end(), pick));
      for (int r = 0; r < fan_->ray_count(); ++r) {
        if (sigma.contains_ray(r)) continue;
        const Rational pairing = to_rational(fan_->ray(r)).dot(m);
        if (pairing == 0) continue;
        std::vector<int> next = rest;
        next.insert(std::upper_bound(next.begin(), next.end(), r), r);
        value -= pairing * reduce(next);
      }
    }
  }
  memo_.emplace(ms, value);
  return value;
}

void IntersectionRing::expand(const std::vector<InvariantDivisor>& divisors, std::size_t pos,
                              std::vector<int>& picked, const Rational& coeff, Rational& total) {
  if (pos == divisors.size()) {
    total += coeff * monomial(picked);
    return;
  }
  const InvariantDivisor& d = divisors[pos];
  for (int r = 0; r < d.size(); ++r) {
    if (d(r) == 0) continue;
    picked.push_back(r);
    if (in_common_cone(picked)) expand(divisors, pos + 1, picked, coeff * d(r), total);
    picked.pop_back();
  }
}

Rational IntersectionRing::intersect(const std::vector<InvariantDivisor>& divisors) {
  if (static_cast<int>(divisors.size()) != fan_->rank())
    throw ComputationError("need exactly " + std::to_string(fan_->rank()) + " divisors");
  for (const auto& d : divisors)
    if (d.size() != fan_->ray_count()) throw SemanticError("divisor has wrong number of coefficients");
  Rational total = 0;
  std::vector<int> picked;
  expand(divisors, 0, picked, Rational(1), total);
  return total;
}

Rational IntersectionRing::degree(const InvariantDivisor& d, const InvariantDivisor& l) {
  std::vector<InvariantDivisor> factors(static_cast<std::size_t>(fan_->rank()), l);
  if (factors.empty()) return 0;
  factors[0] = d;
  return intersect(factors);
}

RationalVector IntersectionRing::degrees(const InvariantDivisor& l) {
  RationalVector out(fan_->ray_count());
  for (int r = 0; r < fan_->ray_count(); ++r) out(r) = degree(prime_divisor(*fan_, r), l);
  return out;
}

Rational intersection_number(const Fan& f, const std::vector<InvariantDivisor>& divisors,
                             ReductionChoice choice) {
  IntersectionRing ring(f, choice);
  return ring.intersect(divisors);
}

Rational degree(const Fan& f, const InvariantDivisor& d, const InvariantDivisor& l) {
  IntersectionRing ring(f);
  return ring.degree(d, l);
}

std::optional<CartierData> cartier_data(const Fan& f, const InvariantDivisor& d) {
  if (d.size() != f.ray_count()) throw SemanticError("divisor has wrong number of coefficients");
  CartierData data;
  for (const auto& c : f.maximal_cones()) {
    if (cone_dimension(f, c) != f.rank())
      throw ComputationError("Cartier data needs full-dimensional maximal cones");
    const Matrix<Rational> g = f.rational_generators(c);
    RationalVector rhs(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = -d(c.rays[i]);
    RationalVector m;
    if (!solve<Rational>(g, rhs, m)) return std::nullopt;
    data.m.push_back(std::move(m));
  }
  return data;
}

CartierClass cartier_and_ample(const Fan& f, const InvariantDivisor& d) {
  if (!f.report().is_complete) throw ComputationError("ampleness test needs a complete fan");
  CartierClass out;
  out.data = cartier_data(f, d);
  if (!out.data) return out;
  out.q_cartier = true;
  out.nef = out.ample = true;
  const auto& cones = f.maximal_cones();
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (int r = 0; r < f.ray_count(); ++r) {
      if (cones[i].contains_ray(r)) continue;
      const Rational lhs = to_rational(f.ray(r)).dot(out.data->m[i]);
      if (lhs < -d(r)) out.nef = false;
      if (lhs <= -d(r)) out.ample = false;
    }
  if (!out.nef) out.ample = false;
  return out;
}

}  // namespace toricstab
