#include "toricstab/flip.hpp"

#include <algorithm>

#include "toricstab/errors.hpp"
#include "toricstab/lattice.hpp"

namespace toricstab {

FlippingCone FlippingCone::reversed() const {
  FlippingCone out = *this;
  for (auto& b : out.relation) b = -b;
  std::swap(out.j_plus, out.j_minus);
  return out;
}

FlippingCone validate_flipping_cone(const Fan& f0, const Cone& c) {
  const int n = f0.rank();
  if (static_cast<int>(c.size()) != n + 1)
    throw SemanticError("a flipping cone needs exactly " + std::to_string(n + 1) + " generators");
  for (int r : c.rays)
    if (r < 0 || r >= f0.ray_count()) throw SemanticError("unknown ray " + std::to_string(r));
  if (!f0.has_cone(c)) throw ComputationError("flipping cone is not a cone of the fan");
  const Matrix<Rational> g = f0.rational_generators(c);
  if (rank(g) != n) throw ComputationError("flipping cone is not full-dimensional");
  const Matrix<Rational> ker = kernel_basis<Rational>(g.transpose());
  if (ker.rows() != 1) throw ComputationError("relation not unique");
  LatticeVector b = clear_denominators(ker.row(0).transpose());
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (b(i) == 0) continue;
    if (b(i) > 0) b = -b;
    break;
  }
  FlippingCone fc;
  fc.cone = c;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const int ray = c.rays[static_cast<std::size_t>(i)];
    fc.relation.push_back(b(i));
    if (b(i) > 0)
      fc.j_plus.push_back(ray);
    else if (b(i) < 0)
      fc.j_minus.push_back(ray);
    else
      fc.j_zero.push_back(ray);
  }
  if (fc.j_plus.size() < 2 || fc.j_minus.size() < 2)
    throw ComputationError("not a flipping cone (condition 3)");
  return fc;
}

namespace {

std::vector<int> without(const std::vector<int>& rays, int drop) {
  std::vector<int> out;
  for (int r : rays)
    if (r != drop) out.push_back(r);
  return out;
}

void require_complete_simplicial(const Fan& f, const char* name) {
  const auto& rep = f.report();
  if (rep.is_valid && rep.is_complete && rep.is_simplicial) return;
  std::string msg = std::string(name) + " is not a complete simplicial fan";
  for (const auto& d : rep.diagnostics) msg += "; " + d;
  throw ComputationError(msg);
}

// Strict convexity of the support function of d on the cones of `pieces`,
// compared against the rays of σ₀ (relative ampleness over U_{σ₀}).
bool relatively_ample(const Fan& f, const std::vector<Cone>& pieces, const Cone& sigma0, const InvariantDivisor& d) {
  for (const auto& sigma : pieces) {
    const Matrix<Rational> g = f.rational_generators(sigma);
    RationalVector rhs(static_cast<Eigen::Index>(sigma.size()));
    for (std::size_t i = 0; i < sigma.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = -d(sigma.rays[i]);
    RationalVector m;
    if (!solve<Rational>(g, rhs, m)) return false;
    for (int r : sigma0.rays) {
      if (sigma.contains_ray(r)) continue;
      if (to_rational(f.ray(r)).dot(m) <= -d(r)) return false;
    }
  }
  return true;
}

}  // namespace

FlipData build_flip(FanPtr f0, const FlippingCone& fc) {
  if (!f0->report().is_valid || !f0->report().is_complete)
    throw ComputationError("base fan is not a complete fan");
  std::vector<Cone> outside;
  bool found = false;
  for (const auto& c : f0->maximal_cones()) {
    if (c == fc.cone)
      found = true;
    else
      outside.push_back(c);
  }
  if (!found) throw ComputationError("flipping cone is not a maximal cone of the base fan");

  std::vector<Cone> plus, minus;
  for (int i : fc.j_minus) plus.emplace_back(without(fc.cone.rays, i));
  for (int i : fc.j_plus) minus.emplace_back(without(fc.cone.rays, i));
  std::vector<Cone> x_cones = outside, xp_cones = outside;
  x_cones.insert(x_cones.end(), plus.begin(), plus.end());
  xp_cones.insert(xp_cones.end(), minus.begin(), minus.end());

  FlipData fd;
  fd.sigma0 = f0;
  fd.x = make_fan(f0->rank(), f0->rays(), x_cones);
  fd.xprime = make_fan(f0->rank(), f0->rays(), xp_cones);
  require_complete_simplicial(*fd.x, "flipped fan Σ");
  require_complete_simplicial(*fd.xprime, "flipped fan Σ′");
  fd.fc = fc;
  fd.d_plus = zero_divisor(*f0);
  for (int i : fc.j_plus) fd.d_plus(i) = 1;

  if (!relatively_ample(*fd.x, plus, fc.cone, -fd.d_plus))
    throw ComputationError("−D₊ is not relatively ample on Σ");
  if (!relatively_ample(*fd.xprime, minus, fc.cone, fd.d_plus))
    throw ComputationError("D₊ is not relatively ample on Σ′");
  return fd;
}

ExceptionalData exceptional_data(const FlipData& fd) {
  auto inconsistent = [](const std::string& what) {
    return ComputationError("flip datum inconsistent: " + what);
  };
  const int n = fd.sigma0->rank();
  const auto& fc = fd.fc;
  ExceptionalData out;

  out.dim_exceptional_x = star_quotient_fan(*fd.x, Cone(fc.j_plus)).fan.rank();
  out.dim_exceptional_xprime = star_quotient_fan(*fd.xprime, Cone(fc.j_minus)).fan.rank();
  std::vector<int> moving = fc.j_plus;
  moving.insert(moving.end(), fc.j_minus.begin(), fc.j_minus.end());
  out.dim_contracted = star_quotient_fan(*fd.sigma0, Cone(moving)).fan.rank();
  if (out.dim_exceptional_x != n - static_cast<int>(fc.j_plus.size()))
    throw inconsistent("exceptional locus of X has the wrong dimension");
  if (out.dim_exceptional_xprime != n - static_cast<int>(fc.j_minus.size()))
    throw inconsistent("exceptional locus of X′ has the wrong dimension");
  if (out.dim_contracted != static_cast<int>(fc.j_zero.size()))
    throw inconsistent("contracted locus has the wrong dimension");

  // N_{σ_{J₋∪J₊}} as Z^k through a saturated basis, then modulo N_{σ_{J₋}}.
  const Matrix<Integer> span_basis = saturation(fd.sigma0->generator_matrix(Cone(moving)));
  const Matrix<Rational> bt = to_rational(span_basis).transpose();
  auto coords = [&](int ray) {
    RationalVector x;
    if (!solve<Rational>(bt, to_rational(fd.sigma0->ray(ray)), x)) throw inconsistent("ray outside its span");
    LatticeVector z(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i).get_den() != 1) throw inconsistent("lattice point with fractional coordinates");
      z(i) = x(i).get_num();
    }
    return z;
  };
  std::vector<LatticeVector> minus_coords;
  for (int r : fc.j_minus) minus_coords.push_back(coords(r));
  const Matrix<Integer> projection =
      integer_kernel(stack_rows(minus_coords, span_basis.rows()));
  std::vector<LatticeVector> rays;
  for (int r : fc.j_plus) {
    const LatticeVector image = projection * coords(r);
    if (image.isZero()) throw inconsistent("a ray of J₊ vanishes in the quotient");
    rays.push_back(primitive_vector(image));
  }
  std::vector<Cone> cones;
  std::vector<int> all(fc.j_plus.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < all.size(); ++i) cones.emplace_back(without(all, static_cast<int>(i)));
  try {
    out.xr = make_fan(static_cast<int>(projection.rows()), rays, cones);
  } catch (const SemanticError& e) {
    throw inconsistent(std::string("X_R fan: ") + e.what());
  }
  const auto& rep = out.xr->report();
  if (!rep.is_valid || !rep.is_complete || !rep.is_simplicial) throw inconsistent("X_R fan is not complete simplicial");
  if (out.xr->rank() != static_cast<int>(fc.j_plus.size()) - 1) throw inconsistent("X_R has the wrong dimension");
  if (out.xr->ray_count() != out.xr->rank() + 1) throw inconsistent("X_R does not have Picard rank one");
  const InvariantDivisor anticanonical = InvariantDivisor::Constant(out.xr->ray_count(), Rational(1));
  out.anticanonical_ample = cartier_and_ample(*out.xr, anticanonical).ample;
  if (!out.anticanonical_ample) throw inconsistent("−K of X_R is not ample");
  return out;
}

ToricSheaf flip_functor(const FlipData& fd, const ToricSheaf& s) {
  if (!(s.fan() == *fd.x)) throw SemanticError("sheaf does not live on the fan of X");
  return ToricSheaf(fd.xprime, s.rank(), s.filtrations());
}

const Fan& PolarisationFamily::fan() const { return side == Side::x ? *flip->x : *flip->xprime; }

FanPtr PolarisationFamily::fan_ptr() const { return side == Side::x ? flip->x : flip->xprime; }

InvariantDivisor PolarisationFamily::direction() const {
  return side == Side::x ? InvariantDivisor(-flip->d_plus) : flip->d_plus;
}

InvariantDivisor PolarisationFamily::at(const Rational& eps) const {
  return l0 + eps * direction();
}

namespace {

Integer binomial(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

void check_family(const PolarisationFamily& pf) {
  if (!pf.flip) throw SemanticError("polarisation family without flip data");
  if (pf.l0.size() != pf.flip->sigma0->ray_count()) throw SemanticError("L₀ has wrong number of coefficients");
}

EpsPolynomial slope_polynomial(const std::vector<int>& iota, Eigen::Index rank,
                               const std::vector<EpsPolynomial>& degrees) {
  EpsPolynomial total;
  for (std::size_t r = 0; r < iota.size(); ++r) total += Rational(iota[r]) * degrees[r];
  return Rational(-1, 1) / Rational(rank) * total;
}

}  // namespace

std::vector<EpsPolynomial> degree_polynomials(const PolarisationFamily& pf) {
  check_family(pf);
  const Fan& f = pf.fan();
  const int n = f.rank();
  IntersectionRing ring(f);
  const InvariantDivisor b = pf.direction();
  std::vector<EpsPolynomial> out;
  for (int r = 0; r < f.ray_count(); ++r) {
    std::vector<Rational> coeffs;
    for (int k = 0; k <= n - 1; ++k) {
      std::vector<InvariantDivisor> factors{prime_divisor(f, r)};
      for (int i = 0; i < n - 1 - k; ++i) factors.push_back(pf.l0);
      for (int i = 0; i < k; ++i) factors.push_back(b);
      coeffs.push_back(Rational(binomial(n - 1, k)) * ring.intersect(factors));
    }
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

EpsPolynomial epsilon_slope(const PolarisationFamily& pf, const ToricSheaf& s) {
  if (!(s.fan() == pf.fan())) throw SemanticError("sheaf does not live on the family's fan");
  return slope_polynomial(iota_vector(s).iota, s.rank(), degree_polynomials(pf));
}

EpsPolynomial epsilon_slope(const PolarisationFamily& pf, const ToricSheaf& s, const Subspace& f) {
  if (!(s.fan() == pf.fan())) throw SemanticError("sheaf does not live on the family's fan");
  if (f.is_zero()) throw SemanticError("slope of the zero subspace");
  std::vector<int> iota;
  for (const auto& filt : s.filtrations()) iota.push_back(filt.iota(f));
  return slope_polynomial(iota, f.dim(), degree_polynomials(pf));
}

std::optional<Rational> ample_epsilon_range(const PolarisationFamily& pf) {
  check_family(pf);
  if (!cartier_and_ample(*pf.flip->sigma0, pf.l0).ample) throw NotAmpleError("L₀ is not ample on X₀");
  const Fan& f = pf.fan();
  const InvariantDivisor b = pf.direction();
  const auto base = cartier_data(f, pf.l0);
  const auto slope = cartier_data(f, b);
  if (!base || !slope) throw ComputationError("family divisor is not Q-Cartier");
  std::optional<Rational> sup;
  const auto& cones = f.maximal_cones();
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (int r = 0; r < f.ray_count(); ++r) {
      if (cones[i].contains_ray(r)) continue;
      const RationalVector u = to_rational(f.ray(r));
      const Rational c0 = u.dot(base->m[i]) + pf.l0(r);
      const Rational c1 = u.dot(slope->m[i]) + b(r);
      if (c0 < 0 || (c0 == 0 && c1 <= 0)) throw ComputationError("family is not ample for small ε > 0");
      if (c1 < 0) {
        const Rational bound = c0 / -c1;
        if (!sup || bound < *sup) sup = bound;
      }
    }
  return sup;
}

SmallEpsVerdict small_eps_verdict(const PolarisationFamily& pf, const ToricSheaf& s) {
  if (!(s.fan() == pf.fan())) throw SemanticError("sheaf does not live on the family's fan");
  SmallEpsVerdict v;
  v.threshold = ample_epsilon_range(pf);
  const auto degrees = degree_polynomials(pf);
  v.slope = slope_polynomial(iota_vector(s).iota, s.rank(), degrees);
  const auto candidates = candidate_subspaces(s);
  if (candidates.empty()) return v;

  std::vector<EpsPolynomial> slopes;
  for (const auto& f : candidates) {
    std::vector<int> iota;
    for (const auto& filt : s.filtrations()) iota.push_back(filt.iota(f));
    slopes.push_back(slope_polynomial(iota, f.dim(), degrees));
  }
  // Largest slope for all small ε: compare by the sign of the difference near 0.
  std::size_t best = 0;
  for (std::size_t i = 1; i < slopes.size(); ++i)
    if ((slopes[i] - slopes[best]).sign_near_zero() > 0) best = i;
  for (std::size_t i = 0; i < slopes.size(); ++i)
    if ((slopes[i] - slopes[best]).is_zero()) v.maximizers.push_back(candidates[i]);
  v.witness = candidates[best];
  v.witness_slope = slopes[best];

  const int s_best = (slopes[best] - v.slope).sign_near_zero();
  v.status = s_best > 0 ? Stability::unstable : s_best == 0 ? Stability::strictly_semistable : Stability::stable;

  for (const auto& p : slopes) {
    const EpsPolynomial diff = p - v.slope;
    if (diff.is_zero()) continue;
    const Rational bound = diff.root_free_bound();
    if (!v.threshold || bound < *v.threshold) v.threshold = bound;
  }
  return v;
}

const char* to_string(FlipCase c) {
  switch (c) {
    case FlipCase::case_i: return "case (i): stable on both sides";
    case FlipCase::case_ii: return "case (ii): unstable on both sides";
    case FlipCase::case_iii: return "case (iii): stable on X, unstable on X′";
    case FlipCase::case_iv: return "case (iv): unstable on X, stable on X′";
    case FlipCase::first_order_inconclusive: return "first-order inconclusive";
  }
  return "?";
}

ClassifierReport classify_flip(std::shared_ptr<const FlipData> fd, const InvariantDivisor& l0,
                                         const ToricSheaf& s) {
  if (!fd) throw SemanticError("missing flip data");
  if (!(s.fan() == *fd->x)) throw SemanticError("sheaf does not live on the fan of X");
  if (!cartier_and_ample(*fd->sigma0, l0).ample) throw NotAmpleError("L₀ is not ample on X₀");
  const Fan& x = *fd->x;
  const int n = x.rank();
  IntersectionRing ring(x);

  // The pulled-back L₀ has the same coefficients on X; the projection
  // formula makes these the degrees on X₀.
  ClassifierReport rep{};
  rep.constant_term = verdict_for_degrees(s, ring.degrees(l0));

  // D_ρ · D₊ · L₀^{n−2}
  RationalVector mixed(x.ray_count());
  for (int r = 0; r < x.ray_count(); ++r) {
    std::vector<InvariantDivisor> factors{prime_divisor(x, r), fd->d_plus};
    for (int i = 0; i < n - 2; ++i) factors.push_back(l0);
    mixed(r) = ring.intersect(factors);
  }
  auto first_order = [&](const std::vector<int>& iota, Eigen::Index rank) -> Rational {
    Rational total = 0;
    for (std::size_t r = 0; r < iota.size(); ++r) total -= iota[r] * mixed(static_cast<Eigen::Index>(r));
    return total / Rational(rank);
  };
  rep.x_e = first_order(iota_vector(s).iota, s.rank());

  rep.x_side = small_eps_verdict(PolarisationFamily{fd, l0, Side::x}, s);
  rep.xprime_side = small_eps_verdict(PolarisationFamily{fd, l0, Side::xprime}, flip_functor(*fd, s));

  switch (rep.constant_term.status) {
    case Stability::stable: rep.outcome = FlipCase::case_i; return rep;
    case Stability::unstable: rep.outcome = FlipCase::case_ii; return rep;
    case Stability::strictly_semistable: break;
  }
  const RationalVector degrees = ring.degrees(l0);
  for (const auto& f : candidate_subspaces(s)) {
    if (subspace_slope(s, f, degrees) != rep.constant_term.slope) continue;
    std::vector<int> iota;
    for (const auto& filt : s.filtrations()) iota.push_back(filt.iota(f));
    rep.equal_slope.push_back(f);
    rep.x_f.push_back(first_order(iota, f.dim()));
  }
  const bool all_above = std::all_of(rep.x_f.begin(), rep.x_f.end(), [&](const Rational& v) { return rep.x_e < v; });
  const bool all_below = std::all_of(rep.x_f.begin(), rep.x_f.end(), [&](const Rational& v) { return rep.x_e > v; });
  if (!rep.x_f.empty() && all_above)
    rep.outcome = FlipCase::case_iii;
  else if (!rep.x_f.empty() && all_below)
    rep.outcome = FlipCase::case_iv;
  else
    rep.outcome = FlipCase::first_order_inconclusive;
  return rep;
}

LogCheck log_preservation_check(const FlipData& fd, const std::vector<int>& delta, const InvariantDivisor& alpha,
                                const InvariantDivisor& alpha_prime) {
  LogCheck out;
  out.degrees_alpha = polarisation_degrees(*fd.x, alpha);
  out.degrees_alpha_prime = polarisation_degrees(*fd.xprime, alpha_prime);
  std::vector<int> off;
  for (int r = 0; r < fd.x->ray_count(); ++r) {
    if (std::find(delta.begin(), delta.end(), r) == delta.end()) off.push_back(r);
  }
  for (int r : delta)
    if (r < 0 || r >= fd.x->ray_count()) throw SemanticError("unknown ray " + std::to_string(r));
  if (off.empty()) {
    out.preserves = out.vacuous = true;
    return out;
  }
  auto ratio = [&](int r) -> Rational { return out.degrees_alpha(r) / out.degrees_alpha_prime(r); };
  const Rational c = ratio(off.front());
  for (int r : off)
    if (ratio(r) != c) {
      out.witness = std::make_pair(off.front(), r);
      return out;
    }
  out.preserves = true;
  out.ratio = c;
  return out;
}

ToricSheaf log_witness_sheaf(FanPtr fan, const RationalVector& degrees, int r1, int r2) {
  if (degrees.size() != fan->ray_count()) throw SemanticError("degree vector has wrong length");
  const Rational d1 = degrees(r1), d2 = degrees(r2);
  Integer d;
  mpz_lcm(d.get_mpz_t(), d1.get_den_mpz_t(), d2.get_den_mpz_t());
  InvariantDivisor a = zero_divisor(*fan), b = zero_divisor(*fan);
  a(r1) = Rational(d) * d2;
  b(r2) = Rational(d) * d1;
  return direct_sum(rank_one_sheaf(fan, a), rank_one_sheaf(fan, b));
}

}  // namespace toricstab
