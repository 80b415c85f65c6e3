// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support/example.hpp"
#include "support/random_fans.hpp"

using namespace toricstab;
using namespace toricstab::testing;

namespace {

// Collects failed expectations of one criterion.
struct Check {
  std::ostringstream notes;
  bool ok = true;
  void operator()(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    notes << "    failed: " << what << "\n";
  }
};

InvariantDivisor d(const Fan& f, int r) { return prime_divisor(f, r); }

Subspace ray_span(const Fan& f, std::initializer_list<int> rays) {
  std::vector<RationalVector> vs;
  for (int r : rays) vs.push_back(to_rational(f.ray(r)));
  return Subspace::span(vs, f.rank());
}

void sublattice_indices(Check& check) {
  const auto rays = example_rays();
  const std::vector<std::pair<std::vector<int>, int>> table = {
      {{0, 1, 2}, 2}, {{0, 2, 3}, 2}, {{0, 3, 4}, 1}, {{0, 4, 1}, 1},
      {{2, 4, 1}, 1}, {{2, 4, 3}, 1}, {{1, 3, 2}, 1}, {{1, 3, 4}, 1}};
  for (const auto& [idx, expected] : table) {
    std::vector<LatticeVector> vs;
    for (int i : idx) vs.push_back(rays[static_cast<std::size_t>(i)]);
    check(sublattice_index(vs) == expected, "index of " + std::to_string(idx[0]) + std::to_string(idx[1]) +
                                                std::to_string(idx[2]));
  }
}

void intersection_numbers(Check& check) {
  const auto fd = example_flip();
  for (const FanPtr& f : {fd->x, fd->xprime}) {
    const Fan& g = *f;
    IntersectionRing ring(g);
    const std::string side = f == fd->x ? "X" : "X′";
    check(ring.intersect({d(g, 1), d(g, 0), d(g, 0)}) == q(1, 2), side + " D1·D0²");
    check(ring.intersect({d(g, 2), d(g, 0), d(g, 0)}) == q(1, 4), side + " D2·D0²");
    check(ring.intersect({d(g, 4), d(g, 0), d(g, 0)}) == 1, side + " D4·D0²");
    check(ring.intersect({d(g, 0), d(g, 0), d(g, 0)}) == q(3, 4), side + " D0³");
    check(ring.intersect({d(g, 1), d(g, 0), d(g, 2)}) == q(1, 2), side + " D1·D0·D2");
    check(ring.intersect({d(g, 4), d(g, 0), d(g, 2)}) == 0, side + " D4·D0·D2");
    check(ring.intersect({d(g, 2), d(g, 0), d(g, 2)}) == q(-1, 4), side + " D2·D0·D2");
  }
  IntersectionRing x(*fd->x), xp(*fd->xprime);
  check(x.monomial({1, 2, 2}) == q(1, 2), "X D1·D2²");
  check(x.monomial({4, 2, 2}) == -1, "X D4·D2²");
  check(x.monomial({0, 2, 2}) == q(-1, 4), "X D0·D2²");
  check(x.monomial({2, 2, 2}) == q(-3, 4), "X D2³");
  check(xp.monomial({1, 2, 2}) == q(-1, 2), "X′ D1·D2²");
  check(xp.monomial({4, 2, 2}) == 0, "X′ D4·D2²");
  check(xp.monomial({0, 2, 2}) == q(-1, 4), "X′ D0·D2²");
  check(xp.monomial({2, 2, 2}) == q(1, 4), "X′ D2³");
}

void degree_expansions(Check& check) {
  const auto x = degree_polynomials(example_family(Side::x));
  const auto xp = degree_polynomials(example_family(Side::xprime));
  check(x[1] == EpsPolynomial{q(1, 2), -3, q(9, 2)}, "X deg D1");
  check(x[2] == EpsPolynomial{q(1, 4), q(1, 2), q(-15, 4)}, "X deg D2");
  check(x[4] == EpsPolynomial{1, -2, -3}, "X deg D4");
  check(x[0] == EpsPolynomial{q(3, 4), q(-5, 2), q(3, 4)}, "X deg D0");
  check(xp[1] == EpsPolynomial{q(1, 2), 3, q(1, 2)}, "X′ deg D1");
  check(xp[2] == EpsPolynomial{q(1, 4), q(-1, 2), q(1, 4)}, "X′ deg D2");
  check(xp[4] == EpsPolynomial{1, 2, 1}, "X′ deg D4");
  check(xp[0] == EpsPolynomial{q(3, 4), q(5, 2), q(3, 4)}, "X′ deg D0");
}

void slope_expansions(Check& check) {
  const auto fd = example_flip();
  const PolarisationFamily px = example_family(Side::x), pxp = example_family(Side::xprime);
  const ToricSheaf t = tangent_sheaf(fd->x), tp = flip_functor(*fd, t);
  const Subspace f1 = ray_span(*fd->x, {4}), f2 = ray_span(*fd->x, {0, 2, 4});
  check(epsilon_slope(px, t) == EpsPolynomial{1, q(-10, 3), 1}, "μ(T) on X");
  check(epsilon_slope(px, t, f1) == EpsPolynomial{1, -2, -3}, "μ(F1) on X");
  check(epsilon_slope(px, t, f2) == EpsPolynomial{1, -2, -3}, "μ(F2) on X");
  check(epsilon_slope(pxp, tp) == EpsPolynomial{1, q(10, 3), 1}, "μ(ψ_*T) on X′");
  check(epsilon_slope(pxp, tp, f1) == EpsPolynomial{1, 2, 1}, "μ(F1) on X′");
  check(epsilon_slope(pxp, tp, f2) == EpsPolynomial{1, 2, 1}, "μ(F2) on X′");
}

void verdicts(Check& check) {
  const auto fd = example_flip();
  const ToricSheaf t = tangent_sheaf(fd->x);
  const StabilityVerdict base = verdict_for_degrees(t, polarisation_degrees(*fd->x, d(*fd->x, 0), true));
  check(base.status == Stability::strictly_semistable, "φ_*T strictly semistable");
  check(base.slope == 1, "φ_*T slope 1");
  const std::set<Subspace> maxi(base.maximizers.begin(), base.maximizers.end());
  check(maxi == std::set<Subspace>{ray_span(*fd->x, {4}), ray_span(*fd->x, {0, 2, 4})}, "maximizers F1, F2");

  const PolarisationFamily px = example_family(Side::x), pxp = example_family(Side::xprime);
  const SmallEpsVerdict vx = small_eps_verdict(px, t);
  const SmallEpsVerdict vp = small_eps_verdict(pxp, flip_functor(*fd, t));
  check(vx.status == Stability::unstable, "T_X unstable for small ε");
  check(vp.status == Stability::stable, "ψ_*T stable for small ε");
  check(vx.threshold && vp.threshold, "thresholds certified");
  if (vx.threshold && vp.threshold)
    for (int k : {2, 5, 50}) {
      check(stability_verdict(t, px.at(*vx.threshold / k)).status == Stability::unstable,
            "T_X unstable at threshold/" + std::to_string(k));
      check(stability_verdict(flip_functor(*fd, t), pxp.at(*vp.threshold / k)).status == Stability::stable,
            "ψ_*T stable at threshold/" + std::to_string(k));
    }
  const ClassifierReport rep = classify_flip(fd, example_l0(), t);
  check(rep.outcome == FlipCase::case_iv, "classifier case (iv)");
}

void linear_equivalences(Check& check) {
  const FanPtr f0 = example_sigma0();
  const Fan& f = *f0;
  const InvariantDivisor e1 = divisor_of_character(f, rvec({1, 0, 0}));
  const InvariantDivisor e2 = divisor_of_character(f, rvec({0, 1, 0}));
  const InvariantDivisor e3 = divisor_of_character(f, rvec({0, 0, 1}));
  // D1 − (D0 − D2), D3 − (D0 − D2), D4 − (D0 + D2) are principal.
  check(e1 == d(f, 1) - (d(f, 0) - d(f, 2)), "D1 ~ D0 − D2");
  check(e2 == d(f, 3) - (d(f, 0) - d(f, 2)), "D3 ~ D0 − D2");
  check(e1 - e2 == d(f, 1) - d(f, 3), "D1 ~ D3");
  check(e3 == d(f, 4) - (d(f, 0) + d(f, 2)), "D4 ~ D0 + D2");
}

void flip_identity(Check& check) {
  const auto fd = example_flip();
  IntersectionRing x(*fd->x), xp(*fd->xprime);
  const InvariantDivisor l0 = example_l0();
  for (int r = 0; r < 5; ++r)
    check(x.intersect({d(*fd->x, r), fd->d_plus, l0}) == xp.intersect({d(*fd->x, r), fd->d_plus, l0}),
          "D" + std::to_string(r) + "·D₊·L₀ agrees");
  const Rational on_x = x.intersect({d(*fd->x, 2), fd->d_plus, fd->d_plus});
  const Rational on_xp = xp.intersect({d(*fd->x, 2), fd->d_plus, fd->d_plus});
  // D2·(D2+D4)² from the monomials: D2³ + 2·D2²·D4 + D2·D4².
  check(on_x == x.monomial({2, 2, 2}) + 2 * x.monomial({2, 2, 4}) + x.monomial({2, 4, 4}), "expansion on X");
  check(on_xp == xp.monomial({2, 2, 2}) + 2 * xp.monomial({2, 2, 4}) + xp.monomial({2, 4, 4}), "expansion on X′");
  check(on_x != on_xp, "D2·D₊² differs across sides");
}

void structure(Check& check) {
  const ExceptionalData e = exceptional_data(*example_flip());
  check(e.dim_exceptional_x == 1 && e.dim_exceptional_xprime == 1 && e.dim_contracted == 0, "dims (1,1,0)");
  check(e.xr->rank() == 1 && e.xr->ray_count() == 2 && e.xr->report().is_complete, "X_R rank 1, 2 rays, complete");
  check(e.anticanonical_ample, "−K_R ample");
}

void log_preservation(Check& check) {
  const auto fd = example_flip();
  for (const Rational& e : {q(1, 10), q(1, 20), q(1, 7)}) {
    const InvariantDivisor alpha = example_family(Side::x).at(e), alpha_p = example_family(Side::xprime).at(e);
    const std::string tag = " at ε = " + to_string(e);
    const LogCheck fails = log_preservation_check(*fd, {}, alpha, alpha_p);
    check(!fails.preserves && fails.witness.has_value(), "Δ = ∅ fails" + tag);
    if (fails.witness) {
      const auto [a, b] = *fails.witness;
      const ToricSheaf w = log_witness_sheaf(fd->x, fails.degrees_alpha, a, b);
      const auto on_x = polystable_decomposition(w, alpha);
      check(on_x && on_x->size() == 2, "witness polystable on X" + tag);
      check(!polystable_decomposition(flip_functor(*fd, w), alpha_p), "witness not polystable on X′" + tag);
    }
    for (int keep = 0; keep < 5; ++keep) {
      std::vector<int> delta;
      for (int r = 0; r < 5; ++r)
        if (r != keep) delta.push_back(r);
      const LogCheck one = log_preservation_check(*fd, delta, alpha, alpha_p);
      check(one.preserves && one.ratio && *one.ratio == one.degrees_alpha(keep) / one.degrees_alpha_prime(keep),
            "preserves with only ray " + std::to_string(keep) + " off Δ" + tag);
    }
  }
}

void properties(Check& check) {
  std::mt19937 rng(20261016);
  auto rnd = [&](long lo, long hi) { return uniform(rng, lo, hi); };
  auto rdiv = [&](const Fan& f) {
    InvariantDivisor v(f.ray_count());
    for (auto& c : v) c = Rational(rnd(-3, 3));
    return v;
  };
  auto rq = [&]() { return q(rnd(-5, 5), rnd(1, 4)); };

  std::vector<PolarisedFan> fans;
  for (int i = 0; i < 3; ++i) fans.push_back(random_polarised_fan(rng, 2 + i));
  for (const auto& pf : fans) {
    const Fan& f = *pf.fan;
    IntersectionRing ring(f), last(f, ReductionChoice::last_cone);
    for (int k = 0; k < 5; ++k) {
      const InvariantDivisor a = rdiv(f), b = rdiv(f), c = rdiv(f), e = rdiv(f);
      const Rational s = rq();
      check(ring.intersect({a + s * e, b, c}) == ring.intersect({a, b, c}) + s * ring.intersect({e, b, c}),
            "multilinearity");
      check(ring.intersect({b, c, a}) == ring.intersect({a, b, c}), "symmetry");
      check(last.intersect({a, b, c}) == ring.intersect({a, b, c}), "reduction path independence");
    }
    // Minkowski relation.
    const RationalVector deg = polarisation_degrees(f, pf.ample);
    RationalVector mink = RationalVector::Zero(3);
    for (int r = 0; r < f.ray_count(); ++r) mink += deg(r) * to_rational(f.ray(r));
    check(mink.isZero(), "Σ deg(D_ρ) u_ρ = 0");
  }
  IntersectionRing ring0(*fans[0].fan);
  for (int k = 0; k < 100; ++k) {
    const RationalVector m{{rq(), rq(), rq()}};
    check(ring0.degree(divisor_of_character(*fans[0].fan, m), fans[0].ample) == 0, "principal divisor degree 0");
  }

  const auto fd = example_flip();
  for (int k = 0; k < 10; ++k) {
    const PolarisedFan& pf = fans[static_cast<std::size_t>(k % 3)];
    const RationalVector deg = polarisation_degrees(*pf.fan, pf.ample);
    const ToricSheaf a = random_rank2_sheaf(rng, pf.fan), b = tangent_sheaf(pf.fan);
    check(slope_for_degrees(direct_sum(a, b), deg) ==
              (2 * slope_for_degrees(a, deg) + 3 * slope_for_degrees(b, deg)) / 5,
          "direct-sum slope average");
    const ToricSheaf s = random_rank2_sheaf(rng, fd->x);
    check(iota_vector(flip_functor(*fd, s)).iota == iota_vector(s).iota, "flip functor preserves ι");
  }

  // Rank 2: every line that matters is a filtration line or a generic one.
  for (int k = 0; k < 30; ++k) {
    const PolarisedFan& pf = fans[static_cast<std::size_t>(k % 3)];
    const RationalVector deg = polarisation_degrees(*pf.fan, pf.ample);
    const ToricSheaf s = random_rank2_sheaf(rng, pf.fan);
    std::vector<Subspace> lines{Subspace::line(rvec({7, 3}))};
    for (const auto& f : s.filtrations())
      for (const auto& j : f.jumps())
        if (j.space.dim() == 1) lines.push_back(j.space);
    Rational mu = 0, best;
    bool first = true;
    for (int r = 0; r < pf.fan->ray_count(); ++r) {
      int total = 0;
      Eigen::Index prev = 0;
      for (const auto& j : s.filtration(r).jumps()) {
        total += j.level * static_cast<int>(j.space.dim() - prev);
        prev = j.space.dim();
      }
      mu -= Rational(total) * deg(r) / 2;
    }
    for (const auto& l : lines) {
      Rational m = 0;
      for (int r = 0; r < pf.fan->ray_count(); ++r)
        for (const auto& j : s.filtration(r).jumps())
          if (j.space.contains(l)) {
            m -= Rational(j.level) * deg(r);
            break;
          }
      if (first || m > best) best = m;
      first = false;
    }
    const Stability expected =
        best > mu ? Stability::unstable : best == mu ? Stability::strictly_semistable : Stability::stable;
    check(verdict_for_degrees(s, deg).status == expected, "rank-2 verdict matches line enumeration");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"sublattice indices of the example cones", sublattice_indices},
      {"intersection numbers on X and X′", intersection_numbers},
      {"degree polynomials on both sides", degree_expansions},
      {"slope polynomials on both sides", slope_expansions},
      {"stability verdicts and classifier case (iv)", verdicts},
      {"linear equivalences from characters", linear_equivalences},
      {"mixed degrees across the flip", flip_identity},
      {"exceptional loci and X_R", structure},
      {"logarithmic preservation check", log_preservation},
      {"randomized property oracles", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << "\n" << check.notes.str();
    if (!check.ok) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
