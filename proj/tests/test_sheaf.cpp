#include <cstdlib>
#include <set>

#include "doctest.h"
#include "support/example.hpp"
#include "toricstab/errors.hpp"

using namespace toricstab;
using namespace toricstab::testing;

namespace {

FanPtr p2() { return make_fan(2, {lattice_vector({1, 0}), lattice_vector({0, 1}), lattice_vector({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}}); }

// Degrees of D_ρ against the pullback of D₀ to X (nef, not ample).
RationalVector d0_degrees_on_x(const FlipData& fd) {
  return polarisation_degrees(*fd.x, prime_divisor(*fd.x, 0), true);
}

Subspace ray_span(const Fan& f, std::initializer_list<int> rays) {
  std::vector<RationalVector> vs;
  for (int r : rays) vs.push_back(to_rational(f.ray(r)));
  return Subspace::span(vs, f.rank());
}

}  // namespace

TEST_CASE("filtrations") {
  const Subspace line = span_of({rvec({1, 0})});
  const Filtration f(2, {{-1, line}, {1, Subspace::full(2)}});
  CHECK(f.at(-2).is_zero());
  CHECK(f.at(-1) == line);
  CHECK(f.at(0) == line);
  CHECK(f.at(5).is_full());
  // ι = (−1)·1 + 1·1.
  CHECK(f.iota() == 0);
  CHECK(f.iota(line) == -1);
  CHECK(f.iota(span_of({rvec({0, 1})})) == 1);
  CHECK(Filtration::single_jump(3, 2).iota() == 6);

  CHECK_THROWS_AS(Filtration(2, {{0, line}, {0, Subspace::full(2)}}), SemanticError);
  CHECK_THROWS_AS(Filtration(2, {{0, Subspace::full(2)}, {1, Subspace::full(2)}}), SemanticError);
  CHECK_THROWS_AS(Filtration(2, {{0, line}}), SemanticError);
  CHECK_THROWS_AS(Filtration(2, {{0, Subspace::zero(2)}, {1, Subspace::full(2)}}), SemanticError);
  CHECK_THROWS_AS(Filtration(2, {}), SemanticError);
}

TEST_CASE("tangent sheaves") {
  const auto fd = example_flip();
  const ToricSheaf t = tangent_sheaf(fd->x);
  CHECK(t.rank() == 3);
  CHECK(t.filtrations().size() == 5);
  for (int r = 0; r < 5; ++r) {
    CHECK(t.filtration(r).at(-1) == Subspace::line(to_rational(fd->x->ray(r))));
    CHECK(t.filtration(r).at(-2).is_zero());
    CHECK(t.filtration(r).at(0).is_full());
  }
  const IotaData io = iota_vector(t);
  CHECK(io.iota == std::vector<int>(5, -1));
  CHECK(io.c1 == rvec({1, 1, 1, 1, 1}));

  const ToricSheaf tp = tangent_sheaf(p2());
  CHECK(tp.rank() == 2);
  CHECK(tp.filtrations().size() == 3);
}

TEST_CASE("rank-one sheaves") {
  const FanPtr f = p2();
  const ToricSheaf o = structure_sheaf(f);
  CHECK(o == rank_one_sheaf(f, zero_divisor(*f)));
  for (const auto& fl : o.filtrations()) CHECK(fl == Filtration::single_jump(1, 0));
  CHECK(iota_vector(o).iota == std::vector<int>(3, 0));
  CHECK(slope(o, rvec({1, 0, 0})) == 0);

  const RationalVector d = rvec({2, -1, 3});
  const IotaData io = iota_vector(rank_one_sheaf(f, d));
  CHECK(io.iota == std::vector<int>{-2, 1, -3});
  CHECK(io.c1 == d);

  RationalVector half = rvec({1, 0, 0});
  half(0) = q(1, 2);
  CHECK_THROWS_AS(rank_one_sheaf(f, half), SemanticError);

  const auto fd = example_flip();
  const RationalVector deg = d0_degrees_on_x(*fd);
  CHECK(slope_for_degrees(rank_one_sheaf(fd->x, prime_divisor(*fd->x, 4)), deg) == 1);
}

TEST_CASE("direct sums") {
  const FanPtr f = p2();
  const ToricSheaf oo = direct_sum(structure_sheaf(f), structure_sheaf(f));
  CHECK(oo.rank() == 2);
  for (const auto& fl : oo.filtrations()) CHECK(fl == Filtration::single_jump(2, 0));

  const ToricSheaf s = direct_sum(rank_one_sheaf(f, rvec({1, 0, 0})), tangent_sheaf(f));
  CHECK(s.rank() == 3);
  // Block structure: level −1 is e₁ ⊕ Span(u₀) on ray 0 and 0 ⊕ Span(u₁) on ray 1.
  CHECK(s.filtration(0).at(-1) == span_of({rvec({1, 0, 0}), rvec({0, 1, 0})}));
  CHECK(s.filtration(1).at(-1) == span_of({rvec({0, 0, 1})}));

  const auto fd = example_flip();
  CHECK_THROWS_AS(direct_sum(structure_sheaf(f), structure_sheaf(fd->x)), SemanticError);
}

TEST_CASE("slopes on the flip example") {
  const auto fd = example_flip();
  const RationalVector deg = d0_degrees_on_x(*fd);
  const ToricSheaf t = tangent_sheaf(fd->x);
  CHECK(slope_for_degrees(t, deg) == 1);
  CHECK(subspace_slope(t, ray_span(*fd->x, {4}), deg) == 1);
  CHECK(subspace_slope(t, ray_span(*fd->x, {0, 2, 4}), deg) == 1);
  CHECK(slope_for_degrees(structure_sheaf(fd->x), deg) == 0);
  CHECK_THROWS_AS(slope(t, prime_divisor(*fd->x, 0)), NotAmpleError);
  CHECK(slope(t, prime_divisor(*fd->x, 0), true) == 1);
}

TEST_CASE("induced subsheaves") {
  const auto fd = example_flip();
  const ToricSheaf t = tangent_sheaf(fd->x);
  const Subspace f1 = ray_span(*fd->x, {4});
  const ToricSheaf s = induced_subsheaf(t, f1);
  CHECK(s.rank() == 1);
  CHECK(s.filtration(4) == Filtration::single_jump(1, -1));
  for (int r = 0; r < 4; ++r) CHECK(s.filtration(r) == Filtration::single_jump(1, 0));
  CHECK(iota_vector(s).iota == std::vector<int>{0, 0, 0, 0, -1});
  CHECK(induced_subsheaf(t, Subspace::full(3)) == t);
  CHECK_THROWS_AS(induced_subsheaf(t, Subspace::zero(3)), SemanticError);
}

TEST_CASE("candidate subspaces") {
  const auto fd = example_flip();
  const ToricSheaf t = tangent_sheaf(fd->x);
  // Oracle: spans of every subset of the five rays, proper and nonzero.
  std::set<Subspace> expected;
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<RationalVector> vs;
    for (int r = 0; r < 5; ++r)
      if (mask & (1 << r)) vs.push_back(to_rational(fd->x->ray(r)));
    const Subspace s = Subspace::span(vs, 3);
    if (!s.is_full()) expected.insert(s);
  }
  const auto got = candidate_subspaces(t);
  CHECK(std::set<Subspace>(got.begin(), got.end()) == expected);
  CHECK(got.size() == expected.size());

  CHECK(candidate_subspaces(structure_sheaf(fd->x)).empty());

  // Two flags in dimension two: exactly their lines.
  const FanPtr f = p2();
  const Subspace a = span_of({rvec({1, 2})}), b = span_of({rvec({3, -1})});
  const ToricSheaf two(f, 2,
                       {Filtration(2, {{0, a}, {1, Subspace::full(2)}}), Filtration(2, {{-1, b}, {0, Subspace::full(2)}}),
                        Filtration::single_jump(2, 0)});
  const auto lines = candidate_subspaces(two);
  CHECK(std::set<Subspace>(lines.begin(), lines.end()) == std::set<Subspace>{a, b});

  // Only trivial filtrations: one representative line.
  const auto trivial = candidate_subspaces(direct_sum(structure_sheaf(f), structure_sheaf(f)));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial.front().dim() == 1);

  CHECK_THROWS_WITH_AS(candidate_subspaces(t, 3), "candidate set overflow", ComputationError);
}

TEST_CASE("candidate cap from the environment") {
  CHECK(default_candidate_cap() == 10000);
  setenv("TORICSTAB_CANDIDATE_CAP", "7", 1);
  CHECK(default_candidate_cap() == 7);
  unsetenv("TORICSTAB_CANDIDATE_CAP");
  CHECK(default_candidate_cap() == 10000);
}

TEST_CASE("stability verdicts") {
  const auto fd = example_flip();
  const RationalVector deg = d0_degrees_on_x(*fd);
  const StabilityVerdict v = verdict_for_degrees(tangent_sheaf(fd->x), deg);
  CHECK(v.status == Stability::strictly_semistable);
  CHECK(v.slope == 1);
  CHECK(v.witness_slope == 1);
  const std::set<Subspace> maxi(v.maximizers.begin(), v.maximizers.end());
  CHECK(maxi == std::set<Subspace>{ray_span(*fd->x, {4}), ray_span(*fd->x, {0, 2, 4})});

  // The tangent sheaf of the projective plane is stable.
  const FanPtr f = p2();
  const StabilityVerdict tp = stability_verdict(tangent_sheaf(f), rvec({1, 0, 0}));
  CHECK(tp.status == Stability::stable);
  CHECK(tp.slope == q(3, 2));

  CHECK(stability_verdict(rank_one_sheaf(f, rvec({3, 0, -1})), rvec({1, 1, 1})).status == Stability::stable);

  // O ⊕ O(D₀): the O(D₀) summand destabilises.
  const ToricSheaf split = direct_sum(structure_sheaf(f), rank_one_sheaf(f, rvec({1, 0, 0})));
  const StabilityVerdict sv = stability_verdict(split, rvec({1, 0, 0}));
  CHECK(sv.status == Stability::unstable);
  CHECK(sv.witness == span_of({rvec({0, 1})}));
  CHECK(sv.witness_slope == 1);
  CHECK(sv.slope == q(1, 2));

  CHECK(std::string(to_string(Stability::strictly_semistable)) == "strictly semistable");
}

TEST_CASE("polystable decompositions") {
  const FanPtr f = p2();
  const InvariantDivisor h = rvec({1, 0, 0});
  const ToricSheaf t = tangent_sheaf(f);
  const auto single = polystable_decomposition(t, h);
  REQUIRE(single);
  REQUIRE(single->size() == 1);
  CHECK(single->front() == t);

  const ToricSheaf d = rank_one_sheaf(f, rvec({0, 1, 0}));
  const auto twice = polystable_decomposition(direct_sum(d, rank_one_sheaf(f, rvec({0, 0, 1}))), h);
  REQUIRE(twice);
  CHECK(twice->size() == 2);
  for (const auto& s : *twice) CHECK(slope(s, h) == 1);

  CHECK_FALSE(polystable_decomposition(direct_sum(structure_sheaf(f), d), h));

  // Summand slopes 3/2 and 1.
  CHECK_FALSE(polystable_decomposition(direct_sum(t, d), h));
}

TEST_CASE("characteristic function") {
  const auto fd = example_flip();
  const FanPtr f = p2();
  for (const auto& m : {lattice_vector({0, 0}), lattice_vector({1, 0}), lattice_vector({2, 3})}) {
    const auto chi = characteristic_function(structure_sheaf(f), m);
    // Cone {0,1}: ⟨m,u⟩ = m itself.
    CHECK(chi[0] == ((m(0) >= 0 && m(1) >= 0) ? 1 : 0));
  }
  CHECK(characteristic_function(tangent_sheaf(fd->x), lattice_vector({0, 0, 0})) == std::vector<int>(6, 3));

  const auto chi = characteristic_function(tangent_sheaf(fd->xprime), lattice_vector({-1, -1, -1}));
  const auto& cones = fd->xprime->maximal_cones();
  const auto it = std::find(cones.begin(), cones.end(), Cone{1, 3, 4});
  REQUIRE(it != cones.end());
  CHECK(chi[static_cast<std::size_t>(it - cones.begin())] == 0);
}

TEST_CASE("log membership") {
  const auto fd = example_flip();
  CHECK(log_membership(rank_one_sheaf(fd->x, prime_divisor(*fd->x, 2)), {0, 1, 2, 3, 4}));
  CHECK_FALSE(log_membership(tangent_sheaf(fd->x), {0}));
  const ToricSheaf lt = log_tangent_sheaf(fd->x, {0});
  CHECK(log_membership(lt, {0}));
  CHECK_FALSE(log_membership(lt, {0, 1}));
  CHECK(iota_vector(lt).iota == std::vector<int>{0, -1, -1, -1, -1});
}
