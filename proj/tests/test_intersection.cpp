#include "doctest.h"
#include "support/example.hpp"
#include "toricstab/errors.hpp"

using namespace toricstab;
using namespace toricstab::testing;

namespace {

FanPtr projective_space(int n) {
  std::vector<LatticeVector> rays;
  LatticeVector last = LatticeVector::Constant(n, Integer(-1));
  for (int i = 0; i < n; ++i) {
    LatticeVector e = LatticeVector::Zero(n);
    e(i) = 1;
    rays.push_back(e);
  }
  rays.push_back(last);
  std::vector<Cone> cones;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> rs;
    for (int i = 0; i <= n; ++i)
      if (i != skip) rs.push_back(i);
    cones.emplace_back(rs);
  }
  return make_fan(n, rays, cones);
}

// Rays (1,0), (0,1), (−1,a), (0,−1).
FanPtr hirzebruch(int a) {
  return make_fan(2, {lattice_vector({1, 0}), lattice_vector({0, 1}), lattice_vector({-1, a}), lattice_vector({0, -1})},
                  {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

InvariantDivisor d(const Fan& f, int r) { return prime_divisor(f, r); }

}  // namespace

TEST_CASE("divisors of characters") {
  const FanPtr f0 = example_sigma0();
  CHECK(divisor_of_character(*f0, rvec({0, 0, 0})) == zero_divisor(*f0));
  // ⟨e₁,u⟩ = (−1,1,1,0,0), ⟨e₂,u⟩ = (−1,0,1,1,0), ⟨e₃,u⟩ = (−1,0,−1,0,1).
  CHECK(divisor_of_character(*f0, rvec({1, 0, 0})) == rvec({-1, 1, 1, 0, 0}));
  CHECK(divisor_of_character(*f0, rvec({0, 1, 0})) == rvec({-1, 0, 1, 1, 0}));
  CHECK(divisor_of_character(*f0, rvec({0, 0, 1})) == rvec({-1, 0, -1, 0, 1}));
}

TEST_CASE("projective spaces") {
  for (int n = 1; n <= 4; ++n) {
    const FanPtr f = projective_space(n);
    IntersectionRing ring(*f);
    // Every hyperplane class is the same; H^n = 1.
    for (int r = 0; r <= n; ++r) CHECK(ring.monomial(std::vector<int>(static_cast<std::size_t>(n), r)) == 1);
    std::vector<int> distinct;
    for (int i = 0; i < n; ++i) distinct.push_back(i);
    CHECK(ring.monomial(distinct) == 1);
  }
}

TEST_CASE("Hirzebruch surfaces") {
  for (int a = 0; a <= 4; ++a) {
    const FanPtr f = hirzebruch(a);
    IntersectionRing ring(*f);
    // Fibres D₀ ~ D₂; sections D₁ (negative) and D₃ ~ D₁ + a·D₂ (positive).
    CHECK(ring.monomial({1, 1}) == -a);
    CHECK(ring.monomial({3, 3}) == a);
    CHECK(ring.monomial({0, 0}) == 0);
    CHECK(ring.monomial({0, 2}) == 0);
    CHECK(ring.monomial({1, 3}) == 0);
    CHECK(ring.monomial({0, 1}) == 1);
    CHECK(ring.monomial({2, 3}) == 1);
    CHECK(ring.monomial({3, 0}) == ring.monomial({0, 3}));
  }
}

TEST_CASE("rays outside a common cone meet in zero") {
  const auto fd = example_flip();
  IntersectionRing x(*fd->x), xp(*fd->xprime);
  // {1,3} is not a cone of X; {2,4} is not a cone of X′.
  CHECK(x.monomial({1, 3, 0}) == 0);
  CHECK(xp.monomial({2, 4, 0}) == 0);
  CHECK(x.monomial({0, 1, 2}) == q(1, 2));
  CHECK(x.monomial({0, 3, 4}) == 1);
}

TEST_CASE("intersection numbers of the flip example") {
  const auto fd = example_flip();
  for (const FanPtr& f : {fd->x, fd->xprime}) {
    const Fan& g = *f;
    IntersectionRing ring(g);
    CHECK(ring.intersect({d(g, 1), d(g, 0), d(g, 0)}) == q(1, 2));
    CHECK(ring.intersect({d(g, 2), d(g, 0), d(g, 0)}) == q(1, 4));
    CHECK(ring.intersect({d(g, 4), d(g, 0), d(g, 0)}) == 1);
    CHECK(ring.intersect({d(g, 0), d(g, 0), d(g, 0)}) == q(3, 4));
    CHECK(ring.intersect({d(g, 1), d(g, 0), d(g, 2)}) == q(1, 2));
    CHECK(ring.intersect({d(g, 4), d(g, 0), d(g, 2)}) == 0);
    CHECK(ring.intersect({d(g, 2), d(g, 0), d(g, 2)}) == q(-1, 4));
  }
  IntersectionRing x(*fd->x), xp(*fd->xprime);
  CHECK(x.monomial({1, 2, 2}) == q(1, 2));
  CHECK(x.monomial({4, 2, 2}) == -1);
  CHECK(x.monomial({0, 2, 2}) == q(-1, 4));
  CHECK(x.monomial({2, 2, 2}) == q(-3, 4));
  CHECK(xp.monomial({1, 2, 2}) == q(-1, 2));
  CHECK(xp.monomial({4, 2, 2}) == 0);
  CHECK(xp.monomial({0, 2, 2}) == q(-1, 4));
  CHECK(xp.monomial({2, 2, 2}) == q(1, 4));
}

TEST_CASE("the ring rejects singular input") {
  CHECK_THROWS_AS(IntersectionRing{*example_sigma0()}, ComputationError);
  const FanPtr open = make_fan(2, {lattice_vector({1, 0}), lattice_vector({0, 1})}, {{0, 1}});
  CHECK_THROWS_AS(IntersectionRing{*open}, ComputationError);
}

TEST_CASE("degree against a polarisation") {
  const FanPtr p2 = projective_space(2);
  const InvariantDivisor h = d(*p2, 0);
  CHECK(degree(*p2, h, h) == 1);
  CHECK(degree(*p2, combine({{q(2), h}, {q(-1), d(*p2, 2)}}), Integer(3) * h) == 3);
  IntersectionRing ring(*p2);
  CHECK(ring.degrees(Integer(2) * h) == rvec({2, 2, 2}));
}

TEST_CASE("Cartier data and ampleness") {
  const FanPtr p2 = projective_space(2);
  const InvariantDivisor anti = rvec({1, 1, 1});
  const CartierClass k = cartier_and_ample(*p2, anti);
  CHECK(k.q_cartier);
  CHECK(k.nef);
  CHECK(k.ample);
  CHECK_FALSE(cartier_and_ample(*p2, -anti).nef);
  const CartierClass zero = cartier_and_ample(*p2, zero_divisor(*p2));
  CHECK(zero.nef);
  CHECK_FALSE(zero.ample);

  // D₀ on the base is ample; its pullback to X is only nef.
  const auto fd = example_flip();
  CHECK(cartier_and_ample(*fd->sigma0, d(*fd->sigma0, 0)).ample);
  const CartierClass pulled = cartier_and_ample(*fd->x, d(*fd->x, 0));
  CHECK(pulled.nef);
  CHECK_FALSE(pulled.ample);

  // On the non-simplicial cone only combinations constant along the relation are Cartier.
  CHECK_FALSE(cartier_data(*fd->sigma0, d(*fd->sigma0, 1)).has_value());
  CHECK(cartier_data(*fd->sigma0, rvec({0, 1, 0, 1, 0})).has_value() ==
        cartier_data(*fd->sigma0, rvec({0, 0, 1, 0, 1})).has_value());

  // m_σ reproduces the coefficients on each cone.
  const auto data = cartier_data(*p2, anti);
  REQUIRE(data);
  for (std::size_t c = 0; c < p2->maximal_cones().size(); ++c)
    for (int r : p2->maximal_cones()[c].rays) CHECK(to_rational(p2->ray(r)).dot(data->m[c]) == -anti(r));

  const FanPtr open = make_fan(2, {lattice_vector({1, 0}), lattice_vector({0, 1})}, {{0, 1}});
  CHECK_THROWS_AS(cartier_and_ample(*open, rvec({1, 1})), ComputationError);
}

TEST_CASE("Hirzebruch ample cone") {
  // a·D₀ + b·D₃ (fibre plus positive section) is ample exactly when a, b > 0.
  const FanPtr f = hirzebruch(2);
  for (int a = -1; a <= 2; ++a)
    for (int b = -1; b <= 2; ++b) {
      const InvariantDivisor l = rvec({a, 0, 0, b});
      CHECK(cartier_and_ample(*f, l).ample == (a > 0 && b > 0));
      CHECK(cartier_and_ample(*f, l).nef == (a >= 0 && b >= 0));
    }
}
