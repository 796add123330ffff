#include <doctest.h>

#include "fsplit/errors.hpp"
#include "support.hpp"

using namespace fsplit;
using namespace fsplit::testing;

TEST_CASE("frobenius_power") {
  auto f5 = ring(5, {"x", "y"});
  CHECK(show(frobenius_power(ideal(f5, "(x,y)"), 1)) == "(x^5, y^5)");
  const auto i = ideal(f5, "(x^2+y, x*y)");
  CHECK(ideal_equals(frobenius_power(i, 0), i));
  auto f2 = ring(2, {"x", "y"});
  CHECK(show(frobenius_power(ideal(f2, "(x+y)"), 1)) == "(x^2+y^2)");
}

TEST_CASE("frobenius_root") {
  auto f2 = ring(2, {"x", "y"});
  CHECK(show(frobenius_root(ideal(f2, "(x^3*y)"), 1)) == "(x)");
  CHECK(show(frobenius_root(ideal(f2, "(x^2, y^2)"), 1)) == "(x, y)");
  CHECK(show(frobenius_root(ideal(f2, "(x^2+y^2)"), 1)) == "(x+y)");
  const auto i = ideal(f2, "(x^3+x*y)");
  CHECK(ideal_equals(frobenius_root(i, 0), i));
}

TEST_CASE("frobenius components reassemble the polynomial") {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = random_polynomial(rng, ctx, 5, 7);
      for (unsigned e : {1u, 2u}) {
        Polynomial sum(ctx);
        for (const auto& [r, part] : frobenius_components(f, e)) {
          sum = sum + frobenius_expand(part, e) * Polynomial::monomial(ctx, r);
          for (std::size_t i = 0; i < 3; ++i) CHECK(r[i] < prime_power(p, e));
        }
        CHECK(sum == f);
      }
    }
  }
}

TEST_CASE("fedder_split_test") {
  CHECK(fedder_split_test(ideal(ring(7, {"x", "y", "z"}), "(x^3+y^3+z^3)")));
  CHECK_FALSE(fedder_split_test(ideal(ring(5, {"x", "y", "z"}), "(x^3+y^3+z^3)")));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) CHECK(fedder_split_test(ideal(ring(p, {"x", "y"}), "(x*y)")));
  CHECK_THROWS_AS(fedder_split_test(Ideal::unit(ring(5, {"x"}))), DomainError);
  // Non-principal: the coordinate cross (x*y, x*z, y*z) is split, (x^2, y) is not reduced and not split.
  auto f3 = ring(3, {"x", "y", "z"});
  CHECK(fedder_split_test(ideal(f3, "(x*y, x*z, y*z)")));
  CHECK_FALSE(fedder_split_test(ideal(f3, "(x^2, y)")));
}

TEST_CASE("splitting_coefficient") {
  CHECK(splitting_coefficient(poly(ring(7, {"x", "y", "z"}), "x^3+y^3+z^3")) == 6);
  CHECK(splitting_coefficient(poly(ring(5, {"x", "y", "z"}), "x^3+y^3+z^3")) == 0);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) CHECK(splitting_coefficient(poly(ring(p, {"x", "y"}), "x*y")) == 1);
}

TEST_CASE("nu_value") {
  auto f5 = ring(5, {"x", "y"});
  CHECK(nu_value(ideal(f5, "(x,y)"), ideal(f5, "(x,y)"), 1) == 8);
  auto one5 = ring(5, {"x"});
  CHECK(nu_value(ideal(one5, "(x^2)"), ideal(one5, "(x)"), 1) == 2);
  auto one2 = ring(2, {"x"});
  CHECK(nu_value(ideal(one2, "(x)"), ideal(one2, "(x)"), 2) == 3);
  CHECK_THROWS_AS(nu_value(ideal(f5, "(x+1)"), Ideal::maximal(f5), 1), DomainError);
  CHECK_THROWS_AS(nu_value(ideal(f5, "(x)"), Ideal::maximal(f5), 0), DomainError);
  // Non-monomial a and J.
  CHECK(nu_value(ideal(f5, "(x^2+y^3)"), Ideal::maximal(f5), 1) == 3);
  CHECK(nu_value(ideal(f5, "(x*y)"), ideal(f5, "(x^2, y)"), 1) == 4);
}

TEST_CASE("is_compatible") {
  auto f2 = ring(2, {"x", "y"});
  const CartierMap phi(poly(f2, "x*y"), 1);
  CHECK(is_compatible(ideal(f2, "(x)"), phi));
  CHECK_FALSE(is_compatible(ideal(f2, "(x+y)"), phi));
  CHECK(is_compatible(Ideal::zero(f2), phi));
  CHECK(is_compatible(Ideal::zero(f2), CartierMap(poly(f2, "x+y^3"), 2)));
  CHECK_THROWS_AS(CartierMap(Polynomial(f2), 1), DomainError);
  CHECK_THROWS_AS(CartierMap(poly(f2, "x"), 0), DomainError);
}

TEST_CASE("is_uniformly_compatible") {
  auto f2 = ring(2, {"x", "y"});
  CHECK(is_uniformly_compatible(Ideal::zero(f2)));
  CHECK(is_uniformly_compatible(Ideal::unit(f2)));
  CHECK_FALSE(is_uniformly_compatible(ideal(f2, "(x)")));
  CHECK_FALSE(is_uniformly_compatible(ideal(f2, "(x,y)")));
}

namespace {

Ideal random_small_ideal(std::mt19937& rng, const ContextPtr& ctx) {
  std::bernoulli_distribution monomial(0.5);
  if (monomial(rng)) return random_monomial_ideal(rng, ctx, 3, 6);
  std::vector<Polynomial> gens;
  for (int i = 0; i < 2; ++i) {
    auto f = random_polynomial(rng, ctx, 2, 6);
    if (!f.is_zero()) gens.push_back(f);
  }
  if (gens.empty()) gens.push_back(poly(ctx, "x*y"));
  return Ideal(ctx, gens);
}

}  // namespace

TEST_CASE("property: Galois adjunction between roots and powers") {
  std::mt19937 rng(41);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 40; ++trial) {
      const auto i = random_small_ideal(rng, ctx);
      for (unsigned e : {1u, 2u}) {
        CHECK(ideal_contains(frobenius_power(frobenius_root(i, e), e), i));
        CHECK(ideal_equals(frobenius_root(frobenius_power(i, e), e), i));
      }
    }
  }
}

TEST_CASE("property: roots compose") {
  std::mt19937 rng(43);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y"});
    for (int trial = 0; trial < 40; ++trial) {
      const auto i = random_small_ideal(rng, ctx);
      CHECK(ideal_equals(frobenius_root(frobenius_root(i, 1), 1), frobenius_root(i, 2)));
      CHECK(ideal_equals(frobenius_root(frobenius_root(i, 2), 1), frobenius_root(i, 3)));
    }
  }
}

TEST_CASE("property: frobenius_power does not depend on the generating set") {
  std::mt19937 rng(47);
  auto ctx = ring(3, {"x", "y", "z"});
  for (int trial = 0; trial < 30; ++trial) {
    const auto i = random_small_ideal(rng, ctx);
    auto gens = i.generators();
    gens.push_back(gens.front() * random_polynomial(rng, ctx, 2, 2) + gens.back());
    CHECK(ideal_equals(frobenius_power(i, 1), frobenius_power(Ideal(ctx, gens), 1)));
    CHECK(ideal_equals(frobenius_power(i, 1), frobenius_power(Ideal(ctx, i.basis()), 1)));
  }
}

TEST_CASE("property: Lemma increase is an equality for principal ideals") {
  std::mt19937 rng(53);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y"});
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_polynomial(rng, ctx, 3, 3);
      if (f.is_zero()) continue;
      for (unsigned n : {1u, 2u, 3u}) {
        for (unsigned e : {1u, 2u}) {
          const auto lhs = frobenius_root(Ideal(ctx, {f.pow(n)}), e);
          const auto rhs = frobenius_root(Ideal(ctx, {f.pow(n * p)}), e + 1);
          CHECK(ideal_equals(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("property: nu is monotone along Frobenius levels") {
  std::mt19937 rng(59);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y"});
    const auto m = Ideal::maximal(ctx);
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_monomial_ideal(rng, ctx, 3, 3);
      CHECK(nu_value(a, m, 2) >= p * nu_value(a, m, 1));
      CHECK(nu_value(a, m, 3) >= p * nu_value(a, m, 2));
    }
  }
}

TEST_CASE("property: nonzero splitting coefficient implies Fedder splitting") {
  std::mt19937 rng(61);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto ctx = ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_polynomial(rng, ctx, 4, 3);
      if (f.is_zero() || f.is_constant()) continue;
      if (splitting_coefficient(f) != 0) CHECK(fedder_split_test(Ideal(ctx, {f})));
    }
  }
}

TEST_CASE("property: uniform compatibility implies compatibility with sampled maps") {
  std::mt19937 rng(67);
  auto ctx = ring(2, {"x", "y"});
  std::vector<CartierMap> maps;
  for (const char* g : {"x*y", "1", "x+y", "x^3*y+y^2", "x*y^2+x^2"}) {
    for (unsigned e : {1u, 2u}) maps.emplace_back(poly(ctx, g), e);
  }
  std::vector<Ideal> ideals = {Ideal::zero(ctx), Ideal::unit(ctx)};
  for (int trial = 0; trial < 40; ++trial) ideals.push_back(random_small_ideal(rng, ctx));
  for (const auto& j : ideals) {
    if (!is_uniformly_compatible(j)) continue;
    for (const auto& phi : maps) CHECK(is_compatible(j, phi));
  }
}

TEST_CASE("frobenius roots of powers match the plain power") {
  std::mt19937 rng(71);
  for (std::uint32_t p : {2u, 3u}) {
    auto ctx = ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_monomial_ideal(rng, ctx, 3, 3);
      for (unsigned n : {1u, 3u, 7u, 12u}) {
        for (unsigned e : {1u, 2u}) {
          CHECK(ideal_equals(frobenius_root_of_power(a, n, e), frobenius_root(ideal_power(a, n), e)));
        }
      }
    }
    const auto b = ideal(ctx, "(x+y, z^2)");
    CHECK(ideal_equals(frobenius_root_of_power(b, 3, 1), frobenius_root(ideal_power(b, 3), 1)));
  }
}

TEST_CASE("minimal root oracle on a sample") {
  auto ctx = ring(2, {"x", "y"});
  MinimalRootSearch search(ctx);
  const auto inputs = small_binomials(ctx, 4);
  std::mt19937 rng(73);
  std::uniform_int_distribution<std::size_t> pick(0, inputs.size() - 1);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Polynomial> gens = {inputs[pick(rng)], inputs[pick(rng)]};
    const auto expected = search.smallest_root(gens);
    REQUIRE(expected);
    CHECK(ideal_equals(*expected, frobenius_root(Ideal(ctx, gens), 1)));
  }
}
