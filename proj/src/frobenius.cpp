#include "fsplit/frobenius.hpp"

#include <algorithm>
#include <unordered_set>

#include "fsplit/errors.hpp"

namespace fsplit {

CartierMap::CartierMap(Polynomial multiplier, unsigned level) : multiplier_(std::move(multiplier)), level_(level) {
  if (multiplier_.is_zero()) throw DomainError("Cartier map multiplier must be nonzero");
  if (level_ == 0) throw DomainError("Cartier map level must be at least 1");
}

Ideal frobenius_power(const Ideal& ideal, unsigned e) {
  if (e == 0) return ideal;
  const auto& ctx = ideal.context();
  // The Frobenius image of a reduced Groebner basis is again one:
  // lm(g^q) = lm(g)^q and S-polynomials commute with Frobenius.
  std::vector<Polynomial> basis;
  for (const auto& g : ideal.basis()) basis.push_back(frobenius_expand(g, e));
  return Ideal::from_reduced_basis(ctx, std::move(basis));
}

std::map<Monomial, Polynomial> frobenius_components(const Polynomial& f, unsigned e) {
  const auto& ctx = f.context();
  const auto q = prime_power(f.prime(), e);
  const auto n = ctx->num_variables();
  std::map<Monomial, std::vector<Term>> buckets;
  for (const auto& t : f.terms()) {
    Monomial rest;
    Monomial quotient;
    for (std::size_t i = 0; i < n; ++i) {
      rest.set(i, static_cast<std::uint32_t>(t.monomial[i] % q));
      quotient.set(i, static_cast<std::uint32_t>(t.monomial[i] / q));
    }
    // c^{1/q} = c in F_p
    buckets[rest].push_back({quotient, t.coeff});
  }
  std::map<Monomial, Polynomial> out;
  for (auto& [r, terms] : buckets) out.emplace(r, Polynomial(ctx, std::move(terms)));
  return out;
}

Ideal frobenius_root(const Ideal& ideal, unsigned e) {
  if (e == 0) return ideal;
  const auto& ctx = ideal.context();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    for (auto& [r, part] : frobenius_components(g, e)) gens.push_back(std::move(part));
  }
  if (ideal.is_monomial()) {
    return Ideal::from_reduced_basis(ctx, detail::minimal_monomial_generators(ctx, gens));
  }
  return Ideal(ctx, std::move(gens));
}

namespace {

// Beyond this many multisets the plain power is cheaper to form.
constexpr double kMaxMultisets = 2e7;

double multiset_count(std::uint64_t n, std::size_t r) {
  double c = 1;
  for (std::size_t i = 1; i < r; ++i) c = c * static_cast<double>(n + i) / static_cast<double>(i);
  return c;
}

struct RootOfPower {
  struct State {
    std::size_t j;
    std::uint64_t rem;
    Monomial v;
    friend bool operator==(const State&, const State&) = default;
  };
  struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
      return MonomialHash{}(s.v) ^ (s.j * 0x9e3779b97f4a7c15ull) ^ (s.rem * 0xc2b2ae3d27d4eb4full);
    }
  };

  const std::vector<Monomial>& gens;
  std::size_t n_vars;
  std::uint64_t q;
  std::unordered_set<State, StateHash> visited;
  std::unordered_set<Monomial, MonomialHash> floors;

  void run(std::size_t j, std::uint64_t rem, const Monomial& v) {
    if (j + 1 == gens.size()) {
      const Monomial last = v * gens[j].scaled(rem);
      Monomial f;
      for (std::size_t i = 0; i < n_vars; ++i) f.set(i, static_cast<std::uint32_t>(last[i] / q));
      floors.insert(f);
      return;
    }
    if (!visited.insert({j, rem, v}).second) return;
    Monomial acc = v;
    for (std::uint64_t k = 0;; ++k) {
      run(j + 1, rem - k, acc);
      if (k == rem) break;
      acc = acc * gens[j];
    }
  }
};

}  // namespace

Ideal frobenius_root_of_power(const Ideal& a, std::uint64_t n, unsigned e) {
  const auto& ctx = a.context();
  if (n == 0) return Ideal::unit(ctx);
  if (!a.is_monomial() || a.is_zero_ideal()) return frobenius_root(ideal_power(a, n), e);
  std::vector<Monomial> gens;
  for (const auto& g : a.basis()) gens.push_back(g.leading_monomial());
  const auto q = prime_power(ctx->prime(), e);
  // With r generators, a^n = a^[q] a^(n-q) once n > r(q-1) (some generator
  // occurs q times), and (a^[q] b)^[1/q] = a b^[1/q].
  std::uint64_t peeled = 0;
  const std::uint64_t r = gens.size();
  if (n > r * (q - 1)) {
    peeled = (n - r * (q - 1) + q - 1) / q;
    n -= peeled * q;
  }
  Ideal root = [&] {
    if (multiset_count(n, gens.size()) > kMaxMultisets) return frobenius_root(ideal_power(a, n), e);
    RootOfPower walk{gens, ctx->num_variables(), q, {}, {}};
    walk.run(0, n, Monomial());
    return Ideal::from_reduced_basis(
        ctx, detail::minimal_monomial_generators(ctx, std::vector<Monomial>(walk.floors.begin(), walk.floors.end())));
  }();
  return peeled == 0 ? root : ideal_product(ideal_power(a, peeled), root);
}

Ideal cartier_generators(const Ideal& ideal, unsigned e) {
  if (e == 0) throw DomainError("Cartier generators need e >= 1");
  const auto& ctx = ideal.context();
  if (ideal.generators().size() == 1) {
    // f^{q-1} = prod_i (f^{p-1})^{p^i}
    const Polynomial base = ideal.generators().front().pow(ctx->prime() - 1);
    Polynomial u = base;
    for (unsigned i = 1; i < e; ++i) u = u * frobenius_expand(base, i);
    return Ideal(ctx, {u});
  }
  return ideal_colon(frobenius_power(ideal, e), ideal);
}

bool in_frobenius_power_of_maximal(const Polynomial& f, std::uint64_t q) {
  const auto n = f.context()->num_variables();
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (t.monomial[i] >= q) return true;
    }
    return false;
  });
}

bool fedder_split_test(const Ideal& ideal) {
  if (ideal.is_unit()) throw DomainError("splitting test needs a proper ideal");
  const Ideal colon = cartier_generators(ideal);
  const auto p = ideal.context()->prime();
  return std::any_of(colon.generators().begin(), colon.generators().end(),
                     [&](const Polynomial& u) { return !in_frobenius_power_of_maximal(u, p); });
}

std::uint32_t splitting_coefficient(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("splitting coefficient of the zero polynomial");
  const auto p = f.prime();
  const auto n = f.context()->num_variables();
  // Exponents never decrease under multiplication, so terms with an exponent
  // >= p can be dropped along the way.
  const Polynomial base = f.truncated_below(p);
  Polynomial acc = Polynomial::constant(f.context(), 1);
  for (std::uint32_t k = 0; k + 1 < p; ++k) acc = (acc * base).truncated_below(p);
  Monomial target;
  for (std::size_t i = 0; i < n; ++i) target.set(i, p - 1);
  return acc.coefficient(target);
}

std::uint64_t nu_value(const Ideal& a, const Ideal& j, unsigned e) {
  const auto& ctx = a.context();
  if (!same_ring(ctx, j.context())) throw ContextMismatch();
  if (e == 0) throw DomainError("nu needs e >= 1");
  if (j.is_unit()) throw DomainError("nu needs a proper ideal J");
  const auto q = prime_power(ctx->prime(), e);
  const auto n = ctx->num_variables();

  std::uint64_t hi = 0;
  if (ideal_equals(j, Ideal::maximal(ctx))) {
    for (const auto& g : a.generators()) {
      if (g.constant_term() != 0) throw DomainError("nu needs a ⊆ m (generator with nonzero constant term)");
    }
    hi = n * (q - 1) + 1;
  } else {
    // a ⊆ rad(J): find k with a^k ⊆ J, then a^{k(mu(q-1)+1)} ⊆ J^[q] by pigeonhole.
    std::uint64_t k = 1;
    while (!ideal_contains(j, ideal_power(a, k))) {
      k *= 2;
      if (k > 64) throw DomainError("nu needs a contained in the radical of J");
    }
    hi = k * (j.basis().size() * (q - 1) + 1);
  }
  if (a.is_zero_ideal()) throw DomainError("nu of the zero ideal is unbounded");

  const Ideal target = frobenius_power(j, e);
  auto escapes = [&](std::uint64_t m) { return !ideal_contains(target, ideal_power(a, m)); };
  // escapes(0) holds since J is proper; escapes(hi) fails.
  std::uint64_t lo = 0;
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    if (escapes(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool is_compatible(const Ideal& j, const CartierMap& phi) {
  if (!same_ring(j.context(), phi.multiplier().context())) throw ContextMismatch();
  if (j.is_zero_ideal()) return true;
  return ideal_contains(j, frobenius_root(ideal_times(phi.multiplier(), j), phi.level()));
}

bool is_uniformly_compatible(const Ideal& j) {
  if (j.is_zero_ideal()) return true;
  return ideal_contains(j, frobenius_root(j, 1));
}

}  // namespace fsplit
