#include "support.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace fsplit::testing {

ContextPtr ring(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order) {
  return RingContext::make(p, std::move(vars), order);
}

Polynomial poly(const ContextPtr& ctx, const std::string& text) { return parse_polynomial(text, ctx); }
Ideal ideal(const ContextPtr& ctx, const std::string& text) { return parse_ideal(text, ctx); }

std::string show(const Ideal& ideal) {
  const auto gens = basis_strings(ideal);
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ")";
}

Ideal random_monomial_ideal(std::mt19937& rng, const ContextPtr& ctx, unsigned max_gens, unsigned max_degree,
                            unsigned min_degree) {
  const auto n = ctx->num_variables();
  std::uniform_int_distribution<unsigned> count(1, max_gens);
  std::uniform_int_distribution<unsigned> degree(min_degree, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::vector<Polynomial> gens;
  const unsigned k = count(rng);
  for (unsigned i = 0; i < k; ++i) {
    Monomial m;
    const unsigned d = degree(rng);
    for (unsigned j = 0; j < d; ++j) {
      const auto v = var(rng);
      m.set(v, m[v] + 1);
    }
    gens.push_back(Polynomial::monomial(ctx, m));
  }
  return Ideal(ctx, std::move(gens));
}

Polynomial random_polynomial(std::mt19937& rng, const ContextPtr& ctx, unsigned max_terms, unsigned max_degree) {
  const auto n = ctx->num_variables();
  std::uniform_int_distribution<unsigned> count(0, max_terms);
  std::uniform_int_distribution<unsigned> exponent(0, max_degree);
  std::uniform_int_distribution<std::uint32_t> coeff(0, ctx->prime() - 1);
  std::vector<Term> terms;
  const unsigned k = count(rng);
  for (unsigned i = 0; i < k; ++i) {
    Monomial m;
    unsigned budget = exponent(rng);
    for (std::size_t v = 0; v < n && budget > 0; ++v) {
      std::uniform_int_distribution<unsigned> take(0, budget);
      const unsigned e = v + 1 == n ? budget : take(rng);
      m.set(v, e);
      budget -= e;
    }
    terms.push_back({m, coeff(rng)});
  }
  return Polynomial(ctx, std::move(terms));
}

std::vector<Monomial> box(std::size_t n, std::uint32_t bound) {
  std::vector<Monomial> out;
  Monomial m;
  while (true) {
    out.push_back(m);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (m[i] < bound) {
        m.set(i, m[i] + 1);
        break;
      }
      m.set(i, 0);
    }
    if (i == n) break;
  }
  return out;
}

bool divisible_by_any(const Monomial& m, const std::vector<Monomial>& gens) {
  return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
}

std::vector<Monomial> leading_monomials(const Ideal& ideal) {
  std::vector<Monomial> out;
  for (const auto& g : ideal.basis()) out.push_back(g.leading_monomial());
  return out;
}

std::vector<Polynomial> small_binomials(const ContextPtr& ctx, unsigned max_degree) {
  std::vector<Monomial> monos;
  for (unsigned d = 0; d <= max_degree; ++d) {
    for (unsigned a = 0; a <= d; ++a) {
      Monomial m;
      m.set(0, a);
      m.set(1, d - a);
      monos.push_back(m);
    }
  }
  std::vector<Polynomial> out;
  for (const auto& m : monos) out.push_back(Polynomial::monomial(ctx, m));
  for (std::size_t i = 0; i < monos.size(); ++i) {
    for (std::size_t j = i + 1; j < monos.size(); ++j) {
      out.push_back(Polynomial::monomial(ctx, monos[i]) + Polynomial::monomial(ctx, monos[j]));
    }
  }
  return out;
}

MinimalRootSearch::MinimalRootSearch(const ContextPtr& ctx) : ctx_(ctx), small_(small_binomials(ctx, 2)) {
  const std::size_t k = small_.size();
  std::map<std::vector<std::string>, std::size_t> seen;
  auto consider = [&](std::uint32_t mask) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1u) gens.push_back(small_[i]);
    }
    Ideal j(ctx_, gens);
    auto key = basis_strings(j);
    if (seen.count(key)) return;
    seen.emplace(std::move(key), candidates_.size());
    std::uint32_t members = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (ideal_member(small_[i], j)) members |= 1u << i;
    }
    Ideal power = frobenius_power(j, 1);
    power.basis();
    candidates_.push_back({j, power, mask, members});
  };
  // Subsets of size 1..4 in lexicographic order.
  for (std::size_t a = 0; a < k; ++a) {
    consider(1u << a);
    for (std::size_t b = a + 1; b < k; ++b) {
      consider(1u << a | 1u << b);
      for (std::size_t c = b + 1; c < k; ++c) {
        consider(1u << a | 1u << b | 1u << c);
        for (std::size_t d = c + 1; d < k; ++d) consider(1u << a | 1u << b | 1u << c | 1u << d);
      }
    }
  }
}

const std::vector<std::uint64_t>& MinimalRootSearch::power_membership(const Polynomial& g) {
  for (const auto& [poly, bits] : membership_cache_) {
    if (poly == g) return bits;
  }
  std::vector<std::uint64_t> bits((candidates_.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (ideal_member(g, candidates_[i].power)) bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  membership_cache_.emplace_back(g, std::move(bits));
  return membership_cache_.back().second;
}

std::optional<Ideal> MinimalRootSearch::smallest_root(const std::vector<Polynomial>& generators) {
  std::vector<std::uint64_t> ok((candidates_.size() + 63) / 64, ~std::uint64_t{0});
  for (const auto& g : generators) {
    const auto& bits = power_membership(g);
    for (std::size_t w = 0; w < ok.size(); ++w) ok[w] &= bits[w];
  }
  auto contained = [&](std::size_t a, std::size_t b) {
    return (candidates_[a].generator_mask & ~candidates_[b].member_mask) == 0;
  };
  std::optional<std::size_t> best;
  std::vector<std::size_t> satisfying;
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (!(ok[i / 64] >> (i % 64) & 1u)) continue;
    satisfying.push_back(i);
    if (!best || contained(i, *best)) best = i;
  }
  if (!best) return std::nullopt;
  for (auto i : satisfying) {
    if (!contained(*best, i)) return std::nullopt;
  }
  return candidates_[*best].ideal;
}

}  // namespace fsplit::testing
