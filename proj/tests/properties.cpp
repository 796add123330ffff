#include "properties.hpp"

#include <algorithm>
#include <functional>

#include "fsplit/errors.hpp"
#include "support.hpp"

namespace fsplit::testing {

namespace {

ContextPtr random_ring(std::mt19937& rng, std::uint32_t p) {
  std::bernoulli_distribution three(0.5);
  return three(rng) ? ring(p, {"x", "y", "z"}) : ring(p, {"x", "y"});
}

// t = k/p with 1 <= k <= max_k.
Exponent random_exponent(std::mt19937& rng, std::uint32_t p, unsigned max_k) {
  std::uniform_int_distribution<unsigned> k(1, max_k);
  return Exponent(k(rng), p);
}

// Deeper than the default cap: some chains at p = 2 only settle around e = 5,
// and two confirmations need two more levels.
Budget property_budget(std::uint32_t p) { return p == 2 ? Budget{10, 2} : Budget{7, 2}; }

Ideal tau(const Ideal& a, const Exponent& t, const Budget& budget) { return test_ideal_regular(a, t, budget).result; }

Ideal tau(const Ideal& a, const Exponent& t) { return tau(a, t, property_budget(a.context()->prime())); }

// Runs `body` for each instance; any exception counts as a violation.
PropertyOutcome run_cases(unsigned instances, const std::function<bool(std::string&)>& body) {
  PropertyOutcome out;
  for (unsigned i = 0; i < instances; ++i) {
    std::string what;
    bool ok = false;
    try {
      ok = body(what);
    } catch (const std::exception& ex) {
      what += std::string(" threw: ") + ex.what();
    }
    ++out.instances;
    if (!ok) {
      ++out.violations;
      out.log.push_back(what);
    }
  }
  return out;
}

PropertyOutcome monotone_in_ideal(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto b = random_monomial_ideal(rng, ctx, 3, 3);
    const auto c = random_monomial_ideal(rng, ctx, 2, 2, 0);
    std::bernoulli_distribution product(0.5);
    const auto a = product(rng) ? ideal_product(b, c) : ideal_intersect(b, c);
    const auto t = random_exponent(rng, p, 2 * p);
    what = "a=" + show(a) + " b=" + show(b) + " t=" + t.to_string();
    return ideal_contains(tau(b, t), tau(a, t));
  });
}

PropertyOutcome antitone_in_t(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 3);
    auto t1 = random_exponent(rng, p, 2 * p);
    auto t2 = random_exponent(rng, p, 2 * p);
    if (t1 < t2) std::swap(t1, t2);
    what = "a=" + show(a) + " t=" + t1.to_string() + " t'=" + t2.to_string();
    return ideal_contains(tau(a, t2), tau(a, t1));
  });
}

PropertyOutcome powers(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 2);
    std::uniform_int_distribution<unsigned> pick_n(1, 3);
    const unsigned n = pick_n(rng);
    const auto t = random_exponent(rng, p, n == 1 ? 2 * p : p);
    what = "a=" + show(a) + " n=" + std::to_string(n) + " t=" + t.to_string();
    return ideal_equals(tau(ideal_power(a, n), t), tau(a, t * Exponent(n)));
  });
}

PropertyOutcome right_constancy(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  // Jumping numbers of these ideals are far enough from the 1/p grid that
  // a step of p^-k stays inside one constancy interval.
  const unsigned k = p == 2 ? 6 : 4;
  const Exponent eps(1, prime_power(p, k));
  const Budget budget{std::max(k + 3, property_budget(p).max_e), 2};
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 2);
    const auto t = random_exponent(rng, p, p);
    what = "a=" + show(a) + " t=" + t.to_string() + " eps=" + eps.to_string();
    return ideal_equals(tau(a, t, budget), tau(a, t + eps, budget));
  });
}

PropertyOutcome contains_ideal(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 4);
    what = "a=" + show(a);
    return ideal_contains(tau(a, Exponent(1)), a);
  });
}

PropertyOutcome briancon_skoda(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 3);
    const auto r = static_cast<unsigned>(a.basis().size());
    std::uniform_int_distribution<unsigned> pick(std::max(r, 1u), 4);
    const unsigned l = pick(rng);
    what = "a=" + show(a) + " l=" + std::to_string(l);
    return ideal_equals(tau(a, Exponent(l)), ideal_product(a, tau(a, Exponent(l - 1))));
  });
}

PropertyOutcome restriction(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    std::vector<std::string> fewer = ctx->variables();
    fewer.pop_back();
    auto small = ring(p, fewer);
    auto a = random_monomial_ideal(rng, ctx, 3, 3);
    auto restricted = restrict_last_variable(a, small);
    while (restricted.is_zero_ideal()) {
      a = random_monomial_ideal(rng, ctx, 3, 3);
      restricted = restrict_last_variable(a, small);
    }
    const auto t = random_exponent(rng, p, 2 * p);
    what = "a=" + show(a) + " t=" + t.to_string();
    return ideal_contains(restrict_last_variable(tau(a, t), small), tau(restricted, t));
  });
}

PropertyOutcome subadditivity(std::mt19937& rng, std::uint32_t p, unsigned instances) {
  return run_cases(instances, [&](std::string& what) {
    auto ctx = random_ring(rng, p);
    const auto a = random_monomial_ideal(rng, ctx, 3, 2);
    std::uniform_int_distribution<unsigned> pick_n(2, 3);
    const unsigned n = pick_n(rng);
    const auto t = random_exponent(rng, p, p);
    what = "a=" + show(a) + " n=" + std::to_string(n) + " t=" + t.to_string();
    return ideal_contains(ideal_power(tau(a, t), n), tau(a, t * Exponent(n)));
  });
}

}  // namespace

Ideal restrict_last_variable(const Ideal& a, const ContextPtr& smaller) {
  const auto n = a.context()->num_variables();
  std::vector<std::size_t> map(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) map[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : a.basis()) {
    std::vector<Term> kept;
    for (const auto& t : g.terms()) {
      if (t.monomial[n - 1] == 0) kept.push_back(t);
    }
    const Polynomial h(a.context(), std::move(kept));
    if (!h.is_zero()) gens.push_back(h.mapped(smaller, map));
  }
  return Ideal(smaller, std::move(gens));
}

const std::vector<NamedProperty>& test_ideal_properties() {
  static const std::vector<NamedProperty> all = {
      {"(1) a ⊆ b implies tau(a^t) ⊆ tau(b^t)", monotone_in_ideal},
      {"(2) t >= t' implies tau(a^t) ⊆ tau(a^t')", antitone_in_t},
      {"(3) tau((a^n)^t) = tau(a^(nt))", powers},
      {"(6) tau(a^t) = tau(a^(t+eps))", right_constancy},
      {"(7) a ⊆ tau(a)", contains_ideal},
      {"(8) tau(a^l) = a tau(a^(l-1)) for l >= #gens", briancon_skoda},
      {"(9) tau((a|x_d=0)^t) ⊆ tau(a^t)|x_d=0", restriction},
      {"(10) tau(a^(tn)) ⊆ tau(a^t)^n", subadditivity},
  };
  return all;
}

}  // namespace fsplit::testing
