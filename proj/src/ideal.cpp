#include "fsplit/ideal.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "fsplit/errors.hpp"

namespace fsplit {

struct Ideal::Cache {
  std::mutex mu;
  std::optional<std::vector<Polynomial>> basis;
};

namespace {

void require_same(const ContextPtr& a, const ContextPtr& b) {
  if (!same_ring(a, b)) throw ContextMismatch();
}

void sort_by_leading_monomial(std::vector<Polynomial>& polys, const RingContext& ctx) {
  std::sort(polys.begin(), polys.end(), [&](const Polynomial& a, const Polynomial& b) {
    return compare(a.leading_monomial(), b.leading_monomial(), ctx.order(), ctx.num_variables()) < 0;
  });
}

// h[pos:] -= c * m * g, leaving h[0:pos] untouched. Every term of m*g is
// smaller than h[pos], so the prefix stays in order.
void subtract_tail(std::vector<Term>& h, std::size_t pos, std::uint32_t c, const Monomial& m,
                   const std::vector<Term>& g, const RingContext& ctx, std::vector<Term>& scratch) {
  const auto p = ctx.prime();
  const auto order = ctx.order();
  const auto n = ctx.num_variables();
  const std::uint32_t neg = p - c;
  scratch.clear();
  std::size_t i = pos, j = 0;
  Monomial gm;
  bool have_gm = false;
  while (i < h.size() && j < g.size()) {
    if (!have_gm) {
      gm = g[j].monomial * m;
      have_gm = true;
    }
    const int cmp = compare(h[i].monomial, gm, order, n);
    if (cmp > 0) {
      scratch.push_back(h[i++]);
    } else if (cmp < 0) {
      scratch.push_back({gm, mod_mul(g[j++].coeff, neg, p)});
      have_gm = false;
    } else {
      const auto s = mod_add(h[i].coeff, mod_mul(g[j].coeff, neg, p), p);
      if (s != 0) scratch.push_back({gm, s});
      ++i;
      ++j;
      have_gm = false;
    }
  }
  for (; i < h.size(); ++i) scratch.push_back(h[i]);
  for (; j < g.size(); ++j) scratch.push_back({g[j].monomial * m, mod_mul(g[j].coeff, neg, p)});
  h.resize(pos);
  h.insert(h.end(), scratch.begin(), scratch.end());
}

// Full reduction of f modulo monic reducers.
Polynomial reduce_full(const Polynomial& f, const std::vector<const Polynomial*>& reducers) {
  const auto& ctx = *f.context();
  std::vector<Term> h = f.terms();
  std::vector<Term> scratch;
  std::size_t pos = 0;
  while (pos < h.size()) {
    const Term lt = h[pos];
    const Polynomial* divisor = nullptr;
    for (const Polynomial* g : reducers) {
      if (g->leading_monomial().divides(lt.monomial)) {
        divisor = g;
        break;
      }
    }
    if (divisor == nullptr) {
      ++pos;
      continue;
    }
    // Reducers are monic, so the multiplier is lt.coeff.
    subtract_tail(h, pos, lt.coeff, lt.monomial / divisor->leading_monomial(), divisor->terms(), ctx, scratch);
  }
  return Polynomial(f.context(), std::move(h));
}

bool monomial_in(const Monomial& m, const std::vector<Polynomial>& monomial_gens) {
  return std::any_of(monomial_gens.begin(), monomial_gens.end(),
                     [&](const Polynomial& g) { return g.leading_monomial().divides(m); });
}

// Inter-reduction of a minimal Groebner basis into the reduced one.
std::vector<Polynomial> make_reduced(std::vector<Polynomial> minimal, const RingContext& ctx) {
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Polynomial*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(&minimal[j]);
    }
    out.push_back(reduce_full(minimal[i], others).monic());
  }
  sort_by_leading_monomial(out, ctx);
  return out;
}

}  // namespace

// ------------------------------------------------------------------- Ideal

Ideal::Ideal(ContextPtr ctx, std::vector<Polynomial> generators)
    : ctx_(std::move(ctx)), cache_(std::make_shared<Cache>()) {
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (auto& g : generators) {
    require_same(ctx_, g.context());
    if (g.is_zero()) continue;
    std::size_t h = 0;
    for (const auto& t : g.terms()) h = h * 31 + MonomialHash{}(t.monomial) + t.coeff;
    auto [lo, hi] = seen.equal_range(h);
    if (std::any_of(lo, hi, [&](const auto& entry) { return gens_[entry.second] == g; })) continue;
    seen.emplace(h, gens_.size());
    gens_.push_back(std::move(g));
  }
}

Ideal Ideal::zero(ContextPtr ctx) { return Ideal(std::move(ctx), {}); }

Ideal Ideal::unit(ContextPtr ctx) {
  auto one = Polynomial::constant(ctx, 1);
  return from_reduced_basis(ctx, {one});
}

Ideal Ideal::maximal(ContextPtr ctx) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ctx->num_variables(); ++i) gens.push_back(Polynomial::variable(ctx, i));
  sort_by_leading_monomial(gens, *ctx);
  return from_reduced_basis(ctx, std::move(gens));
}

Ideal Ideal::from_reduced_basis(ContextPtr ctx, std::vector<Polynomial> basis) {
  Ideal out(ctx, basis);
  out.cache_->basis = std::move(basis);
  return out;
}

bool Ideal::is_monomial() const noexcept {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_monomial(); });
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().is_constant();
}

const std::vector<Polynomial>& Ideal::basis() const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->basis) return *cache_->basis;
  }
  // Computed outside the lock; a concurrent duplicate computation yields the
  // same basis, and the first writer wins.
  std::vector<Polynomial> computed;
  if (is_monomial()) {
    computed = detail::minimal_monomial_generators(ctx_, gens_);
  } else {
    computed = detail::buchberger(ctx_, gens_);
  }
  std::lock_guard lock(cache_->mu);
  if (!cache_->basis) cache_->basis = std::move(computed);
  return *cache_->basis;
}

std::string Ideal::to_string() const {
  const auto& b = basis();
  if (b.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != 0) out += ", ";
    out += b[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------- detail

namespace detail {

std::vector<Polynomial> minimal_monomial_generators(const ContextPtr& ctx, const std::vector<Polynomial>& gens) {
  std::vector<Monomial> monos;
  monos.reserve(gens.size());
  for (const auto& g : gens) {
    if (!g.is_monomial()) throw DomainError("expected monomial generators");
    monos.push_back(g.leading_monomial());
  }
  return minimal_monomial_generators(ctx, std::move(monos));
}

std::vector<Polynomial> minimal_monomial_generators(const ContextPtr& ctx, std::vector<Monomial> monos) {
  // After sorting by degree a monomial can only be divided by earlier ones.
  std::sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  std::vector<Monomial> kept;
  for (const auto& m : monos) {
    bool divisible = false;
    for (const auto& k : kept) {
      if (k.divides(m)) {
        divisible = true;
        break;
      }
    }
    if (!divisible) kept.push_back(m);
  }
  std::vector<Polynomial> out;
  out.reserve(kept.size());
  for (const auto& m : kept) out.push_back(Polynomial::monomial(ctx, m));
  sort_by_leading_monomial(out, *ctx);
  return out;
}

std::vector<Polynomial> buchberger(const ContextPtr& ctx, const std::vector<Polynomial>& generators) {
  struct Element {
    Polynomial poly;
    std::uint64_t sugar;
    bool active;
  };
  struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
    std::uint64_t sugar;
  };

  const auto order = ctx->order();
  const auto nvars = ctx->num_variables();
  std::vector<Element> basis;
  std::vector<Pair> pairs;

  auto reducers = [&] {
    std::vector<const Polynomial*> out;
    for (const auto& e : basis) {
      if (e.active) out.push_back(&e.poly);
    }
    return out;
  };

  // Gebauer-Moeller update with the product and chain criteria.
  auto update = [&](Polynomial h, std::uint64_t sugar) {
    const Monomial lm_h = h.leading_monomial();
    struct Candidate {
      std::size_t i;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> fresh;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!basis[i].active) continue;
      const auto& lm_i = basis[i].poly.leading_monomial();
      fresh.push_back({i, lcm(lm_i, lm_h), lm_i.coprime_with(lm_h)});
    }
    std::vector<Candidate> kept;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      const auto& c = fresh[k];
      bool keep = c.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < fresh.size() && keep; ++l) keep = !fresh[l].lcm.divides(c.lcm);
        for (const auto& d : kept) {
          if (!keep) break;
          keep = !d.lcm.divides(c.lcm);
        }
      }
      if (keep) kept.push_back(c);
    }
    std::erase_if(pairs, [&](const Pair& pr) {
      if (!lm_h.divides(pr.lcm)) return false;
      const auto& lm_i = basis[pr.i].poly.leading_monomial();
      const auto& lm_j = basis[pr.j].poly.leading_monomial();
      return !(lcm(lm_i, lm_h) == pr.lcm) && !(lcm(lm_j, lm_h) == pr.lcm);
    });
    const std::size_t index = basis.size();
    for (const auto& c : kept) {
      if (c.coprime) continue;
      const auto& gi = basis[c.i];
      const std::uint64_t s = std::max(gi.sugar + c.lcm.degree() - gi.poly.leading_monomial().degree(),
                                       sugar + c.lcm.degree() - lm_h.degree());
      pairs.push_back({c.i, index, c.lcm, s});
    }
    for (auto& e : basis) {
      if (e.active && lm_h.divides(e.poly.leading_monomial())) e.active = false;
    }
    basis.push_back({std::move(h), sugar, true});
  };

  std::vector<Polynomial> input;
  for (const auto& g : generators) {
    if (!g.is_zero()) input.push_back(g.monic());
  }
  sort_by_leading_monomial(input, *ctx);
  for (const auto& g : input) {
    Polynomial h = reduce_full(g, reducers());
    if (h.is_zero()) continue;
    const auto sugar = h.total_degree();
    update(h.monic(), sugar);
  }

  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      if (it->sugar != best->sugar) {
        if (it->sugar < best->sugar) best = it;
        continue;
      }
      if (compare(it->lcm, best->lcm, order, nvars) < 0) best = it;
    }
    const Pair pr = *best;
    pairs.erase(best);

    const auto& f = basis[pr.i].poly;
    const auto& g = basis[pr.j].poly;
    // Both monic: S = (L/lm f) f - (L/lm g) g
    Polynomial s = f.times_term(pr.lcm / f.leading_monomial(), 1);
    s.subtract_multiple(1, pr.lcm / g.leading_monomial(), g);
    Polynomial h = reduce_full(s, reducers());
    if (h.is_zero()) continue;
    if (h.is_constant()) return {Polynomial::constant(ctx, 1)};
    update(h.monic(), std::max(pr.sugar, h.total_degree()));
  }

  std::vector<Polynomial> minimal;
  for (auto& e : basis) {
    if (e.active) minimal.push_back(std::move(e.poly));
  }
  if (minimal.size() == 1 && minimal.front().is_constant()) return {Polynomial::constant(ctx, 1)};
  return make_reduced(std::move(minimal), *ctx);
}

Ideal intersect_by_elimination(const Ideal& a, const Ideal& b) {
  require_same(a.context(), b.context());
  const auto& ctx = a.context();
  if (a.is_zero_ideal() || b.is_zero_ideal()) return Ideal::zero(ctx);
  if (ctx->num_variables() + 1 > kMaxVariables) throw DomainError("too many variables for elimination");

  std::string tname = "_elim";
  while (ctx->index_of(tname)) tname += '_';
  std::vector<std::string> vars{tname};
  vars.insert(vars.end(), ctx->variables().begin(), ctx->variables().end());
  auto ext = RingContext::make(ctx->prime(), vars, MonomialOrder::elimination);

  std::vector<std::size_t> up(ctx->num_variables());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] = i + 1;
  const auto t = Polynomial::variable(ext, 0);
  const auto one_minus_t = Polynomial::constant(ext, 1) - t;

  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(t * f.mapped(ext, up));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.mapped(ext, up));
  const auto gb = buchberger(ext, gens);

  std::vector<std::size_t> down(ext->num_variables());
  for (std::size_t i = 1; i < down.size(); ++i) down[i] = i - 1;
  std::vector<Polynomial> out;
  for (const auto& g : gb) {
    if (g.leading_monomial()[0] != 0) continue;
    out.push_back(g.mapped(ctx, down));
  }
  return Ideal(ctx, std::move(out));
}

Ideal colon_by_elimination(const Ideal& ideal, const Polynomial& by) {
  require_same(ideal.context(), by.context());
  const auto& ctx = ideal.context();
  if (by.is_zero()) return Ideal::unit(ctx);
  const Ideal meet = intersect_by_elimination(ideal, Ideal(ctx, {by}));
  std::vector<Polynomial> out;
  for (const auto& g : meet.generators()) {
    auto q = divide_exact(g, by);
    if (!q) throw Error("internal: intersection generator not divisible by the colon element");
    out.push_back(std::move(*q));
  }
  return Ideal(ctx, std::move(out));
}

}  // namespace detail

// -------------------------------------------------------------- toolbox

const std::vector<Polynomial>& groebner_basis(const Ideal& ideal) { return ideal.basis(); }

Polynomial normal_form(const Polynomial& f, const Ideal& ideal) {
  require_same(f.context(), ideal.context());
  const auto& b = ideal.basis();
  std::vector<const Polynomial*> reducers;
  reducers.reserve(b.size());
  for (const auto& g : b) reducers.push_back(&g);
  return reduce_full(f, reducers);
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) {
  require_same(f.context(), ideal.context());
  if (f.is_zero()) return true;
  if (ideal.is_monomial()) {
    const auto& b = ideal.basis();
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [&](const Term& t) { return monomial_in(t.monomial, b); });
  }
  return normal_form(f, ideal).is_zero();
}

bool ideal_contains(const Ideal& big, const Ideal& small) {
  require_same(big.context(), small.context());
  if (big.is_unit()) return true;
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const Polynomial& g) { return ideal_member(g, big); });
}

bool ideal_equals(const Ideal& a, const Ideal& b) {
  require_same(a.context(), b.context());
  return a.basis() == b.basis();
}

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  require_same(a.context(), b.context());
  const auto& ctx = a.context();
  if (a.is_zero_ideal() || b.is_zero_ideal()) return Ideal::zero(ctx);
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  if (a.is_monomial() && b.is_monomial()) {
    std::vector<Polynomial> gens;
    for (const auto& f : a.basis()) {
      for (const auto& g : b.basis()) {
        gens.push_back(Polynomial::monomial(ctx, lcm(f.leading_monomial(), g.leading_monomial())));
      }
    }
    return Ideal::from_reduced_basis(ctx, detail::minimal_monomial_generators(ctx, gens));
  }
  return detail::intersect_by_elimination(a, b);
}

Ideal ideal_colon(const Ideal& ideal, const Polynomial& by) {
  require_same(ideal.context(), by.context());
  const auto& ctx = ideal.context();
  if (by.is_zero() || ideal_member(by, ideal)) return Ideal::unit(ctx);
  if (ideal.is_monomial() && by.is_monomial()) {
    const Monomial& m = by.leading_monomial();
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.basis()) {
      const auto& a = g.leading_monomial();
      Monomial q;
      for (std::size_t i = 0; i < ctx->num_variables(); ++i) q.set(i, a[i] > m[i] ? a[i] - m[i] : 0);
      gens.push_back(Polynomial::monomial(ctx, q));
    }
    return Ideal::from_reduced_basis(ctx, detail::minimal_monomial_generators(ctx, gens));
  }
  return detail::colon_by_elimination(ideal, by);
}

Ideal ideal_colon(const Ideal& ideal, const Ideal& by) {
  require_same(ideal.context(), by.context());
  const auto& ctx = ideal.context();
  if (by.is_zero_ideal()) return Ideal::unit(ctx);
  std::optional<Ideal> out;
  for (const auto& g : by.generators()) {
    Ideal part = ideal_colon(ideal, g);
    out = out ? ideal_intersect(*out, part) : part;
  }
  return *out;
}

Colength colength(const Ideal& ideal) {
  const auto& ctx = ideal.context();
  const auto n = ctx->num_variables();
  if (ideal.is_zero_ideal()) return {std::nullopt};
  const auto& b = ideal.basis();
  std::vector<Monomial> lms;
  for (const auto& g : b) lms.push_back(g.leading_monomial());
  // Zero-dimensional iff every variable has a pure power among the leading monomials.
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : lms) {
      if (m.degree() == m[i] && m[i] > 0 && (bound[i] == 0 || m[i] < bound[i])) bound[i] = m[i];
    }
    if (bound[i] == 0) {
      if (lms.size() == 1 && lms.front().is_one()) return {0};
      return {std::nullopt};
    }
  }
  if (lms.size() == 1 && lms.front().is_one()) return {0};
  // Walk the box over all but the last variable; the last coordinate of a
  // standard monomial ranges over [0, smallest blocking exponent).
  std::uint64_t count = 0;
  std::vector<std::uint32_t> prefix(n, 0);
  const std::size_t last = n - 1;
  while (true) {
    std::uint32_t limit = bound[last];
    for (const auto& m : lms) {
      bool below = true;
      for (std::size_t i = 0; i < last && below; ++i) below = m[i] <= prefix[i];
      if (below) limit = std::min(limit, m[last]);
    }
    count += limit;
    std::size_t i = 0;
    for (; i < last; ++i) {
      if (++prefix[i] < bound[i]) break;
      prefix[i] = 0;
    }
    if (i == last) break;
  }
  return {count};
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same(a.context(), b.context());
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.context(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same(a.context(), b.context());
  const auto& ctx = a.context();
  std::vector<Polynomial> gens;
  if (a.is_monomial() && b.is_monomial()) {
    std::vector<Monomial> products;
    products.reserve(a.generators().size() * b.generators().size());
    for (const auto& f : a.generators()) {
      for (const auto& g : b.generators()) products.push_back(f.leading_monomial() * g.leading_monomial());
    }
    return Ideal::from_reduced_basis(ctx, detail::minimal_monomial_generators(ctx, std::move(products)));
  }
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(f * g);
  }
  Ideal out(ctx, std::move(gens));
  if (out.is_monomial()) return Ideal::from_reduced_basis(ctx, detail::minimal_monomial_generators(ctx, out.generators()));
  return out;
}

Ideal ideal_times(const Polynomial& f, const Ideal& a) {
  return ideal_product(Ideal(a.context(), {f}), a);
}

Ideal ideal_power(const Ideal& a, std::uint64_t n) {
  const auto& ctx = a.context();
  if (n == 0) return Ideal::unit(ctx);
  if (a.is_zero_ideal()) return a;
  if (a.is_monomial()) {
    // Square-and-multiply on minimal monomial generators.
    Ideal result = Ideal::unit(ctx);
    Ideal base = Ideal::from_reduced_basis(ctx, a.basis());
    while (n != 0) {
      if (n & 1) result = ideal_product(result, base);
      n >>= 1;
      if (n != 0) base = ideal_product(base, base);
    }
    return result;
  }
  // Products over multisets of generators, each multiset produced once.
  const auto& gens = a.generators();
  struct Partial {
    Polynomial poly;
    std::size_t last;
  };
  std::vector<Partial> layer;
  for (std::size_t i = 0; i < gens.size(); ++i) layer.push_back({gens[i], i});
  for (std::uint64_t k = 1; k < n; ++k) {
    std::vector<Partial> next;
    for (const auto& part : layer) {
      for (std::size_t j = part.last; j < gens.size(); ++j) next.push_back({part.poly * gens[j], j});
    }
    layer = std::move(next);
  }
  std::vector<Polynomial> out;
  out.reserve(layer.size());
  for (auto& part : layer) out.push_back(part.poly.monic());
  return Ideal(ctx, std::move(out));
}

int krull_dimension(const Ideal& ideal) {
  const auto n = ideal.context()->num_variables();
  if (ideal.is_zero_ideal()) return static_cast<int>(n);
  if (ideal.is_unit()) return -1;
  std::vector<Monomial> lms;
  for (const auto& g : ideal.basis()) lms.push_back(g.leading_monomial());
  // Largest set U of variables such that no leading monomial lives on U alone.
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : lms) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) inside = m[i] == 0 || (mask >> i & 1u);
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::vector<std::string> basis_strings(const Ideal& ideal) {
  std::vector<std::string> out;
  for (const auto& g : ideal.basis()) out.push_back(g.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fsplit
