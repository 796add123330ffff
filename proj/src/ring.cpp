#include "fsplit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <utility>

#include "fsplit/errors.hpp"

namespace fsplit {

const char* to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::degrevlex: return "degrevlex";
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::deglex: return "deglex";
    case MonomialOrder::elimination: return "elimination";
  }
  return "?";
}

MonomialOrder parse_monomial_order(const std::string& name) {
  if (name == "degrevlex") return MonomialOrder::degrevlex;
  if (name == "lex") return MonomialOrder::lex;
  if (name == "deglex") return MonomialOrder::deglex;
  throw DomainError("unknown monomial order '" + name + "'");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

RingContext::RingContext(std::uint32_t prime, std::vector<std::string> variables, MonomialOrder order)
    : prime_(prime), variables_(std::move(variables)), order_(order) {
  if (prime_ >= (1u << 31) || !is_prime(prime_)) {
    throw DomainError(std::to_string(prime_) + " is not a prime below 2^31");
  }
  if (variables_.empty()) throw DomainError("a ring needs at least one variable");
  if (variables_.size() > kMaxVariables) {
    throw DomainError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (!valid_identifier(v)) throw DomainError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
  }
}

ContextPtr RingContext::make(std::uint32_t prime, std::vector<std::string> variables, MonomialOrder order) {
  return std::make_shared<const RingContext>(prime, std::move(variables), order);
}

std::optional<std::size_t> RingContext::index_of(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

bool same_ring(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::span<const std::uint32_t> exps) {
  if (exps.size() > kMaxVariables) throw DomainError("too many exponents");
  exps_.fill(0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps_[i] = exps[i];
    degree_ += exps[i];
  }
}

Monomial Monomial::variable(std::size_t index, std::uint32_t power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, std::uint32_t value) {
  degree_ = degree_ - exps_[i] + value;
  exps_[i] = value;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime_with(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (__builtin_add_overflow(a.exps_[i], b.exps_[i], &out.exps_[i])) {
      throw std::overflow_error("monomial exponent overflow");
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) out.exps_[i] = a.exps_[i] - b.exps_[i];
  out.degree_ = a.degree_ - b.degree_;
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    out.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    out.degree_ += out.exps_[i];
  }
  return out;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    out.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    out.degree_ += out.exps_[i];
  }
  return out;
}

Monomial Monomial::scaled(std::uint64_t factor) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    std::uint64_t v = 0;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(exps_[i]), factor, &v) || v > UINT32_MAX) {
      throw std::overflow_error("monomial exponent overflow in Frobenius expansion");
    }
    out.exps_[i] = static_cast<std::uint32_t>(v);
    out.degree_ += v;
  }
  return out;
}

namespace {

int revlex_tail(const Monomial& a, const Monomial& b, std::size_t first, std::size_t n) {
  for (std::size_t i = n; i-- > first;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int lex_cmp(const Monomial& a, const Monomial& b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int compare(const Monomial& a, const Monomial& b, MonomialOrder order, std::size_t n) {
  switch (order) {
    case MonomialOrder::degrevlex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return revlex_tail(a, b, 0, n);
    case MonomialOrder::lex:
      return lex_cmp(a, b, n);
    case MonomialOrder::deglex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return lex_cmp(a, b, n);
    case MonomialOrder::elimination: {
      if (a[0] != b[0]) return a[0] > b[0] ? 1 : -1;
      const auto da = a.degree() - a[0];
      const auto db = b.degree() - b[0];
      if (da != db) return da > db ? 1 : -1;
      return revlex_tail(a, b, 1, n);
    }
  }
  return 0;
}

// ------------------------------------------------------------ coefficients

std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  const std::uint32_t s = a + b;  // a, b < p < 2^31
  return s >= p ? s - p : s;
}

std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
  return a >= b ? a - b : a + (p - b);
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept {
  std::uint32_t result = 1 % p;
  std::uint32_t base = a % p;
  while (e != 0) {
    if (e & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("inverse of zero in Z/p");
  return mod_pow(a, p - 2, p);
}

std::uint64_t prime_power(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(q, static_cast<std::uint64_t>(p), &q) || q > UINT32_MAX) {
      throw std::overflow_error("p^e exceeds 32 bits");
    }
  }
  return q;
}

// -------------------------------------------------------------- Polynomial

namespace {

void require_same(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.context(), g.context())) throw ContextMismatch();
}

// Merge of two strictly decreasing term lists, combining equal monomials.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, const RingContext& ctx) {
  const auto p = ctx.prime();
  const auto order = ctx.order();
  const auto n = ctx.num_variables();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i].monomial, b[j].monomial, order, n);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      const auto s = mod_add(a[i].coeff, b[j].coeff, p);
      if (s != 0) out.push_back({a[i].monomial, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

}  // namespace

Polynomial::Polynomial(ContextPtr ctx, std::vector<Term> terms) : ctx_(std::move(ctx)) {
  const auto p = ctx_->prime();
  const auto order = ctx_->order();
  const auto n = ctx_->num_variables();
  for (auto& t : terms) {
    t.coeff %= p;
    for (std::size_t i = n; i < kMaxVariables; ++i) {
      if (t.monomial[i] != 0) throw DomainError("monomial uses a variable outside the ring");
    }
  }
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial, order, n) > 0;
  });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff = mod_add(terms_.back().coeff, t.coeff, p);
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0; });
}

Polynomial Polynomial::constant(ContextPtr ctx, std::int64_t value) {
  const auto p = static_cast<std::int64_t>(ctx->prime());
  const auto c = static_cast<std::uint32_t>(((value % p) + p) % p);
  if (c == 0) return Polynomial(std::move(ctx));
  return Polynomial(std::move(ctx), {Term{Monomial{}, c}});
}

Polynomial Polynomial::monomial(ContextPtr ctx, const Monomial& m, std::uint32_t coeff) {
  return Polynomial(std::move(ctx), {Term{m, coeff}});
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->num_variables()) throw DomainError("variable index out of range");
  return monomial(std::move(ctx), Monomial::variable(index));
}

bool Polynomial::is_homogeneous() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.monomial.degree() == terms_.front().monomial.degree(); });
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.monomial == m) return t.coeff;
  }
  return 0;
}

std::uint32_t Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(mod_inv(leading_coeff(), prime()));
}

Polynomial Polynomial::scaled(std::uint32_t c) const {
  c %= prime();
  Polynomial out(ctx_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.monomial, mod_mul(t.coeff, c, prime())});
  return out;
}

Polynomial Polynomial::times_term(const Monomial& m, std::uint32_t c) const {
  c %= prime();
  Polynomial out(ctx_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves every monomial order.
  for (const auto& t : terms_) out.terms_.push_back({t.monomial * m, mod_mul(t.coeff, c, prime())});
  return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ctx_->num_variables()) throw DomainError("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto a = t.monomial[var];
    if (a == 0) continue;
    const auto c = mod_mul(t.coeff, a % prime(), prime());
    if (c == 0) continue;
    Monomial m = t.monomial;
    m.set(var, a - 1);
    out.push_back({m, c});
  }
  return Polynomial(ctx_, std::move(out));
}

Polynomial Polynomial::pow(std::uint64_t n) const {
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (n != 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::truncated_below(std::uint64_t bound) const {
  Polynomial out(ctx_);
  const auto n = ctx_->num_variables();
  for (const auto& t : terms_) {
    bool keep = true;
    for (std::size_t i = 0; i < n && keep; ++i) keep = t.monomial[i] < bound;
    if (keep) out.terms_.push_back(t);
  }
  return out;
}

Polynomial Polynomial::mapped(ContextPtr target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != ctx_->num_variables()) throw DomainError("variable map has the wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < var_map.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (var_map[i] >= target->num_variables()) throw DomainError("variable map target out of range");
      m.set(var_map[i], m[var_map[i]] + t.monomial[i]);
    }
    out.push_back({m, t.coeff % target->prime()});
  }
  return Polynomial(std::move(target), std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& vars = ctx_->variables();
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    std::string mono;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto a = t.monomial[i];
      if (a == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars[i];
      if (a > 1) mono += '^' + std::to_string(a);
    }
    if (mono.empty()) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += mono;
    } else {
      out += std::to_string(t.coeff) + '*' + mono;
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& f, const Polynomial& g) {
  require_same(f, g);
  Polynomial out(f.ctx_);
  out.terms_ = merge_terms(f.terms_, g.terms_, *f.ctx_);
  return out;
}

Polynomial operator-(const Polynomial& f) { return f.scaled(f.prime() - 1); }

Polynomial operator-(const Polynomial& f, const Polynomial& g) { return f + (-g); }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  require_same(f, g);
  const Polynomial& small = f.size() <= g.size() ? f : g;
  const Polynomial& large = f.size() <= g.size() ? g : f;
  if (small.is_zero()) return Polynomial(f.ctx_);
  // Pairwise merging of the sorted partial products, bottom-up.
  std::vector<std::vector<Term>> parts;
  parts.reserve(small.size());
  for (const auto& t : small.terms_) parts.push_back(large.times_term(t.monomial, t.coeff).terms_);
  while (parts.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(merge_terms(parts[i], parts[i + 1], *f.ctx_));
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  Polynomial out(f.ctx_);
  out.terms_ = std::move(parts.front());
  return out;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.ctx_, g.ctx_) || f.terms_.size() != g.terms_.size()) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (f.terms_[i].coeff != g.terms_[i].coeff || !(f.terms_[i].monomial == g.terms_[i].monomial)) return false;
  }
  return true;
}

void Polynomial::subtract_multiple(std::uint32_t c, const Monomial& m, const Polynomial& g) {
  require_same(*this, g);
  c %= prime();
  if (c == 0 || g.is_zero()) return;
  const auto p = prime();
  const auto order = ctx_->order();
  const auto n = ctx_->num_variables();
  const std::uint32_t neg = p - c;
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < g.terms_.size()) {
    const Monomial gm = g.terms_[j].monomial * m;
    const int cmp = compare(terms_[i].monomial, gm, order, n);
    if (cmp > 0) {
      out.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, mod_mul(g.terms_[j++].coeff, neg, p)});
    } else {
      const auto s = mod_add(terms_[i].coeff, mod_mul(g.terms_[j].coeff, neg, p), p);
      if (s != 0) out.push_back({gm, s});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), terms_.begin() + static_cast<std::ptrdiff_t>(i), terms_.end());
  for (; j < g.terms_.size(); ++j) out.push_back({g.terms_[j].monomial * m, mod_mul(g.terms_[j].coeff, neg, p)});
  terms_ = std::move(out);
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }

Polynomial frobenius_expand(const Polynomial& f, unsigned e) {
  if (e == 0) return f;
  const auto q = prime_power(f.prime(), e);
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.monomial.scaled(q), t.coeff});
  // Scaling all exponents by q preserves the order, but the constructor
  // re-sorts anyway; sizes here are small.
  return Polynomial(f.context(), std::move(out));
}

}  // namespace fsplit

namespace fsplit {

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.context(), g.context())) throw ContextMismatch();
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const auto p = f.prime();
  const auto inv_lc = mod_inv(g.leading_coeff(), p);
  Polynomial h = f;
  std::vector<Term> quotient;
  while (!h.is_zero()) {
    const Term lt = h.leading_term();
    if (!g.leading_monomial().divides(lt.monomial)) return std::nullopt;
    const Monomial m = lt.monomial / g.leading_monomial();
    const auto c = mod_mul(lt.coeff, inv_lc, p);
    quotient.push_back({m, c});
    h.subtract_multiple(c, m, g);
  }
  return Polynomial(f.context(), std::move(quotient));
}

}  // namespace fsplit
