#pragma once

// Sparse multivariate polynomials over the prime field Z/p.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fsplit {

enum class MonomialOrder {
  degrevlex,
  lex,
  deglex,
  // Block order used for elimination: the first variable is compared on its
  // own, ties are broken by degrevlex on the remaining variables.
  elimination,
};

const char* to_string(MonomialOrder order);
MonomialOrder parse_monomial_order(const std::string& name);

// Upper bound on the number of variables, including the auxiliary variable
// introduced by elimination.
inline constexpr std::size_t kMaxVariables = 12;

bool is_prime(std::uint64_t n);

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

// The ambient F_p[x_1, ..., x_d] with a fixed monomial order.
class RingContext {
 public:
  RingContext(std::uint32_t prime, std::vector<std::string> variables,
              MonomialOrder order = MonomialOrder::degrevlex);

  static ContextPtr make(std::uint32_t prime, std::vector<std::string> variables,
                         MonomialOrder order = MonomialOrder::degrevlex);

  std::uint32_t prime() const noexcept { return prime_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t num_variables() const noexcept { return variables_.size(); }
  MonomialOrder order() const noexcept { return order_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const RingContext&, const RingContext&) = default;

 private:
  std::uint32_t prime_;
  std::vector<std::string> variables_;
  MonomialOrder order_;
};

// Same ring up to pointer identity or value.
bool same_ring(const ContextPtr& a, const ContextPtr& b);

// Exponent vector. Slots past the ring's variable count are always zero, so
// comparisons and arithmetic never need the owning context.
class Monomial {
 public:
  using Exponents = std::array<std::uint32_t, kMaxVariables>;

  Monomial() { exps_.fill(0); }
  explicit Monomial(std::span<const std::uint32_t> exps);

  static Monomial variable(std::size_t index, std::uint32_t power = 1);

  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  void set(std::size_t i, std::uint32_t value);
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  const Exponents& exponents() const noexcept { return exps_; }

  bool divides(const Monomial& other) const noexcept;
  // Leading monomials with disjoint support; used by Buchberger's first criterion.
  bool coprime_with(const Monomial& other) const noexcept;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);
  // Every exponent multiplied by `factor`, with overflow checks.
  Monomial scaled(std::uint64_t factor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }
  // Plain lexicographic order on exponent vectors; for containers only.
  friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return a.exps_ < b.exps_; }

 private:
  Exponents exps_;
  std::uint64_t degree_ = 0;
};

// Three-way comparison of monomials in the given order; positive when a > b.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order, std::size_t num_vars);

struct Term {
  Monomial monomial;
  std::uint32_t coeff;  // in [1, p)
};

// FNV-1a over the exponent slots.
struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : m.exponents()) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

// Coefficient arithmetic in Z/p.
std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept;
std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept;
std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept;
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept;

class Polynomial {
 public:
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  // Terms may arrive unsorted, with duplicates and unreduced coefficients.
  Polynomial(ContextPtr ctx, std::vector<Term> terms);

  static Polynomial constant(ContextPtr ctx, std::int64_t value);
  static Polynomial monomial(ContextPtr ctx, const Monomial& m, std::uint32_t coeff = 1);
  static Polynomial variable(ContextPtr ctx, std::size_t index);

  const ContextPtr& context() const noexcept { return ctx_; }
  std::uint32_t prime() const noexcept { return ctx_->prime(); }

  // Terms sorted strictly decreasing in the context's order.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_homogeneous() const noexcept;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  std::uint32_t leading_coeff() const { return terms_.front().coeff; }
  std::uint64_t total_degree() const noexcept;

  std::uint32_t coefficient(const Monomial& m) const;
  // Value of the constant term.
  std::uint32_t constant_term() const;

  Polynomial monic() const;
  Polynomial scaled(std::uint32_t c) const;
  Polynomial times_term(const Monomial& m, std::uint32_t c) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial pow(std::uint64_t n) const;
  // Keeps only the terms whose exponents are all strictly below `bound`.
  Polynomial truncated_below(std::uint64_t bound) const;

  // Re-expresses the polynomial over another ring whose variables are the
  // images of this ring's variables under `var_map` (old index -> new index).
  Polynomial mapped(ContextPtr target, std::span<const std::size_t> var_map) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial& f, const Polynomial& g);

  // In-place f -= c * m * g; the workhorse of reduction.
  void subtract_multiple(std::uint32_t c, const Monomial& m, const Polynomial& g);

 private:
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& f, const Polynomial& g);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
// f^(p^e): exponents scaled by p^e, coefficients unchanged since c^p = c in F_p.
Polynomial frobenius_expand(const Polynomial& f, unsigned e);

// p^e with overflow check.
std::uint64_t prime_power(std::uint32_t p, unsigned e);

}  // namespace fsplit

namespace fsplit {

// q with f = q * g when g divides f exactly, std::nullopt otherwise.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

}  // namespace fsplit
