#pragma once

// Helpers and independent oracles shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fsplit/frobenius.hpp"
#include "fsplit/ideal.hpp"
#include "fsplit/parse.hpp"
#include "fsplit/ring.hpp"

namespace fsplit::testing {

ContextPtr ring(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex);
Polynomial poly(const ContextPtr& ctx, const std::string& text);
Ideal ideal(const ContextPtr& ctx, const std::string& text);

// Generators of `ideal` as plain strings, sorted; "(1)" and "(0)" style
// comparisons read better in CHECKs than basis objects.
std::string show(const Ideal& ideal);

// ---- random inputs

Ideal random_monomial_ideal(std::mt19937& rng, const ContextPtr& ctx, unsigned max_gens, unsigned max_degree,
                            unsigned min_degree = 1);
Polynomial random_polynomial(std::mt19937& rng, const ContextPtr& ctx, unsigned max_terms, unsigned max_degree);

// ---- exponent-set oracle for monomial ideals

// All exponent vectors in [0, bound]^n.
std::vector<Monomial> box(std::size_t n, std::uint32_t bound);
// Membership of a monomial in the ideal generated by `gens` (any monomials).
bool divisible_by_any(const Monomial& m, const std::vector<Monomial>& gens);
std::vector<Monomial> leading_monomials(const Ideal& ideal);

// ---- brute-force Frobenius roots (p = 2, two variables)

// Enumerates every ideal generated by at most four monomials or binomials of
// degree <= 2 in F_2[x, y]. The root of an ideal generated by monomials and
// binomials of degree <= 4 is the smallest such candidate J with I ⊆ J^[2];
// the search only uses containment and Frobenius powers.
class MinimalRootSearch {
 public:
  explicit MinimalRootSearch(const ContextPtr& ctx);

  // Smallest candidate J with I ⊆ J^[2], or std::nullopt when the satisfying
  // candidates have no least element.
  std::optional<Ideal> smallest_root(const std::vector<Polynomial>& generators);

  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  struct Candidate {
    Ideal ideal;
    Ideal power;
    std::uint32_t generator_mask;  // which small polynomials generate it
    std::uint32_t member_mask;     // which small polynomials it contains
  };
  const std::vector<std::uint64_t>& power_membership(const Polynomial& g);

  ContextPtr ctx_;
  std::vector<Polynomial> small_;
  std::vector<Candidate> candidates_;
  std::vector<std::pair<Polynomial, std::vector<std::uint64_t>>> membership_cache_;
};

// All monomials and binomials (coefficients 1) of degree <= d in F_2[x, y].
std::vector<Polynomial> small_binomials(const ContextPtr& ctx, unsigned max_degree);

}  // namespace fsplit::testing
