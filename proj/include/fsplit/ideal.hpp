#pragma once

// Ideals of F_p[x_1..x_d] and the Groebner-basis toolbox: membership, colon,
// intersection, equality and colength.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsplit/ring.hpp"

namespace fsplit {

class Ideal {
 public:
  // Zero generators are dropped; an empty list is the zero ideal.
  Ideal(ContextPtr ctx, std::vector<Polynomial> generators);

  static Ideal zero(ContextPtr ctx);
  static Ideal unit(ContextPtr ctx);
  // (x_1, ..., x_d)
  static Ideal maximal(ContextPtr ctx);
  // Trusted constructor: `basis` must already be a reduced Groebner basis.
  static Ideal from_reduced_basis(ContextPtr ctx, std::vector<Polynomial> basis);

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  bool is_zero_ideal() const noexcept { return gens_.empty(); }
  bool is_monomial() const noexcept;
  bool is_unit() const;

  // Reduced Groebner basis in the context's order, sorted by increasing
  // leading monomial. Computed at most once per ideal value and shared by copies.
  const std::vector<Polynomial>& basis() const;

  // "(g1, g2, ...)" over the reduced basis.
  std::string to_string() const;

 private:
  struct Cache;
  ContextPtr ctx_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

struct Colength {
  std::optional<std::uint64_t> value;  // nullopt: infinite
  bool is_finite() const noexcept { return value.has_value(); }
  friend bool operator==(const Colength&, const Colength&) = default;
};

const std::vector<Polynomial>& groebner_basis(const Ideal& ideal);
Polynomial normal_form(const Polynomial& f, const Ideal& ideal);
bool ideal_member(const Polynomial& f, const Ideal& ideal);
// J ⊆ I
bool ideal_contains(const Ideal& big, const Ideal& small);
Ideal ideal_colon(const Ideal& ideal, const Ideal& by);
Ideal ideal_colon(const Ideal& ideal, const Polynomial& by);
Ideal ideal_intersect(const Ideal& a, const Ideal& b);
bool ideal_equals(const Ideal& a, const Ideal& b);
Colength colength(const Ideal& ideal);

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_power(const Ideal& a, std::uint64_t n);
Ideal ideal_times(const Polynomial& f, const Ideal& a);

// Krull dimension of S/I read off the leading-term ideal; -1 for the unit ideal.
int krull_dimension(const Ideal& ideal);

// Sorted string forms of the reduced basis, the serialization used by the CLI.
std::vector<std::string> basis_strings(const Ideal& ideal);

namespace detail {
// Generic routes, exposed so tests can compare them with the monomial fast paths.
std::vector<Polynomial> buchberger(const ContextPtr& ctx, const std::vector<Polynomial>& generators);
Ideal intersect_by_elimination(const Ideal& a, const Ideal& b);
Ideal colon_by_elimination(const Ideal& ideal, const Polynomial& by);
// Minimal monic monomial generators of a monomial ideal, sorted.
std::vector<Polynomial> minimal_monomial_generators(const ContextPtr& ctx, const std::vector<Polynomial>& gens);
std::vector<Polynomial> minimal_monomial_generators(const ContextPtr& ctx, std::vector<Monomial> monos);
}  // namespace detail

}  // namespace fsplit
