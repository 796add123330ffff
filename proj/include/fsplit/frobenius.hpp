#pragma once

// Characteristic-p primitives: Frobenius powers and roots, splitting
// criteria, the nu counter and compatibility checks.

#include <cstdint>
#include <map>
#include <vector>

#include "fsplit/ideal.hpp"

namespace fsplit {

// The map R^{1/p^e} -> R given by trace of Frobenius precomposed with
// multiplication by multiplier^{1/p^e}. In a polynomial ring every
// R-linear map R^{1/p^e} -> R has this shape.
class CartierMap {
 public:
  CartierMap(Polynomial multiplier, unsigned level);

  const Polynomial& multiplier() const noexcept { return multiplier_; }
  unsigned level() const noexcept { return level_; }

 private:
  Polynomial multiplier_;
  unsigned level_;
};

// I^[p^e]
Ideal frobenius_power(const Ideal& ideal, unsigned e);

// Coordinates of f in the free basis {x^r : r in [0, p^e)^d} of R over R^{p^e}:
// f = sum_r (f_r)^{p^e} x^r. Keyed by the basis exponent r; zero parts omitted.
std::map<Monomial, Polynomial> frobenius_components(const Polynomial& f, unsigned e);

// I^[1/p^e]: smallest J with I ⊆ J^[p^e].
Ideal frobenius_root(const Ideal& ideal, unsigned e);

// (a^n)^[1/p^e]. Monomial a avoids forming a^n: exponent sums over multisets
// of generators are floored by p^e as they are produced.
Ideal frobenius_root_of_power(const Ideal& a, std::uint64_t n, unsigned e);

// (I^[p^e] : I): multipliers u with Psi_e(u^{1/p^e} -) descending to S/I.
// Principal ideals use (f^[q] : f) = (f^{q-1}).
Ideal cartier_generators(const Ideal& ideal, unsigned e = 1);

// Whether S/I is Frobenius split at the origin: (I^[p] : I) ⊄ m^[p].
bool fedder_split_test(const Ideal& ideal);

// Coefficient of (x_1...x_d)^{p-1} in f^{p-1}.
std::uint32_t splitting_coefficient(const Polynomial& f);

// max{ n : a^n ⊄ J^[p^e] }
std::uint64_t nu_value(const Ideal& a, const Ideal& j, unsigned e);

// phi(J^{1/p^e}) ⊆ J, i.e. ((g) J)^[1/p^e] ⊆ J.
bool is_compatible(const Ideal& j, const CartierMap& phi);

// J compatible with every map; level one suffices in a polynomial ring.
bool is_uniformly_compatible(const Ideal& j);

// Membership in m^[q] for m the homogeneous maximal ideal: every term has an
// exponent >= q.
bool in_frobenius_power_of_maximal(const Polynomial& f, std::uint64_t q);

}  // namespace fsplit
