#pragma once

// Splitting numbers a_e and F-signature estimates of hypersurfaces S/(f) at
// the origin.

#include <cstdint>
#include <vector>

#include "fsplit/ring.hpp"
#include "fsplit/rational.hpp"

namespace fsplit {

struct FSignatureSample {
  unsigned e;
  std::uint64_t a_e;
  Rational ratio;  // a_e / p^{e d}
};

struct FSignatureReport {
  std::uint32_t prime;
  unsigned dimension;  // d = dim S/(f)
  std::vector<FSignatureSample> samples;
  Rational estimate;  // ratio at the largest e
  unsigned delta_exponent;  // log_p of the generic rank of R over R^p, equal to d
};

// gcd(f, df/dx_1, ..., df/dx_n) = 1
bool is_squarefree(const Polynomial& f);

// a_e = length of S / (m^[q] : f^{q-1}), q = p^e. Evaluated as the rank of
// multiplication by f^{q-1} on S/m^[q], split along the grading in which f
// is homogeneous; each graded piece is a dense rank problem over F_p.
std::uint64_t splitting_number_hypersurface(const Polynomial& f, unsigned e);

// Same number through an explicit colon ideal and its colength (Groebner
// route); slow, intended for cross-checks at small e.
std::uint64_t splitting_number_by_colon(const Polynomial& f, unsigned e);

FSignatureReport fsignature_estimate(const Polynomial& f, unsigned e_max);

}  // namespace fsplit
