#pragma once

// Dense row operations over Z/p used by the linear-algebra rank kernel.
// A scalar reference implementation is always present; vector variants are
// compiled per target and picked at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fsplit::simd {

enum class Isa { scalar, avx2, neon };

const char* to_string(Isa isa);

struct ModKernels {
  Isa isa;
  // dst[i] = (dst[i] + s * src[i]) mod p, for entries already reduced below p.
  void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p);
  // row[i] = (row[i] * s) mod p.
  void (*scale)(std::uint32_t* row, std::size_t n, std::uint32_t s, std::uint32_t p);
};

bool isa_available(Isa isa);
std::vector<Isa> available_isas();

// Kernel table for a specific ISA; throws DomainError when unavailable.
const ModKernels& kernels_for(Isa isa);

// Best available table unless a specific ISA was forced with select_isa().
const ModKernels& active_kernels();
void select_isa(Isa isa);
void reset_isa_selection();

// Shoup's precomputed quotient floor(s * 2^32 / p) for a fixed multiplier.
inline std::uint32_t shoup_precompute(std::uint32_t s, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(s) << 32) / p);
}

namespace detail {
// Per-ISA tables; the vector ones are null when not compiled in.
const ModKernels* scalar_kernels();
const ModKernels* avx2_kernels();
const ModKernels* neon_kernels();
}  // namespace detail

}  // namespace fsplit::simd
