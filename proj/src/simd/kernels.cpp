#include <atomic>

#include "fsplit/errors.hpp"
#include "fsplit/simd_kernels.hpp"

namespace fsplit::simd {

namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t v = dst[i] + static_cast<std::uint64_t>(s) * src[i];
    dst[i] = static_cast<std::uint32_t>(v % p);
  }
}

void scale_scalar(std::uint32_t* row, std::size_t n, std::uint32_t s, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    row[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(row[i]) * s % p);
  }
}

constexpr ModKernels kScalar{Isa::scalar, &axpy_scalar, &scale_scalar};

// -1 means "pick the best available".
std::atomic<int> g_forced{-1};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

namespace detail {
const ModKernels* scalar_kernels() { return &kScalar; }
}  // namespace detail

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return detail::avx2_kernels() != nullptr && cpu_has_avx2();
    case Isa::neon: return detail::neon_kernels() != nullptr;
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const ModKernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw DomainError(std::string("SIMD variant unavailable: ") + to_string(isa));
  switch (isa) {
    case Isa::scalar: return *detail::scalar_kernels();
    case Isa::avx2: return *detail::avx2_kernels();
    case Isa::neon: return *detail::neon_kernels();
  }
  return kScalar;
}

const ModKernels& active_kernels() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return kernels_for(static_cast<Isa>(forced));
  static const ModKernels& best = [] () -> const ModKernels& {
    if (isa_available(Isa::avx2)) return *detail::avx2_kernels();
    if (isa_available(Isa::neon)) return *detail::neon_kernels();
    return kScalar;
  }();
  return best;
}

void select_isa(Isa isa) {
  kernels_for(isa);  // validates
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa_selection() { g_forced.store(-1, std::memory_order_relaxed); }

}  // namespace fsplit::simd
