#include "fsplit/simd_kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace fsplit::simd {

namespace {

// High 32 bits of the eight lane products a[i] * b (b broadcast).
__attribute__((target("avx2"))) inline __m256i mulhi_epu32(__m256i a, __m256i b) {
  const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(a, b), 32);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
  return _mm256_blend_epi32(even, odd, 0xAA);
}

// x in [0, 2p) -> x mod p
__attribute__((target("avx2"))) inline __m256i reduce_once(__m256i x, __m256i p) {
  return _mm256_min_epu32(x, _mm256_sub_epi32(x, p));
}

// Shoup multiplication: for a < 2^32 returns a*s mod p given sp = floor(s*2^32/p).
__attribute__((target("avx2"))) inline __m256i mul_shoup(__m256i a, __m256i s, __m256i sp, __m256i p) {
  const __m256i q = mulhi_epu32(a, sp);
  const __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(a, s), _mm256_mullo_epi32(q, p));
  return reduce_once(r, p);
}

inline std::uint32_t mul_shoup_scalar(std::uint32_t a, std::uint32_t s, std::uint32_t sp, std::uint32_t p) {
  const auto q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * sp) >> 32);
  std::uint32_t r = a * s - q * p;
  return r >= p ? r - p : r;
}

__attribute__((target("avx2"))) void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                                                std::uint32_t s, std::uint32_t p) {
  const std::uint32_t sp = shoup_precompute(s, p);
  const __m256i vs = _mm256_set1_epi32(static_cast<int>(s));
  const __m256i vsp = _mm256_set1_epi32(static_cast<int>(sp));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i sum = _mm256_add_epi32(d, mul_shoup(a, vs, vsp, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce_once(sum, vp));
  }
  for (; i < n; ++i) {
    const std::uint32_t v = dst[i] + mul_shoup_scalar(src[i], s, sp, p);
    dst[i] = v >= p ? v - p : v;
  }
}

__attribute__((target("avx2"))) void scale_avx2(std::uint32_t* row, std::size_t n, std::uint32_t s,
                                                 std::uint32_t p) {
  const std::uint32_t sp = shoup_precompute(s, p);
  const __m256i vs = _mm256_set1_epi32(static_cast<int>(s));
  const __m256i vsp = _mm256_set1_epi32(static_cast<int>(sp));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + i), mul_shoup(a, vs, vsp, vp));
  }
  for (; i < n; ++i) row[i] = mul_shoup_scalar(row[i], s, sp, p);
}

constexpr ModKernels kAvx2{Isa::avx2, &axpy_avx2, &scale_avx2};

}  // namespace

namespace detail {
const ModKernels* avx2_kernels() { return &kAvx2; }
}  // namespace detail

}  // namespace fsplit::simd

#else

namespace fsplit::simd::detail {
const ModKernels* avx2_kernels() { return nullptr; }
}  // namespace fsplit::simd::detail

#endif
