#include "fsplit/simd_kernels.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)
#include <arm_neon.h>

namespace fsplit::simd {

namespace {

inline uint32x4_t mulhi_u32(uint32x4_t a, uint32x2_t b) {
  const uint64x2_t lo = vmull_u32(vget_low_u32(a), b);
  const uint64x2_t hi = vmull_u32(vget_high_u32(a), b);
  return vcombine_u32(vshrn_n_u64(lo, 32), vshrn_n_u64(hi, 32));
}

inline uint32x4_t reduce_once(uint32x4_t x, uint32x4_t p) { return vminq_u32(x, vsubq_u32(x, p)); }

inline uint32x4_t mul_shoup(uint32x4_t a, uint32x4_t s, uint32x2_t sp, uint32x4_t p) {
  const uint32x4_t q = mulhi_u32(a, sp);
  return reduce_once(vmlsq_u32(vmulq_u32(a, s), q, p), p);
}

inline std::uint32_t mul_shoup_scalar(std::uint32_t a, std::uint32_t s, std::uint32_t sp, std::uint32_t p) {
  const auto q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * sp) >> 32);
  std::uint32_t r = a * s - q * p;
  return r >= p ? r - p : r;
}

void axpy_neon(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p) {
  const std::uint32_t sp = shoup_precompute(s, p);
  const uint32x4_t vs = vdupq_n_u32(s);
  const uint32x2_t vsp = vdup_n_u32(sp);
  const uint32x4_t vp = vdupq_n_u32(p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t sum = vaddq_u32(vld1q_u32(dst + i), mul_shoup(vld1q_u32(src + i), vs, vsp, vp));
    vst1q_u32(dst + i, reduce_once(sum, vp));
  }
  for (; i < n; ++i) {
    const std::uint32_t v = dst[i] + mul_shoup_scalar(src[i], s, sp, p);
    dst[i] = v >= p ? v - p : v;
  }
}

void scale_neon(std::uint32_t* row, std::size_t n, std::uint32_t s, std::uint32_t p) {
  const std::uint32_t sp = shoup_precompute(s, p);
  const uint32x4_t vs = vdupq_n_u32(s);
  const uint32x2_t vsp = vdup_n_u32(sp);
  const uint32x4_t vp = vdupq_n_u32(p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_u32(row + i, mul_shoup(vld1q_u32(row + i), vs, vsp, vp));
  for (; i < n; ++i) row[i] = mul_shoup_scalar(row[i], s, sp, p);
}

constexpr ModKernels kNeon{Isa::neon, &axpy_neon, &scale_neon};

}  // namespace

namespace detail {
const ModKernels* neon_kernels() { return &kNeon; }
}  // namespace detail

}  // namespace fsplit::simd

#else

namespace fsplit::simd::detail {
const ModKernels* neon_kernels() { return nullptr; }
}  // namespace fsplit::simd::detail

#endif
