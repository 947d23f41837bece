#if defined(__aarch64__)
#include <arm_neon.h>

#include "kernels.hpp"

namespace kcsp::simd::detail {

void satisfied_flags_neon(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                          const uint64_t* points, size_t count, uint8_t* flags) {
  size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint64x2_t x = vld1q_u64(points + i);
    uint64x2_t hit = vdupq_n_u64(0);
    for (size_t j = 0; j < num_nogoods; ++j) {
      const uint64x2_t m = vdupq_n_u64(masks[j]);
      const uint64x2_t p = vdupq_n_u64(patterns[j]);
      hit = vorrq_u64(hit, vceqq_u64(vandq_u64(x, m), p));
      if ((vgetq_lane_u64(hit, 0) & vgetq_lane_u64(hit, 1)) != 0) break;
    }
    flags[i + 0] = vgetq_lane_u64(hit, 0) ? 0 : 1;
    flags[i + 1] = vgetq_lane_u64(hit, 1) ? 0 : 1;
  }
  if (i < count) {
    satisfied_flags_scalar(masks, patterns, num_nogoods, points + i, count - i, flags + i);
  }
}

}  // namespace kcsp::simd::detail
#endif
