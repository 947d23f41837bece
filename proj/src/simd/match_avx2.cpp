// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels.hpp"

namespace kcsp::simd::detail {

void satisfied_flags_avx2(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                          const uint64_t* points, size_t count, uint8_t* flags) {
  size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(points + i));
    __m256i hit = _mm256_setzero_si256();
    for (size_t j = 0; j < num_nogoods; ++j) {
      const __m256i m = _mm256_set1_epi64x(static_cast<long long>(masks[j]));
      const __m256i p = _mm256_set1_epi64x(static_cast<long long>(patterns[j]));
      hit = _mm256_or_si256(hit, _mm256_cmpeq_epi64(_mm256_and_si256(x, m), p));
      // All four lanes already violate something.
      if (_mm256_movemask_pd(_mm256_castsi256_pd(hit)) == 0xF) break;
    }
    const int lanes = _mm256_movemask_pd(_mm256_castsi256_pd(hit));
    flags[i + 0] = (lanes & 1) ? 0 : 1;
    flags[i + 1] = (lanes & 2) ? 0 : 1;
    flags[i + 2] = (lanes & 4) ? 0 : 1;
    flags[i + 3] = (lanes & 8) ? 0 : 1;
  }
  if (i < count) {
    satisfied_flags_scalar(masks, patterns, num_nogoods, points + i, count - i, flags + i);
  }
}

}  // namespace kcsp::simd::detail
