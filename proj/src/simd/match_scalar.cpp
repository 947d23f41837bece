#include "kernels.hpp"

namespace kcsp::simd::detail {

void satisfied_flags_scalar(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                            const uint64_t* points, size_t count, uint8_t* flags) {
  for (size_t i = 0; i < count; ++i) {
    const uint64_t x = points[i];
    uint8_t ok = 1;
    for (size_t j = 0; j < num_nogoods; ++j) {
      if ((x & masks[j]) == patterns[j]) {
        ok = 0;
        break;
      }
    }
    flags[i] = ok;
  }
}

}  // namespace kcsp::simd::detail
