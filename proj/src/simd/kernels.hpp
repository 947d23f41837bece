#pragma once

// Raw kernel entry points. Kept free of C++ library headers so the NEON
// translation unit can be checked with a freestanding cross compiler.

#include <stddef.h>
#include <stdint.h>

namespace kcsp::simd::detail {

void satisfied_flags_scalar(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                            const uint64_t* points, size_t count, uint8_t* flags);

#if defined(__x86_64__) || defined(_M_X64)
void satisfied_flags_avx2(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                          const uint64_t* points, size_t count, uint8_t* flags);
#endif

#if defined(__aarch64__)
void satisfied_flags_neon(const uint64_t* masks, const uint64_t* patterns, size_t num_nogoods,
                          const uint64_t* points, size_t count, uint8_t* flags);
#endif

}  // namespace kcsp::simd::detail
