#pragma once

// Batch satisfaction test over packed total assignments.
//
// A total assignment is packed into one 64-bit word, variable i occupying
// bits [(i-1)*b, i*b) with b = ceil(log2 d). A nogood becomes a (mask,
// pattern) pair and a point matches it iff (point & mask) == pattern. The
// scalar kernel is the reference; vector kernels must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kcsp/instance.hpp"

namespace kcsp::simd {

enum class KernelKind { Scalar, Avx2, Neon };

std::string_view kernel_name(KernelKind kind);
std::optional<KernelKind> parse_kernel_name(std::string_view name);
bool kernel_available(KernelKind kind);

/// Best available kernel, unless overridden by KCSP_KERNEL=scalar|avx2|neon
/// or set_active_kernel().
KernelKind active_kernel();
/// Throws std::invalid_argument if the kernel is not available on this CPU.
void set_active_kernel(KernelKind kind);

class PackedNogoods {
 public:
  /// nullopt when n * ceil(log2 d) exceeds 64 bits.
  static std::optional<PackedNogoods> pack(const CspInstance& inst);

  unsigned bits_per_var() const { return bits_; }
  std::size_t num_vars() const { return num_vars_; }
  std::span<const std::uint64_t> masks() const { return masks_; }
  std::span<const std::uint64_t> patterns() const { return patterns_; }

  std::uint64_t encode(std::span<const Value> total) const;
  std::vector<Value> decode(std::uint64_t point) const;

 private:
  PackedNogoods() = default;

  unsigned bits_ = 0;
  std::size_t num_vars_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> patterns_;
};

/// flags[i] = 1 iff points[i] matches no nogood. flags.size() >= points.size().
void satisfied_flags(const PackedNogoods& nogoods, std::span<const std::uint64_t> points,
                     std::span<std::uint8_t> flags);
void satisfied_flags(KernelKind kind, const PackedNogoods& nogoods,
                     std::span<const std::uint64_t> points, std::span<std::uint8_t> flags);

}  // namespace kcsp::simd
