#include "kcsp/simd/match_kernel.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels.hpp"

namespace kcsp::simd {

namespace {

KernelKind best_available() {
  if (kernel_available(KernelKind::Avx2)) return KernelKind::Avx2;
  if (kernel_available(KernelKind::Neon)) return KernelKind::Neon;
  return KernelKind::Scalar;
}

KernelKind initial_kernel() {
  if (const char* env = std::getenv("KCSP_KERNEL")) {
    if (auto kind = parse_kernel_name(env); kind && kernel_available(*kind)) return *kind;
  }
  return best_available();
}

std::atomic<KernelKind>& active_slot() {
  static std::atomic<KernelKind> slot{initial_kernel()};
  return slot;
}

}  // namespace

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Scalar: return "scalar";
    case KernelKind::Avx2: return "avx2";
    case KernelKind::Neon: return "neon";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel_name(std::string_view name) {
  for (auto kind : {KernelKind::Scalar, KernelKind::Avx2, KernelKind::Neon}) {
    if (kernel_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool kernel_available(KernelKind kind) {
  switch (kind) {
    case KernelKind::Scalar: return true;
    case KernelKind::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case KernelKind::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

KernelKind active_kernel() { return active_slot().load(std::memory_order_relaxed); }

void set_active_kernel(KernelKind kind) {
  if (!kernel_available(kind)) {
    throw std::invalid_argument("kernel " + std::string(kernel_name(kind)) +
                                " is not available on this CPU");
  }
  active_slot().store(kind, std::memory_order_relaxed);
}

std::optional<PackedNogoods> PackedNogoods::pack(const CspInstance& inst) {
  const auto d = static_cast<std::uint64_t>(inst.domain_size());
  const unsigned bits = static_cast<unsigned>(std::bit_width(d - 1));
  if (inst.num_vars() * bits > 64) return std::nullopt;

  PackedNogoods out;
  out.bits_ = bits;
  out.num_vars_ = inst.num_vars();
  const std::uint64_t field = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
  out.masks_.reserve(inst.nogoods().size());
  out.patterns_.reserve(inst.nogoods().size());
  for (const auto& ng : inst.nogoods()) {
    std::uint64_t mask = 0;
    std::uint64_t pattern = 0;
    for (const auto& [v, a] : ng.pairs()) {
      const unsigned shift = (v - 1) * bits;
      mask |= field << shift;
      pattern |= static_cast<std::uint64_t>(a) << shift;
    }
    out.masks_.push_back(mask);
    out.patterns_.push_back(pattern);
  }
  return out;
}

std::uint64_t PackedNogoods::encode(std::span<const Value> total) const {
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < total.size(); ++i) {
    word |= static_cast<std::uint64_t>(total[i]) << (i * bits_);
  }
  return word;
}

std::vector<Value> PackedNogoods::decode(std::uint64_t point) const {
  const std::uint64_t field = (bits_ == 64) ? ~0ULL : ((1ULL << bits_) - 1);
  std::vector<Value> out(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) {
    out[i] = static_cast<Value>((point >> (i * bits_)) & field);
  }
  return out;
}

void satisfied_flags(KernelKind kind, const PackedNogoods& nogoods,
                     std::span<const std::uint64_t> points, std::span<std::uint8_t> flags) {
  if (flags.size() < points.size()) throw std::invalid_argument("flags buffer too small");
  if (!kernel_available(kind)) {
    throw std::invalid_argument("kernel " + std::string(kernel_name(kind)) + " not available");
  }
  const auto masks = nogoods.masks();
  const auto patterns = nogoods.patterns();
  switch (kind) {
    case KernelKind::Scalar:
      detail::satisfied_flags_scalar(masks.data(), patterns.data(), masks.size(), points.data(),
                                     points.size(), flags.data());
      return;
    case KernelKind::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      detail::satisfied_flags_avx2(masks.data(), patterns.data(), masks.size(), points.data(),
                                   points.size(), flags.data());
#endif
      return;
    case KernelKind::Neon:
#if defined(__aarch64__)
      detail::satisfied_flags_neon(masks.data(), patterns.data(), masks.size(), points.data(),
                                   points.size(), flags.data());
#endif
      return;
  }
}

void satisfied_flags(const PackedNogoods& nogoods, std::span<const std::uint64_t> points,
                     std::span<std::uint8_t> flags) {
  satisfied_flags(active_kernel(), nogoods, points, flags);
}

}  // namespace kcsp::simd
