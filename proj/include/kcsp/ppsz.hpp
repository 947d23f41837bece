#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kcsp/instance.hpp"
#include "kcsp/rng.hpp"

namespace kcsp {

/// The default repeat count does not fit in 64 bits.
class RepeatCountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

struct IterationOutcome {
  /// Total assignment, or nullopt when some narrowed domain came up empty.
  std::optional<std::vector<Value>> assignment;
  std::size_t narrow_count = 0;
};

/// One pass of the randomized solver: a uniform random variable order, each
/// variable set uniformly from its narrowed domain at the time it is reached.
/// The caller checks whether the result satisfies the instance.
IterationOutcome run_iteration(const CspInstance& inst, Rng& rng);

/// Stream for iteration `index` (0-based) under master seed `seed`.
inline Rng iteration_rng(std::uint64_t seed, std::uint64_t index) {
  return make_stream(seed, index);
}

enum class PpszResult { Sat, Failure };

struct PpszStats {
  PpszResult result = PpszResult::Failure;
  std::vector<Value> assignment;
  std::uint64_t iterations_used = 0;
  std::uint64_t max_repeats = 0;
  /// narrow_histogram[c] = iterations in which c variables were narrowly chosen.
  std::vector<std::uint64_t> narrow_histogram;
  std::uint64_t seed = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct PpszOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_repeats;
};

/// Repeats run_iteration until a satisfying assignment appears or the budget
/// (default repeat_count(n, d, max(k_max, 1))) runs out. Never returns a
/// non-satisfying assignment.
PpszStats solve_ppsz(const CspInstance& inst, const PpszOptions& options = {});

/// ceil(n (n+1) (d ((d-1)/d)^(1/k))^n), never rounded down.
std::uint64_t repeat_count(std::size_t n, std::uint64_t d, std::size_t k);

/// Per-iteration success lower bound 1 / ((n+1) (d ((d-1)/d)^(1/k))^n).
double success_lower_bound(std::size_t n, std::uint64_t d, std::size_t k);

/// Natural log of n^(alpha n (1 - 1/(k n^alpha ln n))), the runtime bound
/// when d = n^alpha.
double ln_bound_variable_domain_ppsz(std::size_t n, double alpha, std::size_t k);

}  // namespace kcsp
