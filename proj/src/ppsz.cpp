#include "kcsp/ppsz.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace kcsp {

IterationOutcome run_iteration(const CspInstance& inst, Rng& rng) {
  const std::size_t n = inst.num_vars();
  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), Var{1});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[uniform_int<std::size_t>(rng, 0, i - 1)]);
  }

  IterationOutcome out;
  PartialAssignment pa(inst);
  std::vector<Value> domain;
  const auto d = static_cast<std::size_t>(inst.domain_size());
  for (Var y : order) {
    narrowed_domain(inst, pa, y, domain);
    if (domain.empty()) return out;
    if (domain.size() < d) ++out.narrow_count;
    pa.assign(y, domain[uniform_int<std::size_t>(rng, 0, domain.size() - 1)]);
  }
  out.assignment.emplace(pa.values().begin(), pa.values().end());
  return out;
}

PpszStats solve_ppsz(const CspInstance& inst, const PpszOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  PpszStats stats;
  stats.seed = options.seed;
  stats.max_repeats = options.max_repeats
                          ? *options.max_repeats
                          : repeat_count(inst.num_vars(),
                                         static_cast<std::uint64_t>(inst.domain_size()),
                                         std::max<std::size_t>(inst.k_max(), 1));
  stats.narrow_histogram.assign(inst.num_vars() + 1, 0);

  for (std::uint64_t it = 0; it < stats.max_repeats; ++it) {
    Rng rng = iteration_rng(options.seed, it);
    auto outcome = run_iteration(inst, rng);
    ++stats.narrow_histogram[outcome.narrow_count];
    stats.iterations_used = it + 1;
    if (outcome.assignment && is_satisfying(inst, *outcome.assignment)) {
      stats.result = PpszResult::Sat;
      stats.assignment = std::move(*outcome.assignment);
      break;
    }
  }
  while (stats.narrow_histogram.size() > 1 && stats.narrow_histogram.back() == 0) {
    stats.narrow_histogram.pop_back();
  }
  stats.elapsed = std::chrono::steady_clock::now() - start;
  return stats;
}

namespace {

void check_bound_args(std::size_t n, std::uint64_t d, std::size_t k) {
  if (n < 1 || d < 2 || k < 1) {
    throw std::invalid_argument("bound formulas need n >= 1, d >= 2, k >= 1");
  }
}

/// a * b, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    auto next = checked_mul(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

/// Integer t with t^s == q, if one exists.
std::optional<std::uint64_t> exact_root(std::uint64_t q, std::uint64_t s) {
  const auto guess = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<long double>(q), 1.0L / static_cast<long double>(s))));
  for (std::uint64_t t = guess > 0 ? guess - 1 : 0; t <= guess + 1; ++t) {
    if (auto p = checked_pow(t, s); p && *p == q) return t;
  }
  return std::nullopt;
}

/// ln of (d ((d-1)/d)^(1/k))^n.
long double ln_base_pow(std::size_t n, std::uint64_t d, std::size_t k) {
  const long double ld = static_cast<long double>(d);
  return static_cast<long double>(n) *
         (std::log(ld) + (std::log(ld - 1) - std::log(ld)) / static_cast<long double>(k));
}

[[noreturn]] void overflow(std::size_t n, std::uint64_t d, std::size_t k) {
  throw RepeatCountOverflow("repeat count for n=" + std::to_string(n) + ", d=" +
                            std::to_string(d) + ", k=" + std::to_string(k) +
                            " exceeds 2^64; pass an explicit max_repeats");
}

}  // namespace

std::uint64_t repeat_count(std::size_t n, std::uint64_t d, std::size_t k) {
  check_bound_args(n, d, k);
  // base^n = q^(n/k) with q = d^(k-1) (d-1). With n/k = p/s in lowest terms
  // this is an integer iff q is a perfect s-th power; otherwise irrational.
  const std::uint64_t g = std::gcd<std::uint64_t>(n, k);
  const std::uint64_t p = n / g;
  const std::uint64_t s = k / g;
  const auto front = checked_mul(n, n + 1);
  if (!front) overflow(n, d, k);

  const auto dk1 = checked_pow(d, k - 1);
  const auto q = dk1 ? checked_mul(*dk1, d - 1) : std::nullopt;
  if (q) {
    if (auto t = exact_root(*q, s)) {
      const auto tp = checked_pow(*t, p);
      const auto total = tp ? checked_mul(*front, *tp) : std::nullopt;
      if (!total) overflow(n, d, k);
      return *total;
    }
  }

  const long double value =
      static_cast<long double>(*front) * std::exp(ln_base_pow(n, d, k));
  const long double up =
      std::ceil(std::nextafter(value, std::numeric_limits<long double>::infinity()));
  if (!(up < 18446744073709551616.0L)) overflow(n, d, k);
  return static_cast<std::uint64_t>(up);
}

double success_lower_bound(std::size_t n, std::uint64_t d, std::size_t k) {
  check_bound_args(n, d, k);
  return static_cast<double>(std::exp(-ln_base_pow(n, d, k)) /
                             static_cast<long double>(n + 1));
}

double ln_bound_variable_domain_ppsz(std::size_t n, double alpha, std::size_t k) {
  if (n < 2 || !(alpha > 0) || k < 1) {
    throw std::invalid_argument("ln_bound_variable_domain_ppsz needs n >= 2, alpha > 0, k >= 1");
  }
  const double nn = static_cast<double>(n);
  const double ln_n = std::log(nn);
  return alpha * nn * ln_n *
         (1.0 - 1.0 / (static_cast<double>(k) * std::pow(nn, alpha) * ln_n));
}

}  // namespace kcsp
