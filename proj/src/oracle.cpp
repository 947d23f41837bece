#include "kcsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kcsp/rng.hpp"
#include "kcsp/simd/match_kernel.hpp"

namespace kcsp {

std::uint64_t space_size(std::size_t n, Value d, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (size > cap / static_cast<std::uint64_t>(d)) {
      throw CapExceeded("d^n = " + std::to_string(d) + "^" + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap));
    }
    size *= static_cast<std::uint64_t>(d);
  }
  if (size > cap) throw CapExceeded("d^n exceeds cap " + std::to_string(cap));
  return size;
}

// ---------------------------------------------------------------------------

PointSet::PointSet(std::size_t n, Value d, const std::vector<std::vector<Value>>& points)
    : n_(n), d_(d) {
  codes_.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != n) throw std::invalid_argument("point has wrong dimension");
    for (Value a : p) {
      if (a < 0 || a >= d) throw std::invalid_argument("point coordinate outside domain");
    }
    codes_.push_back(code(p));
  }
  finish();
}

PointSet PointSet::from_codes(std::size_t n, Value d, std::vector<std::uint64_t> codes) {
  PointSet s(n, d);
  const std::uint64_t size = space_size(n, d, ~0ULL);
  for (auto c : codes) {
    if (c >= size) throw std::invalid_argument("point code outside D^n");
  }
  s.codes_ = std::move(codes);
  s.finish();
  return s;
}

void PointSet::finish() {
  if (d_ < 2) throw std::invalid_argument("point set needs d >= 2");
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (codes_.empty()) throw std::invalid_argument("point set must be nonempty");
}

std::uint64_t PointSet::code(std::span<const Value> point) const {
  std::uint64_t c = 0;
  for (Value a : point) c = c * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(a);
  return c;
}

std::vector<Value> PointSet::point(std::uint64_t c) const {
  std::vector<Value> out(n_);
  for (std::size_t i = n_; i-- > 0;) {
    out[i] = static_cast<Value>(c % static_cast<std::uint64_t>(d_));
    c /= static_cast<std::uint64_t>(d_);
  }
  return out;
}

bool PointSet::contains_code(std::uint64_t c) const {
  return std::binary_search(codes_.begin(), codes_.end(), c);
}

bool PointSet::contains(std::span<const Value> point) const {
  if (point.size() != n_) return false;
  for (Value a : point) {
    if (a < 0 || a >= d_) return false;
  }
  return contains_code(code(point));
}

PointSet SolutionSet::as_point_set() const {
  std::vector<std::vector<Value>> pts;
  pts.reserve(solutions.size());
  for (const auto& s : solutions) pts.push_back(s.assignment);
  return PointSet(num_vars, domain_size, pts);
}

// ---------------------------------------------------------------------------

namespace {

/// Place values: weight[i] = d^(n-1-i).
std::vector<std::uint64_t> place_values(std::size_t n, Value d) {
  std::vector<std::uint64_t> w(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) w[i] = w[i + 1] * static_cast<std::uint64_t>(d);
  return w;
}

template <class Member>
std::vector<std::size_t> critical_by_code(std::span<const Value> x, std::uint64_t code, Value d,
                                          std::span<const std::uint64_t> weight, Member&& member) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint64_t base = code - static_cast<std::uint64_t>(x[i]) * weight[i];
    for (Value a = 0; a < d; ++a) {
      if (a == x[i]) continue;
      if (!member(base + static_cast<std::uint64_t>(a) * weight[i])) {
        out.push_back(i + 1);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> critical_points(std::span<const Value> x, const PointSet& s) {
  if (!s.contains(x)) throw std::invalid_argument("critical_points: point is not in the set");
  const auto weight = place_values(s.num_vars(), s.domain_size());
  return critical_by_code(x, s.code(x), s.domain_size(), weight,
                          [&](std::uint64_t c) { return s.contains_code(c); });
}

namespace {

/// Calls visit(code) for every satisfying point in lexicographic order until
/// visit returns false.
template <class Visit>
void scan_solutions(const CspInstance& inst, std::uint64_t total, Visit&& visit) {
  const std::size_t n = inst.num_vars();
  const Value d = inst.domain_size();
  std::vector<Value> digits(n, 0);
  const auto packed = simd::PackedNogoods::pack(inst);
  if (!packed) {
    for (std::uint64_t c = 0; c < total; ++c) {
      if (is_satisfying(inst, digits) && !visit(c)) return;
      for (std::size_t i = n; i-- > 0;) {
        if (++digits[i] < d) break;
        digits[i] = 0;
      }
    }
    return;
  }

  constexpr std::size_t kBlock = 512;
  std::vector<std::uint64_t> words(kBlock);
  std::vector<std::uint8_t> flags(kBlock);
  const unsigned bits = packed->bits_per_var();
  std::uint64_t word = 0;
  for (std::uint64_t start = 0; start < total; start += kBlock) {
    const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, total - start));
    for (std::size_t j = 0; j < len; ++j) {
      words[j] = word;
      // Odometer step, last variable fastest.
      for (std::size_t i = n; i-- > 0;) {
        const unsigned shift = static_cast<unsigned>(i) * bits;
        if (++digits[i] < d) {
          word += 1ULL << shift;
          break;
        }
        word -= static_cast<std::uint64_t>(d - 1) << shift;
        digits[i] = 0;
      }
    }
    simd::satisfied_flags(*packed, std::span(words.data(), len), std::span(flags.data(), len));
    for (std::size_t j = 0; j < len; ++j) {
      if (flags[j] && !visit(start + j)) return;
    }
  }
}

std::vector<Value> decode_code(std::uint64_t c, std::size_t n, Value d) {
  std::vector<Value> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = static_cast<Value>(c % static_cast<std::uint64_t>(d));
    c /= static_cast<std::uint64_t>(d);
  }
  return out;
}

}  // namespace

std::optional<std::vector<Value>> first_solution(const CspInstance& inst, std::uint64_t cap) {
  const std::uint64_t total = space_size(inst.num_vars(), inst.domain_size(), cap);
  std::optional<std::uint64_t> hit;
  scan_solutions(inst, total, [&](std::uint64_t c) {
    hit = c;
    return false;
  });
  if (!hit) return std::nullopt;
  return decode_code(*hit, inst.num_vars(), inst.domain_size());
}

SolutionSet enumerate_solutions(const CspInstance& inst, std::uint64_t cap) {
  const std::size_t n = inst.num_vars();
  const Value d = inst.domain_size();
  const std::uint64_t total = space_size(n, d, cap);

  std::vector<std::uint64_t> member((total + 63) / 64, 0);
  std::vector<std::uint64_t> hits;
  scan_solutions(inst, total, [&](std::uint64_t c) {
    member[c / 64] |= 1ULL << (c % 64);
    hits.push_back(c);
    return true;
  });

  SolutionSet out;
  out.num_vars = n;
  out.domain_size = d;
  out.solutions.reserve(hits.size());
  const auto weight = place_values(n, d);
  auto is_member = [&](std::uint64_t c) { return (member[c / 64] >> (c % 64)) & 1ULL; };
  for (std::uint64_t c : hits) {
    SolutionRecord rec;
    rec.assignment = decode_code(c, n, d);
    rec.critical = critical_by_code(rec.assignment, c, d, weight, is_member);
    out.solutions.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(UInt128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Lemma2Check verify_lemma2(const PointSet& s, std::uint64_t cap) {
  const std::size_t n = s.num_vars();
  const Value d = s.domain_size();
  Lemma2Check out;
  out.rhs = space_size(n, d, cap);

  std::vector<UInt128> power(n + 1, 1);
  for (std::size_t j = 1; j <= n; ++j) power[j] = power[j - 1] * static_cast<unsigned>(d);

  const auto weight = place_values(n, d);
  for (std::uint64_t c : s.codes()) {
    const auto x = s.point(c);
    const auto crit = critical_by_code(x, c, d, weight,
                                       [&](std::uint64_t c2) { return s.contains_code(c2); });
    out.lhs += power[crit.size()];
  }
  out.holds = out.lhs >= out.rhs;
  return out;
}

// ---------------------------------------------------------------------------

std::size_t narrow_count_along(const CspInstance& inst, std::span<const Value> x,
                               std::span<const Var> order) {
  PartialAssignment pa(inst);
  std::vector<Value> domain;
  std::size_t narrow = 0;
  const auto d = static_cast<std::size_t>(inst.domain_size());
  for (Var y : order) {
    narrowed_domain(inst, pa, y, domain);
    if (domain.size() < d) ++narrow;
    pa.assign(y, x[y - 1]);
  }
  return narrow;
}

namespace {

void require_solution(const CspInstance& inst, std::span<const Value> x) {
  if (x.size() != inst.num_vars()) throw std::invalid_argument("point has wrong dimension");
  for (Value a : x) {
    if (a < 0 || a >= inst.domain_size()) throw std::invalid_argument("value outside domain");
  }
  if (!is_satisfying(inst, x)) throw std::invalid_argument("point is not a solution");
}

}  // namespace

NarrowAverage avg_narrow_count_exhaustive(const CspInstance& inst, std::span<const Value> x,
                                          std::size_t isolation) {
  require_solution(inst, x);
  const std::size_t n = inst.num_vars();
  if (n > kMaxExhaustiveVars) {
    throw std::invalid_argument("exhaustive narrow average needs n <= " +
                                std::to_string(kMaxExhaustiveVars));
  }
  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), Var{1});
  std::uint64_t sum = 0;
  std::uint64_t orders = 0;
  do {
    sum += narrow_count_along(inst, x, order);
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));

  NarrowAverage out;
  out.exhaustive = true;
  const std::uint64_t g = std::gcd(sum, orders);
  out.exact = {sum / g, orders / g};
  out.mean = out.exact.value();
  out.ci_low = out.ci_high = out.mean;
  out.orders = orders;
  out.isolation = isolation;
  out.k_max = inst.k_max();
  // sum / n! >= j / k  <=>  sum * k >= j * n!
  out.meets_bound = out.k_max == 0 ? true : sum * out.k_max >= isolation * orders;
  return out;
}

NarrowAverage avg_narrow_count_exhaustive(const CspInstance& inst, std::span<const Value> x) {
  require_solution(inst, x);
  const auto solutions = enumerate_solutions(inst);
  const auto s = solutions.as_point_set();
  return avg_narrow_count_exhaustive(inst, x, critical_points(x, s).size());
}

NarrowAverage avg_narrow_count_sampled(const CspInstance& inst, std::span<const Value> x,
                                       std::size_t isolation, std::uint64_t trials,
                                       std::uint64_t seed) {
  require_solution(inst, x);
  if (trials < 2) throw std::invalid_argument("sampled narrow average needs >= 2 trials");
  const std::size_t n = inst.num_vars();
  std::vector<Var> order(n);
  double sum = 0;
  double sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, t);
    std::iota(order.begin(), order.end(), Var{1});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[uniform_int<std::size_t>(rng, 0, i - 1)]);
    }
    const auto c = static_cast<double>(narrow_count_along(inst, x, order));
    sum += c;
    sum_sq += c * c;
  }
  const double tn = static_cast<double>(trials);
  NarrowAverage out;
  out.exhaustive = false;
  out.mean = sum / tn;
  const double var = std::max(0.0, (sum_sq - tn * out.mean * out.mean) / (tn - 1));
  const double half = 2.5758293035489 * std::sqrt(var / tn);
  out.ci_low = out.mean - half;
  out.ci_high = out.mean + half;
  out.orders = trials;
  out.isolation = isolation;
  out.k_max = inst.k_max();
  const double bound =
      out.k_max == 0 ? 0.0 : static_cast<double>(isolation) / static_cast<double>(out.k_max);
  out.meets_bound = out.ci_high >= bound;
  return out;
}

}  // namespace kcsp
