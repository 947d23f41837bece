#pragma once

// Exhaustive ground truth: solution enumeration, critical points and
// isolation degrees of points in a set, and exact checks of the two
// counting lemmas behind the randomized solver.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcsp/instance.hpp"

namespace kcsp {

__extension__ using UInt128 = unsigned __int128;

inline constexpr std::uint64_t kDefaultCap = 1ULL << 24;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// d^n, or CapExceeded when it is larger than cap.
std::uint64_t space_size(std::size_t n, Value d, std::uint64_t cap = kDefaultCap);

/// A nonempty subset of D^n, stored as sorted lexicographic codes
/// (x1 most significant digit).
class PointSet {
 public:
  PointSet(std::size_t n, Value d, const std::vector<std::vector<Value>>& points);
  /// codes need not be sorted or unique.
  static PointSet from_codes(std::size_t n, Value d, std::vector<std::uint64_t> codes);

  std::size_t num_vars() const { return n_; }
  Value domain_size() const { return d_; }
  std::size_t size() const { return codes_.size(); }
  std::span<const std::uint64_t> codes() const { return codes_; }

  std::uint64_t code(std::span<const Value> point) const;
  std::vector<Value> point(std::uint64_t code) const;
  bool contains(std::span<const Value> point) const;
  bool contains_code(std::uint64_t code) const;

 private:
  PointSet(std::size_t n, Value d) : n_(n), d_(d) {}
  void finish();

  std::size_t n_;
  Value d_;
  std::vector<std::uint64_t> codes_;
};

struct SolutionRecord {
  std::vector<Value> assignment;
  std::vector<std::size_t> critical;  // 1-based dimensions, ascending

  std::size_t isolation() const { return critical.size(); }
};

struct SolutionSet {
  std::size_t num_vars = 0;
  Value domain_size = 0;
  std::vector<SolutionRecord> solutions;  // lexicographic order

  bool empty() const { return solutions.empty(); }
  std::size_t size() const { return solutions.size(); }
  PointSet as_point_set() const;
};

/// Every satisfying total assignment, with critical points w.r.t. the
/// solution set. Uses the packed SIMD kernel when the instance fits.
SolutionSet enumerate_solutions(const CspInstance& inst, std::uint64_t cap = kDefaultCap);

/// First satisfying assignment in lexicographic order, by exhaustive scan.
std::optional<std::vector<Value>> first_solution(const CspInstance& inst,
                                                 std::uint64_t cap = kDefaultCap);

/// Dimensions i for which some single-coordinate change of x at i leaves s.
/// Throws std::invalid_argument if x is not in s.
std::vector<std::size_t> critical_points(std::span<const Value> x, const PointSet& s);

struct Lemma2Check {
  bool holds = false;
  UInt128 lhs = 0;  // sum over x in S of d^{J_S(x)}
  UInt128 rhs = 0;  // d^n
};

std::string to_string(UInt128 v);

/// sum_{x in S} d^{J_S(x)} >= d^n, exact integer arithmetic.
Lemma2Check verify_lemma2(const PointSet& s, std::uint64_t cap = kDefaultCap);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct NarrowAverage {
  bool exhaustive = true;
  Fraction exact;           // exhaustive mode, reduced
  double mean = 0;          // both modes
  double ci_low = 0;        // sampled mode: 99% normal-approximation interval
  double ci_high = 0;
  std::uint64_t orders = 0; // permutations enumerated or sampled
  std::size_t isolation = 0;
  std::size_t k_max = 0;
  /// Exhaustive: mean >= j/k exactly. Sampled: ci_high >= j/k.
  bool meets_bound = false;
};

inline constexpr std::size_t kMaxExhaustiveVars = 8;

/// Uniform average over all n! variable orders of the number of variables
/// that are narrowly chosen when assigned their value in x.
NarrowAverage avg_narrow_count_exhaustive(const CspInstance& inst, std::span<const Value> x,
                                          std::size_t isolation);
NarrowAverage avg_narrow_count_sampled(const CspInstance& inst, std::span<const Value> x,
                                       std::size_t isolation, std::uint64_t trials,
                                       std::uint64_t seed);
/// Computes the isolation degree of x with enumerate_solutions first.
NarrowAverage avg_narrow_count_exhaustive(const CspInstance& inst, std::span<const Value> x);

/// Number of narrowly chosen variables when x is assigned in `order`.
std::size_t narrow_count_along(const CspInstance& inst, std::span<const Value> x,
                               std::span<const Var> order);

}  // namespace kcsp
