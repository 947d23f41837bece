#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcsp {

/// Largest root of the branching recurrence T(n) = (d-1)(T(n-1)+...+T(n-k)).
///
/// The root lies just below d, so it is carried as the deficit
/// eps = d - lambda, which keeps full relative precision even where
/// lambda itself cannot be told apart from its upper bound in double
/// (at d = k = 10 the gap is ~1e-18).
struct RootResult {
  int d = 0;
  int k = 0;
  double lambda = 0;
  double deficit = 0;          // d - lambda
  double residual_g = 0;       // g(lambda) = lambda^(k+1) - d lambda^k + (d-1)
  double residual_f = 0;       // f(lambda) = g(lambda) / (lambda - 1)
  double lower_sandwich = 0;   // d - 1/d^(k-1)
  double upper_sandwich = 0;   // d - (d-1)/d^k
  double lower_deficit = 0;    // 1/d^(k-1)
  double upper_deficit = 0;    // (d-1)/d^k

  /// lower_sandwich < lambda < upper_sandwich, checked on deficits.
  bool sandwich_holds(double relative_margin = 0) const {
    return deficit < lower_deficit * (1 - relative_margin) &&
           deficit > upper_deficit * (1 + relative_margin);
  }
};

class SandwichViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bisection for the root of g on (d k/(k+1), d), where g is increasing.
/// Requires d >= 2, k >= 2.
RootResult char_root(int d, int k);

/// d - (d-1)/d^k.
double dpll_bound_base(double d, double k);

/// d ((d-1)/d)^(1/k).
double ppsz_bound_base(double d, double k);

/// ln of (n/e)^(alpha n) (1+eps)^n for alpha <= 1, ln of (n/e)^(alpha n)
/// for alpha > 1.
double ln_bound_variable_domain_dpll(std::size_t n, double alpha, double epsilon = 0.01);

struct BoundRow {
  int d = 0;
  int k = 0;
  double lambda = 0;
  double dpll_base = 0;
  double ppsz_base = 0;
  std::string smaller;  // "ppsz", "dpll" or "equal"
};

/// One row per (d, k), d-major.
std::vector<BoundRow> bound_table(int d_lo, int d_hi, int k_lo, int k_hi);

}  // namespace kcsp
