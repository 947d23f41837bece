#include "kcsp/analysis.hpp"

#include <cmath>
#include <string>

namespace kcsp {

namespace {

/// eps (d - eps)^k - (d - 1); equals -g(d - eps). Increasing on (0, d/(k+1)).
double deficit_excess(double eps, int d, int k) {
  return eps * std::pow(d - eps, k) - (d - 1);
}

}  // namespace

RootResult char_root(int d, int k) {
  if (d < 2 || k < 2) throw std::invalid_argument("char_root needs d >= 2 and k >= 2");

  double lo = 0;
  double hi = static_cast<double>(d) / (k + 1);
  if (!(deficit_excess(lo, d, k) < 0 && deficit_excess(hi, d, k) > 0)) {
    throw SandwichViolation("g does not change sign on (d k/(k+1), d)");
  }
  // Run until the bracket stops shrinking; this is far below width 1e-12.
  for (;;) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (deficit_excess(mid, d, k) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double eps =
      std::abs(deficit_excess(lo, d, k)) < std::abs(deficit_excess(hi, d, k)) ? lo : hi;

  RootResult r;
  r.d = d;
  r.k = k;
  r.deficit = eps;
  r.lambda = d - eps;
  r.residual_g = -deficit_excess(eps, d, k);
  r.residual_f = r.residual_g / (r.lambda - 1);
  r.lower_deficit = 1.0 / std::pow(d, k - 1);
  r.upper_deficit = (d - 1.0) / std::pow(d, k);
  r.lower_sandwich = d - r.lower_deficit;
  r.upper_sandwich = d - r.upper_deficit;
  if (!r.sandwich_holds()) {
    throw SandwichViolation("root outside (d - 1/d^(k-1), d - (d-1)/d^k) for d=" +
                            std::to_string(d) + ", k=" + std::to_string(k));
  }
  return r;
}

double dpll_bound_base(double d, double k) { return d - (d - 1) / std::pow(d, k); }

double ppsz_bound_base(double d, double k) { return d * std::pow((d - 1) / d, 1.0 / k); }

double ln_bound_variable_domain_dpll(std::size_t n, double alpha, double epsilon) {
  if (n < 2 || !(alpha > 0) || !(epsilon >= 0)) {
    throw std::invalid_argument("ln_bound_variable_domain_dpll needs n >= 2, alpha > 0, eps >= 0");
  }
  const double nn = static_cast<double>(n);
  double ln = alpha * nn * (std::log(nn) - 1);
  if (alpha <= 1) ln += nn * std::log1p(epsilon);
  return ln;
}

std::vector<BoundRow> bound_table(int d_lo, int d_hi, int k_lo, int k_hi) {
  if (d_lo > d_hi || k_lo > k_hi) throw std::invalid_argument("bound_table: empty range");
  std::vector<BoundRow> rows;
  for (int d = d_lo; d <= d_hi; ++d) {
    for (int k = k_lo; k <= k_hi; ++k) {
      BoundRow row;
      row.d = d;
      row.k = k;
      row.lambda = char_root(d, k).lambda;
      row.dpll_base = dpll_bound_base(d, k);
      row.ppsz_base = ppsz_bound_base(d, k);
      row.smaller = row.ppsz_base < row.dpll_base   ? "ppsz"
                    : row.dpll_base < row.ppsz_base ? "dpll"
                                                    : "equal";
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace kcsp
