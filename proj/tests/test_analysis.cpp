#include <doctest.h>

#include <cmath>

#include "kcsp/analysis.hpp"
#include "kcsp/ppsz.hpp"

using namespace kcsp;

TEST_SUITE("analysis") {
  TEST_CASE("golden ratio and tribonacci constant") {
    CHECK(std::abs(char_root(2, 2).lambda - (1 + std::sqrt(5.0)) / 2) <= 1e-12);
    CHECK(std::abs(char_root(2, 2).lambda - 1.6180339887) <= 1e-9);
    CHECK(std::abs(char_root(2, 3).lambda - 1.8392867552) <= 1e-9);
    // d = 3, k = 2: lambda^2 = 2 lambda + 2.
    CHECK(std::abs(char_root(3, 2).lambda - (1 + std::sqrt(3.0))) <= 1e-12);
  }

  TEST_CASE("residuals and sandwich on the grid") {
    for (int d = 2; d <= 10; ++d) {
      for (int k = 2; k <= 10; ++k) {
        CAPTURE(d);
        CAPTURE(k);
        const auto r = char_root(d, k);
        CHECK(std::abs(r.residual_g) <= 1e-9);
        CHECK(r.sandwich_holds(1e-12));
        CHECK(r.lambda > 1);
        CHECK(r.lambda <= d);
        CHECK(r.deficit > 0);
        CHECK(r.lower_sandwich == doctest::Approx(d - 1.0 / std::pow(d, k - 1)));
        CHECK(r.upper_sandwich == doctest::Approx(d - (d - 1.0) / std::pow(d, k)));
        // f(lambda) = lambda^k - (d-1)(lambda^(k-1) + ... + 1), scaled by lambda^k.
        double sum = 0;
        for (int i = 0; i < k; ++i) sum += std::pow(r.lambda, i);
        const double f = std::pow(r.lambda, k) - (d - 1) * sum;
        CHECK(std::abs(f) <= 1e-9 * std::pow(r.lambda, k));
      }
    }
  }

  TEST_CASE("the deficit is an independent root of eps (d - eps)^k = d - 1") {
    for (int d = 2; d <= 10; ++d) {
      for (int k = 2; k <= 10; ++k) {
        const double eps = char_root(d, k).deficit;
        const double h = eps * std::pow(d - eps, k) - (d - 1);
        CHECK(std::abs(h) <= 1e-12 * (d - 1));
      }
    }
  }

  TEST_CASE("monotone in k and in d") {
    for (int d = 2; d <= 10; ++d) {
      for (int k = 2; k < 10; ++k) CHECK(char_root(d, k + 1).deficit < char_root(d, k).deficit);
    }
    for (int k = 2; k <= 10; ++k) {
      for (int d = 2; d < 10; ++d) CHECK(char_root(d + 1, k).lambda > char_root(d, k).lambda);
    }
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(char_root(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(char_root(3, 1), std::invalid_argument);
  }

  TEST_CASE("bound bases") {
    CHECK(dpll_bound_base(2, 2) == doctest::Approx(1.75));
    CHECK(dpll_bound_base(3, 3) == doctest::Approx(3 - 2.0 / 27));
    for (int k = 1; k <= 6; ++k) {
      CHECK(std::abs(ppsz_bound_base(2, k) - std::pow(2.0, 1 - 1.0 / k)) <= 1e-12);
    }
    CHECK(ppsz_bound_base(3, 2) == doctest::Approx(3 * std::sqrt(2.0 / 3)));
    // The ppsz base is the one in the repeat count.
    CHECK(ppsz_bound_base(3, 2) * ppsz_bound_base(3, 2) == doctest::Approx(6.0));
  }

  TEST_CASE("variable-domain dpll bound") {
    CHECK(ln_bound_variable_domain_dpll(3, 1.0, 0.0) == doctest::Approx(0.2958).epsilon(1e-3));
    CHECK(ln_bound_variable_domain_dpll(3, 2.0) == doctest::Approx(0.5917).epsilon(1e-3));
    CHECK(ln_bound_variable_domain_dpll(10, 0.5, 0.01) ==
          doctest::Approx(0.5 * 10 * (std::log(10.0) - 1) + 10 * std::log(1.01)));
  }

  TEST_CASE("bound table") {
    const auto rows = bound_table(2, 4, 2, 4);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].d == 2);
    CHECK(rows[0].k == 2);
    CHECK(rows[1].k == 3);
    CHECK(rows[3].d == 3);
    for (const auto& r : rows) {
      CHECK(r.lambda == char_root(r.d, r.k).lambda);
      CHECK(r.dpll_base == dpll_bound_base(r.d, r.k));
      CHECK(r.ppsz_base == ppsz_bound_base(r.d, r.k));
      const std::string expect = r.ppsz_base < r.dpll_base   ? "ppsz"
                                 : r.dpll_base < r.ppsz_base ? "dpll"
                                                             : "equal";
      CHECK(r.smaller == expect);
    }
    CHECK_THROWS(bound_table(3, 2, 2, 2));
  }
}
