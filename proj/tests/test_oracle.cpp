#include <doctest.h>

#include <numeric>
#include <set>

#include "kcsp/corpus.hpp"
#include "kcsp/generators.hpp"
#include "kcsp/oracle.hpp"
#include "kcsp/rng.hpp"
#include "kcsp/simd/match_kernel.hpp"
#include "reference.hpp"

using namespace kcsp;

namespace {

CspInstance triangle() {
  const std::vector<Edge> k3{{1, 2}, {1, 3}, {2, 3}};
  return gen_coloring(k3, 3, 3);
}

std::set<ref::Point> as_set(const PointSet& s) {
  std::set<ref::Point> out;
  for (auto c : s.codes()) out.insert(s.point(c));
  return out;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("space_size and the cap") {
    CHECK(space_size(3, 3) == 27);
    CHECK(space_size(24, 2) == (1ULL << 24));
    CHECK_THROWS_AS(space_size(25, 2), CapExceeded);
    CHECK_THROWS_AS(enumerate_solutions(CspInstance(25, 2)), CapExceeded);
    CHECK(space_size(25, 2, 1ULL << 25) == (1ULL << 25));
  }

  TEST_CASE("point codes put x1 first") {
    const PointSet s(2, 3, {{1, 2}, {0, 0}, {1, 2}});
    CHECK(s.size() == 2);
    CHECK(s.code(std::vector<Value>{1, 2}) == 5);
    CHECK(s.point(5) == std::vector<Value>{1, 2});
    CHECK(s.contains(std::vector<Value>{0, 0}));
    CHECK_FALSE(s.contains(std::vector<Value>{0, 1}));
  }

  TEST_CASE("enumeration matches brute force") {
    std::vector<CspInstance> cases{triangle(), gen_latin(2), gen_nqueens(5), CspInstance(2, 2),
                                   CspInstance(3, 2, {Nogood{}})};
    for (std::uint64_t s = 0; s < 40; ++s) {
      cases.push_back(ref::uniform(3 + s % 5, 2 + static_cast<Value>(s % 3), 2, 4 + s % 20, s));
    }
    for (const auto& inst : cases) {
      const auto sols = enumerate_solutions(inst);
      const auto expect = ref::solutions(inst);
      REQUIRE(sols.size() == expect.size());
      std::set<ref::Point> sset(expect.begin(), expect.end());
      for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(sols.solutions[i].assignment == expect[i]);
        CHECK(sols.solutions[i].critical ==
              ref::critical(expect[i], sset, inst.domain_size()));
      }
      const auto first = first_solution(inst);
      CHECK(first.has_value() == !expect.empty());
      if (first) CHECK(*first == expect.front());
    }
  }

  TEST_CASE("enumeration is identical under every kernel") {
    const auto before = simd::active_kernel();
    const auto inst = ref::uniform(9, 3, 3, 60, 4);
    simd::set_active_kernel(simd::KernelKind::Scalar);
    const auto a = enumerate_solutions(inst);
    simd::set_active_kernel(before);
    const auto b = enumerate_solutions(inst);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.solutions[i].assignment == b.solutions[i].assignment);
    }
  }

  TEST_CASE("critical points examples") {
    // Whole space: nothing is critical.
    std::vector<std::vector<Value>> all;
    ref::for_each_point(2, 2, [&](const ref::Point& x) { all.push_back(x); });
    const PointSet full(2, 2, all);
    CHECK(critical_points(std::vector<Value>{0, 1}, full).empty());

    // Singleton: every dimension is critical.
    const PointSet single(3, 3, {{2, 0, 1}});
    CHECK(critical_points(std::vector<Value>{2, 0, 1}, single) ==
          std::vector<std::size_t>{1, 2, 3});

    // {(0,0),(0,1)} in D^2, d = 2: dimension 1 critical, 2 not.
    const PointSet line(2, 2, {{0, 0}, {0, 1}});
    CHECK(critical_points(std::vector<Value>{0, 0}, line) == std::vector<std::size_t>{1});

    // Proper 3-colorings of K3: every coordinate is critical.
    for (const auto& rec : enumerate_solutions(triangle()).solutions) {
      CHECK(rec.isolation() == 3);
    }

    CHECK_THROWS_AS(critical_points(std::vector<Value>{1, 1}, line), std::invalid_argument);
  }

  TEST_CASE("critical points agree with the literal definition on random sets") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = uniform_int<std::size_t>(rng, 1, 4);
      const Value d = uniform_int<Value>(rng, 2, 4);
      const auto total = space_size(n, d);
      std::vector<std::uint64_t> codes;
      for (std::uint64_t c = 0; c < total; ++c) {
        if (uniform_int(rng, 0, 2) == 0) codes.push_back(c);
      }
      if (codes.empty()) codes.push_back(0);
      const auto s = PointSet::from_codes(n, d, codes);
      const auto sset = as_set(s);
      for (const auto& x : sset) REQUIRE(critical_points(x, s) == ref::critical(x, sset, d));
    }
  }

  TEST_CASE("counting inequality examples") {
    const auto k3 = enumerate_solutions(triangle()).as_point_set();
    const auto c = verify_lemma2(k3);
    CHECK(c.holds);
    CHECK(c.lhs == 162);
    CHECK(c.rhs == 27);
    CHECK(to_string(c.lhs) == "162");

    std::vector<std::vector<Value>> all;
    ref::for_each_point(3, 2, [&](const ref::Point& x) { all.push_back(x); });
    const auto full = verify_lemma2(PointSet(3, 2, all));
    CHECK(full.lhs == full.rhs);  // equality on the whole space
    CHECK(full.holds);

    const auto one = verify_lemma2(PointSet(4, 3, {{0, 1, 2, 0}}));
    CHECK(one.lhs == 81);
    CHECK(one.rhs == 81);
  }

  TEST_CASE("counting inequality holds on random subsets, computed independently") {
    Rng rng(23);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = uniform_int<std::size_t>(rng, 1, 4);
      const Value d = uniform_int<Value>(rng, 2, 4);
      const auto total = space_size(n, d);
      const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      std::vector<std::uint64_t> codes;
      for (std::uint64_t c = 0; c < total; ++c) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) codes.push_back(c);
      }
      if (codes.empty()) codes.push_back(uniform_int<std::uint64_t>(rng, 0, total - 1));
      const auto s = PointSet::from_codes(n, d, codes);
      const auto sset = as_set(s);
      std::uint64_t lhs = 0;
      for (const auto& x : sset) {
        std::uint64_t p = 1;
        for (std::size_t i = 0; i < ref::critical(x, sset, d).size(); ++i) p *= d;
        lhs += p;
      }
      const auto c = verify_lemma2(s);
      REQUIRE(c.lhs == lhs);
      REQUIRE(c.rhs == total);
      REQUIRE(c.holds);
      REQUIRE(lhs >= total);
    }
  }

  TEST_CASE("narrow average examples") {
    // Forced chain: x1 always narrowed; x2 narrowed only when it comes
    // after x1 (half of the orders). Average 3/2; both coordinates critical.
    const CspInstance chain(2, 2, {Nogood{{1, 0}}, Nogood{{1, 1}, {2, 0}}});
    const std::vector<Value> x{1, 1};
    const auto avg = avg_narrow_count_exhaustive(chain, x);
    CHECK(avg.isolation == 2);
    CHECK(avg.exact == Fraction{3, 2});
    CHECK(avg.orders == 2);
    CHECK(avg.meets_bound);

    // K3: the first vertex is free and the other two are always narrowed.
    for (const auto& rec : enumerate_solutions(triangle()).solutions) {
      const auto a = avg_narrow_count_exhaustive(triangle(), rec.assignment);
      CHECK(a.exact == Fraction{2, 1});
      CHECK(a.meets_bound);  // 2 >= 3/2
    }

    const CspInstance free(3, 2);
    const auto z = avg_narrow_count_exhaustive(free, std::vector<Value>{0, 1, 0});
    CHECK(z.exact == Fraction{0, 1});
    CHECK(z.isolation == 0);
    CHECK(z.meets_bound);
  }

  TEST_CASE("narrow_count_along follows the order") {
    const CspInstance chain(2, 2, {Nogood{{1, 0}}, Nogood{{1, 1}, {2, 0}}});
    const std::vector<Value> x{1, 1};
    CHECK(narrow_count_along(chain, x, std::vector<Var>{1, 2}) == 2);
    CHECK(narrow_count_along(chain, x, std::vector<Var>{2, 1}) == 1);
  }

  TEST_CASE("exhaustive narrow average equals the subset-sum reference") {
    std::vector<CspInstance> cases{triangle(), gen_latin(2), gen_nqueens(4)};
    for (std::uint64_t s = 0; s < 30; ++s) {
      cases.push_back(ref::uniform(3 + s % 4, 2 + static_cast<Value>(s % 2), 1 + s % 3,
                                  3 + s % 10, s));
    }
    for (const auto& inst : cases) {
      const auto sols = enumerate_solutions(inst);
      const std::size_t n = inst.num_vars();
      for (const auto& rec : sols.solutions) {
        const auto avg = avg_narrow_count_exhaustive(inst, rec.assignment, rec.isolation());
        const std::uint64_t sum = ref::narrow_sum_by_subsets(inst, rec.assignment);
        const std::uint64_t fact = ref::factorial(n);
        const std::uint64_t g = std::gcd(sum, fact);
        CHECK(avg.exact == Fraction{sum / g, fact / g});
        // The inequality itself, cross-multiplied.
        const std::size_t k = std::max<std::size_t>(inst.k_max(), 1);
        CHECK(sum * k >= rec.isolation() * fact);
      }
    }
  }

  TEST_CASE("sampled narrow average brackets the exact mean") {
    const auto inst = gen_nqueens(5);
    const auto sols = enumerate_solutions(inst);
    for (const auto& rec : sols.solutions) {
      const auto exact = avg_narrow_count_exhaustive(inst, rec.assignment, rec.isolation());
      const auto sampled =
          avg_narrow_count_sampled(inst, rec.assignment, rec.isolation(), 20000, 3);
      CHECK_FALSE(sampled.exhaustive);
      CHECK(sampled.orders == 20000);
      CHECK(sampled.ci_low <= exact.mean + 1e-9);
      CHECK(sampled.ci_high >= exact.mean - 1e-9);
    }
  }

  TEST_CASE("exhaustive average refuses large n") {
    const CspInstance big(kMaxExhaustiveVars + 1, 2);
    std::vector<Value> x(kMaxExhaustiveVars + 1, 0);
    CHECK_THROWS(avg_narrow_count_exhaustive(big, x, 0));
  }
}
