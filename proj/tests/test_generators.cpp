#include <doctest.h>

#include <cmath>

#include "kcsp/corpus.hpp"
#include "kcsp/generators.hpp"
#include "kcsp/oracle.hpp"
#include "reference.hpp"

using namespace kcsp;

TEST_SUITE("generators") {
  TEST_CASE("round_half_up") {
    CHECK(round_half_up(2.5) == 3);
    CHECK(round_half_up(2.4999) == 2);
    CHECK(round_half_up(0.0) == 0);
  }

  TEST_CASE("uniform: shape, distinctness, determinism") {
    const auto inst = gen_uniform(10, 3, 3, 40, 7);
    CHECK(inst.nogoods().size() == 40);
    for (const auto& ng : inst.nogoods()) CHECK(ng.arity() == 3);
    CHECK(gen_uniform(10, 3, 3, 40, 7) == inst);
    CHECK_FALSE(gen_uniform(10, 3, 3, 40, 8) == inst);
  }

  TEST_CASE("uniform: every binary nogood over 3 boolean vars is UNSAT") {
    const auto inst = gen_uniform(3, 2, 2, 12, 1);
    CHECK(inst.nogoods().size() == 12);
    CHECK(ref::solutions(inst).empty());
  }

  TEST_CASE("uniform: impossible m rejected") {
    CHECK_THROWS_AS(gen_uniform(3, 2, 2, 13, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_uniform(3, 2, 4, 1, 1), std::invalid_argument);
  }

  TEST_CASE("model RB counts") {
    // n = 4, alpha = 1: d = 4, round(4 ln 4) = 6 constraints of
    // round(0.25 * 16) = 4 tuples each.
    const auto inst = gen_model_rb(4, 1.0, 1.0, 0.25, 2, 3);
    CHECK(inst.domain_size() == 4);
    CHECK(inst.nogoods().size() <= 24);
    CHECK(inst.nogoods().size() >= 4);
    for (const auto& ng : inst.nogoods()) CHECK(ng.arity() == 2);
    CHECK(gen_model_rb(4, 1.0, 1.0, 0.25, 2, 3) == inst);
  }

  TEST_CASE("coloring") {
    const std::vector<Edge> k3{{1, 2}, {2, 3}, {1, 3}};
    CHECK(gen_coloring(k3, 3, 3).nogoods().size() == 9);
    CHECK(ref::solutions(gen_coloring(k3, 3, 3)).size() == 6);
    CHECK(ref::solutions(gen_coloring(k3, 3, 2)).empty());
    const std::vector<Edge> k4{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    CHECK(ref::solutions(gen_coloring(k4, 4, 4)).size() == 24);
    CHECK(ref::solutions(gen_coloring(k4, 4, 3)).empty());
    CHECK_THROWS(gen_coloring(std::vector<Edge>{{1, 1}}, 2, 2));
    CHECK_THROWS(gen_coloring(std::vector<Edge>{{1, 3}}, 2, 2));
  }

  TEST_CASE("latin squares") {
    CHECK(ref::solutions(gen_latin(1)).size() == 1);
    CHECK(ref::solutions(gen_latin(2)).size() == 2);
    CHECK(enumerate_solutions(gen_latin(3)).size() == 12);
  }

  TEST_CASE("n-queens") {
    const std::size_t expect[] = {1, 0, 0, 2, 10, 4};
    for (std::size_t n = 1; n <= 6; ++n) {
      CAPTURE(n);
      CHECK(enumerate_solutions(gen_nqueens(n)).size() == expect[n - 1]);
    }
  }

  TEST_CASE("generate dispatches on family") {
    GenSpec spec;
    spec.family = Family::NQueens;
    spec.order = 4;
    CHECK(generate(spec) == gen_nqueens(4));
    spec.family = Family::Uniform;
    spec.n = 5;
    spec.d = 3;
    spec.k = 2;
    spec.m = 6;
    spec.seed = 11;
    CHECK(generate(spec) == gen_uniform(5, 3, 2, 6, 11));
  }

  TEST_CASE("random corpus respects limits and is reproducible") {
    const auto a = random_corpus(50, 5);
    const auto b = random_corpus(50, 5);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& inst = a[i].instance;
      CHECK(inst == b[i].instance);
      CHECK(inst.num_vars() >= 4);
      CHECK(inst.num_vars() <= 12);
      CHECK(inst.domain_size() >= 2);
      CHECK(inst.domain_size() <= 4);
      CHECK(std::pow(inst.domain_size(), inst.num_vars()) <= 65536.0);
    }
  }

  TEST_CASE("structured corpus names are unique") {
    std::set<std::string> names;
    for (const auto& e : structured_corpus()) CHECK(names.insert(e.name).second);
  }
}
