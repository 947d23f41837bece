#include <doctest.h>

#include <cmath>

#include "kcsp/analysis.hpp"
#include "kcsp/corpus.hpp"
#include "kcsp/dpll.hpp"
#include "kcsp/generators.hpp"
#include "kcsp/oracle.hpp"
#include "reference.hpp"

using namespace kcsp;

namespace {

// Independent restatement of the branching rule, copying the partial
// assignment at every node. Returns (sat, nodes).
struct RefDpll {
  const CspInstance& inst;
  std::uint64_t nodes = 0;

  bool visit(ref::Point partial) {
    ++nodes;
    int best = -1;
    std::size_t best_open = 0;
    for (std::size_t i = 0; i < inst.nogoods().size(); ++i) {
      const auto& ng = inst.nogoods()[i];
      std::size_t open = 0;
      bool alive = true;
      for (const auto& lit : ng.pairs()) {
        if (partial[lit.var - 1] == kUnassigned) {
          ++open;
        } else if (partial[lit.var - 1] != lit.value) {
          alive = false;
        }
      }
      if (!alive) continue;
      if (open == 0) return false;
      if (best < 0 || open < best_open) {
        best = static_cast<int>(i);
        best_open = open;
      }
    }
    if (best < 0) return true;
    for (const auto& lit : inst.nogoods()[static_cast<std::size_t>(best)].pairs()) {
      if (partial[lit.var - 1] != kUnassigned) continue;
      for (Value b = 0; b < inst.domain_size(); ++b) {
        if (b == lit.value) continue;
        auto child = partial;
        child[lit.var - 1] = b;
        if (visit(child)) return true;
      }
      partial[lit.var - 1] = lit.value;
    }
    return false;
  }
};

}  // namespace

TEST_SUITE("dpll") {
  TEST_CASE("empty nogood list: zero completion at the root") {
    const auto r = solve_dpll(CspInstance(4, 3));
    CHECK(r.result == Verdict::Sat);
    CHECK(r.assignment == std::vector<Value>{0, 0, 0, 0});
    CHECK(r.nodes == 1);
  }

  TEST_CASE("arity-0 nogood is UNSAT at the root") {
    const auto r = solve_dpll(CspInstance(2, 2, {Nogood{}}));
    CHECK(r.result == Verdict::Unsat);
    CHECK(r.nodes == 1);
  }

  TEST_CASE("single binary nogood") {
    const auto r = solve_dpll(CspInstance(2, 2, {Nogood{{1, 0}, {2, 0}}}));
    CHECK(r.result == Verdict::Sat);
    CHECK(r.assignment == std::vector<Value>{1, 0});
    CHECK(r.nodes == 2);
  }

  TEST_CASE("all binary nogoods over three booleans") {
    const auto inst = gen_uniform(3, 2, 2, 12, 1);
    const auto r = solve_dpll(inst);
    CHECK(r.result == Verdict::Unsat);
    RefDpll ref{inst};
    CHECK_FALSE(ref.visit(ref::Point(3, kUnassigned)));
    CHECK(r.nodes == ref.nodes);
    // Within a polynomial factor of lambda^n.
    const double lambda = char_root(2, 2).lambda;
    CHECK(static_cast<double>(r.nodes) <= 3.0 * 3.0 * std::pow(lambda, 3));
  }

  TEST_CASE("triangle") {
    const std::vector<Edge> k3{{1, 2}, {1, 3}, {2, 3}};
    const auto sat = solve_dpll(gen_coloring(k3, 3, 3));
    CHECK(sat.result == Verdict::Sat);
    CHECK(is_satisfying(gen_coloring(k3, 3, 3), sat.assignment));
    CHECK(solve_dpll(gen_coloring(k3, 3, 2)).result == Verdict::Unsat);
  }

  TEST_CASE("verdicts match the oracle and node counts match the reference rule") {
    auto corpus = structured_corpus();
    for (auto& e : random_corpus(120, 31)) corpus.push_back(std::move(e));
    for (const auto& [name, inst] : corpus) {
      CAPTURE(name);
      const auto r = solve_dpll(inst);
      const bool sat = first_solution(inst).has_value();
      REQUIRE((r.result == Verdict::Sat) == sat);
      if (sat) {
        CHECK(is_satisfying(inst, r.assignment));
      } else {
        CHECK(r.assignment.empty());
      }
      RefDpll ref{inst};
      CHECK(ref.visit(ref::Point(inst.num_vars(), kUnassigned)) == sat);
      CHECK(r.nodes == ref.nodes);
      CHECK(r.max_depth < r.nodes);
    }
  }

  TEST_CASE("deterministic") {
    const auto inst = gen_uniform(12, 3, 3, 90, 5);
    const auto a = solve_dpll(inst);
    const auto b = solve_dpll(inst);
    CHECK(a.result == b.result);
    CHECK(a.assignment == b.assignment);
    CHECK(a.nodes == b.nodes);
    CHECK(count_nodes(inst) == a.nodes);
  }
}
