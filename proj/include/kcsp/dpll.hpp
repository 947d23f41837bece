#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcsp/instance.hpp"

namespace kcsp {

enum class Verdict { Sat, Unsat };

struct DpllStats {
  Verdict result = Verdict::Unsat;
  std::vector<Value> assignment;  // empty unless Sat
  std::uint64_t nodes = 0;        // branching-point visits, root included
  std::size_t max_depth = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Deterministic nogood branching. At each node the active nogood with the
/// fewest unassigned variables (lowest index on ties) is chosen; for its open
/// pairs (u1:a1)..(ut:at) the solver tries u_i = every value other than a_i,
/// with u1..u_{i-1} fixed to a1..a_{i-1}.
DpllStats solve_dpll(const CspInstance& inst);

/// Nodes visited by solve_dpll (full tree on UNSAT, up to first solution on SAT).
std::uint64_t count_nodes(const CspInstance& inst);

}  // namespace kcsp
