#include "kcsp/dpll.hpp"

#include <limits>
#include <stdexcept>

namespace kcsp {

namespace {

class DpllSearch {
 public:
  explicit DpllSearch(const CspInstance& inst) : inst_(inst), pa_(inst) {}

  bool run() { return visit(0); }

  std::uint64_t nodes() const { return nodes_; }
  std::size_t max_depth() const { return max_depth_; }
  const PartialAssignment& assignment() const { return pa_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  /// Index of the active nogood with fewest open variables, kNone if every
  /// nogood is killed. Sets `conflict` when some nogood is fully matched.
  std::size_t select(bool& conflict) const {
    conflict = false;
    std::size_t best = kNone;
    std::size_t best_open = std::numeric_limits<std::size_t>::max();
    const auto nogoods = inst_.nogoods();
    for (std::size_t i = 0; i < nogoods.size(); ++i) {
      std::size_t open = 0;
      bool killed = false;
      for (const auto& [v, a] : nogoods[i].pairs()) {
        const Value cur = pa_[v];
        if (cur == kUnassigned) {
          ++open;
        } else if (cur != a) {
          killed = true;
          break;
        }
      }
      if (killed) continue;
      if (open == 0) {
        conflict = true;
        return kNone;
      }
      if (open < best_open) {
        best_open = open;
        best = i;
      }
    }
    return best;
  }

  bool visit(std::size_t depth) {
    ++nodes_;
    if (depth > max_depth_) max_depth_ = depth;

    bool conflict = false;
    const std::size_t pick = select(conflict);
    if (conflict) return false;
    if (pick == kNone) {
      for (Var v = 1; v <= inst_.num_vars(); ++v) {
        if (!pa_.is_assigned(v)) pa_.assign(v, 0);
      }
      if (!is_satisfying(inst_, pa_)) {
        throw std::logic_error("dpll: zero completion of an all-killed node is not a solution");
      }
      return true;
    }

    std::vector<Literal> open;
    for (const auto& lit : inst_.nogoods()[pick].pairs()) {
      if (!pa_.is_assigned(lit.var)) open.push_back(lit);
    }
    const Value d = inst_.domain_size();
    std::size_t fixed = 0;
    for (const auto& [u, a] : open) {
      for (Value b = 0; b < d; ++b) {
        if (b == a) continue;
        pa_.assign(u, b);
        if (visit(depth + 1)) return true;
      }
      pa_.assign(u, a);
      ++fixed;
    }
    for (std::size_t i = 0; i < fixed; ++i) pa_.unassign(open[i].var);
    return false;
  }

  const CspInstance& inst_;
  PartialAssignment pa_;
  std::uint64_t nodes_ = 0;
  std::size_t max_depth_ = 0;
};

}  // namespace

DpllStats solve_dpll(const CspInstance& inst) {
  const auto start = std::chrono::steady_clock::now();
  DpllSearch search(inst);
  const bool sat = search.run();

  DpllStats stats;
  stats.nodes = search.nodes();
  stats.max_depth = search.max_depth();
  if (sat) {
    stats.result = Verdict::Sat;
    const auto values = search.assignment().values();
    stats.assignment.assign(values.begin(), values.end());
    if (!is_satisfying(inst, stats.assignment)) {
      throw std::logic_error("dpll returned a non-satisfying assignment");
    }
  }
  stats.elapsed = std::chrono::steady_clock::now() - start;
  return stats;
}

std::uint64_t count_nodes(const CspInstance& inst) { return solve_dpll(inst).nodes; }

}  // namespace kcsp
