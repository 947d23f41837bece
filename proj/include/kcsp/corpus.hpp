#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kcsp/instance.hpp"

namespace kcsp {

struct NamedInstance {
  std::string name;
  CspInstance instance;
};

/// Small named instances: colorings of K2/K3/K4, Latin squares N <= 3,
/// N-queens N <= 6, and a few hand-built edge cases.
std::vector<NamedInstance> structured_corpus();

struct RandomCorpusLimits {
  std::size_t n_lo = 4, n_hi = 12;
  int d_lo = 2, d_hi = 4;
  std::size_t k_lo = 2, k_hi = 3;
  std::uint64_t max_space = 1ULL << 16;  // d^n ceiling
};

/// gen_uniform instances with m drawn around the satisfiability threshold
/// n ln d / -ln(1 - d^-k), so both verdicts occur.
std::vector<NamedInstance> random_corpus(std::size_t count, std::uint64_t seed,
                                         const RandomCorpusLimits& limits = {});

}  // namespace kcsp
