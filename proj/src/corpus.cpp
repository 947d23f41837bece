#include "kcsp/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "kcsp/generators.hpp"
#include "kcsp/rng.hpp"

namespace kcsp {

std::vector<NamedInstance> structured_corpus() {
  const std::vector<Edge> k2{{1, 2}};
  const std::vector<Edge> k3{{1, 2}, {1, 3}, {2, 3}};
  const std::vector<Edge> k4{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

  std::vector<NamedInstance> out;
  out.push_back({"edge-d2", gen_coloring(k2, 2, 2)});
  out.push_back({"k3-d2", gen_coloring(k3, 3, 2)});
  out.push_back({"k3-d3", gen_coloring(k3, 3, 3)});
  out.push_back({"k4-d3", gen_coloring(k4, 4, 3)});
  out.push_back({"k4-d4", gen_coloring(k4, 4, 4)});
  for (std::size_t N = 1; N <= 3; ++N) out.push_back({"latin-" + std::to_string(N), gen_latin(N)});
  for (std::size_t N = 1; N <= 6; ++N) {
    out.push_back({"queens-" + std::to_string(N), gen_nqueens(N)});
  }
  out.push_back({"empty-n2-d2", CspInstance(2, 2)});
  out.push_back({"empty-n5-d3", CspInstance(5, 3)});
  out.push_back({"unary-x1", CspInstance(1, 2, {Nogood{{1, 0}}})});
  out.push_back({"unary-chain", CspInstance(2, 2, {Nogood{{1, 0}}, Nogood{{1, 1}, {2, 0}}})});
  out.push_back({"arity0", CspInstance(2, 2, {Nogood{}})});
  return out;
}

std::vector<NamedInstance> random_corpus(std::size_t count, std::uint64_t seed,
                                         const RandomCorpusLimits& limits) {
  std::vector<NamedInstance> out;
  out.reserve(count);
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    Rng rng = make_stream(seed, i);
    const int d = uniform_int<int>(rng, limits.d_lo, limits.d_hi);
    const auto n = uniform_int<std::size_t>(rng, limits.n_lo, limits.n_hi);
    const auto k = uniform_int<std::size_t>(rng, limits.k_lo, std::min(limits.k_hi, n));
    if (std::pow(static_cast<double>(d), static_cast<double>(n)) >
        static_cast<double>(limits.max_space)) {
      continue;
    }
    const double miss = -std::log1p(-std::pow(static_cast<double>(d), -static_cast<double>(k)));
    const double threshold = static_cast<double>(n) * std::log(static_cast<double>(d)) / miss;
    const double scale = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    double possible = std::pow(static_cast<double>(d), static_cast<double>(k));
    for (std::size_t j = 1; j <= k; ++j) {
      possible *= static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    const auto m = static_cast<std::size_t>(
        std::min(std::round(possible), std::round(threshold * scale)));
    const std::uint64_t inst_seed = rng();
    out.push_back({"uniform-n" + std::to_string(n) + "-d" + std::to_string(d) + "-k" +
                       std::to_string(k) + "-m" + std::to_string(m) + "-" + std::to_string(i),
                   gen_uniform(n, d, k, m, inst_seed)});
  }
  return out;
}

}  // namespace kcsp
