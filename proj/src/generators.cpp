#include "kcsp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "kcsp/rng.hpp"

namespace kcsp {

namespace {

/// k distinct variables from 1..n, uniformly, returned sorted.
std::vector<Var> sample_scope(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Var> pool(n);
  std::iota(pool.begin(), pool.end(), Var{1});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[uniform_int<std::size_t>(rng, i, n - 1)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// t distinct integers from [0, universe), Floyd's algorithm.
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t t) {
  std::vector<std::uint64_t> out;
  std::unordered_set<std::uint64_t> taken;
  out.reserve(t);
  for (std::uint64_t j = universe - t; j < universe; ++j) {
    const std::uint64_t r = uniform_int<std::uint64_t>(rng, 0, j);
    const std::uint64_t pick = taken.contains(r) ? j : r;
    taken.insert(pick);
    out.push_back(pick);
  }
  return out;
}

Nogood tuple_nogood(std::span<const Var> scope, std::uint64_t tuple, Value d) {
  std::vector<Literal> pairs(scope.size());
  for (std::size_t i = scope.size(); i-- > 0;) {
    pairs[i] = {scope[i], static_cast<Value>(tuple % static_cast<std::uint64_t>(d))};
    tuple /= static_cast<std::uint64_t>(d);
  }
  return Nogood(std::move(pairs));
}

long double binomial(std::size_t n, std::size_t k) {
  long double c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<long double>(n - k + i) / i;
  return std::round(c);
}

/// Every arity-k nogood over n variables, scopes in lexicographic order.
std::vector<Nogood> all_nogoods(std::size_t n, Value d, std::size_t k) {
  std::vector<Nogood> out;
  std::vector<bool> select(n, false);
  std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < k; ++i) tuples *= static_cast<std::uint64_t>(d);
  do {
    std::vector<Var> scope;
    for (std::size_t i = 0; i < n; ++i) {
      if (select[i]) scope.push_back(static_cast<Var>(i + 1));
    }
    for (std::uint64_t t = 0; t < tuples; ++t) out.push_back(tuple_nogood(scope, t, d));
  } while (std::prev_permutation(select.begin(), select.end()));
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::ModelRb: return "model-rb";
    case Family::Coloring: return "coloring";
    case Family::Latin: return "latin";
    case Family::NQueens: return "nqueens";
  }
  return "unknown";
}

std::uint64_t round_half_up(double x) { return static_cast<std::uint64_t>(std::floor(x + 0.5)); }

CspInstance gen_uniform(std::size_t n, Value d, std::size_t k, std::size_t m, std::uint64_t seed) {
  if (k < 1 || n < k) throw std::invalid_argument("gen_uniform needs n >= k >= 1");
  if (d < 2) throw std::invalid_argument("gen_uniform needs d >= 2");
  const long double possible = binomial(n, k) * std::pow(static_cast<long double>(d), k);
  if (static_cast<long double>(m) > possible) {
    throw std::invalid_argument("gen_uniform: m = " + std::to_string(m) +
                                " exceeds the number of distinct nogoods");
  }

  Rng rng(derive_seed(seed, 0));
  std::vector<Nogood> nogoods;
  nogoods.reserve(m);
  if (2 * static_cast<long double>(m) > possible && possible <= (1 << 22)) {
    // Dense request: partial shuffle of the full pool.
    auto pool = all_nogoods(n, d, k);
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(pool[i], pool[uniform_int<std::size_t>(rng, i, pool.size() - 1)]);
      nogoods.push_back(pool[i]);
    }
  } else {
    std::set<Nogood> seen;
    while (nogoods.size() < m) {
      auto scope = sample_scope(rng, n, k);
      std::vector<Literal> pairs;
      for (Var v : scope) pairs.push_back({v, uniform_int<Value>(rng, 0, d - 1)});
      Nogood ng(std::move(pairs));
      if (seen.insert(ng).second) nogoods.push_back(std::move(ng));
    }
  }
  return CspInstance(n, d, std::move(nogoods));
}

CspInstance gen_model_rb(std::size_t n, double alpha, double r, double p, std::size_t k,
                         std::uint64_t seed) {
  if (!(alpha > 0) || !(r > 0) || !(p > 0 && p < 1)) {
    throw std::invalid_argument("gen_model_rb needs alpha > 0, r > 0, 0 < p < 1");
  }
  if (k < 2 || n < k) throw std::invalid_argument("gen_model_rb needs n >= k >= 2");
  const std::uint64_t d = round_half_up(std::pow(static_cast<double>(n), alpha));
  if (d < 2) throw std::invalid_argument("gen_model_rb: d = round(n^alpha) < 2");
  const double tuples_f = std::pow(static_cast<double>(d), static_cast<double>(k));
  if (tuples_f > 1e15) throw std::invalid_argument("gen_model_rb: d^k too large");
  const auto tuples = static_cast<std::uint64_t>(tuples_f);
  const std::uint64_t per_constraint = round_half_up(p * tuples_f);
  if (per_constraint < 1) throw std::invalid_argument("gen_model_rb: round(p d^k) < 1");
  const std::uint64_t constraints =
      round_half_up(r * static_cast<double>(n) * std::log(static_cast<double>(n)));

  Rng rng(derive_seed(seed, 0));
  std::vector<Nogood> nogoods;
  nogoods.reserve(constraints * per_constraint);
  for (std::uint64_t c = 0; c < constraints; ++c) {
    auto scope = sample_scope(rng, n, k);
    for (std::uint64_t t : sample_distinct(rng, tuples, per_constraint)) {
      nogoods.push_back(tuple_nogood(scope, t, static_cast<Value>(d)));
    }
  }
  return CspInstance(n, static_cast<Value>(d), std::move(nogoods));
}

CspInstance gen_coloring(std::span<const Edge> edges, std::size_t num_vertices, Value d) {
  if (d < 2) throw std::invalid_argument("gen_coloring needs d >= 2");
  std::vector<Nogood> nogoods;
  for (const auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("gen_coloring: self-loop at " + std::to_string(u));
    if (u < 1 || v < 1 || u > num_vertices || v > num_vertices) {
      throw std::invalid_argument("gen_coloring: edge endpoint out of range");
    }
    for (Value c = 0; c < d; ++c) nogoods.push_back(Nogood{{u, c}, {v, c}});
  }
  return CspInstance(num_vertices, d, std::move(nogoods));
}

CspInstance gen_latin(std::size_t order) {
  if (order < 1) throw std::invalid_argument("gen_latin needs N >= 1");
  const std::size_t N = order;
  auto cell = [N](std::size_t i, std::size_t j) { return static_cast<Var>((i - 1) * N + j); };
  const Value d = std::max<Value>(2, static_cast<Value>(N));
  std::vector<Nogood> nogoods;
  for (std::size_t i = 1; i <= N; ++i) {
    for (std::size_t j = 1; j <= N; ++j) {
      // Later cells in the same row, then later cells in the same column.
      for (std::size_t j2 = j + 1; j2 <= N; ++j2) {
        for (Value c = 0; c < static_cast<Value>(N); ++c) {
          nogoods.push_back(Nogood{{cell(i, j), c}, {cell(i, j2), c}});
        }
      }
      for (std::size_t i2 = i + 1; i2 <= N; ++i2) {
        for (Value c = 0; c < static_cast<Value>(N); ++c) {
          nogoods.push_back(Nogood{{cell(i, j), c}, {cell(i2, j), c}});
        }
      }
    }
  }
  if (N == 1) nogoods.push_back(Nogood{{1, 1}});
  return CspInstance(N * N, d, std::move(nogoods));
}

CspInstance gen_nqueens(std::size_t order) {
  if (order < 1) throw std::invalid_argument("gen_nqueens needs N >= 1");
  const std::size_t N = order;
  const Value d = std::max<Value>(2, static_cast<Value>(N));
  std::vector<Nogood> nogoods;
  for (std::size_t i = 1; i <= N; ++i) {
    for (std::size_t j = i + 1; j <= N; ++j) {
      const auto gap = static_cast<Value>(j - i);
      for (Value a = 0; a < static_cast<Value>(N); ++a) {
        for (Value b = 0; b < static_cast<Value>(N); ++b) {
          if (a == b || std::abs(a - b) == gap) {
            nogoods.push_back(Nogood{{static_cast<Var>(i), a}, {static_cast<Var>(j), b}});
          }
        }
      }
    }
  }
  if (N == 1) nogoods.push_back(Nogood{{1, 1}});
  return CspInstance(N, d, std::move(nogoods));
}

CspInstance generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::Uniform: return gen_uniform(spec.n, spec.d, spec.k, spec.m, spec.seed);
    case Family::ModelRb:
      return gen_model_rb(spec.n, spec.alpha, spec.r, spec.p, spec.k, spec.seed);
    case Family::Coloring: return gen_coloring(spec.edges, spec.num_vertices, spec.d);
    case Family::Latin: return gen_latin(spec.order);
    case Family::NQueens: return gen_nqueens(spec.order);
  }
  throw std::invalid_argument("unknown generator family");
}

}  // namespace kcsp
