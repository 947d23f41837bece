#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kcsp/instance.hpp"

namespace kcsp {

enum class Family { Uniform, ModelRb, Coloring, Latin, NQueens };

std::string_view family_name(Family f);

struct Edge {
  Var u = 0;
  Var v = 0;
};

/// Parameters for any generator family. Fields a family does not use are
/// ignored.
struct GenSpec {
  Family family = Family::Uniform;
  std::size_t n = 0;      // uniform, model-rb
  Value d = 2;            // uniform, coloring
  std::size_t k = 2;      // uniform, model-rb
  std::size_t m = 0;      // uniform
  double alpha = 1.0;     // model-rb
  double r = 1.0;         // model-rb
  double p = 0.25;        // model-rb
  std::size_t order = 1;  // latin, nqueens
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;
  std::uint64_t seed = 0;
};

/// Rounds x >= 0 to the nearest integer, halves going up.
std::uint64_t round_half_up(double x);

/// m distinct arity-k nogoods over uniformly chosen variables and values.
CspInstance gen_uniform(std::size_t n, Value d, std::size_t k, std::size_t m, std::uint64_t seed);

/// Model RB: d = round(n^alpha), round(r n ln n) constraints of arity k, each
/// contributing round(p d^k) distinct nogoods over its scope.
CspInstance gen_model_rb(std::size_t n, double alpha, double r, double p, std::size_t k,
                         std::uint64_t seed);

CspInstance gen_coloring(std::span<const Edge> edges, std::size_t num_vertices, Value d);

/// Full N x N Latin square; cell (i, j) is variable (i-1)N + j.
CspInstance gen_latin(std::size_t order);

/// One variable per row, value = column.
CspInstance gen_nqueens(std::size_t order);

CspInstance generate(const GenSpec& spec);

}  // namespace kcsp
