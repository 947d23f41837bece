#pragma once

// Experiment drivers behind the `verify` and `bench` subcommands. Every
// result carries its per-trial records so the aggregates can be recomputed,
// and serializes to JSON with a fixed key order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kcsp/corpus.hpp"
#include "kcsp/instance.hpp"
#include "kcsp/oracle.hpp"

namespace kcsp {

using Json = nlohmann::ordered_json;

enum class ExperimentStatus { Pass, Fail, Inconclusive, NotApplicable };

std::string_view status_name(ExperimentStatus s);

// ---------------------------------------------------------------------------

struct ProbEstimate {
  std::size_t n = 0;
  Value d = 0;
  std::size_t k_max = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t successes = 0;
  std::uint64_t aborts = 0;
  double p_hat = 0;
  double se = 0;       // sqrt(p(1-p)/trials)
  double ci_low = 0;   // 99% Wilson interval
  double ci_high = 0;
  double bound = 0;    // success_lower_bound(n, d, max(k_max, 1))
  std::optional<bool> satisfiable;  // from the oracle when d^n <= cap
  std::string outcomes;             // one '0'/'1' per trial
  std::vector<std::uint64_t> narrow_histogram;
  ExperimentStatus status = ExperimentStatus::Inconclusive;
};

/// Runs `trials` independent iterations of the randomized solver and compares
/// the empirical success rate with the per-iteration lower bound. Pass iff
/// p_hat >= bound - 3 se.
ProbEstimate estimate_iteration_success(const CspInstance& inst, std::uint64_t trials,
                                        std::uint64_t seed, std::uint64_t cap = kDefaultCap);

// ---------------------------------------------------------------------------

/// gen_uniform(n, d, k, round(nogoods_per_var * n)).
struct GrowthFamily {
  Value d = 2;
  std::size_t k = 2;
  double nogoods_per_var = 4;
};

struct GrowthPoint {
  std::size_t n = 0;
  std::vector<std::uint64_t> nodes;  // per instance
  std::vector<bool> unsat;           // per instance
  std::optional<double> median_unsat_nodes;
};

struct GrowthReport {
  GrowthFamily family;
  std::uint64_t seed = 0;
  std::size_t instances_per_n = 0;
  std::vector<GrowthPoint> points;
  std::optional<double> slope;
  std::optional<double> intercept;
  double threshold = 0;  // ln(char_root(d, k)) + slack
  ExperimentStatus status = ExperimentStatus::Inconclusive;
};

inline constexpr double kGrowthSlack = 0.05;

/// Least-squares slope of ln(median UNSAT node count) against n.
GrowthReport node_growth_experiment(const GrowthFamily& family,
                                    std::span<const std::size_t> n_values,
                                    std::size_t instances_per_n, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct CampaignReport {
  std::string kind;  // "lemma1" | "lemma2"
  std::uint64_t seed = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  Json records = Json::array();
  Json counterexamples = Json::array();
  ExperimentStatus status = ExperimentStatus::Inconclusive;
};

/// For every (n, d) in the grid draws `subsets` random nonempty S of D^n and
/// checks sum d^J_S(x) >= d^n exactly.
CampaignReport verify_lemma2_campaign(std::span<const std::size_t> n_values,
                                      std::span<const int> d_values, std::size_t subsets,
                                      std::uint64_t seed);

/// For every instance with n <= max_n and each of its solutions, checks the
/// exhaustive narrow average against J_S(x)/k_max exactly.
CampaignReport verify_lemma1_campaign(std::span<const NamedInstance> corpus,
                                      std::size_t max_n = 7);

/// Default lemma-1 corpus: structured instances plus `random_count` small
/// random ones (n <= 7, d <= 3).
std::vector<NamedInstance> lemma1_corpus(std::size_t random_count, std::uint64_t seed);

// ---------------------------------------------------------------------------

Json to_json(const ProbEstimate& r);
Json to_json(const GrowthReport& r);
Json to_json(const CampaignReport& r);

}  // namespace kcsp
