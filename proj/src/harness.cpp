#include "kcsp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kcsp/analysis.hpp"
#include "kcsp/dpll.hpp"
#include "kcsp/generators.hpp"
#include "kcsp/ppsz.hpp"
#include "kcsp/rng.hpp"
#include "kcsp/version.hpp"

namespace kcsp {

std::string_view status_name(ExperimentStatus s) {
  switch (s) {
    case ExperimentStatus::Pass: return "pass";
    case ExperimentStatus::Fail: return "fail";
    case ExperimentStatus::Inconclusive: return "inconclusive";
    case ExperimentStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

namespace {

constexpr double kZ99 = 2.5758293035489;

Json header(std::string_view subcommand, std::string_view experiment, std::uint64_t seed) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["experiment"] = experiment;
  j["seed"] = seed;
  return j;
}

}  // namespace

ProbEstimate estimate_iteration_success(const CspInstance& inst, std::uint64_t trials,
                                        std::uint64_t seed, std::uint64_t cap) {
  if (trials == 0) throw std::invalid_argument("estimate_iteration_success needs trials >= 1");
  ProbEstimate r;
  r.n = inst.num_vars();
  r.d = inst.domain_size();
  r.k_max = inst.k_max();
  r.trials = trials;
  r.seed = seed;
  r.bound = success_lower_bound(r.n, static_cast<std::uint64_t>(r.d),
                                std::max<std::size_t>(r.k_max, 1));
  r.narrow_histogram.assign(r.n + 1, 0);
  r.outcomes.reserve(trials);

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = iteration_rng(seed, t);
    const auto outcome = run_iteration(inst, rng);
    ++r.narrow_histogram[outcome.narrow_count];
    bool ok = false;
    if (!outcome.assignment) {
      ++r.aborts;
    } else {
      ok = is_satisfying(inst, *outcome.assignment);
    }
    r.successes += ok ? 1 : 0;
    r.outcomes.push_back(ok ? '1' : '0');
  }

  const double T = static_cast<double>(trials);
  r.p_hat = static_cast<double>(r.successes) / T;
  r.se = std::sqrt(r.p_hat * (1 - r.p_hat) / T);
  const double z2 = kZ99 * kZ99;
  const double centre = (r.p_hat + z2 / (2 * T)) / (1 + z2 / T);
  const double half =
      kZ99 * std::sqrt(r.p_hat * (1 - r.p_hat) / T + z2 / (4 * T * T)) / (1 + z2 / T);
  r.ci_low = std::max(0.0, centre - half);
  r.ci_high = std::min(1.0, centre + half);

  try {
    r.satisfiable = !enumerate_solutions(inst, cap).empty();
  } catch (const CapExceeded&) {
    if (r.successes > 0) r.satisfiable = true;
  }

  if (r.satisfiable == false) {
    r.status = ExperimentStatus::NotApplicable;
  } else if (!r.satisfiable) {
    r.status = ExperimentStatus::Inconclusive;
  } else {
    r.status = r.p_hat >= r.bound - 3 * r.se ? ExperimentStatus::Pass : ExperimentStatus::Fail;
  }
  return r;
}

Json to_json(const ProbEstimate& r) {
  Json j = header("bench", "prob", r.seed);
  j["params"] = {{"n", r.n}, {"d", r.d}, {"k_max", r.k_max}, {"trials", r.trials}};
  if (r.satisfiable) j["satisfiable"] = *r.satisfiable;
  j["outcomes"] = r.outcomes;
  j["narrow_histogram"] = r.narrow_histogram;
  j["aggregate"] = {{"successes", r.successes}, {"aborts", r.aborts},   {"p_hat", r.p_hat},
                    {"se", r.se},               {"ci99_low", r.ci_low}, {"ci99_high", r.ci_high},
                    {"bound", r.bound}};
  j["rule"] = "p_hat >= bound - 3*se";
  j["status"] = status_name(r.status);
  return j;
}

// ---------------------------------------------------------------------------

namespace {

double median(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[m]);
  return (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2;
}

}  // namespace

GrowthReport node_growth_experiment(const GrowthFamily& family,
                                    std::span<const std::size_t> n_values,
                                    std::size_t instances_per_n, std::uint64_t seed) {
  GrowthReport rep;
  rep.family = family;
  rep.seed = seed;
  rep.instances_per_n = instances_per_n;
  rep.threshold = std::log(char_root(family.d, static_cast<int>(family.k)).lambda) + kGrowthSlack;

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n : n_values) {
    GrowthPoint pt;
    pt.n = n;
    const auto m = static_cast<std::size_t>(round_half_up(family.nogoods_per_var * static_cast<double>(n)));
    std::vector<std::uint64_t> unsat_nodes;
    for (std::size_t i = 0; i < instances_per_n; ++i) {
      const auto inst =
          gen_uniform(n, family.d, family.k, m, derive_seed(derive_seed(seed, n), i));
      const auto stats = solve_dpll(inst);
      const bool unsat = stats.result == Verdict::Unsat;
      pt.nodes.push_back(stats.nodes);
      pt.unsat.push_back(unsat);
      if (unsat) unsat_nodes.push_back(stats.nodes);
    }
    if (!unsat_nodes.empty()) {
      pt.median_unsat_nodes = median(unsat_nodes);
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(*pt.median_unsat_nodes));
    }
    rep.points.push_back(std::move(pt));
  }

  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0) {
      rep.slope = sxy / sxx;
      rep.intercept = my - *rep.slope * mx;
    }
  }
  if (rep.slope) {
    rep.status = *rep.slope <= rep.threshold ? ExperimentStatus::Pass : ExperimentStatus::Fail;
  }
  return rep;
}

Json to_json(const GrowthReport& r) {
  Json j = header("bench", "growth", r.seed);
  j["params"] = {{"family", "uniform"},
                 {"d", r.family.d},
                 {"k", r.family.k},
                 {"nogoods_per_var", r.family.nogoods_per_var},
                 {"instances_per_n", r.instances_per_n}};
  Json trials = Json::array();
  for (const auto& pt : r.points) {
    Json p;
    p["n"] = pt.n;
    p["nodes"] = pt.nodes;
    Json unsat = Json::array();
    for (bool u : pt.unsat) unsat.push_back(u);
    p["unsat"] = unsat;
    if (pt.median_unsat_nodes) p["median_unsat_nodes"] = *pt.median_unsat_nodes;
    trials.push_back(p);
  }
  j["trials"] = trials;
  Json agg;
  if (r.slope) agg["slope"] = *r.slope;
  if (r.intercept) agg["intercept"] = *r.intercept;
  agg["threshold"] = r.threshold;
  j["aggregate"] = agg;
  j["rule"] = "slope <= ln(char_root(d,k)) + 0.05";
  j["status"] = status_name(r.status);
  return j;
}

// ---------------------------------------------------------------------------

CampaignReport verify_lemma2_campaign(std::span<const std::size_t> n_values,
                                      std::span<const int> d_values, std::size_t subsets,
                                      std::uint64_t seed) {
  CampaignReport rep;
  rep.kind = "lemma2";
  rep.seed = seed;
  std::uint64_t stream = 0;
  for (std::size_t n : n_values) {
    for (int d : d_values) {
      const std::uint64_t size = space_size(n, d);
      std::uint64_t failures = 0;
      for (std::size_t s = 0; s < subsets; ++s) {
        Rng rng = make_stream(seed, stream++);
        const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::vector<std::uint64_t> codes;
        for (std::uint64_t c = 0; c < size; ++c) {
          if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) codes.push_back(c);
        }
        if (codes.empty()) codes.push_back(uniform_int<std::uint64_t>(rng, 0, size - 1));
        const auto set = PointSet::from_codes(n, d, std::move(codes));
        const auto check = verify_lemma2(set);
        ++rep.checks;
        if (!check.holds) {
          ++failures;
          rep.counterexamples.push_back(
              {{"n", n}, {"d", d}, {"points", set.codes()}, {"lhs", to_string(check.lhs)},
               {"rhs", to_string(check.rhs)}});
        }
      }
      rep.failures += failures;
      rep.records.push_back({{"n", n}, {"d", d}, {"subsets", subsets}, {"failures", failures}});
    }
  }
  rep.status = rep.failures == 0 ? ExperimentStatus::Pass : ExperimentStatus::Fail;
  return rep;
}

CampaignReport verify_lemma1_campaign(std::span<const NamedInstance> corpus, std::size_t max_n) {
  CampaignReport rep;
  rep.kind = "lemma1";
  for (const auto& [name, inst] : corpus) {
    if (inst.num_vars() > max_n) continue;
    const auto solutions = enumerate_solutions(inst);
    std::uint64_t failures = 0;
    double min_margin = 0;
    bool first = true;
    for (const auto& sol : solutions.solutions) {
      const auto avg = avg_narrow_count_exhaustive(inst, sol.assignment, sol.isolation());
      ++rep.checks;
      const double bound = inst.k_max() == 0 ? 0.0
                                             : static_cast<double>(sol.isolation()) /
                                                   static_cast<double>(inst.k_max());
      const double margin = avg.mean - bound;
      if (first || margin < min_margin) min_margin = margin;
      first = false;
      if (!avg.meets_bound) {
        ++failures;
        rep.counterexamples.push_back({{"instance", name},
                                       {"assignment", sol.assignment},
                                       {"average", std::to_string(avg.exact.num) + "/" +
                                                       std::to_string(avg.exact.den)},
                                       {"j", sol.isolation()},
                                       {"k_max", inst.k_max()}});
      }
    }
    rep.failures += failures;
    Json rec = {{"instance", name},
                {"n", inst.num_vars()},
                {"d", inst.domain_size()},
                {"k_max", inst.k_max()},
                {"solutions", solutions.size()},
                {"failures", failures}};
    if (!first) rec["min_margin"] = min_margin;
    rep.records.push_back(rec);
  }
  rep.status = rep.failures == 0 ? ExperimentStatus::Pass : ExperimentStatus::Fail;
  return rep;
}

std::vector<NamedInstance> lemma1_corpus(std::size_t random_count, std::uint64_t seed) {
  auto corpus = structured_corpus();
  RandomCorpusLimits limits;
  limits.n_lo = 2;
  limits.n_hi = 7;
  limits.d_lo = 2;
  limits.d_hi = 3;
  limits.k_lo = 1;
  limits.k_hi = 3;
  for (auto& inst : random_corpus(random_count, seed, limits)) corpus.push_back(std::move(inst));
  return corpus;
}

Json to_json(const CampaignReport& r) {
  Json j = header("verify", r.kind, r.seed);
  j["trials"] = r.records;
  j["aggregate"] = {{"checks", r.checks}, {"failures", r.failures}};
  j["counterexamples"] = r.counterexamples;
  j["status"] = status_name(r.status);
  return j;
}

}  // namespace kcsp
