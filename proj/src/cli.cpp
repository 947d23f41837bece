#include "kcsp/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kcsp/analysis.hpp"
#include "kcsp/dpll.hpp"
#include "kcsp/generators.hpp"
#include "kcsp/harness.hpp"
#include "kcsp/oracle.hpp"
#include "kcsp/ppsz.hpp"
#include "kcsp/version.hpp"

namespace kcsp {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long long parse_ll(const std::string& tok) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw UsageError("not an integer: '" + tok + "'");
  }
  return v;
}

/// "A..B" or a single integer.
std::pair<long long, long long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_ll(text);
    return {v, v};
  }
  const auto lo = parse_ll(text.substr(0, dots));
  const auto hi = parse_ll(text.substr(dots + 2));
  if (lo > hi) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

/// "A..B", "a,b,c" or a single integer.
std::vector<long long> parse_list(const std::string& text) {
  std::vector<long long> out;
  if (text.find("..") != std::string::npos) {
    auto [lo, hi] = parse_range(text);
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_ll(tok));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> edges;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw UsageError("edge '" + tok + "' is not u-v");
    edges.push_back({static_cast<Var>(parse_ll(tok.substr(0, dash))),
                     static_cast<Var>(parse_ll(tok.substr(dash + 1)))});
  }
  return edges;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double elapsed_ms(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double, std::milli>(ns).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

// ---------------------------------------------------------------------------

struct Ctx {
  std::ostream& out;
  std::ostream& err;
};

struct GenFlags {
  GenSpec spec;
  std::string edges;
  std::string out_path;
};

void add_gen_common(CLI::App* sub, GenFlags& f) {
  sub->add_option("--seed", f.spec.seed, "Random seed");
  sub->add_option("--out", f.out_path, "Output instance file (default: stdout)");
}

int cmd_gen(const GenFlags& f, Ctx& ctx) {
  GenSpec spec = f.spec;
  if (spec.family == Family::Coloring) spec.edges = parse_edges(f.edges);
  emit(serialize_instance(generate(spec)), f.out_path, ctx.out);
  return kExitOk;
}

struct SolveFlags {
  std::string alg = "dpll";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_repeats;
  std::uint64_t cap = kDefaultCap;
  std::string stats_path;
  bool timing = false;
  std::string instance;
};

int cmd_solve(const SolveFlags& f, Ctx& ctx) {
  const auto inst = load_instance(f.instance);
  Json j;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = "solve";
  j["algorithm"] = f.alg;
  bool positive = false;
  std::chrono::nanoseconds elapsed{0};

  if (f.alg == "dpll") {
    const auto stats = solve_dpll(inst);
    positive = stats.result == Verdict::Sat;
    j["result"] = positive ? "SAT" : "UNSAT";
    if (positive) j["assignment"] = stats.assignment;
    j["nodes"] = stats.nodes;
    elapsed = stats.elapsed;
  } else if (f.alg == "ppsz") {
    PpszOptions opts;
    opts.seed = f.seed;
    opts.max_repeats = f.max_repeats;
    const auto stats = solve_ppsz(inst, opts);
    positive = stats.result == PpszResult::Sat;
    j["seed"] = stats.seed;
    j["rng"] = kRngName;
    j["result"] = positive ? "SAT" : "FAILURE";
    if (positive) j["assignment"] = stats.assignment;
    j["iterations_used"] = stats.iterations_used;
    j["narrow_histogram"] = stats.narrow_histogram;
    elapsed = stats.elapsed;
  } else {
    const auto start = std::chrono::steady_clock::now();
    const auto sol = first_solution(inst, f.cap);
    elapsed = std::chrono::steady_clock::now() - start;
    positive = sol.has_value();
    j["result"] = positive ? "SAT" : "UNSAT";
    if (positive) j["assignment"] = *sol;
  }
  if (f.timing) j["elapsed_ms"] = elapsed_ms(elapsed);

  emit(dump(j), f.stats_path, ctx.out);
  if (!f.stats_path.empty()) ctx.out << j["result"].get<std::string>() << '\n';
  return positive ? kExitOk : kExitNegative;
}

struct OracleFlags {
  std::uint64_t cap = kDefaultCap;
  std::string out_path;
  std::string instance;
};

int cmd_oracle(const OracleFlags& f, Ctx& ctx) {
  const auto inst = load_instance(f.instance);
  const auto set = enumerate_solutions(inst, f.cap);
  Json j;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = "oracle";
  j["n"] = inst.num_vars();
  j["d"] = inst.domain_size();
  j["k_max"] = inst.k_max();
  j["solution_count"] = set.size();
  Json sols = Json::array();
  for (const auto& s : set.solutions) {
    sols.push_back({{"assignment", s.assignment}, {"critical", s.critical}, {"j", s.isolation()}});
  }
  j["solutions"] = sols;
  if (!set.empty()) {
    const auto check = verify_lemma2(set.as_point_set(), f.cap);
    j["lemma2"] = {{"lhs", to_string(check.lhs)}, {"rhs", to_string(check.rhs)},
                   {"holds", check.holds}};
  }
  emit(dump(j), f.out_path, ctx.out);
  return set.empty() ? kExitNegative : kExitOk;
}

struct VerifyFlags {
  std::uint64_t seed = 0;
  std::string out_path;
  // lemma2
  std::string n_values = "2..4";
  std::string d_values = "2..4";
  std::size_t subsets = 1000;
  // lemma1
  std::size_t random = 40;
  std::size_t max_n = 7;
  std::vector<std::string> instances;
};

int cmd_verify(const std::string& kind, const VerifyFlags& f, Ctx& ctx) {
  CampaignReport rep;
  if (kind == "lemma2") {
    std::vector<std::size_t> ns;
    std::vector<int> ds;
    for (auto v : parse_list(f.n_values)) ns.push_back(static_cast<std::size_t>(v));
    for (auto v : parse_list(f.d_values)) ds.push_back(static_cast<int>(v));
    rep = verify_lemma2_campaign(ns, ds, f.subsets, f.seed);
  } else {
    std::vector<NamedInstance> corpus;
    if (f.instances.empty()) {
      corpus = lemma1_corpus(f.random, f.seed);
    } else {
      for (const auto& path : f.instances) corpus.push_back({path, load_instance(path)});
    }
    rep = verify_lemma1_campaign(corpus, f.max_n);
    rep.seed = f.seed;
  }
  emit(dump(to_json(rep)), f.out_path, ctx.out);
  return rep.status == ExperimentStatus::Fail ? kExitNegative : kExitOk;
}

struct AnalyzeFlags {
  std::string d_range;
  std::string k_range;
  std::optional<double> alpha;
  double epsilon = 0.01;
  std::optional<std::size_t> n;
  std::string out_path;
};

int cmd_analyze(const AnalyzeFlags& f, Ctx& ctx) {
  const auto [d_lo, d_hi] = parse_range(f.d_range);
  const auto [k_lo, k_hi] = parse_range(f.k_range);
  if (f.alpha.has_value() != f.n.has_value()) {
    throw UsageError("--alpha and --n must be given together");
  }
  const auto rows = bound_table(static_cast<int>(d_lo), static_cast<int>(d_hi),
                                static_cast<int>(k_lo), static_cast<int>(k_hi));
  std::ostringstream csv;
  csv << "d,k,lambda,dpll_base,ppsz_base,smaller,ln_dpll_var_domain,ln_ppsz_var_domain,"
         "ln_trivial_var_domain\n";
  for (const auto& r : rows) {
    csv << r.d << ',' << r.k << ',' << fmt(r.lambda) << ',' << fmt(r.dpll_base) << ','
        << fmt(r.ppsz_base) << ',' << r.smaller << ',';
    if (f.alpha) {
      const double nn = static_cast<double>(*f.n);
      csv << fmt(ln_bound_variable_domain_dpll(*f.n, *f.alpha, f.epsilon)) << ','
          << fmt(ln_bound_variable_domain_ppsz(*f.n, *f.alpha, static_cast<std::size_t>(r.k)))
          << ',' << fmt(*f.alpha * nn * std::log(nn));
    } else {
      csv << ",,";
    }
    csv << '\n';
  }
  emit(csv.str(), f.out_path, ctx.out);
  return kExitOk;
}

struct BenchFlags {
  std::uint64_t seed = 0;
  std::string out_path;
  // prob
  std::uint64_t trials = 100000;
  std::uint64_t cap = kDefaultCap;
  std::string instance;
  // growth
  int d = 2;
  std::size_t k = 2;
  double ratio = 4;
  std::string n_values = "8..14";
  std::size_t per_n = 30;
};

int cmd_bench(const std::string& kind, const BenchFlags& f, Ctx& ctx) {
  ExperimentStatus status;
  if (kind == "prob") {
    const auto rep = estimate_iteration_success(load_instance(f.instance), f.trials, f.seed, f.cap);
    emit(dump(to_json(rep)), f.out_path, ctx.out);
    status = rep.status;
  } else {
    std::vector<std::size_t> ns;
    for (auto v : parse_list(f.n_values)) ns.push_back(static_cast<std::size_t>(v));
    const auto rep = node_growth_experiment({f.d, f.k, f.ratio}, ns, f.per_n, f.seed);
    emit(dump(to_json(rep)), f.out_path, ctx.out);
    status = rep.status;
  }
  return status == ExperimentStatus::Fail ? kExitNegative : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-CSP nogood solvers, brute-force oracles and bound checks", "kcsp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Ctx ctx{out, err};

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file")->require_subcommand(1);
  GenFlags gf;
  auto* g_uniform = gen->add_subcommand("uniform", "m random arity-k nogoods");
  g_uniform->add_option("--n", gf.spec.n)->required();
  g_uniform->add_option("--d", gf.spec.d)->required();
  g_uniform->add_option("--k", gf.spec.k)->required();
  g_uniform->add_option("--m", gf.spec.m)->required();
  auto* g_rb = gen->add_subcommand("model-rb", "Model RB with d = round(n^alpha)");
  g_rb->add_option("--n", gf.spec.n)->required();
  g_rb->add_option("--alpha", gf.spec.alpha)->required();
  g_rb->add_option("--r", gf.spec.r)->required();
  g_rb->add_option("--p", gf.spec.p)->required();
  g_rb->add_option("--k", gf.spec.k)->required();
  auto* g_col = gen->add_subcommand("coloring", "Graph d-coloring");
  g_col->add_option("--vertices", gf.spec.num_vertices)->required();
  g_col->add_option("--edges", gf.edges, "Edge list u-v,u-v,...")->required();
  g_col->add_option("--d", gf.spec.d)->required();
  auto* g_latin = gen->add_subcommand("latin", "Full N x N Latin square");
  g_latin->add_option("--order,-N", gf.spec.order)->required();
  auto* g_queens = gen->add_subcommand("nqueens", "N-queens, one variable per row");
  g_queens->add_option("--order,-N", gf.spec.order)->required();
  for (auto* s : {g_uniform, g_rb, g_col, g_latin, g_queens}) add_gen_common(s, gf);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  SolveFlags sf;
  solve->add_option("--alg", sf.alg)->check(CLI::IsMember({"dpll", "ppsz", "brute"}));
  solve->add_option("--seed", sf.seed);
  solve->add_option("--max-repeats", sf.max_repeats);
  solve->add_option("--cap", sf.cap, "Search-space cap for --alg brute");
  solve->add_option("--stats", sf.stats_path, "Write stats JSON here instead of stdout");
  solve->add_flag("--timing", sf.timing, "Include elapsed_ms (output no longer reproducible)");
  solve->add_option("instance", sf.instance)->required()->check(CLI::ExistingFile);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Enumerate solutions and isolation degrees");
  OracleFlags of;
  oracle->add_option("--cap", of.cap);
  oracle->add_option("--out", of.out_path);
  oracle->add_option("instance", of.instance)->required()->check(CLI::ExistingFile);

  // verify
  auto* verify = app.add_subcommand("verify", "Exact lemma campaigns")->require_subcommand(1);
  VerifyFlags vf;
  auto* v_l1 = verify->add_subcommand("lemma1", "Narrow-choice average vs j/k");
  v_l1->add_option("--random", vf.random, "Random corpus size when no files are given");
  v_l1->add_option("--max-n", vf.max_n);
  v_l1->add_option("instances", vf.instances)->check(CLI::ExistingFile);
  auto* v_l2 = verify->add_subcommand("lemma2", "sum d^J >= d^n on random subsets");
  v_l2->add_option("--n-values", vf.n_values);
  v_l2->add_option("--d-values", vf.d_values);
  v_l2->add_option("--subsets", vf.subsets);
  for (auto* s : {v_l1, v_l2}) {
    s->add_option("--seed", vf.seed);
    s->add_option("--out", vf.out_path);
  }

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Bound table as CSV");
  AnalyzeFlags af;
  analyze->add_option("--d", af.d_range, "Domain sizes A..B")->required();
  analyze->add_option("--k", af.k_range, "Arities A..B")->required();
  analyze->add_option("--alpha", af.alpha);
  analyze->add_option("--epsilon", af.epsilon);
  analyze->add_option("--n", af.n);
  analyze->add_option("--out", af.out_path);

  // bench
  auto* bench = app.add_subcommand("bench", "Statistical experiments")->require_subcommand(1);
  BenchFlags bf;
  auto* b_prob = bench->add_subcommand("prob", "Per-iteration success rate vs lower bound");
  b_prob->add_option("--trials", bf.trials);
  b_prob->add_option("--cap", bf.cap);
  b_prob->add_option("instance", bf.instance)->required()->check(CLI::ExistingFile);
  auto* b_growth = bench->add_subcommand("growth", "DPLL node-count growth rate");
  b_growth->add_option("--d", bf.d);
  b_growth->add_option("--k", bf.k);
  b_growth->add_option("--ratio", bf.ratio, "Nogoods per variable");
  b_growth->add_option("--n-values", bf.n_values);
  b_growth->add_option("--per-n", bf.per_n);
  for (auto* s : {b_prob, b_growth}) {
    s->add_option("--seed", bf.seed);
    s->add_option("--out", bf.out_path);
  }

  std::vector<std::string> argv_store{"kcsp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(e.what()) + "\n" : app.help());
      return kExitOk;
    }
    err << "kcsp: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (g_uniform->parsed()) gf.spec.family = Family::Uniform;
      if (g_rb->parsed()) gf.spec.family = Family::ModelRb;
      if (g_col->parsed()) gf.spec.family = Family::Coloring;
      if (g_latin->parsed()) gf.spec.family = Family::Latin;
      if (g_queens->parsed()) gf.spec.family = Family::NQueens;
      return cmd_gen(gf, ctx);
    }
    if (solve->parsed()) return cmd_solve(sf, ctx);
    if (oracle->parsed()) return cmd_oracle(of, ctx);
    if (verify->parsed()) return cmd_verify(v_l1->parsed() ? "lemma1" : "lemma2", vf, ctx);
    if (analyze->parsed()) return cmd_analyze(af, ctx);
    if (bench->parsed()) return cmd_bench(b_prob->parsed() ? "prob" : "growth", bf, ctx);
  } catch (const UsageError& e) {
    err << "kcsp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "kcsp: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const InstanceError& e) {
    err << "kcsp: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    // Generator and experiment parameters outside their valid ranges.
    err << "kcsp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "kcsp: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace kcsp
