#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcx/covariance.hpp"
#include "rcx/errors.hpp"
#include "rcx/morse.hpp"
#include "rcx/pipeline.hpp"
#include "rcx/stein.hpp"
#include "rcx/verify.hpp"
#include "rcx/version.hpp"

namespace {

using rcx::Json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Options shared by every subcommand; unset fields stay out of the RunSpec.
struct Args {
  std::string kind = "clique";
  int n = 0;
  int d = 1;
  double p = 0.5;
  int t_size = 0;
  std::vector<int> t;
  std::optional<std::uint64_t> seed;
  int replicates = 1000;
  std::string standardization = "analytic";
  int threads = 1;
  std::string format = "json";
  std::string out = "-";

  std::string theorem = "clique";
  double smooth_b = -1.0;
  std::vector<int> k;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> sizes;

  std::string suite = "all";
  int n_max = 5;
  int graphs = 1000;
  int samples = 10000;
  int rate_replicates = 100000;
  bool timing = false;

  std::string graph_file;
  int max_size = 0;
  int morse_n = 12;

  int quantiles = 9;
  int halfspaces = 16;
};

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("RCX_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos, 0);
    if (pos != std::string(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw rcx::DomainError("RCX_SEED must be an unsigned integer");
  }
}

std::uint64_t seed_or(const Args& a, std::uint64_t fallback) {
  if (a.seed) return *a.seed;
  if (auto e = env_seed()) return *e;
  return fallback;
}

rcx::StatisticSpec make_spec(const Args& a) {
  switch (rcx::parse_kind(a.kind)) {
    case rcx::StatisticKind::critical: return rcx::StatisticSpec::critical(a.n, a.d);
    case rcx::StatisticKind::clique: return rcx::StatisticSpec::clique(a.n, a.d);
    case rcx::StatisticKind::link:
      if (!a.t.empty()) return rcx::StatisticSpec::link(a.n, a.d, rcx::Simplex(a.t));
      return rcx::StatisticSpec::link(a.n, a.d, a.t_size);
  }
  throw rcx::DomainError("unknown kind");
}

void emit(const Json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw rcx::DomainError("cannot open output file " + path);
  f << j.dump(2) << '\n';
}

Json envelope(const std::string& subcommand, Json spec) {
  Json j;
  j["version"] = rcx::kVersion;
  spec["subcommand"] = subcommand;
  j["run_spec"] = std::move(spec);
  return j;
}

int cmd_moments(const Args& a) {
  const auto spec = make_spec(a);
  rcx::require(a.p >= 0.0 && a.p <= 1.0, "p must lie in [0,1]");
  rcx::EmpiricalSource src;
  src.replicates = a.replicates;
  src.seed = seed_or(a, 1);
  src.threads = a.threads;
  const auto report = rcx::statistic_cov_matrix(spec, a.p, src);
  Json rs = {{"kind", a.kind}, {"params", rcx::spec_params(spec, a.p)}};
  if (report.off_diagonal == rcx::Provenance::empirical && spec.kind == rcx::StatisticKind::critical)
    rs["empirical"] = {{"replicates", src.replicates}, {"seed", src.seed}};
  Json j = envelope("moments", std::move(rs));
  j["report"] = report.to_json();
  emit(j, a.out);
  return kExitOk;
}

int cmd_bounds(const Args& a) {
  Json rs = {{"theorem", a.theorem}};
  std::vector<rcx::BoundReport> out;
  auto pair = [&](const rcx::BoundPair& b) {
    out.push_back(b.smooth);
    out.push_back(b.convex);
  };
  const std::string& th = a.theorem;
  if (th == "clique") {
    rs.update({{"n", a.n}, {"d", a.d}, {"p", a.p}});
    pair(rcx::clique_bound(a.n, a.d, a.p));
  } else if (th == "link") {
    rs.update({{"n", a.n}, {"d", a.d}, {"p", a.p}, {"t_size", a.t_size}});
    pair(rcx::link_bound(a.n, a.t_size, a.d, a.p));
  } else if (th == "crit") {
    rs.update({{"n", a.n}, {"d", a.d}, {"p", a.p}});
    pair(rcx::crit_bound(a.n, a.d, a.p));
  } else if (th == "convex") {
    rcx::require(a.smooth_b >= 0.0, "convex: --smooth-b is required and must be >= 0");
    rs.update({{"d", a.d}, {"smooth_b", a.smooth_b}});
    out.push_back(rcx::convex_bound(a.d, a.smooth_b));
  } else if (th == "ustat" || th == "ustat-no-x") {
    rcx::require(a.beta.size() == 1, th + ": --beta takes one value");
    rs.update({{"k", a.k}, {"alpha", a.alpha}, {"beta", a.beta[0]}, {"n", a.n}});
    pair(th == "ustat" ? rcx::ustat_bound(a.k, a.alpha, a.beta[0], a.n)
                       : rcx::ustat_no_x_bound(a.k, a.alpha, a.beta[0], a.n));
  } else if (th == "uniform") {
    const auto d = static_cast<std::size_t>(a.d);
    rcx::require(a.alpha.size() == d * d, "uniform: --alpha takes d*d values, row major");
    Eigen::MatrixXd alpha(a.d, a.d);
    for (int i = 0; i < a.d; ++i)
      for (int j = 0; j < a.d; ++j) alpha(i, j) = a.alpha[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
    rs.update({{"d", a.d}, {"sizes", a.sizes}, {"alpha", a.alpha}, {"beta", a.beta}});
    auto r = rcx::uniform_bound(a.d, a.sizes, alpha, a.beta);
    out.push_back(r);
    out.push_back(rcx::convex_from(r, a.d));
  } else if (th == "generic") {
    rs.update({{"n", a.n}, {"d", a.d}, {"p", a.p}});
    const auto inst = rcx::enumerate_critical_instance(a.n, a.d, a.p);
    auto r = rcx::generic_bound(inst.instance);
    out.push_back(r);
    out.push_back(rcx::convex_from(r, a.d));
  } else {
    throw rcx::DomainError("unknown theorem " + th);
  }
  Json j = envelope("bounds", std::move(rs));
  Json arr = Json::array();
  for (const auto& b : out) arr.push_back(b.to_json());
  j["bounds"] = std::move(arr);
  emit(j, a.out);
  return kExitOk;
}

int cmd_simulate(const Args& a) {
  rcx::require(a.format == "json" || a.format == "csv", "format must be json or csv");
  rcx::MCConfig cfg;
  cfg.stat = make_spec(a);
  cfg.p = a.p;
  cfg.replicates = a.replicates;
  cfg.master_seed = seed_or(a, 1);
  cfg.standardization = rcx::parse_standardization(a.standardization);
  cfg.threads = a.threads;
  cfg.validate();
  rcx::PipelineOptions opt;
  opt.convex.quantiles = a.quantiles;
  opt.convex.halfspaces = a.halfspaces;
  const auto r = rcx::run_pipeline(cfg, opt);

  Json rs = cfg.to_json();
  rs["convex_family"] = {{"quantiles", a.quantiles}, {"halfspaces", a.halfspaces}};
  if (a.format == "csv") {
    std::ostringstream os;
    os << "# rcx " << rcx::kVersion << '\n';
    os << "# run_spec " << Json(rs).dump() << '\n';
    r.write_csv(os);
    if (a.out == "-") {
      std::cout << os.str();
    } else {
      std::ofstream f(a.out, std::ios::binary);
      if (!f) throw rcx::DomainError("cannot open output file " + a.out);
      f << os.str();
    }
    return kExitOk;
  }
  Json j = envelope("simulate", std::move(rs));
  j["result"] = r.to_json();
  emit(j, a.out);
  return kExitOk;
}

int cmd_verify(const Args& a) {
  static const std::vector<std::string> all = {"oracle",       "morse-equivalence", "acyclicity",
                                               "worked-example", "spot-values",       "rate-clique",
                                               "rate-link",    "rate-critical",     "variance-order",
                                               "truncation",   "degenerate"};
  std::vector<std::string> suites;
  if (a.suite == "all")
    suites = all;
  else
    suites = {a.suite};
  rcx::RateOptions ro;
  ro.replicates = a.rate_replicates;
  ro.seed = seed_or(a, ro.seed);
  ro.threads = a.threads;

  Json rs = {{"suite", a.suite}};
  Json results = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    rcx::SuiteResult r;
    if (s == "oracle") {
      rcx::require(a.n_max >= 2 && a.n_max <= rcx::kMaxExhaustiveVertices, "--n-max must lie in [2,6]");
      rs["n_max"] = a.n_max;
      r = rcx::verify_oracle(a.n_max);
    } else if (s == "morse-equivalence" || s == "acyclicity") {
      rcx::require(a.graphs >= 0 && a.morse_n >= 1, "--graphs must be >= 0 and --n >= 1");
      const auto seed = seed_or(a, 1);
      rs.update({{"graphs", a.graphs}, {"n", a.morse_n}, {"seed", seed}});
      r = s == "acyclicity" ? rcx::verify_acyclicity(a.graphs, a.morse_n, seed)
                            : rcx::verify_morse_equivalence(a.graphs, a.morse_n, seed);
    } else if (s == "worked-example" || s == "figure2") {
      r = rcx::verify_worked_example();
    } else if (s == "spot-values") {
      r = rcx::verify_spot_values();
    } else if (s == "rate-clique" || s == "rate-link") {
      rs.update({{"replicates", ro.replicates}, {"seed", ro.seed}});
      r = s == "rate-clique" ? rcx::verify_clique_rate(ro) : rcx::verify_link_rate(ro);
    } else if (s == "rate-critical") {
      r = rcx::verify_crit_rate();
    } else if (s == "variance-order") {
      r = rcx::verify_variance_order();
    } else if (s == "truncation") {
      const auto seed = seed_or(a, 7);
      rs.update({{"samples", a.samples}, {"truncation_seed", seed}});
      r = rcx::verify_truncation(a.samples, seed);
    } else if (s == "degenerate") {
      r = rcx::verify_degenerate(seed_or(a, 11));
    } else {
      throw rcx::DomainError("unknown suite " + s);
    }
    ok = ok && r.ok();
    results.push_back(r.to_json(a.timing));
  }
  Json j = envelope("verify", std::move(rs));
  j["ok"] = ok;
  j["suites"] = std::move(results);
  emit(j, a.out);
  return ok ? kExitOk : kExitFail;
}

std::vector<int> as_vector(const rcx::Simplex& s) { return {s.vertices().begin(), s.vertices().end()}; }

Json simplex_list(const std::vector<rcx::Simplex>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(as_vector(s));
  return a;
}

int cmd_morse_demo(const Args& a) {
  rcx::Graph g = rcx::worked_example_graph();
  Json rs = Json::object();
  if (!a.graph_file.empty()) {
    std::ifstream f(a.graph_file);
    if (!f) throw rcx::DomainError("cannot open graph file " + a.graph_file);
    g = rcx::read_graph(f);
    rs["graph_file"] = a.graph_file;
  } else {
    rs["graph"] = "worked-example";
  }
  const int max_size = a.max_size > 0 ? a.max_size : g.order();
  rs["max_size"] = max_size;
  const rcx::Matching m = rcx::lex_matching(g, max_size);

  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  Json pairs = Json::array();
  for (const auto& [f, c] : m.pairs()) pairs.push_back({as_vector(f), as_vector(c)});
  std::vector<rcx::Simplex> critical;
  for (int v : rcx::critical_vertices(g)) critical.push_back(rcx::Simplex{v});
  rcx::for_each_clique(g, max_size, [&](std::span<const int> s) {
    if (s.size() >= 2 && !m.contains(rcx::Simplex::from_sorted(s))) critical.push_back(rcx::Simplex::from_sorted(s));
  });

  Json j = envelope("morse-demo", std::move(rs));
  j["n"] = g.order();
  j["edges"] = std::move(edges);
  j["pairs"] = std::move(pairs);
  j["critical"] = simplex_list(critical);
  // Counts are exact only for sizes whose cofaces fit under max_size.
  const int d = std::min(max_size - 2, g.order() - 1);
  if (d >= 1) {
    j["critical_counts_direct"] = rcx::critical_counts_direct(g, d).counts;
    j["critical_counts_formula"] = rcx::critical_counts_formula(g, d).counts;
  }
  j["acyclic"] = rcx::verify_acyclic(m, g);
  emit(j, a.out);
  return kExitOk;
}

void add_statistic(CLI::App* c, Args& a) {
  c->add_option("--kind", a.kind, "critical | link | clique")->check(CLI::IsMember({"critical", "link", "clique"}));
  c->add_option("--n", a.n, "vertex count")->required();
  c->add_option("--d", a.d, "number of components");
  c->add_option("--p", a.p, "edge probability");
  c->add_option("--t-size", a.t_size, "link: |t|, t = {1..t_size}");
  c->add_option("--t", a.t, "link: explicit simplex t")->delimiter(',');
}

void add_common(CLI::App* c, Args& a) {
  c->add_option("--seed", a.seed, "master seed (default: RCX_SEED, then a fixed value)");
  c->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
  c->add_option("--out", a.out, "output path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal approximation for clique-complex count statistics"};
  app.set_version_flag("--version", std::string(rcx::kVersion));
  app.require_subcommand(1);
  Args a;

  auto* moments = app.add_subcommand("moments", "mean vector and covariance of a count statistic");
  add_statistic(moments, a);
  add_common(moments, a);
  moments->add_option("--replicates", a.replicates, "samples for empirical critical off-diagonals");

  auto* bounds = app.add_subcommand("bounds", "evaluate a normal-approximation bound");
  bounds->add_option("--theorem", a.theorem)
      ->check(CLI::IsMember({"clique", "link", "crit", "convex", "ustat", "ustat-no-x", "uniform", "generic"}));
  bounds->add_option("--n", a.n);
  bounds->add_option("--d", a.d);
  bounds->add_option("--p", a.p);
  bounds->add_option("--t-size", a.t_size);
  bounds->add_option("--smooth-b", a.smooth_b, "smooth-class B for the convex transfer");
  bounds->add_option("--k", a.k, "U-statistic orders")->delimiter(',');
  bounds->add_option("--alpha", a.alpha, "variance scales; d*d row-major for uniform")->delimiter(',');
  bounds->add_option("--beta", a.beta, "beta; d^3 values for uniform")->delimiter(',');
  bounds->add_option("--sizes", a.sizes, "uniform: index-set sizes")->delimiter(',');
  bounds->add_option("--out", a.out);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo samples and discrepancy estimates");
  add_statistic(simulate, a);
  add_common(simulate, a);
  simulate->add_option("--replicates", a.replicates)->check(CLI::Range(2, 1 << 30));
  simulate->add_option("--standardization", a.standardization)->check(CLI::IsMember({"analytic", "empirical"}));
  simulate->add_option("--format", a.format)->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--quantiles", a.quantiles, "convex family: quantile levels per axis");
  simulate->add_option("--halfspaces", a.halfspaces, "convex family: random halfspaces");

  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("--suite", a.suite)
      ->check(CLI::IsMember({"all", "oracle", "morse-equivalence", "acyclicity", "worked-example", "figure2", "spot-values",
                             "rate-clique", "rate-link", "rate-critical", "variance-order", "truncation",
                             "degenerate"}));
  verify->add_option("--n-max", a.n_max);
  verify->add_option("--graphs", a.graphs);
  verify->add_option("--n", a.morse_n, "vertices of the random Morse corpus");
  verify->add_option("--samples", a.samples, "truncation samples");
  verify->add_flag("--timing", a.timing, "include wall-clock seconds");
  verify->add_option("--replicates", a.rate_replicates, "rate-check replicates");
  add_common(verify, a);

  auto* demo = app.add_subcommand("morse-demo", "lexicographical matching of one graph");
  demo->add_option("--graph", a.graph_file, "graph file: n, then one 'i j' line per edge");
  demo->add_option("--max-size", a.max_size, "largest clique size to match (default n)");
  demo->add_option("--out", a.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*moments) return cmd_moments(a);
    if (*bounds) return cmd_bounds(a);
    if (*simulate) return cmd_simulate(a);
    if (*verify) return cmd_verify(a);
    if (*demo) return cmd_morse_demo(a);
  } catch (const rcx::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rcx::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rcx::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
