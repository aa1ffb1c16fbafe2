// Command-line front end: every library module as a subcommand.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypertree/asymptotics.hpp"
#include "hypertree/cycles.hpp"
#include "hypertree/error.hpp"
#include "hypertree/exact_enum.hpp"
#include "hypertree/io.hpp"
#include "hypertree/laplace.hpp"
#include "hypertree/monte_carlo.hpp"
#include "hypertree/sampling.hpp"
#include "hypertree/threshold.hpp"
#include "hypertree/verify.hpp"

using namespace hypertree;
using Json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitAcceptance = 3;

struct RunConfig {
  int r = 0;
  int s = 0;
  std::int64_t n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t trials = 1000;
  int jmax = 3;
  std::string out;
  std::string format = "json";
  std::uint64_t budget = 0;  // 0 = per-command default
};

double d(long double x) { return static_cast<double>(x); }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ValidationError("cannot open output file " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2)); }

std::uint64_t budget_or(const RunConfig& cfg, std::uint64_t fallback) {
  return cfg.budget == 0 ? fallback : cfg.budget;
}

void require_rs(const RunConfig& cfg) {
  if (cfg.r < 2 || cfg.s < 2) throw ValidationError("--r and --s must both be given and >= 2");
}

ModelParams need_params(const RunConfig& cfg) {
  require_rs(cfg);
  if (cfg.n < 1) throw ValidationError("--n must be given and >= 1");
  return validate_params(cfg.r, cfg.s, cfg.n);
}

Json params_json(const ModelParams& p) {
  return Json{{"r", p.r}, {"s", p.s}, {"n", p.n}, {"d1", p.rn_divisible}, {"d2", p.tree_divisible},
              {"admissible", p.admissible()}, {"failures", p.failures()}, {"trivial_2_2", p.is_graph_2_2()}};
}

int cmd_params(const RunConfig& cfg) {
  const ModelParams p = need_params(cfg);
  emit_json(cfg, params_json(p));
  return p.admissible() ? kExitOk : kExitValidation;
}

int cmd_sample(const RunConfig& cfg, bool simple, std::int64_t max_rejects) {
  const ModelParams p = need_params(cfg);
  Json j{{"params", params_json(p)}, {"seed", cfg.seed}};
  if (simple) {
    std::int64_t rejections = 0;
    const Hypergraph h = sample_simple_hypergraph(p, cfg.seed, max_rejects, &rejections);
    j["hypergraph"] = io::to_json(h);
    j["rejections"] = rejections;
  } else {
    const Configuration c = sample_configuration(p, cfg.seed);
    const Hypergraph h = project(c);
    j["configuration"] = io::to_json(c);
    j["hypergraph"] = io::to_json(h);
    j["simple"] = is_simple(h);
  }
  emit_json(cfg, j);
  return kExitOk;
}

Json census_json(const CycleCensus& c) {
  Json counts = Json::object(), overlaps = Json::object();
  for (auto [j, v] : c.counts) counts[std::to_string(j)] = v;
  for (auto [k, v] : c.overlaps) overlaps[std::to_string(k)] = v;
  return Json{{"counts", counts}, {"overlaps", overlaps}};
}

int cmd_census(const RunConfig& cfg, const std::string& input) {
  Json j;
  if (!input.empty()) {
    std::ifstream f(input);
    if (!f) throw ValidationError("cannot open " + input);
    const Json in = Json::parse(f);
    if (in.contains("parts")) {
      const Configuration c = io::configuration_from_json(in);
      j = census_json(census_cycles(c, cfg.jmax));
      const Hypergraph h = project(c);
      j["simple"] = is_simple(h);
      j["connected"] = is_connected(h);
    } else {
      const Hypergraph h = io::hypergraph_from_json(in.contains("hypergraph") ? in["hypergraph"] : in);
      j = census_json(census_cycles(h, cfg.jmax));
      j["simple"] = is_simple(h);
      j["connected"] = is_connected(h);
      j["spanning_trees"] = count_spanning_trees(h, budget_or(cfg, kDefaultTreeBudget));
    }
  } else {
    const ModelParams p = need_params(cfg);
    const Configuration c = sample_configuration(p, cfg.seed);
    const Hypergraph h = project(c);
    j = census_json(census_cycles(c, cfg.jmax));
    j["params"] = params_json(p);
    j["seed"] = cfg.seed;
    j["simple"] = is_simple(h);
    j["connected"] = is_connected(h);
    const auto tree = has_spanning_tree(h, budget_or(cfg, kDefaultTreeBudget));
    j["has_spanning_tree"] = tree ? Json(*tree) : Json("censored");
  }
  j["jmax"] = cfg.jmax;
  emit_json(cfg, j);
  return kExitOk;
}

int cmd_exact(const RunConfig& cfg, bool brute) {
  const ModelParams p = need_params(cfg);
  require_admissible(p);
  const ExactQ ey = exact_expected_Y(p);
  const SecondMoment m2 = exact_second_moment(p, MomentMode::Exact);
  Json j{{"params", params_json(p)},
         {"EY", to_string(ey)},
         {"log_EY", d(log_expected_Y(p))},
         {"log_EY2", d(m2.log_value)},
         {"terms", m2.terms}};
  if (m2.exact) j["EY2"] = to_string(*m2.exact);
  if (brute) {
    const std::uint64_t b = budget_or(cfg, kDefaultEnumBudget);
    j["brute_EY"] = to_string(brute_moments(p, {}, 1, b));
    j["brute_EY2"] = to_string(brute_moments(p, {}, 2, b));
  }
  emit_json(cfg, j);
  return kExitOk;
}

int cmd_moments(const RunConfig& cfg, std::size_t count) {
  require_rs(cfg);
  const std::vector<std::int64_t> ladder =
      cfg.n > 0 ? std::vector<std::int64_t>{cfg.n} : admissible_ladder(cfg.r, cfg.s, count);
  const bool trivial = cfg.r == 2 && cfg.s == 2;
  const long double limit = trivial ? NAN : second_moment_ratio(cfg.r, cfg.s);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,log_EY,log_EY_asymptotic,log_EY2,ratio,ratio_limit\n";
  for (std::int64_t n : ladder) {
    const ModelParams p = validate_params(cfg.r, cfg.s, n);
    require_admissible(p);
    const long double ley = log_expected_Y(p);
    const long double lasym = trivial ? NAN : log_asymptotic_EY(p);
    const SecondMoment m2 = exact_second_moment(p, MomentMode::LogFloat);
    const long double ratio = std::exp(m2.log_value - 2 * ley);
    rows.push_back({{"n", n}, {"log_EY", d(ley)}, {"log_EY_asymptotic", d(lasym)},
                    {"log_EY2", d(m2.log_value)}, {"ratio", d(ratio)}});
    csv << n << ',' << io::format_ld(ley) << ',' << io::format_ld(lasym) << ',' << io::format_ld(m2.log_value)
        << ',' << io::format_ld(ratio) << ',' << io::format_ld(limit) << '\n';
  }
  if (cfg.format == "csv") {
    emit(cfg, csv.str());
  } else {
    emit_json(cfg, Json{{"r", cfg.r}, {"s", cfg.s}, {"ratio_limit", d(limit)}, {"rows", rows}});
  }
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg) {
  if (cfg.s < 2) throw ValidationError("--s must be >= 2");
  Json j{{"s", cfg.s}};
  if (cfg.s >= 5) {
    const ThresholdReport rep = rho(cfg.s);
    j.update({{"rho", d(rep.rho)}, {"rho_minus", d(rep.rho_minus)}, {"rho_plus", d(rep.rho_plus)},
              {"expansion", d(rep.expansion)}, {"residual", d(rep.residual)},
              {"bracket", {d(rep.bracket.first), d(rep.bracket.second)}}, {"iterations", rep.iterations}});
  }
  if (cfg.r >= 2) {
    j["r"] = cfg.r;
    j["L"] = d(threshold_L(cfg.r, cfg.s));
    j["phase"] = phase_name(classify(cfg.r, cfg.s));
  }
  emit_json(cfg, j);
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg, int lo, int hi, bool full) {
  auto rows = table1(lo, hi);
  if (!full) {
    for (auto& r : rows) {
      r.rho_minus = round_half_up(r.rho_minus, 3);
      r.rho = round_half_up(r.rho, 3);
      r.rho_plus = round_half_up(r.rho_plus, 3);
    }
  }
  if (cfg.format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back({{"s", r.s}, {"rho_minus", d(r.rho_minus)}, {"rho", d(r.rho)}, {"rho_plus", d(r.rho_plus)}});
    emit_json(cfg, j);
  } else {
    std::ostringstream os;
    io::write_table1_csv(os, rows, full ? -1 : 3);
    emit(cfg, os.str());
  }
  return kExitOk;
}

int cmd_table2(const RunConfig& cfg, int lo, int hi, bool full) {
  auto rows = table2(lo, hi);
  if (!full) {
    for (auto& r : rows) {
      r.L_at_rho_minus = round_significant(r.L_at_rho_minus, 2);
      r.L_at_rho_plus = round_significant(r.L_at_rho_plus, 2);
    }
  }
  if (cfg.format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back({{"s", r.s}, {"L_at_rho_minus", d(r.L_at_rho_minus)}, {"L_at_rho_plus", d(r.L_at_rho_plus)}});
    emit_json(cfg, j);
  } else {
    std::ostringstream os;
    io::write_table2_csv(os, rows, full ? -1 : 2);
    emit(cfg, os.str());
  }
  return kExitOk;
}

int cmd_laplace(const RunConfig& cfg, std::size_t grid) {
  require_rs(cfg);
  const MaximizeResult m = maximize_phi(cfg.r, cfg.s, grid);
  const LaplacePoint st = stationary_point(cfg.r, cfg.s);
  Json j{{"r", cfg.r},
         {"s", cfg.s},
         {"status", status_name(m.status)},
         {"argmax", {d(m.argmax.alpha), d(m.argmax.beta)}},
         {"value", d(m.value)},
         {"grad_norm", d(m.grad_norm)},
         {"stationary_point", {d(st.alpha), d(st.beta)}},
         {"phi_stationary", d(m.phi_stationary)},
         {"phi_origin", d(m.phi_origin)},
         {"distance_to_stationary", d(m.distance_to_stationary)},
         {"iterations", m.iterations},
         {"isa", m.isa},
         {"det_neg_hessian", d(det_neg_hessian_closed(cfg.r, cfg.s))},
         {"trace_hessian", d(trace_hessian_closed(cfg.r, cfg.s))}};
  if (m.status == MaximizeStatus::Converged) {
    const auto h = hessian_phi(m.argmax, cfg.r, cfg.s);
    j["hessian_at_argmax"] = {{d(h[0][0]), d(h[0][1])}, {d(h[1][0]), d(h[1][1])}};
  }
  if (cfg.n > 0) {
    try {
      const LaplacePrefactors pf = laplace_prefactors(cfg.r, cfg.s, cfg.n);
      j["prefactors"] = {{"n", cfg.n},           {"log_b_n", d(pf.log_b_n)},   {"psi", d(pf.psi_closed)},
                         {"psi_direct", d(pf.psi_direct)}, {"lattice_det", d(pf.lattice_det)},
                         {"constant", d(pf.constant)},     {"log_EY2", d(pf.log_EY2)}};
    } catch (const DomainError& e) {
      j["prefactors"] = {{"error", e.what()}};
    }
  }
  emit_json(cfg, j);
  return kExitOk;
}

int cmd_ridge(const RunConfig& cfg, double lo, double hi, std::size_t samples) {
  require_rs(cfg);
  if (!(lo > -1) || !(hi > lo)) throw ValidationError("ridge needs -1 < lo < hi");
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "x,residual,alpha,beta\n";
    for (std::size_t k = 0; k <= samples; ++k) {
      const long double x = lo + (hi - lo) * static_cast<long double>(k) / samples;
      const LaplacePoint p = ridge(x, cfg.r, cfg.s);
      os << io::format_ld(x) << ',' << io::format_ld(ridge_equation_residual(x, cfg.r, cfg.s)) << ','
         << io::format_ld(p.alpha) << ',' << io::format_ld(p.beta) << '\n';
    }
    emit(cfg, os.str());
    return kExitOk;
  }
  Json roots = Json::array();
  for (long double x : ridge_roots(cfg.r, cfg.s, lo, hi, samples)) {
    const LaplacePoint p = ridge(x, cfg.r, cfg.s);
    roots.push_back({{"x", d(x)}, {"alpha", d(p.alpha)}, {"beta", d(p.beta)}});
  }
  emit_json(cfg, Json{{"r", cfg.r}, {"s", cfg.s}, {"interval", {lo, hi}}, {"roots", roots}});
  return kExitOk;
}

int cmd_wdist(const RunConfig& cfg, int j_start, bool samples_csv) {
  require_rs(cfg);
  if (cfg.trials < 1) throw ValidationError("--trials must be >= 1");
  const int start = j_start > 0 ? j_start : w_start(cfg.s);
  const int jmax = cfg.jmax > 0 ? cfg.jmax : w_jmax(cfg.r, cfg.s, start);
  const WSampler sampler(cfg.r, cfg.s, start, jmax);
  Rng rng(cfg.seed);
  RunningMoments w, w2;
  std::ostringstream os;
  if (samples_csv) os << "w\n";
  for (std::int64_t i = 0; i < cfg.trials; ++i) {
    const long double x = sampler.sample(rng);
    w.add(static_cast<double>(x));
    w2.add(static_cast<double>(x * x));
    if (samples_csv) os << io::format_ld(x) << '\n';
  }
  if (samples_csv) {
    emit(cfg, os.str());
    return kExitOk;
  }
  Json j{{"r", cfg.r}, {"s", cfg.s}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"j_start", start},
         {"j_max", jmax}, {"mean", w.mean()}, {"mean_se", w.standard_error()},
         {"second_moment", w2.mean()}, {"second_moment_se", w2.standard_error()}};
  if (variance_sum_applicable(cfg.r, cfg.s)) j["second_moment_limit"] = d(variance_sum(cfg.r, cfg.s).closed);
  emit_json(cfg, j);
  return kExitOk;
}

Json estimate_json(const MeanEstimate& e) { return Json{{"mean", e.mean}, {"se", e.se}, {"count", e.count}}; }

int cmd_mc(const RunConfig& cfg, std::size_t count, bool trees) {
  require_rs(cfg);
  const std::vector<std::int64_t> ladder =
      cfg.n > 0 ? std::vector<std::int64_t>{cfg.n} : admissible_ladder(cfg.r, cfg.s, count);
  Json runs = Json::array();
  for (std::int64_t n : ladder) {
    const ModelParams p = validate_params(cfg.r, cfg.s, n);
    McOptions opt;
    opt.trials = cfg.trials;
    opt.seed = cfg.seed;
    opt.jmax = cfg.jmax;
    opt.trees = trees;
    opt.tree_budget = budget_or(cfg, opt.tree_budget);
    const McSummary mc = run_monte_carlo(p, opt);
    Json cycles = Json::object();
    for (std::size_t j = 0; j < mc.cycles.size(); ++j) {
      Json e = estimate_json(mc.cycles[j]);
      e["lambda"] = d(to_long_double(spectral_pair(cfg.r, cfg.s, static_cast<int>(j + 1)).lambda));
      cycles[std::to_string(j + 1)] = e;
    }
    Json run{{"n", n}, {"cycles", cycles}, {"simple_rate", estimate_json(mc.simple_rate)},
             {"connected_rate", estimate_json(mc.connected_rate)}};
    if (trees) {
      run["tree_rate"] = estimate_json(mc.tree_rate);
      run["tree_censored"] = mc.tree_censored;
    }
    runs.push_back(run);
  }
  Json j{{"r", cfg.r}, {"s", cfg.s}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"jmax", cfg.jmax},
         {"simple_rate_limit", d(prob_simple(cfg.r, cfg.s))}, {"runs", runs}};
  emit_json(cfg, j);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  const auto results = verify::run_suite(suite);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (cfg.format == "json") {
    Json j = Json::array();
    for (const auto& r : results) j.push_back(verify::to_json(r));
    emit_json(cfg, Json{{"suite", suite}, {"pass", all}, {"criteria", j}});
  } else {
    std::ostringstream os;
    for (const auto& r : results) os << verify::format_line(r) << '\n';
    emit(cfg, os.str());
  }
  return all ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning trees in random regular uniform hypergraphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool positional_params) {
    if (positional_params) {
      sub->add_option("r,--r", cfg.r, "vertex degree");
      sub->add_option("s,--s", cfg.s, "edge size");
      sub->add_option("n,--n", cfg.n, "number of vertices");
    } else {
      sub->add_option("--r", cfg.r, "vertex degree");
      sub->add_option("--s", cfg.s, "edge size");
      sub->add_option("--n", cfg.n, "number of vertices");
    }
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--jmax", cfg.jmax, "largest cycle length");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--budget", cfg.budget, "search budget (0 = default)");
  };

  auto* params = app.add_subcommand("params", "divisibility report for (r,s,n)");
  common(params, true);

  bool simple = false;
  std::int64_t max_rejects = 100000;
  auto* sample = app.add_subcommand("sample", "draw a configuration and its projection");
  common(sample, true);
  sample->add_flag("--simple", simple, "reject until the projection is simple");
  sample->add_option("--max-rejects", max_rejects, "rejection limit for --simple");

  std::string input;
  auto* census = app.add_subcommand("census", "short-cycle census of a sample or a JSON file");
  common(census, true);
  census->add_option("--input", input, "hypergraph or configuration JSON");

  bool brute = false;
  auto* exact = app.add_subcommand("exact", "exact first and second moments");
  common(exact, true);
  exact->add_flag("--brute", brute, "also enumerate every configuration");

  std::size_t ladder = 6;
  auto* moments = app.add_subcommand("moments", "moments along the admissible n ladder");
  common(moments, false);
  moments->add_option("--count", ladder, "ladder length");

  auto* threshold = app.add_subcommand("threshold", "rho(s), its bounds and the phase of (r,s)");
  common(threshold, false);

  int lo = 5, hi = 12;
  bool full = false;
  auto* t1 = app.add_subcommand("table1", "rho(s) with bounds, CSV");
  common(t1, false);
  t1->add_option("--s-lo", lo, "first s");
  t1->add_option("--s-hi", hi, "last s");
  t1->add_flag("--full", full, "full precision instead of 3 decimals");
  auto* t2 = app.add_subcommand("table2", "L_s at the bounds, CSV");
  common(t2, false);
  t2->add_option("--s-lo", lo, "first s");
  t2->add_option("--s-hi", hi, "last s");
  t2->add_flag("--full", full, "full precision instead of 2 significant digits");

  std::size_t grid = 400;
  auto* laplace = app.add_subcommand("laplace", "maximize phi and report the Laplace data");
  common(laplace, false);
  laplace->add_option("--grid", grid, "grid points per axis")->check(CLI::Range(4, 100000));

  double rlo = -0.999, rhi = 50;
  std::size_t samples = 20000;
  auto* ridge_cmd = app.add_subcommand("ridge", "roots of the ridge equation or CSV plot data");
  common(ridge_cmd, false);
  ridge_cmd->add_option("--lo", rlo, "left end of the scan");
  ridge_cmd->add_option("--hi", rhi, "right end of the scan");
  ridge_cmd->add_option("--samples", samples, "scan resolution")->check(CLI::Range(2, 100000000));

  int j_start = 0;
  bool w_samples = false;
  auto* wdist = app.add_subcommand("wdist", "sample the limit variable W");
  common(wdist, false);
  wdist->add_option("--j-start", j_start, "first product index (0 = default)");
  wdist->add_flag("--samples", w_samples, "emit every sample as CSV");

  bool no_trees = false;
  auto* mc = app.add_subcommand("mc", "Monte Carlo census along the n ladder");
  common(mc, false);
  mc->add_option("--count", ladder, "ladder length when --n is not given");
  mc->add_flag("--no-trees", no_trees, "skip the spanning tree search");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run acceptance suites");
  common(verify_cmd, false);
  verify_cmd->add_option("suite", suite, "suite name")->check(CLI::IsMember(verify::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  // Commands without an explicit format default to CSV for table output.
  auto format_given = [](CLI::App* sub) { return sub->count("--format") > 0; };
  try {
    if (*params) return cmd_params(cfg);
    if (*sample) return cmd_sample(cfg, simple, max_rejects);
    if (*census) return cmd_census(cfg, input);
    if (*exact) return cmd_exact(cfg, brute);
    if (*moments) return cmd_moments(cfg, ladder);
    if (*threshold) return cmd_threshold(cfg);
    if (*t1) {
      if (!format_given(t1)) cfg.format = "csv";
      return cmd_table1(cfg, lo, hi, full);
    }
    if (*t2) {
      if (!format_given(t2)) cfg.format = "csv";
      return cmd_table2(cfg, lo, hi, full);
    }
    if (*laplace) return cmd_laplace(cfg, grid);
    if (*ridge_cmd) return cmd_ridge(cfg, rlo, rhi, samples);
    if (*wdist) {
      if (wdist->count("--jmax") == 0) cfg.jmax = 0;
      return cmd_wdist(cfg, j_start, w_samples);
    }
    if (*mc) return cmd_mc(cfg, ladder, !no_trees);
    if (*verify_cmd) {
      if (!format_given(verify_cmd)) cfg.format = "csv";
      return cmd_verify(cfg, suite);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const RejectionLimit& e) {
    std::cerr << "rejection limit: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
