#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "format.hpp"
#include "icm/config.hpp"
#include "icm/equilibrium.hpp"
#include "icm/tables.hpp"
#include "icm/terminal.hpp"
#include "icm/verification.hpp"
#include "manifest.hpp"

namespace icm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kMaxAbsZ = 3.0;
constexpr double kClearingTol = 1e-10;
constexpr double kFocConstant = 0.5;
constexpr double kTerminalConstant = 0.5;
constexpr double kOrderLo = 0.7;
constexpr double kOrderHi = 1.3;
constexpr double kLoadingTol = 1e-10;

struct Common {
  std::string config;
  std::uint64_t seed = 42;
  std::string format;  // "", "csv" or "json"
  std::string out;
};

struct Artifact {
  std::string name;
  TextTable csv;
  TextTable console;
  std::string footer;  // console only
  json data = json::object();
};

struct Context {
  const Common& common;
  std::string command;
  std::ostream& out;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << text;
}

void emit(const Context& ctx, std::vector<Artifact>& arts) {
  RunManifest base{ctx.common.config, ctx.command, ctx.common.seed,
                   tool_version(), utc_timestamp(), {}};
  const bool as_json = ctx.common.format == "json";
  if (!ctx.common.out.empty()) {
    const fs::path dir(ctx.common.out);
    fs::create_directories(dir);
    for (auto& a : arts) {
      const fs::path file = dir / (a.name + (as_json ? ".json" : ".csv"));
      RunManifest m = base;
      m.outputs = {file.string()};
      if (as_json) {
        json doc = a.data;
        doc["manifest"] = m.to_json();
        write_file(file, doc.dump(2) + "\n");
      } else {
        write_file(file, a.csv.csv());
      }
      write_file(dir / (a.name + ".manifest.json"), m.to_json().dump(2) + "\n");
      ctx.out << "wrote " << file.string() << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < arts.size(); ++i) {
    auto& a = arts[i];
    if (as_json) {
      json doc = a.data;
      doc["manifest"] = base.to_json();
      ctx.out << doc.dump(2) << '\n';
    } else if (ctx.common.format == "csv") {
      if (i) ctx.out << '\n';
      ctx.out << a.csv.csv();
    } else {
      if (i) ctx.out << '\n';
      ctx.out << a.name << "\n\n" << a.console.console() << a.footer;
    }
  }
}

EconomyParams require_config(const Common& c) {
  if (c.config.empty()) throw ConfigError("--config is required");
  return load_economy(c.config);
}

std::string method_name(RiccatiMethod m) {
  return m == RiccatiMethod::ClosedForm ? "closed_form" : "integrated";
}

bool same_investor(const InvestorParams& a, const InvestorParams& b) {
  return a.tau == b.tau && a.mu_Y == b.mu_Y && a.kappa_Y == b.kappa_Y &&
         a.sigma_Y == b.sigma_Y && a.beta_Y == b.beta_Y;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Context& ctx) {
  const auto econ = require_config(ctx.common);
  const auto report = validate(econ);

  Artifact a;
  a.name = "validate";
  a.csv.header = {"check", "hard", "passed", "detail"};
  a.console.header = {"check", "result", "detail"};
  json checks = json::array();
  for (const auto& c : report.checks) {
    a.csv.rows.push_back({c.name, c.hard ? "1" : "0", c.passed ? "1" : "0",
                          "\"" + c.detail + "\""});
    a.console.rows.push_back(
        {c.name, c.passed ? "pass" : (c.hard ? "FAIL" : "warn"), c.detail});
    checks.push_back({{"name", c.name},
                      {"hard", c.hard},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  a.data = {{"valid", report.ok()}, {"checks", checks}};
  a.footer = report.ok() ? "\nvalid\n" : "\ninvalid\n";
  std::vector<Artifact> arts{a};
  emit(ctx, arts);
  return report.ok() ? kOk : kFailed;
}

// ------------------------------------------------------------------ tables

struct Table1Options {
  std::optional<double> U;
  std::vector<std::size_t> counts;
  bool no_limit = false;
};

int cmd_table1(const Context& ctx, const Table1Options& opt) {
  auto spec = table1_defaults();
  if (!ctx.common.config.empty()) {
    const auto econ = load_economy(ctx.common.config);
    for (const auto& inv : econ.investors) {
      if (!same_investor(inv, econ.investors.front())) {
        throw ConfigError("table1 needs a homogeneous economy");
      }
    }
    spec.vol = econ.vol;
    spec.investor = econ.investors.front();
    spec.U = econ.horizon_T;
  }
  if (opt.U) spec.U = *opt.U;
  if (!opt.counts.empty()) spec.counts = opt.counts;
  if (opt.no_limit) spec.include_limit = false;

  const auto rows = table1(spec);
  Artifact a;
  a.name = "table1";
  a.csv.header = {"I", "rate_gap", "mpr_gap"};
  a.console.header = {"I", "r_rep - r", "MPR gap"};
  json out = json::array();
  for (const auto& r : rows) {
    const std::string n = r.limit ? "" : std::to_string(r.investors);
    a.csv.rows.push_back(
        {r.limit ? "inf" : n, fixed4(r.rate_gap), fixed4(r.mpr_gap)});
    a.console.rows.push_back(
        {r.limit ? "∞" : n, fixed4(r.rate_gap), fixed4(r.mpr_gap)});
    out.push_back({{"I", r.limit ? json("inf") : json(r.investors)},
                   {"rate_gap", r.rate_gap},
                   {"mpr_gap", r.mpr_gap},
                   {"mpr_gap_value", r.mpr_gap_value},
                   {"method", method_name(r.method)}});
  }
  a.data = {{"U", spec.U}, {"rows", out}};
  std::vector<Artifact> arts{a};
  emit(ctx, arts);
  return kOk;
}

struct Table2Options {
  std::optional<double> U;
  std::optional<double> beta_A;
  std::optional<double> beta_B;
};

int cmd_table2(const Context& ctx, const Table2Options& opt) {
  auto spec = table2_defaults();
  if (!ctx.common.config.empty()) {
    const auto econ = load_economy(ctx.common.config);
    const auto& inv = econ.investors.front();
    spec.vol = econ.vol;
    spec.base.sigma_Y = inv.sigma_Y;
    spec.base.kappa_Y = inv.kappa_Y;
    spec.base.mu_Y = inv.mu_Y;
    spec.U = econ.horizon_T;
  }
  if (opt.U) spec.U = *opt.U;
  if (opt.beta_A) spec.beta_A = *opt.beta_A;
  if (opt.beta_B) spec.beta_B = *opt.beta_B;

  const auto t = table2(spec);
  Artifact a;
  a.name = "table2";
  a.csv.header = {"w"};
  a.console.header = {"w"};
  for (const auto& [ta, tb] : spec.taus) {
    a.csv.header.push_back("tauA=" + fraction(ta) + ";tauB=" + fraction(tb));
    a.console.header.push_back("(" + fraction(ta) + "," + fraction(tb) + ")");
  }
  json cells = json::array();
  for (std::size_t r = 0; r < t.rows; ++r) {
    std::vector<std::string> row{fixed4(t.at(r, 0).w)};
    for (std::size_t c = 0; c < t.cols; ++c) {
      const auto& cell = t.at(r, c);
      row.push_back(fixed4(cell.mpr_gap));
      cells.push_back({{"w", cell.w},
                       {"tau_A", cell.tau_A},
                       {"tau_B", cell.tau_B},
                       {"mpr_gap", cell.mpr_gap},
                       {"mpr_gap_value", cell.mpr_gap_value},
                       {"q", cell.q},
                       {"method", method_name(cell.method)}});
    }
    a.csv.rows.push_back(row);
    a.console.rows.push_back(row);
  }
  a.data = {{"U", spec.U},
            {"beta_A", spec.beta_A},
            {"beta_B", spec.beta_B},
            {"cells", cells}};
  std::vector<Artifact> arts{a};
  emit(ctx, arts);
  return kOk;
}

// ------------------------------------------------------------------ curves

struct CurveOptions {
  double t = 0.0;
  std::optional<double> v;
  std::optional<double> U;
  std::size_t points = 101;
};

int cmd_curves(const Context& ctx, const CurveOptions& opt) {
  const auto econ = require_config(ctx.common);
  require_valid(econ);
  const auto agg = derive_aggregates(econ);
  const double T = econ.horizon_T;
  const double U = opt.U.value_or(T);
  const double v = opt.v.value_or(econ.vol.v0);
  if (!(U > opt.t) || U > T) {
    throw std::invalid_argument("curves: need t < U <= T");
  }
  const auto sols = solve_equilibrium(agg, T);

  Artifact ts_art;
  ts_art.name = "term_structure";
  const auto ts = term_structure(sols, opt.t, v, linspace(opt.t, U, opt.points));
  ts_art.csv.header = {"U", "B", "B_rep", "yield", "yield_rep"};
  json ts_rows = json::array();
  for (std::size_t k = 0; k < ts.maturities.size(); ++k) {
    const double s = ts.maturities[k] - opt.t;
    const double y = s > 0.0 ? -std::log(ts.incomplete[k]) / s
                             : spot_rate(agg, v);
    const double y_rep = s > 0.0 ? -std::log(ts.complete[k]) / s
                                 : spot_rate_rep(agg, v);
    ts_art.csv.rows.push_back({full(ts.maturities[k]), full(ts.incomplete[k]),
                               full(ts.complete[k]), full(y), full(y_rep)});
    ts_rows.push_back({{"U", ts.maturities[k]},
                       {"B", ts.incomplete[k]},
                       {"B_rep", ts.complete[k]},
                       {"yield", y},
                       {"yield_rep", y_rep}});
  }
  ts_art.console = ts_art.csv;
  ts_art.data = {{"t", opt.t}, {"v", v}, {"rows", ts_rows}};

  Artifact mpr_art;
  mpr_art.name = "mpr_curve";
  const auto curve = mpr_curve(sols, agg, U, v, linspace(0.0, U, opt.points));
  mpr_art.csv.header = {"t", "mu_S", "mu_dis", "mu_dis_rep", "gap",
                        "gap_value"};
  json mpr_rows = json::array();
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    const double gap = curve.discrete[k] - curve.discrete_rep[k];
    mpr_art.csv.rows.push_back({full(curve.times[k]), full(curve.mu_S[k]),
                                full(curve.discrete[k]),
                                full(curve.discrete_rep[k]), full(gap),
                                full(gap * std::sqrt(v))});
    mpr_rows.push_back({{"t", curve.times[k]},
                        {"mu_S", curve.mu_S[k]},
                        {"mu_dis", curve.discrete[k]},
                        {"mu_dis_rep", curve.discrete_rep[k]},
                        {"gap", gap}});
  }
  mpr_art.console = mpr_art.csv;
  mpr_art.data = {{"U", U}, {"v", v}, {"rows", mpr_rows}};

  std::vector<Artifact> arts{ts_art, mpr_art};
  emit(ctx, arts);
  return kOk;
}

// ------------------------------------------------------------------ verify

struct Check {
  std::string suite;
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double target = 0.0;
  double statistic = 0.0;  // compared against threshold
  double threshold = 0.0;
  bool passed = false;
};

Check z_check(std::string suite, std::string name, const McEstimate& e,
              double target) {
  Check c{std::move(suite), std::move(name), e.value, e.standard_error,
          target};
  c.statistic = std::abs(e.z(target));
  c.threshold = kMaxAbsZ;
  c.passed = c.statistic <= c.threshold;
  return c;
}

Check bound_check(std::string suite, std::string name, double value,
                  double bound) {
  Check c{std::move(suite), std::move(name), value, 0.0, 0.0};
  c.statistic = value;
  c.threshold = bound;
  c.passed = value <= bound;
  return c;
}

Check order_check(std::string suite, std::string name, double order) {
  Check c{std::move(suite), std::move(name), order, 0.0, 1.0};
  c.statistic = order;
  c.threshold = kOrderHi;
  c.passed = order >= kOrderLo && order <= kOrderHi;
  return c;
}

// Maturity nearest frac * T that lies on the simulation grid.
double on_grid(double frac, double T, std::size_t steps_per_unit) {
  const double n = static_cast<double>(steps_per_unit);
  return std::max(1.0, std::round(frac * T * n)) / n;
}

void suite_bond(const EconomyParams& econ, const SimConfig& sim,
                std::vector<Check>& out) {
  const double T = econ.horizon_T;
  const auto sols = solve_equilibrium(derive_aggregates(econ), T);
  std::vector<double> Us;
  for (double f : {0.25, 0.5, 1.0}) Us.push_back(on_grid(f, T, sim.n_steps));
  for (auto scheme : {Scheme::FullTruncationEuler, Scheme::ExactCir}) {
    SimConfig s = sim;
    s.scheme = scheme;
    s.measure = Measure::Qmin;
    const auto est = mc_bond_prices(econ, Us, s);
    for (std::size_t j = 0; j < Us.size(); ++j) {
      out.push_back(z_check("bond",
                            to_string(scheme) + " U=" + full(Us[j]), est[j],
                            bond_price(sols.incomplete, 0.0, Us[j],
                                       econ.vol.v0)));
    }
  }
}

void suite_clearing(const EconomyParams& econ, const SimConfig& sim,
                    std::vector<Check>& out) {
  const auto r = verify_clearing(econ, sim);
  out.push_back(bound_check("clearing", "max_residual", r.max_residual,
                            kClearingTol));
}

void suite_forward(const EconomyParams& econ, const SimConfig& sim,
                   std::vector<Check>& out) {
  const double U = on_grid(0.5, econ.horizon_T, sim.n_steps);
  for (auto sec : {ForwardSecurity::LongBond, ForwardSecurity::Annuity}) {
    const auto c = verify_forward_measure(econ, U, sec, sim);
    out.push_back(z_check("forward", to_string(sec) + " U=" + full(U),
                          c.mean_return, c.target));
  }
}

void suite_foc(const EconomyParams& econ, const SimConfig& sim,
               std::vector<Check>& out) {
  const auto mult = solve_multipliers(econ, sim);
  SimConfig s = sim;
  s.n_paths = std::min<std::size_t>(sim.n_paths, 1000);
  s.n_steps = std::max<std::size_t>(1, sim.n_steps / 4);
  const auto study = foc_convergence(econ, s, 0, mult, 4);
  for (std::size_t l = 0; l < study.steps.size(); ++l) {
    out.push_back(bound_check("foc",
                              "residual/dt n=" + std::to_string(study.steps[l]),
                              study.error[l] / study.dt[l], kFocConstant));
  }
  for (std::size_t l = 0; l < study.order.size(); ++l) {
    out.push_back(order_check("foc", "order " + std::to_string(l),
                              study.order[l]));
  }
}

void suite_martingale(const EconomyParams& econ, const SimConfig& sim,
                      std::vector<Check>& out) {
  SimConfig s = sim;
  s.idiosyncratic = true;
  const auto m = verify_martingales(econ, s);
  out.push_back(z_check("martingale", "state_price", m.state_price, 1.0));
  for (std::size_t i = 0; i < m.densities.size(); ++i) {
    out.push_back(z_check("martingale", "density " + std::to_string(i),
                          m.densities[i], 1.0));
  }
}

Artifact checks_artifact(const std::string& name,
                         const std::vector<Check>& checks, json extra) {
  Artifact a;
  a.name = name;
  a.csv.header = {"suite",  "check",     "estimate", "se",
                  "target", "statistic", "threshold", "passed"};
  a.console.header = {"suite", "check", "estimate", "se", "statistic",
                      "threshold", "result"};
  json list = json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    a.csv.rows.push_back({c.suite, c.name, full(c.estimate), full(c.se),
                          full(c.target), full(c.statistic), full(c.threshold),
                          c.passed ? "1" : "0"});
    char est[32], se[32], stat[32], thr[32];
    std::snprintf(est, sizeof est, "%.6g", c.estimate);
    std::snprintf(se, sizeof se, "%.2g", c.se);
    std::snprintf(stat, sizeof stat, "%.3g", c.statistic);
    std::snprintf(thr, sizeof thr, "%.3g", c.threshold);
    a.console.rows.push_back(
        {c.suite, c.name, est, se, stat, thr, c.passed ? "pass" : "FAIL"});
    list.push_back({{"suite", c.suite},
                    {"check", c.name},
                    {"estimate", c.estimate},
                    {"se", c.se},
                    {"target", c.target},
                    {"statistic", c.statistic},
                    {"threshold", c.threshold},
                    {"passed", c.passed}});
  }
  a.data = std::move(extra);
  a.data["passed"] = all;
  a.data["checks"] = list;
  a.footer = all ? "\nall checks passed\n" : "\nsome checks FAILED\n";
  return a;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

struct VerifyOptions {
  std::vector<std::string> suites{"all"};
  std::size_t paths = 100000;
  std::size_t steps = 252;
  unsigned threads = 0;
};

SimConfig make_sim(const Common& c, std::size_t paths, std::size_t steps,
                   unsigned threads) {
  SimConfig s;
  s.seed = c.seed;
  s.n_paths = paths;
  s.n_steps = steps;
  s.threads = threads;
  return s;
}

int cmd_verify(const Context& ctx, const VerifyOptions& opt) {
  const auto econ = require_config(ctx.common);
  require_valid(econ);
  const auto sim = make_sim(ctx.common, opt.paths, opt.steps, opt.threads);

  std::vector<std::string> suites = opt.suites;
  if (std::find(suites.begin(), suites.end(), "all") != suites.end()) {
    suites = {"bond", "clearing", "forward", "foc", "martingale"};
  }
  std::vector<Check> checks;
  for (const auto& s : suites) {
    if (s == "bond") suite_bond(econ, sim, checks);
    if (s == "clearing") suite_clearing(econ, sim, checks);
    if (s == "forward") suite_forward(econ, sim, checks);
    if (s == "foc") suite_foc(econ, sim, checks);
    if (s == "martingale") suite_martingale(econ, sim, checks);
  }
  std::vector<Artifact> arts{checks_artifact(
      "verify", checks,
      {{"suites", suites},
       {"n_paths", sim.n_paths},
       {"n_steps", sim.n_steps},
       {"seed", sim.seed}})};
  emit(ctx, arts);
  return all_passed(checks) ? kOk : kFailed;
}

// ---------------------------------------------------------------- terminal

struct TerminalOptions {
  std::size_t points = 101;
  std::size_t paths = 1000;
  std::size_t steps = 252;
  unsigned threads = 0;
};

int cmd_terminal(const Context& ctx, const TerminalOptions& opt) {
  const auto econ = require_config(ctx.common);
  require_valid(econ);
  const TerminalEquilibrium eq(econ);
  const double T = econ.horizon_T;
  const double v0 = econ.vol.v0;

  Artifact curve;
  curve.name = "terminal_mpr";
  curve.csv.header = {"t", "mu_S", "mpr_value", "loading"};
  json rows = json::array();
  for (double t : linspace(0.0, T, opt.points)) {
    const double m = eq.mu_S(t);
    const double load = eq.martingale_loading(t);
    curve.csv.rows.push_back(
        {full(t), full(m), full(eq.mpr_value(t, v0)), full(load)});
    rows.push_back({{"t", t}, {"mu_S", m}, {"loading", load}});
  }
  curve.console = curve.csv;
  curve.data = {{"T", T}, {"v0", v0}, {"rows", rows}};

  const auto sim = make_sim(ctx.common, opt.paths, opt.steps, opt.threads);
  const auto report = verify_terminal_clearing(econ, sim);
  const auto sols = solve_equilibrium(eq.aggregates(), T);
  std::vector<Check> checks;
  const double dis = discrete_mpr(sols.incomplete, eq.aggregates(), 0.0, T);
  checks.push_back(bound_check("terminal", "mpr(0) - discrete mpr",
                               std::abs(eq.mu_S(0.0) - dis),
                               8.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(1.0, std::abs(dis))));
  checks.push_back(bound_check("terminal", "clearing residual/dt",
                               report.max_residual / report.dt,
                               kTerminalConstant));
  checks.push_back(bound_check("terminal", "martingale loading",
                               report.max_loading, kLoadingTol));
  json extra = {{"n_paths", report.n_paths},
                {"n_steps", report.n_steps},
                {"dt", report.dt},
                {"log_tau_alpha", report.log_tau_alpha}};
  std::vector<Artifact> arts{curve,
                             checks_artifact("terminal_check", checks, extra)};
  emit(ctx, arts);
  return all_passed(checks) ? kOk : kFailed;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config, "economy configuration file");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output directory");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Incomplete-market equilibrium with stochastic income volatility"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Common common;
  auto* validate_cmd = app.add_subcommand("validate", "check the assumptions");
  add_common(validate_cmd, common);

  Table1Options t1;
  auto* table1_cmd = app.add_subcommand("table1", "effects of the number of investors");
  add_common(table1_cmd, common);
  table1_cmd->add_option("--U", t1.U, "bond maturity");
  table1_cmd->add_option("--counts", t1.counts, "numbers of investors");
  table1_cmd->add_flag("--no-limit", t1.no_limit, "omit the limit row");

  Table2Options t2;
  auto* table2_cmd = app.add_subcommand("table2", "two-group limit economy");
  add_common(table2_cmd, common);
  table2_cmd->add_option("--U", t2.U, "bond maturity");
  table2_cmd->add_option("--beta-a", t2.beta_A, "unspanned loading of group A");
  table2_cmd->add_option("--beta-b", t2.beta_B, "unspanned loading of group B");

  CurveOptions cv;
  auto* curves_cmd = app.add_subcommand("curves", "term structure and MPR curves");
  add_common(curves_cmd, common);
  curves_cmd->add_option("--t", cv.t, "valuation time");
  curves_cmd->add_option("--v", cv.v, "volatility state (default v0)");
  curves_cmd->add_option("--U", cv.U, "last maturity (default T)");
  curves_cmd->add_option("--points", cv.points, "grid size")
      ->check(CLI::Range(2, 1000000));

  VerifyOptions vf;
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo verification suites");
  add_common(verify_cmd, common);
  verify_cmd->add_option("--suite", vf.suites, "suites to run")
      ->check(CLI::IsMember(
          {"all", "bond", "clearing", "forward", "foc", "martingale"}));
  verify_cmd->add_option("--paths", vf.paths, "paths")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--steps", vf.steps, "steps per unit time")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", vf.threads, "worker threads (0: all)");

  TerminalOptions tm;
  auto* terminal_cmd = app.add_subcommand("terminal", "terminal-consumption variant");
  add_common(terminal_cmd, common);
  terminal_cmd->add_option("--points", tm.points, "curve grid size")
      ->check(CLI::Range(2, 1000000));
  terminal_cmd->add_option("--paths", tm.paths, "paths")->check(CLI::PositiveNumber);
  terminal_cmd->add_option("--steps", tm.steps, "steps per unit time")
      ->check(CLI::PositiveNumber);
  terminal_cmd->add_option("--threads", tm.threads, "worker threads (0: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const Context ctx{common, sub->get_name(), out};
    if (sub == validate_cmd) return cmd_validate(ctx);
    if (sub == table1_cmd) return cmd_table1(ctx, t1);
    if (sub == table2_cmd) return cmd_table2(ctx, t2);
    if (sub == curves_cmd) return cmd_curves(ctx, cv);
    if (sub == verify_cmd) return cmd_verify(ctx, vf);
    if (sub == terminal_cmd) return cmd_terminal(ctx, tm);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace icm::cli
