#include "allee/cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "allee/cli/config.hpp"
#include "allee/cli/report.hpp"
#include "allee/cli/sweep.hpp"
#include "allee/error.hpp"

namespace allee::cli {
namespace {

struct Options {
  std::optional<double> q, s, h, m;
  std::string which = "E8";
  double eta1 = 0.0, eta2 = 0.0, eta_box = 1e-3;
  std::optional<int> grid;
  std::optional<double> x0, y0;
  double tmax = 100.0;
  std::optional<std::string> param;
  std::optional<double> lo, hi;
  std::optional<int> steps;
  std::optional<std::string> out;
  std::optional<std::string> config;
  bool json = false;
  bool csv = false;
};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing required option --") + flag);
  return *v;
}

ModelParams params_from(const Options& o) {
  return ModelParams{.q = require(o.q, "q"), .s = require(o.s, "s"), .h = require(o.h, "h"), .m = require(o.m, "m")};
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (!o.out) {
    out << text;
    return;
  }
  std::ofstream file(*o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + *o.out + "'");
  file << text;
  if (!file.flush()) throw Error(ErrorCode::InvalidArgument, "write to '" + *o.out + "' failed");
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--q", o.q, "predation rate");
  sub->add_option("--s", o.s, "predator growth rate");
  sub->add_option("--h", o.h, "harvest intensity");
  sub->add_option("--m", o.m, "Allee threshold");
}

void add_io_flags(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write output to PATH instead of stdout");
  sub->add_option("--config", o.config, "read defaults from a key = value file");
  auto* j = sub->add_flag("--json", o.json, "JSON output");
  auto* c = sub->add_flag("--csv", o.csv, "CSV output");
  j->excludes(c);
}

void cmd_analyze(const Options& o, std::ostream& out) {
  const AnalysisReport r = analyze(params_from(o));
  emit(o, o.csv ? equilibria_csv(r) : dump(to_json(r)), out);
}

void cmd_hopf(const Options& o, std::ostream& out) {
  const auto which = weak_focus_from_string(o.which);
  if (!which) throw Error(ErrorCode::InvalidArgument, "--which must be E8 or E9, got " + o.which);
  ModelParams p{.q = require(o.q, "q"), .s = o.s.value_or(1.0), .h = require(o.h, "h"), .m = require(o.m, "m")};
  if (!o.s) p.s = hopf_critical_s(p, *which);
  const HopfReport r = first_lyapunov_coefficient(p, *which);
  emit(o, o.csv ? hopf_csv(r) : dump(to_json(r)), out);
}

void cmd_bt(const Options& o, std::ostream& out) {
  const ModelParams base = cusp_base(require(o.q, "q"), require(o.m, "m"));
  // Explicit --h/--s must name the cusp point itself.
  ModelParams given = base;
  if (o.h) given.h = *o.h;
  if (o.s) given.s = *o.s;

  std::vector<BTReport> reports;
  if (o.grid) {
    if (*o.grid < 1 || *o.grid > 1001) throw Error(ErrorCode::InvalidArgument, "--grid must be in [1, 1001]");
    if (!(o.eta_box > 0.0)) throw Error(ErrorCode::InvalidArgument, "--eta-box must be positive");
    const int n = *o.grid;
    auto at = [&](int i) { return n == 1 ? 0.0 : std::lerp(-o.eta_box, o.eta_box, static_cast<double>(i) / (n - 1)); };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) reports.push_back(bt_normal_form(given, {at(i), at(j)}));
  } else {
    reports.push_back(bt_normal_form(given, {o.eta1, o.eta2}));
  }

  if (o.csv) {
    emit(o, bt_csv(reports), out);
  } else if (o.grid) {
    json arr = json::array();
    for (const BTReport& r : reports) arr.push_back(to_json(r, base));
    emit(o, dump(arr), out);
  } else {
    emit(o, dump(to_json(reports.front(), base)), out);
  }
}

void cmd_simulate(const Options& o, std::ostream& out) {
  const ModelParams p = params_from(o);
  IntegratorConfig cfg;
  if (!(o.tmax > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tmax must be positive");
  cfg.t_max = o.tmax;
  const Trajectory t = integrate(p, State{require(o.x0, "x0"), require(o.y0, "y0")}, cfg);
  emit(o, o.json ? dump(to_json(t)) : trajectory_csv(t), out);
}

void cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.param) throw Error(ErrorCode::InvalidArgument, "missing required option --param");
  const auto which = parameter_from_string(*o.param);
  if (!which) throw Error(ErrorCode::InvalidArgument, "--param must be one of q, s, h, m; got " + *o.param);
  SweepSpec spec;
  spec.parameter = *which;
  spec.lo = require(o.lo, "lo");
  spec.hi = require(o.hi, "hi");
  if (!o.steps) throw Error(ErrorCode::InvalidArgument, "missing required option --steps");
  spec.steps = *o.steps;
  validate(spec);
  for (Parameter p : {Parameter::q, Parameter::s, Parameter::h, Parameter::m}) {
    if (p == spec.parameter) continue;
    const std::optional<double>& v = p == Parameter::q ? o.q : p == Parameter::s ? o.s : p == Parameter::h ? o.h : o.m;
    const std::string flag(to_string(p));
    parameter_ref(spec.fixed, p) = require(v, flag.c_str());
  }

  const auto points = run_sweep(spec, sweep_threads());
  const auto skipped = std::count_if(points.begin(), points.end(), [](const SweepPoint& pt) { return !pt.report; });
  emit(o, o.json ? dump(sweep_json(spec, points)) : sweep_csv(spec, points), out);
  if (skipped > 0) err << "sweep: skipped " << skipped << " of " << points.size() << " grid points\n";
  if (skipped == static_cast<long>(points.size())) {
    throw Error(ErrorCode::InvalidSweep, "every grid point was skipped");
  }
}

// Inserts config-file values right after the subcommand so that later
// command-line flags take precedence.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args) {
  std::size_t sub_pos = args.size();
  const CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (const CLI::App* cand : app.get_subcommands([](const CLI::App*) { return true; })) {
      if (args[i] == cand->get_name()) {
        sub_pos = i;
        sub = cand;
        break;
      }
    }
    if (sub) break;
  }
  if (!sub) return args;

  std::optional<std::string> path;
  for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(*path)) {
    if (key == "config") throw Error(ErrorCode::InvalidArgument, "config files cannot include other config files");
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) {
      bool known = false;
      for (const CLI::App* other : app.get_subcommands([](const CLI::App*) { return true; })) {
        known = known || other->get_option_no_throw("--" + key) != nullptr;
      }
      if (!known) throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
      continue;  // meant for another subcommand
    }
    if (opt->get_type_size() == 0) {
      if (value == "true") injected.push_back("--" + key);
      else if (value != "false") throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' takes true/false");
    } else {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Equilibria, bifurcations and simulation of a harvested predator-prey model with a predator Allee effect",
               "allee_lab"};
  // -h would collide with the harvest flag --h.
  app.set_help_flag("--help", "print this help and exit");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "classify all equilibria and report thresholds");
  add_model_flags(analyze_cmd, o);
  add_io_flags(analyze_cmd, o);

  auto* hopf_cmd = app.add_subcommand("hopf", "first Lyapunov coefficient at E8 or E9 (s solved when omitted)");
  add_model_flags(hopf_cmd, o);
  hopf_cmd->add_option("--which", o.which, "E8 or E9");
  add_io_flags(hopf_cmd, o);

  auto* bt_cmd = app.add_subcommand("bt", "Bogdanov-Takens normal-form coefficients at the cusp (h3, s1)");
  add_model_flags(bt_cmd, o);
  bt_cmd->add_option("--eta1", o.eta1, "perturbation of h");
  bt_cmd->add_option("--eta2", o.eta2, "perturbation of s");
  bt_cmd->add_option("--grid", o.grid, "evaluate an N x N grid over [-eta-box, eta-box]^2");
  bt_cmd->add_option("--eta-box", o.eta_box, "half-width of the eta grid");
  add_io_flags(bt_cmd, o);

  auto* sim_cmd = app.add_subcommand("simulate", "integrate one trajectory");
  add_model_flags(sim_cmd, o);
  sim_cmd->add_option("--x0", o.x0, "initial prey density");
  sim_cmd->add_option("--y0", o.y0, "initial predator density");
  sim_cmd->add_option("--tmax", o.tmax, "integration horizon");
  add_io_flags(sim_cmd, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "equilibrium portrait along a one-parameter grid");
  add_model_flags(sweep_cmd, o);
  sweep_cmd->add_option("--param", o.param, "swept parameter: q, s, h or m");
  sweep_cmd->add_option("--lo", o.lo, "lower end of the range");
  sweep_cmd->add_option("--hi", o.hi, "upper end of the range");
  sweep_cmd->add_option("--steps", o.steps, "number of grid points (>= 2)");
  add_io_flags(sweep_cmd, o);

  try {
    std::vector<std::string> argv = merge_config(app, args);
    std::reverse(argv.begin(), argv.end());  // CLI11 consumes the vector from the back
    try {
      app.parse(argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitContract;
    }

    if (*analyze_cmd) cmd_analyze(o, out);
    else if (*hopf_cmd) cmd_hopf(o, out);
    else if (*bt_cmd) cmd_bt(o, out);
    else if (*sim_cmd) cmd_simulate(o, out);
    else if (*sweep_cmd) cmd_sweep(o, out, err);
    return kExitOk;
  } catch (const Error& e) {
    err << "allee_lab: " << e.what() << '\n';
    return is_contract_violation(e.code()) ? kExitContract : kExitNumerical;
  } catch (const std::exception& e) {
    err << "allee_lab: internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace allee::cli
