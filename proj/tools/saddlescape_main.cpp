// saddlescape: run heavy-ball trajectories, classify critical points, and
// launch randomized-initialization escape experiments.
//
// Exit codes: 0 success (run: gradient tolerance met), 2 run hit max_iters,
// 3 run diverged, 1 a check failed or an I/O error occurred, 64 invalid
// usage or rejected configuration.

#include <CLI11.hpp>

#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/experiments.hpp"
#include "saddlescape/lyapunov.hpp"
#include "saddlescape/report_io.hpp"
#include "saddlescape/solver.hpp"
#include "saddlescape/stability.hpp"

namespace fs = std::filesystem;
using namespace saddlescape;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitUsage = 64;

// Config keys that map to presence-only flags.
const std::set<std::string> kBooleanKeys = {"no_enforce_bounds", "x1_equals_x0"};

double parse_number(const std::string& name, const std::string& text) {
  try {
    const Vector v = parse_vector(text);
    if (v.size() != 1) throw ConfigRejected("");
    return v[0];
  } catch (const ConfigRejected&) {
    throw ConfigRejected("--" + name + ": expected a number, got '" + text + "'");
  }
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigRejected("--seed: expected a non-negative 64-bit integer, got '" + text + "'");
  return v;
}

long parse_count(const std::string& name, const std::string& text) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || v < 0)
    throw ConfigRejected("--" + name + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

/// Splices `--config FILE` entries into argv right after the subcommand, so
/// later command-line flags override them (options keep their last value).
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t consumed = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      consumed = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      consumed = 1;
    } else {
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigRejected("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> injected;
    for (const auto& [key, value] : parse_config_text(buf.str())) {
      std::string flag = "--" + key;
      for (auto& c : flag)
        if (c == '_') c = '-';
      if (kBooleanKeys.count(key)) {
        if (value == "true" || value == "1") injected.push_back(flag);
        else if (value != "false" && value != "0")
          throw ConfigRejected("config key '" + key + "' expects true or false");
      } else {
        injected.push_back(flag);
        injected.push_back(value);
      }
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + consumed));
    // Insert right after the subcommand name (args[1]).
    const std::size_t at = args.size() > 1 ? 2 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
    return args;
  }
  return args;
}

struct SolverFlags {
  std::string objective = "double_well";
  std::string algo = "hbgd";
  std::string gamma = "0.1";
  std::string beta = "0.25";
  std::string max_iters = "100000";
  std::string grad_tol = "1e-08";
  std::string prox_tol = "1e-12";
  std::string prox_max_inner = "100";
  bool no_enforce_bounds = false;

  void attach(CLI::App* app) {
    app->add_option("--objective", objective, "Corpus member, e.g. double_well or quadratic_saddle:1,-1");
    app->add_option("--algo", algo, "hbgd or hbppa");
    app->add_option("--gamma", gamma, "Stepsize");
    app->add_option("--beta", beta, "Inertial parameter");
    app->add_option("--max-iters", max_iters, "Step limit per trajectory");
    app->add_option("--grad-tol", grad_tol, "Stop once |grad f| falls to this value");
    app->add_option("--prox-tol", prox_tol, "Prox sub-solver residual tolerance");
    app->add_option("--prox-max-inner", prox_max_inner, "Prox sub-solver iteration limit");
    app->add_flag("--no-enforce-bounds", no_enforce_bounds, "Allow (gamma, beta) outside the escape-guarantee ranges");
  }

  SolverConfig resolve() const {
    SolverConfig cfg;
    cfg.algorithm = parse_algorithm(algo);
    cfg.gamma = parse_number("gamma", gamma);
    cfg.beta = parse_number("beta", beta);
    cfg.max_iters = parse_count("max-iters", max_iters);
    cfg.grad_stop_tol = parse_number("grad-tol", grad_tol);
    cfg.prox_inner_tol = parse_number("prox-tol", prox_tol);
    cfg.prox_max_inner_iters = static_cast<int>(parse_count("prox-max-inner", prox_max_inner));
    cfg.enforce_bounds = !no_enforce_bounds;
    return cfg;
  }

  static void echo(ConfigEntries& out, const std::string& objective, const SolverConfig& cfg) {
    out.emplace_back("objective", objective);
    out.emplace_back("algo", std::string(to_string(cfg.algorithm)));
    out.emplace_back("gamma", format_double(cfg.gamma));
    out.emplace_back("beta", format_double(cfg.beta));
    out.emplace_back("max_iters", std::to_string(cfg.max_iters));
    out.emplace_back("grad_tol", format_double(cfg.grad_stop_tol));
    out.emplace_back("prox_tol", format_double(cfg.prox_inner_tol));
    out.emplace_back("prox_max_inner", std::to_string(cfg.prox_max_inner_iters));
    out.emplace_back("no_enforce_bounds", cfg.enforce_bounds ? "false" : "true");
  }
};

class OutputSet {
 public:
  OutputSet(std::string command, const std::string& dir) : command_(std::move(command)), dir_(dir) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
    outputs_.push_back(name);
  }

  /// resolved.cfg reproduces the run via --config; manifest.json records it.
  void finish(const ConfigEntries& config, std::uint64_t seed, std::chrono::steady_clock::time_point start) {
    write("resolved.cfg", "# saddlescape " + command_ + " (rerun: saddlescape " + command_ +
                              " --config resolved.cfg --out-dir DIR)\n" + format_config(config));
    Json cfg = Json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

    Json manifest;
    manifest["tool"] = "saddlescape";
    manifest["version"] = kVersion;
    manifest["command"] = command_;
    manifest["seed"] = seed;
    manifest["config"] = std::move(cfg);
    manifest["outputs"] = outputs_;
    manifest["timestamp"] = stamp;
    manifest["wall_clock_seconds"] = elapsed;
    const fs::path path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  fs::path dir_;
  std::vector<std::string> outputs_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- run

struct RunFlags {
  SolverFlags solver;
  std::string x0;
  std::string x1;
  std::string seed = "0";
  std::string out_dir = "saddlescape_out";
};

int cmd_run(const RunFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const Objective obj = make_objective(f.solver.objective);
  const SolverConfig cfg = f.solver.resolve();
  const std::uint64_t seed = parse_seed(f.seed);

  AugmentedState w0;
  if (!f.x0.empty()) {
    w0.x_prev = parse_vector(f.x0);
    w0.x_curr = f.x1.empty() ? w0.x_prev : parse_vector(f.x1);
  } else {
    if (!f.x1.empty()) throw ConfigRejected("--x1 requires --x0");
    ExperimentConfig draw;
    draw.seed = seed;
    w0 = draw_initial_state(obj, draw, 0);
  }
  if (w0.x_prev.size() != obj.dim() || w0.x_curr.size() != obj.dim())
    throw ConfigRejected("start points must have dimension " + std::to_string(obj.dim()));

  validate_config(cfg, obj.lipschitz_bound());
  const Trace trace = run(obj, w0, cfg);
  const TrialOutcome outcome = classify_terminal(obj, trace, 1e-4);

  Json report;
  report["objective"] = obj.name();
  report["solver"] = to_json(cfg);
  report["x0"] = to_json(w0.x_prev);
  report["x1"] = to_json(w0.x_curr);
  report["termination"] = std::string(to_string(trace.termination));
  report["steps"] = trace.steps();
  report["final_point"] = to_json(trace.final_point());
  report["final_grad_norm"] = trace.final_grad_norm();
  report["terminal_class"] =
      outcome.terminal_class ? Json(std::string(to_string(*outcome.terminal_class))) : Json(nullptr);
  report["failure_iteration"] = trace.failure_iteration ? Json(*trace.failure_iteration) : Json(nullptr);
  report["failure_message"] = trace.failure_message;
  if (trace.states.size() >= 2) {
    report["descent_certificate"] = to_json(
        verify_descent(trace, obj, cfg.gamma, cfg.beta, default_cert_tol(trace, cfg.prox_inner_tol)));
  } else {
    report["descent_certificate"] = nullptr;
  }
  report["residual_bound"] =
      residual_bound_json(gradient_residual_bound(trace, cfg.gamma, cfg.beta, cfg.prox_inner_tol));
  report["summability"] = to_json(displacement_summability(trace));

  OutputSet out("run", f.out_dir);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  out.write("trace.csv", csv.str());
  out.write("run_report.json", dump(report));

  ConfigEntries config;
  SolverFlags::echo(config, f.solver.objective, cfg);
  config.emplace_back("x0", format_vector(w0.x_prev));
  config.emplace_back("x1", format_vector(w0.x_curr));
  config.emplace_back("seed", std::to_string(seed));
  out.finish(config, seed, start);

  std::cout << "termination=" << to_string(trace.termination) << " steps=" << trace.steps()
            << " final_point=" << format_vector(trace.final_point())
            << " final_grad_norm=" << format_double(trace.final_grad_norm()) << " terminal_class="
            << (outcome.terminal_class ? to_string(*outcome.terminal_class) : std::string_view("Unresolved")) << '\n';

  switch (trace.termination) {
    case Termination::GradToleranceMet:
      return kExitOk;
    case Termination::MaxIters:
      return kExitMaxIters;
    case Termination::Diverged:
      return kExitDiverged;
  }
  return kExitFailure;
}

// ---------------------------------------------------------------- classify

struct ClassifyFlags {
  SolverFlags solver;
  std::string point;
  std::string grad_tol = "1e-08";
  std::string curvature_tol = "1e-06";
  std::string verdict_tol = "1e-06";
  std::string out_dir = "saddlescape_out";
};

int cmd_classify(const ClassifyFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const Objective obj = make_objective(f.solver.objective);
  SolverConfig cfg = f.solver.resolve();
  if (f.point.empty()) throw ConfigRejected("--point is required");
  const Vector x = parse_vector(f.point);
  if (x.size() != obj.dim()) throw ConfigRejected("--point must have dimension " + std::to_string(obj.dim()));
  if (cfg.enforce_bounds) validate_config(cfg, obj.lipschitz_bound());

  StabilityOptions opts;
  opts.grad_tol = parse_number("classify-grad-tol", f.grad_tol);
  opts.curvature_tol = parse_number("curvature-tol", f.curvature_tol);
  opts.verdict_tol = parse_number("verdict-tol", f.verdict_tol);
  const StabilityReport rep = analyze_stability(obj, x, cfg, opts);

  Json j = to_json(rep);
  j["objective"] = obj.name();
  OutputSet out("classify", f.out_dir);
  out.write("stability_report.json", dump(j));

  ConfigEntries config;
  SolverFlags::echo(config, f.solver.objective, cfg);
  config.emplace_back("point", format_vector(x));
  config.emplace_back("classify_grad_tol", format_double(opts.grad_tol));
  config.emplace_back("curvature_tol", format_double(opts.curvature_tol));
  config.emplace_back("verdict_tol", format_double(opts.verdict_tol));
  out.finish(config, 0, start);

  std::cout << dump(j);
  return kExitOk;
}

// ---------------------------------------------------------------- escape

struct EscapeFlags {
  SolverFlags solver;
  std::string trials = "1000";
  std::string seed = "0";
  std::string init = "uniform_box";
  std::string gaussian_scale = "0.1";
  bool x1_equals_x0 = false;
  std::string match_radius = "0.0001";
  int threads = 0;
  std::string out_dir = "saddlescape_out";

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    cfg.objective_name = solver.objective;
    cfg.solver = solver.resolve();
    cfg.num_trials = parse_count("trials", trials);
    cfg.seed = parse_seed(seed);
    cfg.init_distribution = parse_init_distribution(init);
    cfg.gaussian_scale = parse_number("gaussian-scale", gaussian_scale);
    cfg.independent_x1 = !x1_equals_x0;
    cfg.terminal_match_radius = parse_number("match-radius", match_radius);
    cfg.threads = threads;
    return cfg;
  }

  static void echo(ConfigEntries& out, const ExperimentConfig& cfg) {
    SolverFlags::echo(out, cfg.objective_name, cfg.solver);
    out.emplace_back("trials", std::to_string(cfg.num_trials));
    out.emplace_back("seed", std::to_string(cfg.seed));
    out.emplace_back("init", std::string(to_string(cfg.init_distribution)));
    out.emplace_back("gaussian_scale", format_double(cfg.gaussian_scale));
    out.emplace_back("x1_equals_x0", cfg.independent_x1 ? "false" : "true");
    out.emplace_back("match_radius", format_double(cfg.terminal_match_radius));
  }
};

int cmd_escape(const EscapeFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = f.resolve();
  const EscapeReport rep = run_monte_carlo(cfg);

  OutputSet out("escape", f.out_dir);
  out.write("escape_report.json", dump(to_json(rep)));
  std::ostringstream csv;
  write_escape_csv(csv, rep);
  out.write("escape_trials.csv", csv.str());
  ConfigEntries config;
  EscapeFlags::echo(config, cfg);
  out.finish(config, cfg.seed, start);

  std::cout << "trials=" << rep.trials << " saddle_terminations=" << rep.saddle_terminations()
            << " local_min=" << rep.count(CriticalPointClass::LocalMinCandidate) << " unresolved=" << rep.unresolved
            << " escape_fraction=" << format_double(rep.escape_fraction) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- probe

int cmd_probe(const SolverFlags& solver, const std::string& perturbation, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const SolverConfig cfg = solver.resolve();
  const double eps = parse_number("perturbation", perturbation);
  const ProbeReport rep = stable_manifold_probe(solver.objective, cfg, eps);

  OutputSet out("probe", out_dir);
  out.write("probe_report.json", dump(to_json(rep)));
  ConfigEntries config;
  SolverFlags::echo(config, solver.objective, cfg);
  config.emplace_back("perturbation", format_double(eps));
  out.finish(config, 0, start);

  std::cout << "reached_saddle=" << rep.reached_saddle() << " escaped=" << rep.escaped()
            << " saddle_fixed=" << rep.saddle_fixed() << '\n';
  return rep.passed() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  EscapeFlags base;
  std::string gammas;
};

int cmd_sweep(const SweepFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.gammas.empty()) throw ConfigRejected("--gammas is required");
  const Vector gv = parse_vector(f.gammas);
  const std::vector<double> gammas(gv.data(), gv.data() + gv.size());
  ExperimentConfig base = f.base.resolve();
  base.solver.enforce_bounds = false;

  const SweepTable table = stepsize_sweep(base.objective_name, base.solver.algorithm, base.solver.beta, gammas,
                                          base.num_trials, base.seed, base);

  OutputSet out("sweep", f.base.out_dir);
  std::ostringstream csv;
  write_sweep_csv(csv, table);
  out.write("sweep.csv", csv.str());
  out.write("sweep_report.json", dump(to_json(table)));
  ConfigEntries config;
  EscapeFlags::echo(config, base);
  config.emplace_back("gammas", format_vector(gv));
  out.finish(config, base.seed, start);

  std::cout << csv.str();
  return kExitOk;
}

// ---------------------------------------------------------------- corpus-check

int cmd_corpus_check(const std::vector<std::string>& names, const std::string& points, const std::string& seed,
                     const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const long n_points = parse_count("points", points);
  const std::uint64_t s = parse_seed(seed);
  const std::vector<std::string> members = names.empty() ? default_corpus() : names;

  Json results = Json::array();
  bool all = true;
  for (const auto& name : members) {
    const CorpusCheck c = validate_objective(make_objective(name), static_cast<int>(n_points), s);
    all = all && c.passed;
    results.push_back(to_json(c));
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
  }
  Json j;
  j["members"] = std::move(results);
  j["passed"] = all;

  OutputSet out("corpus-check", out_dir);
  out.write("corpus_check.json", dump(j));
  ConfigEntries config;
  for (const auto& name : members) config.emplace_back("objective", name);
  config.emplace_back("points", std::to_string(n_points));
  config.emplace_back("seed", std::to_string(s));
  out.finish(config, s, start);
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Heavy-ball saddle-escape toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", kVersion);

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run one trajectory and certify it");
  run_flags.solver.attach(run_cmd);
  run_cmd->add_option("--x0", run_flags.x0, "First start point x^0 (comma-separated)");
  run_cmd->add_option("--x1", run_flags.x1, "Second start point x^1 (defaults to x^0)");
  run_cmd->add_option("--seed", run_flags.seed, "Seed for random starts when --x0 is absent");
  run_cmd->add_option("--out-dir", run_flags.out_dir, "Output directory");

  ClassifyFlags classify_flags;
  auto* classify_cmd = app.add_subcommand("classify", "Stability report at a point");
  classify_flags.solver.attach(classify_cmd);
  classify_cmd->add_option("--point", classify_flags.point, "Point to analyze (comma-separated)");
  classify_cmd->add_option("--classify-grad-tol", classify_flags.grad_tol, "Criticality gradient tolerance");
  classify_cmd->add_option("--curvature-tol", classify_flags.curvature_tol, "Curvature sign tolerance");
  classify_cmd->add_option("--verdict-tol", classify_flags.verdict_tol, "Instability margin above 1");
  classify_cmd->add_option("--out-dir", classify_flags.out_dir, "Output directory");

  auto attach_escape = [](CLI::App* cmd, EscapeFlags& f) {
    f.solver.attach(cmd);
    cmd->add_option("--trials", f.trials, "Number of random initializations");
    cmd->add_option("--seed", f.seed, "64-bit experiment seed");
    cmd->add_option("--init", f.init, "uniform_box or gaussian_at_saddle");
    cmd->add_option("--gaussian-scale", f.gaussian_scale, "Std. deviation of gaussian_at_saddle draws");
    cmd->add_flag("--x1-equals-x0", f.x1_equals_x0, "Start with zero momentum (x^1 = x^0)");
    cmd->add_option("--match-radius", f.match_radius, "Terminal matching radius for known critical points");
    cmd->add_option("--threads", f.threads, "Worker threads (default: SADDLESCAPE_THREADS or all cores)");
    cmd->add_option("--out-dir", f.out_dir, "Output directory");
  };

  EscapeFlags escape_flags;
  auto* escape_cmd = app.add_subcommand("escape", "Monte Carlo escape experiment");
  attach_escape(escape_cmd, escape_flags);

  SweepFlags sweep_flags;
  sweep_flags.base.trials = "100";
  auto* sweep_cmd = app.add_subcommand("sweep", "Stepsize sweep across the escape bounds");
  attach_escape(sweep_cmd, sweep_flags.base);
  sweep_cmd->add_option("--gammas", sweep_flags.gammas, "Comma-separated stepsizes");

  SolverFlags probe_flags;
  std::string probe_perturbation = "1e-08";
  std::string probe_out = "saddlescape_out";
  auto* probe_cmd = app.add_subcommand("probe", "Stable-manifold positive control");
  probe_flags.attach(probe_cmd);
  probe_cmd->add_option("--perturbation", probe_perturbation, "Offset along the unstable direction");
  probe_cmd->add_option("--out-dir", probe_out, "Output directory");

  std::vector<std::string> corpus_names;
  std::string corpus_points = "100";
  std::string corpus_seed = "2024";
  std::string corpus_out = "saddlescape_out";
  auto* corpus_cmd = app.add_subcommand("corpus-check", "Self-validate corpus members");
  corpus_cmd->add_option("--objective", corpus_names, "Members to check (default: built-in list)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  corpus_cmd->add_option("--points", corpus_points, "Random points per member");
  corpus_cmd->add_option("--seed", corpus_seed, "Sampling seed");
  corpus_cmd->add_option("--out-dir", corpus_out, "Output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags);
    if (*classify_cmd) return cmd_classify(classify_flags);
    if (*escape_cmd) return cmd_escape(escape_flags);
    if (*sweep_cmd) return cmd_sweep(sweep_flags);
    if (*probe_cmd) return cmd_probe(probe_flags, probe_perturbation, probe_out);
    if (*corpus_cmd) return cmd_corpus_check(corpus_names, corpus_points, corpus_seed, corpus_out);
  } catch (const ConfigRejected& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
