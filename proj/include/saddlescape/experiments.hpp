#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saddlescape/objective.hpp"
#include "saddlescape/solver.hpp"

namespace saddlescape {

enum class InitDistribution { UniformBox, GaussianAtSaddle };

std::string_view to_string(InitDistribution d);
InitDistribution parse_init_distribution(std::string_view text);

struct ExperimentConfig {
  std::string objective_name = "double_well";
  SolverConfig solver;
  long num_trials = 1000;
  InitDistribution init_distribution = InitDistribution::UniformBox;
  /// Standard deviation of GaussianAtSaddle draws.
  double gaussian_scale = 0.1;
  /// Draw x^1 independently of x^0; otherwise x^1 = x^0 (zero momentum).
  bool independent_x1 = true;
  std::uint64_t seed = 0;
  double terminal_match_radius = 1e-4;
  /// Worker threads; 0 means SADDLESCAPE_THREADS, else hardware concurrency.
  int threads = 0;
};

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Termination termination = Termination::MaxIters;
  /// Empty for unresolved trials (MaxIters or Diverged).
  std::optional<CriticalPointClass> terminal_class;
  /// Index into known_criticals of the matched point, if any.
  std::optional<std::size_t> matched_critical;
  Vector terminal_point;
  std::size_t iterations = 0;
  double final_grad_norm = 0.0;
};

struct EscapeReport {
  ExperimentConfig config;
  long trials = 0;
  /// Indexed by CriticalPointClass.
  std::array<long, 4> class_counts{};
  long unresolved = 0;
  long diverged = 0;
  long converged = 0;
  /// (trials - StrictSaddle terminations) / trials; 1 for an empty report.
  double escape_fraction = 1.0;
  std::vector<TrialOutcome> per_trial;

  long count(CriticalPointClass c) const { return class_counts[static_cast<std::size_t>(c)]; }
  long saddle_terminations() const { return count(CriticalPointClass::StrictSaddle); }
};

/// Resolved worker count: `requested` if positive, else SADDLESCAPE_THREADS,
/// else hardware concurrency (at least 1).
int worker_count(int requested);

/// Initial state of trial `index`: depends only on (cfg.seed, index).
AugmentedState draw_initial_state(const Objective& obj, const ExperimentConfig& cfg, std::size_t index);

/// Classifies a finished trace. Converged terminals are matched against
/// known_criticals within `match_radius` (class re-derived from the Hessian
/// at the listed point); unmatched ones are classified at the terminal
/// iterate itself.
TrialOutcome classify_terminal(const Objective& obj, const Trace& trace, double match_radius);

/// Runs cfg.num_trials independent trajectories in parallel and aggregates
/// them in trial order. Identical configs give identical reports.
EscapeReport run_monte_carlo(const ExperimentConfig& cfg);

struct ProbeRun {
  Vector start;
  TrialOutcome outcome;
};

/// Positive control: a start on the saddle's stable slice must converge to
/// it, the same start nudged along the unstable direction must escape, and
/// the saddle itself must stay put.
struct ProbeReport {
  std::string objective_name;
  SolverConfig solver;
  Vector saddle;
  double perturbation = 0.0;
  ProbeRun on_slice;
  ProbeRun perturbed;
  ProbeRun at_saddle;

  bool reached_saddle() const;
  bool escaped() const;
  bool saddle_fixed() const;
  bool passed() const { return reached_saddle() && escaped() && saddle_fixed(); }
};

/// Throws ConfigRejected for objectives without an analytic stable slice.
ProbeReport stable_manifold_probe(std::string_view objective_name, const SolverConfig& solver,
                                  double perturbation = 1e-8, double match_radius = 1e-4);

struct SweepRow {
  double gamma = 0.0;
  bool in_bounds = false;
  long trials = 0;
  long saddle_terminations = 0;
  long converged = 0;
  long diverged = 0;
  double escape_fraction = 1.0;
  double convergence_fraction = 0.0;
  double mean_iterations = 0.0;
};

struct SweepTable {
  std::string objective_name;
  Algorithm algorithm = Algorithm::HBGD;
  double beta = 0.0;
  double lipschitz = 0.0;
  long trials_per_gamma = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
};

/// Reduced Monte Carlo per stepsize with enforce_bounds off. `in_bounds`
/// marks gammas inside the convergent range (which admits beta = 0).
/// Divergent trials are counted, never raised. `base` supplies the remaining
/// solver settings; every row reuses the same trial seeds.
SweepTable stepsize_sweep(std::string_view objective_name, Algorithm algorithm, double beta,
                          const std::vector<double>& gammas, long trials_per_gamma, std::uint64_t seed,
                          const ExperimentConfig& base = {});

}  // namespace saddlescape
