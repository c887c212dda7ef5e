#include "saddlescape/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/random.hpp"
#include "saddlescape/stability.hpp"

namespace saddlescape {

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

const KnownCritical* first_strict_saddle(const Objective& obj) {
  for (const auto& c : obj.known_criticals())
    if (c.expected == CriticalPointClass::StrictSaddle) return &c;
  return nullptr;
}

}  // namespace

std::string_view to_string(InitDistribution d) {
  return d == InitDistribution::UniformBox ? "uniform_box" : "gaussian_at_saddle";
}

InitDistribution parse_init_distribution(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "uniform_box" || lower == "uniformbox" || lower == "uniform") return InitDistribution::UniformBox;
  if (lower == "gaussian_at_saddle" || lower == "gaussianatsaddle" || lower == "gaussian")
    return InitDistribution::GaussianAtSaddle;
  throw ConfigRejected("unknown init distribution '" + std::string(text) + "'");
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SADDLESCAPE_THREADS")) {
    int v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc() && ptr == end && v > 0) return v;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

AugmentedState draw_initial_state(const Objective& obj, const ExperimentConfig& cfg, std::size_t index) {
  Rng rng(trial_seed(cfg.seed, index));
  auto draw = [&]() -> Vector {
    if (cfg.init_distribution == InitDistribution::UniformBox) return rng.uniform_in(obj.region());
    const KnownCritical* saddle = first_strict_saddle(obj);
    if (!saddle) throw ConfigRejected(obj.name() + " has no strict saddle to center Gaussian draws on");
    return rng.normal_around(saddle->point, cfg.gaussian_scale);
  };
  AugmentedState w;
  w.x_prev = draw();  // x^0
  w.x_curr = cfg.independent_x1 ? draw() : w.x_prev;
  return w;
}

TrialOutcome classify_terminal(const Objective& obj, const Trace& trace, double match_radius) {
  TrialOutcome out;
  out.termination = trace.termination;
  out.terminal_point = trace.final_point();
  out.iterations = trace.steps();
  out.final_grad_norm = trace.final_grad_norm();
  if (trace.termination != Termination::GradToleranceMet) return out;

  double best = std::numeric_limits<double>::infinity();
  const auto& crit = obj.known_criticals();
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double d = (crit[i].point - out.terminal_point).norm();
    if (d <= match_radius && d < best) {
      best = d;
      out.matched_critical = i;
    }
  }
  if (out.matched_critical) {
    out.terminal_class = classify_critical_point(obj, crit[*out.matched_critical].point);
  } else {
    out.terminal_class = classify_critical_point(obj, out.terminal_point, std::max(kDefaultGradTol, out.final_grad_norm));
  }
  return out;
}

EscapeReport run_monte_carlo(const ExperimentConfig& cfg) {
  const Objective obj = make_objective(cfg.objective_name);
  if (cfg.num_trials < 0) throw ConfigRejected("num_trials must be non-negative");
  validate_config(cfg.solver, obj.lipschitz_bound());

  EscapeReport report;
  report.config = cfg;
  report.trials = cfg.num_trials;
  report.per_trial.resize(static_cast<std::size_t>(cfg.num_trials));

  parallel_for(report.per_trial.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const AugmentedState w0 = draw_initial_state(obj, cfg, i);
    const Trace trace = run(obj, w0, cfg.solver);
    TrialOutcome outcome = classify_terminal(obj, trace, cfg.terminal_match_radius);
    outcome.trial = i;
    outcome.seed = trial_seed(cfg.seed, i);
    report.per_trial[i] = std::move(outcome);
  });

  for (const auto& t : report.per_trial) {
    if (t.terminal_class) {
      ++report.class_counts[static_cast<std::size_t>(*t.terminal_class)];
    } else {
      ++report.unresolved;
    }
    if (t.termination == Termination::Diverged) ++report.diverged;
    if (t.termination == Termination::GradToleranceMet) ++report.converged;
  }
  if (report.trials > 0) {
    report.escape_fraction =
        static_cast<double>(report.trials - report.saddle_terminations()) / static_cast<double>(report.trials);
  }
  return report;
}

bool ProbeReport::reached_saddle() const {
  return on_slice.outcome.terminal_class == CriticalPointClass::StrictSaddle;
}

bool ProbeReport::escaped() const {
  return perturbed.outcome.terminal_class.has_value() &&
         perturbed.outcome.terminal_class != CriticalPointClass::StrictSaddle;
}

bool ProbeReport::saddle_fixed() const {
  return at_saddle.outcome.terminal_class == CriticalPointClass::StrictSaddle &&
         (at_saddle.outcome.terminal_point - saddle).norm() == 0.0;
}

ProbeReport stable_manifold_probe(std::string_view objective_name, const SolverConfig& solver, double perturbation,
                                  double match_radius) {
  const Objective obj = make_objective(objective_name);
  const auto& slice = obj.stable_slice();
  if (!slice) throw ConfigRejected(obj.name() + " has no analytic stable slice to probe");

  ProbeReport rep;
  rep.objective_name = obj.name();
  rep.solver = solver;
  rep.saddle = slice->saddle;
  rep.perturbation = perturbation;

  auto probe = [&](const Vector& start) {
    ProbeRun pr;
    pr.start = start;
    const Trace trace = run(obj, {start, start}, solver);
    pr.outcome = classify_terminal(obj, trace, match_radius);
    return pr;
  };
  rep.on_slice = probe(slice->on_slice_start);
  rep.perturbed = probe(slice->on_slice_start + perturbation * slice->unstable_direction);
  rep.at_saddle = probe(slice->saddle);
  return rep;
}

SweepTable stepsize_sweep(std::string_view objective_name, Algorithm algorithm, double beta,
                          const std::vector<double>& gammas, long trials_per_gamma, std::uint64_t seed,
                          const ExperimentConfig& base) {
  const Objective obj = make_objective(objective_name);
  SweepTable table;
  table.objective_name = obj.name();
  table.algorithm = algorithm;
  table.beta = beta;
  table.lipschitz = obj.lipschitz_bound();
  table.trials_per_gamma = trials_per_gamma;
  table.seed = seed;
  const auto range = convergent_stepsize_range(algorithm, beta, obj.lipschitz_bound());

  for (double gamma : gammas) {
    ExperimentConfig cfg = base;
    cfg.objective_name = std::string(objective_name);
    cfg.solver.algorithm = algorithm;
    cfg.solver.beta = beta;
    cfg.solver.gamma = gamma;
    cfg.solver.enforce_bounds = false;
    cfg.num_trials = trials_per_gamma;
    cfg.seed = seed;

    SweepRow row;
    row.gamma = gamma;
    row.in_bounds = range && range->contains(gamma);
    // Ill-posed prox sub-problems (gamma L >= 1) surface as Diverged trials.
    const EscapeReport rep = run_monte_carlo(cfg);
    row.trials = rep.trials;
    row.saddle_terminations = rep.saddle_terminations();
    row.converged = rep.converged;
    row.diverged = rep.diverged;
    row.escape_fraction = rep.escape_fraction;
    if (rep.trials > 0) {
      row.convergence_fraction = static_cast<double>(rep.converged) / static_cast<double>(rep.trials);
      double iters = 0.0;
      for (const auto& t : rep.per_trial) iters += static_cast<double>(t.iterations);
      row.mean_iterations = iters / static_cast<double>(rep.trials);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace saddlescape
