#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saddlescape/objective.hpp"

namespace saddlescape {

enum class Algorithm { HBGD, HBPPA };

std::string_view to_string(Algorithm a);
/// Accepts "hbgd"/"hbppa" in any case; throws ConfigRejected otherwise.
Algorithm parse_algorithm(std::string_view text);

/// w = (x_curr, x_prev) in R^{2N}. One step maps (x_curr, x_prev) to
/// (x_next, x_curr).
struct AugmentedState {
  Vector x_curr;
  Vector x_prev;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::HBGD;
  double gamma = 0.1;
  double beta = 0.25;
  long max_iters = 100000;
  double grad_stop_tol = 1e-8;
  double prox_inner_tol = 1e-12;
  int prox_max_inner_iters = 100;
  /// Reject (gamma, beta) outside the escape-guarantee ranges.
  bool enforce_bounds = true;
};

enum class Termination { GradToleranceMet, MaxIters, Diverged };

std::string_view to_string(Termination t);

/// Iterates above this magnitude (or non-finite) end a run as Diverged.
inline constexpr double kDivergenceThreshold = 1e12;

/// Full iterate history. Entry i of every series belongs to states[i]:
/// grad_norms[i] = |grad f(x_curr)|, lyapunov_values[i] = H(states[i]),
/// displacements[i] = |x_curr - x_prev| and prox_inner_iters[i] = inner
/// iterations spent producing states[i] (0 for the initial state and HBGD).
struct Trace {
  Algorithm algorithm = Algorithm::HBGD;
  double gamma = 0.0;
  double beta = 0.0;

  std::vector<AugmentedState> states;
  std::vector<double> grad_norms;
  std::vector<double> lyapunov_values;
  std::vector<double> displacements;
  std::vector<int> prox_inner_iters;
  Termination termination = Termination::MaxIters;
  /// Step index at which a step raised (NumericalFailure, ProxNonConvergence).
  std::optional<std::size_t> failure_iteration;
  std::string failure_message;

  /// Number of update steps taken.
  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
  const Vector& final_point() const { return states.back().x_curr; }
  double final_grad_norm() const { return grad_norms.back(); }
};

/// Open interval (lower, upper).
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v) const { return v > lower && v < upper; }
};

/// HBGD: (0, 2(1 - beta)/L) for 0 < beta < 1. HBPPA: (0, 1/L) for
/// 0 < beta < 1/2. Other beta, or L <= 0, throw ConfigRejected.
Interval valid_stepsize_range(Algorithm algorithm, double beta, double lipschitz);

/// Stepsize range under which the plain convergence results hold; unlike
/// valid_stepsize_range it admits beta = 0 (gradient descent / PPA).
std::optional<Interval> convergent_stepsize_range(Algorithm algorithm, double beta, double lipschitz);

/// Throws ConfigRejected naming the violated bound. Without enforce_bounds
/// only gamma > 0, beta >= 0 and the iteration limits are checked.
void validate_config(const SolverConfig& cfg, double lipschitz);

AugmentedState hbgd_step(const Objective& obj, const AugmentedState& w, double gamma, double beta);

struct ProxResult {
  Vector point;
  /// |gamma grad f(y) + y - z|.
  double residual = 0.0;
  int iterations = 0;
};

/// Prox_{gamma f}(z). Uses the objective's closed form when it has one,
/// otherwise prox_newton.
ProxResult prox_solve(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg);

/// Damped Newton on gamma f(y) + |y - z|^2 / 2 started at z, with Armijo
/// backtracking. Stops when the KKT residual is at most
/// prox_inner_tol * max(1, |z|). Iterates where gamma Hess f + I is not
/// positive definite (possible outside the certified region) take a shifted
/// Newton step. Throws ProxNonConvergence if the tolerance is not met within
/// prox_max_inner_iters or the line search stalls, and ConfigRejected if
/// enforce_bounds is set and gamma >= 1/L.
ProxResult prox_newton(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg);

Vector prox(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg);

/// (Prox_{gamma f}(x + beta (x - x_prev)), x). `inner_iters`, when given,
/// receives the sub-solver iteration count.
AugmentedState hbppa_step(const Objective& obj, const AugmentedState& w, double gamma, double beta,
                          const SolverConfig& cfg, int* inner_iters = nullptr);

/// Iterates the configured step from w0 until |grad f(x_curr)| <=
/// grad_stop_tol, max_iters steps, or divergence. Step failures end the run
/// as Diverged with failure_iteration set. Configuration errors throw.
Trace run(const Objective& obj, const AugmentedState& w0, const SolverConfig& cfg);

}  // namespace saddlescape
