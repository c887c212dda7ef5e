#include "saddlescape/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "saddlescape/errors.hpp"
#include "saddlescape/lyapunov.hpp"

namespace saddlescape {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_state(const Objective& obj, const AugmentedState& w) {
  if (w.x_curr.size() != obj.dim() || w.x_prev.size() != obj.dim())
    throw std::invalid_argument("augmented state blocks must both have dimension " + std::to_string(obj.dim()));
}

void check_step_params(double gamma, double beta) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigRejected("gamma must be positive, got " + fmt(gamma));
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigRejected("beta must be non-negative, got " + fmt(beta));
}

void check_prox_stepsize(const Objective& obj, double gamma, const SolverConfig& cfg) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigRejected("prox gamma must be positive, got " + fmt(gamma));
  if (cfg.enforce_bounds && gamma * obj.lipschitz_bound() >= 1.0) {
    throw ConfigRejected("prox requires gamma < 1/L = " + fmt(1.0 / obj.lipschitz_bound()) + " (gamma = " +
                         fmt(gamma) + ", L = " + fmt(obj.lipschitz_bound()) + ")");
  }
}

bool diverged(const AugmentedState& w) {
  return !w.x_curr.allFinite() || w.x_curr.cwiseAbs().maxCoeff() > kDivergenceThreshold;
}

}  // namespace

std::string_view to_string(Algorithm a) { return a == Algorithm::HBGD ? "hbgd" : "hbppa"; }

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "hbgd") return Algorithm::HBGD;
  if (lower == "hbppa") return Algorithm::HBPPA;
  throw ConfigRejected("unknown algorithm '" + std::string(text) + "' (expected hbgd or hbppa)");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::GradToleranceMet:
      return "GradToleranceMet";
    case Termination::MaxIters:
      return "MaxIters";
    case Termination::Diverged:
      return "Diverged";
  }
  return "MaxIters";
}

Interval valid_stepsize_range(Algorithm algorithm, double beta, double lipschitz) {
  if (!(lipschitz > 0.0)) throw ConfigRejected("Lipschitz bound must be positive");
  if (algorithm == Algorithm::HBGD) {
    if (!(beta > 0.0 && beta < 1.0))
      throw ConfigRejected("HBGD escape guarantee requires 0 < beta < 1, got beta = " + fmt(beta));
    return {0.0, 2.0 * (1.0 - beta) / lipschitz};
  }
  if (!(beta > 0.0 && beta < 0.5))
    throw ConfigRejected("HBPPA escape guarantee requires 0 < beta < 1/2, got beta = " + fmt(beta));
  return {0.0, 1.0 / lipschitz};
}

std::optional<Interval> convergent_stepsize_range(Algorithm algorithm, double beta, double lipschitz) {
  if (!(lipschitz > 0.0)) return std::nullopt;
  if (algorithm == Algorithm::HBGD) {
    if (!(beta >= 0.0 && beta < 1.0)) return std::nullopt;
    return Interval{0.0, 2.0 * (1.0 - beta) / lipschitz};
  }
  if (!(beta >= 0.0 && beta < 0.5)) return std::nullopt;
  return Interval{0.0, 1.0 / lipschitz};
}

void validate_config(const SolverConfig& cfg, double lipschitz) {
  check_step_params(cfg.gamma, cfg.beta);
  if (cfg.max_iters < 1) throw ConfigRejected("max_iters must be at least 1");
  if (cfg.prox_max_inner_iters < 1) throw ConfigRejected("prox_max_inner_iters must be at least 1");
  if (!(cfg.grad_stop_tol >= 0.0)) throw ConfigRejected("grad_stop_tol must be non-negative");
  if (!(cfg.prox_inner_tol > 0.0)) throw ConfigRejected("prox_inner_tol must be positive");
  if (!cfg.enforce_bounds) return;

  const Interval range = valid_stepsize_range(cfg.algorithm, cfg.beta, lipschitz);
  if (!range.contains(cfg.gamma)) {
    const std::string bound = cfg.algorithm == Algorithm::HBGD ? "2(1-beta)/L" : "1/L";
    throw ConfigRejected(std::string(cfg.algorithm == Algorithm::HBGD ? "HBGD" : "HBPPA") +
                         " escape guarantee requires 0 < gamma < " + bound + " = " + fmt(range.upper) +
                         " (gamma = " + fmt(cfg.gamma) + ", beta = " + fmt(cfg.beta) + ", L = " + fmt(lipschitz) +
                         ")");
  }
}

AugmentedState hbgd_step(const Objective& obj, const AugmentedState& w, double gamma, double beta) {
  check_state(obj, w);
  check_step_params(gamma, beta);
  const Vector g = obj.gradient(w.x_curr);
  Vector next = w.x_curr - gamma * g + beta * (w.x_curr - w.x_prev);
  return {std::move(next), w.x_curr};
}

ProxResult prox_newton(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg) {
  check_prox_stepsize(obj, gamma, cfg);
  if (z.size() != obj.dim()) throw std::invalid_argument("prox: point dimension mismatch");
  if (!z.allFinite()) throw NumericalFailure("prox: non-finite center");

  const Index n = z.size();
  const double tol = cfg.prox_inner_tol * std::max(1.0, z.norm());
  auto merit = [&](const Vector& y) { return gamma * obj.value(y) + 0.5 * (y - z).squaredNorm(); };
  auto residual = [&](const Vector& y) -> Vector { return gamma * obj.gradient(y) + y - z; };

  Vector y = z;
  Vector r = residual(y);
  double rn = r.norm();
  for (int it = 0;; ++it) {
    if (rn <= tol) return {y, rn, it};
    if (it >= cfg.prox_max_inner_iters) break;

    Matrix h = gamma * obj.hessian(y) + Matrix::Identity(n, n);
    Eigen::LLT<Matrix> llt(h);
    // An iterate outside the certified region can see an indefinite Hessian;
    // shift it until Cholesky succeeds (still a descent direction).
    double shift = 1e-8 * std::max(1.0, h.cwiseAbs().maxCoeff());
    for (int tries = 0; llt.info() != Eigen::Success && tries < 80; ++tries, shift *= 2) {
      llt.compute(h + shift * Matrix::Identity(n, n));
    }
    if (llt.info() != Eigen::Success)
      throw ProxNonConvergence("prox sub-objective is not strongly convex at an inner iterate (gamma = " +
                               fmt(gamma) + ")");
    const Vector d = -llt.solve(r);
    const double slope = r.dot(d);
    const double phi = merit(y);

    bool accepted = false;
    double t = 1.0;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Vector trial = y + t * d;
      if (merit(trial) <= phi + 1e-4 * t * slope) {
        y = trial;
        accepted = true;
        break;
      }
      // Near the solution the merit decrease drops below rounding; a strict
      // residual decrease is then the only usable signal.
      const Vector r_trial = residual(trial);
      if (r_trial.norm() < (1.0 - 1e-4 * t) * rn) {
        y = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw ProxNonConvergence("prox line search stalled at residual " + fmt(rn));
    r = residual(y);
    rn = r.norm();
  }
  throw ProxNonConvergence("prox did not reach residual " + fmt(tol) + " within " +
                           std::to_string(cfg.prox_max_inner_iters) + " iterations (residual " + fmt(rn) + ")");
}

ProxResult prox_solve(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg) {
  if (!obj.has_closed_form_prox()) return prox_newton(obj, gamma, z, cfg);
  check_prox_stepsize(obj, gamma, cfg);
  if (!z.allFinite()) throw NumericalFailure("prox: non-finite center");
  ProxResult out;
  out.point = obj.closed_form_prox(gamma, z);
  out.residual = (gamma * obj.gradient(out.point) + out.point - z).norm();
  return out;
}

Vector prox(const Objective& obj, double gamma, const Vector& z, const SolverConfig& cfg) {
  return prox_solve(obj, gamma, z, cfg).point;
}

AugmentedState hbppa_step(const Objective& obj, const AugmentedState& w, double gamma, double beta,
                          const SolverConfig& cfg, int* inner_iters) {
  check_state(obj, w);
  check_step_params(gamma, beta);
  const Vector z = w.x_curr + beta * (w.x_curr - w.x_prev);
  ProxResult res = prox_solve(obj, gamma, z, cfg);
  if (inner_iters) *inner_iters = res.iterations;
  return {std::move(res.point), w.x_curr};
}

Trace run(const Objective& obj, const AugmentedState& w0, const SolverConfig& cfg) {
  check_state(obj, w0);
  validate_config(cfg, obj.lipschitz_bound());

  Trace trace;
  trace.algorithm = cfg.algorithm;
  trace.gamma = cfg.gamma;
  trace.beta = cfg.beta;

  auto record = [&](AugmentedState w, int inner) {
    double grad = INFINITY;
    double lyap = INFINITY;
    if (!diverged(w)) {
      try {
        grad = obj.gradient(w.x_curr).norm();
        lyap = lyapunov_value(obj, w.x_curr, w.x_prev, cfg.gamma, cfg.beta);
      } catch (const NumericalFailure&) {
      }
    }
    trace.grad_norms.push_back(grad);
    trace.lyapunov_values.push_back(lyap);
    trace.displacements.push_back((w.x_curr - w.x_prev).norm());
    trace.prox_inner_iters.push_back(inner);
    trace.states.push_back(std::move(w));
  };

  record(w0, 0);
  if (diverged(trace.states.back())) {
    trace.termination = Termination::Diverged;
    return trace;
  }

  while (true) {
    if (trace.grad_norms.back() <= cfg.grad_stop_tol) {
      trace.termination = Termination::GradToleranceMet;
      return trace;
    }
    if (static_cast<long>(trace.steps()) >= cfg.max_iters) {
      trace.termination = Termination::MaxIters;
      return trace;
    }

    const AugmentedState& w = trace.states.back();
    AugmentedState next;
    int inner = 0;
    try {
      next = cfg.algorithm == Algorithm::HBGD ? hbgd_step(obj, w, cfg.gamma, cfg.beta)
                                              : hbppa_step(obj, w, cfg.gamma, cfg.beta, cfg, &inner);
    } catch (const NumericalFailure& e) {
      trace.termination = Termination::Diverged;
      trace.failure_iteration = trace.steps() + 1;
      trace.failure_message = e.what();
      return trace;
    } catch (const ProxNonConvergence& e) {
      trace.termination = Termination::Diverged;
      trace.failure_iteration = trace.steps() + 1;
      trace.failure_message = e.what();
      return trace;
    }

    const bool blew_up = diverged(next);
    record(std::move(next), inner);
    if (blew_up) {
      trace.termination = Termination::Diverged;
      return trace;
    }
  }
}

}  // namespace saddlescape
