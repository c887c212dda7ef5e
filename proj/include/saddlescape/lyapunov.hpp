#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "saddlescape/objective.hpp"
#include "saddlescape/solver.hpp"

namespace saddlescape {

/// H(x, y) = f(x) + beta / (2 gamma) |x - y|^2.
double lyapunov_value(const Objective& obj, const Vector& x, const Vector& y, double gamma, double beta);

struct DescentViolation {
  std::size_t step = 0;  ///< index k of the pair (states[k], states[k + 1])
  double slack = 0.0;    ///< H(w^{k+1}) + nu |x^{k+1} - x^k|^2 - H(w^k)
};

/// Per-trajectory check of H(w^{k+1}) + nu |x^{k+1} - x^k|^2 <= H(w^k),
/// nu = (1 - 2 beta) / (2 gamma). The inequality is guaranteed only for
/// HBPPA with 0 < beta < 1/2; on HBGD traces `diagnostic_only` is set.
struct DescentCertificate {
  std::size_t checked_steps = 0;
  std::vector<DescentViolation> violations;
  double max_violation = 0.0;
  double max_slack = 0.0;  ///< largest slack over all steps, violating or not
  double nu = 0.0;
  double cert_tol = 0.0;
  bool diagnostic_only = false;

  bool holds() const { return violations.empty(); }
};

/// 10 * prox_inner_tol * (1 + max_k |x^k|).
double default_cert_tol(const Trace& trace, double prox_inner_tol);

/// Recomputes H from the trace's states (not its cached lyapunov_values).
/// Throws std::invalid_argument for traces with fewer than 2 states.
DescentCertificate verify_descent(const Trace& trace, const Objective& obj, double gamma, double beta,
                                  double cert_tol);

/// Pointwise gradient bound derived from the update's stationarity identity,
/// one entry per step k >= 1:
///   HBPPA: |grad f(x^{k+1})| <= (|x^{k+1} - x^k| + beta |x^k - x^{k-1}|) / gamma + slack
///   HBGD:  |grad f(x^k)|     <= (|x^{k+1} - x^k| + beta |x^k - x^{k-1}|) / gamma + slack
/// with slack = 2 prox_inner_tol (1 + max_k |x^k|) / gamma.
std::vector<bool> gradient_residual_bound(const Trace& trace, double gamma, double beta, double prox_inner_tol);

struct Summability {
  std::vector<double> partial_sums;  ///< S_k = sum_{i <= k} |x^{i+1} - x^i|, one entry per step
  bool plateaued = false;
};

/// Cumulative step lengths; plateaued when the last 10% of steps (at least
/// one) contribute at most 1e-6 * S_final. Traces with at most one step are
/// vacuously plateaued; non-finite sums never are.
Summability displacement_summability(const Trace& trace);

}  // namespace saddlescape
