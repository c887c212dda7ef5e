#include "saddlescape/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saddlescape {

namespace {

double trajectory_scale(const Trace& trace) {
  double scale = 0.0;
  for (const auto& w : trace.states) scale = std::max({scale, w.x_curr.norm(), w.x_prev.norm()});
  return scale;
}

}  // namespace

double lyapunov_value(const Objective& obj, const Vector& x, const Vector& y, double gamma, double beta) {
  if (!(gamma > 0.0)) throw std::invalid_argument("lyapunov_value: gamma must be positive");
  return obj.value(x) + beta / (2.0 * gamma) * (x - y).squaredNorm();
}

double default_cert_tol(const Trace& trace, double prox_inner_tol) {
  return 10.0 * prox_inner_tol * (1.0 + trajectory_scale(trace));
}

DescentCertificate verify_descent(const Trace& trace, const Objective& obj, double gamma, double beta,
                                  double cert_tol) {
  if (trace.states.size() < 2) throw std::invalid_argument("verify_descent: trace needs at least 2 states");
  DescentCertificate cert;
  cert.nu = (1.0 - 2.0 * beta) / (2.0 * gamma);
  cert.cert_tol = cert_tol;
  cert.diagnostic_only = trace.algorithm != Algorithm::HBPPA;
  cert.max_slack = -INFINITY;

  double h_prev = lyapunov_value(obj, trace.states[0].x_curr, trace.states[0].x_prev, gamma, beta);
  for (std::size_t k = 0; k + 1 < trace.states.size(); ++k) {
    const auto& next = trace.states[k + 1];
    const double h_next = lyapunov_value(obj, next.x_curr, next.x_prev, gamma, beta);
    const double slack = h_next + cert.nu * (next.x_curr - next.x_prev).squaredNorm() - h_prev;
    cert.max_slack = std::max(cert.max_slack, slack);
    if (!(slack <= cert_tol)) {
      cert.violations.push_back({k, slack});
      cert.max_violation = std::max(cert.max_violation, std::isfinite(slack) ? slack : INFINITY);
    }
    ++cert.checked_steps;
    h_prev = h_next;
  }
  return cert;
}

std::vector<bool> gradient_residual_bound(const Trace& trace, double gamma, double beta, double prox_inner_tol) {
  std::vector<bool> holds;
  const std::size_t n = trace.states.size();
  if (n < 2) return holds;
  const double slack = 2.0 * prox_inner_tol * (1.0 + trajectory_scale(trace)) / gamma;
  holds.reserve(n - 1);
  // displacements[k] = |x^k - x^{k-1}| in the trace's own indexing.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double rhs = (trace.displacements[k + 1] + beta * trace.displacements[k]) / gamma;
    const double grad = trace.algorithm == Algorithm::HBPPA ? trace.grad_norms[k + 1] : trace.grad_norms[k];
    holds.push_back(grad <= rhs + slack + 1e-12 * rhs);
  }
  return holds;
}

Summability displacement_summability(const Trace& trace) {
  Summability out;
  // displacements[0] is the initial gap |x^1 - x^0|, not a step.
  const std::size_t steps = trace.displacements.empty() ? 0 : trace.displacements.size() - 1;
  out.partial_sums.reserve(steps);
  double sum = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    sum += trace.displacements[i];
    out.partial_sums.push_back(sum);
  }
  const std::size_t n = out.partial_sums.size();
  if (n <= 1) {
    out.plateaued = n == 0 || std::isfinite(sum);
    return out;
  }
  if (!std::isfinite(sum)) return out;
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  const double before_tail = out.partial_sums[n - 1 - tail];
  out.plateaued = (sum - before_tail) <= 1e-6 * sum;
  return out;
}

}  // namespace saddlescape
