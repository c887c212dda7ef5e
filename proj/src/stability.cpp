#include "saddlescape/stability.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "saddlescape/errors.hpp"

namespace saddlescape {

namespace {

Matrix companion_from_blocks(const Matrix& top_left, const Matrix& top_right) {
  const Index n = top_left.rows();
  Matrix df = Matrix::Zero(2 * n, 2 * n);
  df.topLeftCorner(n, n) = top_left;
  df.topRightCorner(n, n) = top_right;
  df.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return df;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::UnstableFixedPoint ? "UnstableFixedPoint" : "StableOrInconclusive";
}

CriticalPointClass classify_critical_point(const Objective& obj, const Vector& x, double grad_tol,
                                           double curvature_tol) {
  if (obj.gradient(x).norm() > grad_tol) return CriticalPointClass::NotCritical;
  const double lmin = hessian_spectrum(obj.hessian(x)).front();
  if (lmin < -curvature_tol) return CriticalPointClass::StrictSaddle;
  if (lmin > curvature_tol) return CriticalPointClass::LocalMinCandidate;
  return CriticalPointClass::Degenerate;
}

Matrix companion_jacobian_hbgd(const Objective& obj, const Vector& y, double gamma, double beta) {
  const Index n = obj.dim();
  const Matrix a = (1.0 + beta) * Matrix::Identity(n, n) - gamma * obj.hessian(y);
  return companion_from_blocks(a, -beta * Matrix::Identity(n, n));
}

Matrix hbppa_a_matrix(const Objective& obj, const Vector& p, double gamma) {
  const Index n = obj.dim();
  const Matrix system = gamma * obj.hessian(p) + Matrix::Identity(n, n);
  const Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success)
    throw ConfigRejected("gamma * Hess f + I is not positive definite (gamma = " + num(gamma) + ")");
  return llt.solve(Matrix::Identity(n, n));
}

Matrix companion_jacobian_hbppa(const Objective& obj, const Vector& y, const Vector& z, double gamma, double beta,
                                const SolverConfig& prox_cfg) {
  if (prox_cfg.enforce_bounds && gamma * obj.lipschitz_bound() >= 1.0)
    throw ConfigRejected("HBPPA Jacobian requires gamma < 1/L = " + num(1.0 / obj.lipschitz_bound()));
  const Vector g = prox(obj, gamma, y + beta * (y - z), prox_cfg);
  const Matrix a = hbppa_a_matrix(obj, g, gamma);
  return companion_from_blocks((1.0 + beta) * a, -beta * a);
}

Matrix companion_jacobian_hbppa(const Objective& obj, const Vector& x, double gamma, double beta,
                                const SolverConfig& prox_cfg) {
  return companion_jacobian_hbppa(obj, x, x, gamma, beta, prox_cfg);
}

double analytic_unstable_root_hbgd(double lambda_max_a, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigRejected("HBGD unstable root requires 0 < beta < 1");
  if (!(lambda_max_a > 1.0 + beta))
    throw ConfigRejected("HBGD unstable root requires lambda_max(A) > 1 + beta, got " + num(lambda_max_a));
  return 0.5 * (lambda_max_a + std::sqrt(lambda_max_a * lambda_max_a - 4.0 * beta));
}

double analytic_unstable_root_hbppa(double lambda_max_a, double beta) {
  if (!(beta > 0.0 && beta < 0.5)) throw ConfigRejected("HBPPA unstable root requires 0 < beta < 1/2");
  if (!(lambda_max_a > 1.0))
    throw ConfigRejected("HBPPA unstable root requires lambda_max(A) > 1, got " + num(lambda_max_a));
  const double b = (1.0 + beta) * lambda_max_a;
  return 0.5 * (b + std::sqrt(b * b - 4.0 * beta * lambda_max_a));
}

StabilityReport analyze_stability(const Objective& obj, const Vector& x, const SolverConfig& cfg,
                                  const StabilityOptions& opts) {
  StabilityReport rep;
  rep.algorithm = cfg.algorithm;
  rep.gamma = cfg.gamma;
  rep.beta = cfg.beta;
  rep.point = x;
  rep.grad_norm = obj.gradient(x).norm();
  rep.critical_class = classify_critical_point(obj, x, opts.grad_tol, opts.curvature_tol);
  rep.hessian_spectrum = hessian_spectrum(obj.hessian(x));

  const Index n = obj.dim();
  Matrix df;
  if (cfg.algorithm == Algorithm::HBGD) {
    df = companion_jacobian_hbgd(obj, x, cfg.gamma, cfg.beta);
    const Matrix a = (1.0 + cfg.beta) * Matrix::Identity(n, n) - cfg.gamma * obj.hessian(x);
    rep.a_matrix_extreme = hessian_spectrum(a).back();
  } else {
    df = companion_jacobian_hbppa(obj, x, cfg.gamma, cfg.beta, cfg);
    const Vector g = prox(obj, cfg.gamma, x, cfg);
    const Matrix a = hbppa_a_matrix(obj, g, cfg.gamma);
    rep.a_matrix_extreme = hessian_spectrum(0.5 * (a + a.transpose())).back();
  }

  const DominantEigenvalue dom = dominant_eigenvalue(df);
  rep.companion_dominant = dom.magnitude;
  rep.companion_inconclusive = dom.inconclusive;
  rep.companion_cross_check = dom.cross_check;
  rep.jacobian_det_magnitude = std::abs(df.partialPivLu().determinant());

  if (rep.critical_class == CriticalPointClass::StrictSaddle) {
    try {
      rep.analytic_unstable_root = cfg.algorithm == Algorithm::HBGD
                                       ? analytic_unstable_root_hbgd(rep.a_matrix_extreme, cfg.beta)
                                       : analytic_unstable_root_hbppa(rep.a_matrix_extreme, cfg.beta);
    } catch (const ConfigRejected&) {
      // Parameters outside the root's preconditions: no analytic value.
    }
  }

  const bool decidable = rep.critical_class == CriticalPointClass::StrictSaddle ||
                         rep.critical_class == CriticalPointClass::LocalMinCandidate;
  rep.verdict = decidable && rep.companion_dominant > 1.0 + opts.verdict_tol ? Verdict::UnstableFixedPoint
                                                                             : Verdict::StableOrInconclusive;
  return rep;
}

}  // namespace saddlescape
