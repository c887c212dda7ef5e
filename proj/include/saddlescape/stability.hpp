#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "saddlescape/objective.hpp"
#include "saddlescape/solver.hpp"
#include "saddlescape/spectral.hpp"

namespace saddlescape {

inline constexpr double kDefaultGradTol = 1e-8;
inline constexpr double kDefaultCurvatureTol = 1e-6;
inline constexpr double kDefaultVerdictTol = 1e-6;

/// StrictSaddle / LocalMinCandidate / Degenerate by the sign of
/// lambda_min(Hessian) against curvature_tol, for points whose gradient norm
/// is at most grad_tol; NotCritical otherwise.
CriticalPointClass classify_critical_point(const Objective& obj, const Vector& x,
                                           double grad_tol = kDefaultGradTol,
                                           double curvature_tol = kDefaultCurvatureTol);

/// DF(w) = [[(1 + beta) I - gamma Hess f(y), -beta I], [I, 0]] for the
/// heavy-ball gradient map F(y, z) = (y - gamma grad f(y) + beta (y - z), y).
/// DF depends on y = x_curr only.
Matrix companion_jacobian_hbgd(const Objective& obj, const Vector& y, double gamma, double beta);

/// DF(w) = [[(1 + beta) A, -beta A], [I, 0]] with
/// A = (gamma Hess f(g(y, z)) + I)^{-1} and g(y, z) = Prox(y + beta (y - z)).
/// A is formed by Cholesky solves; throws ConfigRejected when the system is
/// not positive definite or, with enforce_bounds, when gamma L >= 1.
Matrix companion_jacobian_hbppa(const Objective& obj, const Vector& y, const Vector& z, double gamma, double beta,
                                const SolverConfig& prox_cfg);

/// Same at the fixed point w = (x, x).
Matrix companion_jacobian_hbppa(const Objective& obj, const Vector& x, double gamma, double beta,
                                const SolverConfig& prox_cfg);

/// (gamma Hess f(p) + I)^{-1}, the HBPPA A-matrix evaluated at the prox output p.
Matrix hbppa_a_matrix(const Objective& obj, const Vector& p, double gamma);

/// Larger root of lambda + beta / lambda = lambda_max_a. Requires
/// lambda_max_a > 1 + beta and 0 < beta < 1 (ConfigRejected otherwise).
double analytic_unstable_root_hbgd(double lambda_max_a, double beta);

/// Larger root of lambda^2 + (beta - (1 + beta) lambda) lambda_max_a = 0.
/// Requires lambda_max_a > 1 and 0 < beta < 1/2 (ConfigRejected otherwise).
double analytic_unstable_root_hbppa(double lambda_max_a, double beta);

enum class Verdict { UnstableFixedPoint, StableOrInconclusive };

std::string_view to_string(Verdict v);

struct StabilityOptions {
  double grad_tol = kDefaultGradTol;
  double curvature_tol = kDefaultCurvatureTol;
  double verdict_tol = kDefaultVerdictTol;
};

struct StabilityReport {
  Algorithm algorithm = Algorithm::HBGD;
  double gamma = 0.0;
  double beta = 0.0;
  Vector point;
  CriticalPointClass critical_class = CriticalPointClass::NotCritical;
  double grad_norm = 0.0;
  std::vector<double> hessian_spectrum;
  /// lambda_max of (1 + beta) I - gamma H (HBGD) or (gamma H + I)^{-1} (HBPPA).
  double a_matrix_extreme = 0.0;
  double companion_dominant = 0.0;
  bool companion_inconclusive = false;
  std::optional<double> companion_cross_check;
  std::optional<double> analytic_unstable_root;
  Verdict verdict = Verdict::StableOrInconclusive;
  double jacobian_det_magnitude = 0.0;
};

/// Full linear-stability picture of w* = (x, x) under the configured
/// algorithm. Degenerate and non-critical points are never declared
/// unstable. The analytic root is reported for strict saddles whenever its
/// preconditions hold.
StabilityReport analyze_stability(const Objective& obj, const Vector& x, const SolverConfig& cfg,
                                  const StabilityOptions& opts = {});

}  // namespace saddlescape
