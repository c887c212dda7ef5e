#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "saddlescape/objective.hpp"

namespace saddlescape {

/// Default half-width of double_well's certified box. On [-h, h]^2 the
/// Hessian norm is max(1, 3h^2 - 1); h = 1.05 gives L = 2.3075, which admits
/// HBGD gamma = 0.5 and HBPPA gamma = 0.4 at beta = 0.25.
inline constexpr double kDoubleWellHalfWidth = 1.05;

/// f(x) = 1/2 sum_i a_i x_i^2 on [-h, h]^N.
Objective quadratic_saddle(std::vector<double> spectrum, double half_width = 1.0);

/// f(x, y) = x^2/2 - y^2/2 + y^4/4: strict saddle at the origin, minima at (0, +-1).
Objective double_well(double half_width = kDoubleWellHalfWidth);

/// f(x, y) = x^3 - 3 x y^2: degenerate critical point at the origin.
Objective monkey_saddle(double half_width = 1.0);

/// Resolves "quadratic_saddle:1,-1", "double_well", "double_well:2",
/// "monkey_saddle". The optional suffix of double_well/monkey_saddle is the
/// box half-width. Unknown names throw ConfigRejected.
Objective make_objective(std::string_view spec);

/// The names exercised by `corpus-check`.
std::vector<std::string> default_corpus();

/// max_i |g_i - (f(x + h e_i) - f(x - h e_i)) / 2h| / (1 + |g_i|).
double check_gradient_fd(const Objective& obj, const Vector& x, double h = 1e-5);

/// Same measure for the Hessian against central differences of the gradient.
double check_hessian_fd(const Objective& obj, const Vector& x, double h = 1e-5);

/// Largest |H_ij - H_ji| at x.
double hessian_asymmetry(const Objective& obj, const Vector& x);

/// Max spectral norm of the Hessian over the region's vertices (N <= 10),
/// its center, and `samples` seeded uniform points. Throws
/// CorpusInconsistency if the result exceeds the declared bound by more than
/// a relative 1e-9.
double estimate_lipschitz(const Objective& obj, int samples, std::uint64_t seed);

struct CorpusCheck {
  std::string name;
  double max_gradient_error = 0.0;
  double max_hessian_error = 0.0;
  double max_asymmetry = 0.0;
  double lipschitz_estimate = 0.0;
  double lipschitz_bound = 0.0;
  double max_critical_grad_norm = 0.0;
  bool passed = false;
};

/// Self-validation of one corpus member at `points` seeded points in its region.
CorpusCheck validate_objective(const Objective& obj, int points = 100, std::uint64_t seed = 2024);

}  // namespace saddlescape
