#include "saddlescape/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "saddlescape/random.hpp"

namespace saddlescape {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr int kPowerRestarts = 8;
constexpr int kPowerMaxIters = 10000;
constexpr double kPowerChangeTol = 1e-12;
constexpr double kPowerResidualTol = 1e-10;
// Below this sine between v and Mv the Krylov pair is numerically rank one.
constexpr double kKrylovRankTol = 1e-7;

double max_pair_magnitude(double p, double q) {
  // Roots of lambda^2 - p lambda - q = 0.
  const double disc = p * p + 4.0 * q;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return 0.5 * std::max(std::abs(p + r), std::abs(p - r));
  }
  return std::sqrt(-q);
}

}  // namespace

std::vector<double> hessian_spectrum(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hessian_spectrum: matrix is not square");
  const Index n = h.rows();
  const double scale = n == 0 ? 0.0 : h.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw std::invalid_argument("hessian_spectrum: non-finite entries");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale))
    throw std::invalid_argument("hessian_spectrum: matrix is not symmetric");

  Matrix a = 0.5 * (h + h.transpose());
  const double stop = 1e-12 * scale;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double symmetric_spectral_norm(const Matrix& h) {
  const auto eig = hessian_spectrum(h);
  if (eig.empty()) return 0.0;
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

DominantEigenvalue dominant_eigenvalue(const Matrix& m, std::uint64_t seed) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dominant_eigenvalue: matrix is not square");
  if (!m.allFinite()) throw std::invalid_argument("dominant_eigenvalue: non-finite entries");
  const Index n = m.rows();

  DominantEigenvalue out;
  if (n > 0 && n <= 10) {
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    out.cross_check = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  const double mnorm = n == 0 ? 0.0 : m.norm();
  if (mnorm == 0.0) return out;

  double best = -1.0;
  bool best_paired = false;
  double fallback = 0.0;

  for (int restart = 0; restart < kPowerRestarts; ++restart) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(restart)));
    Vector v = rng.normal_around(Vector::Zero(n), 1.0);
    v.normalize();

    double prev_rq = std::numeric_limits<double>::quiet_NaN();
    double prev_fit = std::numeric_limits<double>::quiet_NaN();
    double estimate = 0.0;
    bool converged = false;
    bool paired = false;

    for (int it = 0; it < kPowerMaxIters && !converged; ++it) {
      const Vector u1 = m * v;
      const double n1 = u1.norm();
      if (n1 <= std::numeric_limits<double>::min() * mnorm) {
        // v reached the null space: every remaining component was annihilated.
        estimate = 0.0;
        converged = true;
        break;
      }

      const double rq = v.dot(u1);
      const double rq_residual = (u1 - rq * v).norm();
      const bool rq_settled = std::abs(std::abs(rq) - std::abs(prev_rq)) <= kPowerChangeTol * mnorm;
      if (rq_settled && rq_residual <= kPowerResidualTol * mnorm) {
        estimate = std::abs(rq);
        converged = true;
        break;
      }
      prev_rq = rq;
      estimate = std::abs(rq);

      if (rq_residual > kKrylovRankTol * n1) {
        const Vector u2 = m * u1;
        Matrix basis(n, 2);
        basis.col(0) = u1;
        basis.col(1) = v;
        const Eigen::Vector2d coef = basis.colPivHouseholderQr().solve(u2);
        const double fit_residual = (u2 - basis * coef).norm();
        const double fit = max_pair_magnitude(coef[0], coef[1]);
        if (std::abs(fit - prev_fit) <= kPowerChangeTol * mnorm &&
            fit_residual <= kPowerResidualTol * std::max(u2.norm(), mnorm * n1)) {
          estimate = fit;
          paired = true;
          converged = true;
          break;
        }
        prev_fit = fit;
        estimate = std::max(estimate, fit);
      }
      v = u1 / n1;
    }

    if (converged) {
      if (estimate > best) {
        best = estimate;
        best_paired = paired;
      }
    } else {
      fallback = std::max(fallback, estimate);
    }
  }

  if (best >= 0.0) {
    out.magnitude = best;
    out.paired = best_paired;
  } else {
    out.magnitude = fallback;
    out.inconclusive = true;
  }
  return out;
}

}  // namespace saddlescape
