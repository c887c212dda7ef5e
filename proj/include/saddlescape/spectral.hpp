#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "saddlescape/objective.hpp"

namespace saddlescape {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Sweeps stop once every off-diagonal entry is at most
/// 1e-12 times the matrix max-norm. Throws std::invalid_argument if the
/// input is not square or not symmetric to 1e-10 (relative to its max-norm).
std::vector<double> hessian_spectrum(const Matrix& h);

/// max |eigenvalue| of a symmetric matrix.
double symmetric_spectral_norm(const Matrix& h);

struct DominantEigenvalue {
  double magnitude = 0.0;
  /// No restart met the convergence test; `magnitude` is the last estimate.
  bool inconclusive = false;
  /// The converged restart saw a complex-conjugate (or +-) dominant pair.
  bool paired = false;
  /// Max |eigenvalue| from a dense Hessenberg-QR solve, for 2N <= 10.
  std::optional<double> cross_check;
};

/// Largest eigenvalue magnitude of a square matrix by power iteration:
/// 8 seeded restarts, at most 10000 iterations each. Each iteration tracks
/// the Rayleigh quotient (real dominant eigenvalue) and a two-term Krylov fit
/// lambda^2 = p lambda + q (complex or +- dominant pairs); a restart converges
/// when either estimate changes by at most 1e-12 relative and its residual
/// is negligible.
DominantEigenvalue dominant_eigenvalue(const Matrix& m, std::uint64_t seed = 0x5eed);

}  // namespace saddlescape
