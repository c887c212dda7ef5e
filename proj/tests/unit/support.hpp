#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "saddlescape/objective.hpp"

namespace testing_support {

using saddlescape::Matrix;
using saddlescape::Vector;

// Seeded generator for property tests. Deliberately not the library's Rng so
// a bug there cannot hide itself.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  Vector vector(saddlescape::Index n, double lo, double hi) {
    Vector v(n);
    for (saddlescape::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vector in_box(const saddlescape::Box& b) {
    Vector v(b.dim());
    for (saddlescape::Index i = 0; i < v.size(); ++i) v[i] = uniform(b.lo[i], b.hi[i]);
    return v;
  }

  // Q diag(eigs) Q^T with Q a Householder reflection: exact known spectrum.
  Matrix symmetric_with_spectrum(const std::vector<double>& eigs) {
    const auto n = static_cast<saddlescape::Index>(eigs.size());
    Vector u = vector(n, -1.0, 1.0);
    if (u.norm() < 1e-3) u[0] = 1.0;
    u.normalize();
    const Matrix q = Matrix::Identity(n, n) - 2.0 * u * u.transpose();
    Vector d(n);
    for (saddlescape::Index i = 0; i < n; ++i) d[i] = eigs[static_cast<std::size_t>(i)];
    Matrix m = q * d.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
  }

 private:
  std::mt19937_64 eng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support
