#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/stability.hpp"
#include "support.hpp"

using namespace saddlescape;
using testing_support::Gen;
using testing_support::rel_err;

namespace {

SolverConfig config(Algorithm a, double gamma, double beta) {
  SolverConfig c;
  c.algorithm = a;
  c.gamma = gamma;
  c.beta = beta;
  return c;
}

double eigen_spectral_radius(const Matrix& m) {
  return Eigen::EigenSolver<Matrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

// Central-difference Jacobian of the augmented step map.
Matrix fd_jacobian(const Objective& obj, const AugmentedState& w, const SolverConfig& cfg) {
  const Index n = obj.dim();
  Matrix j(2 * n, 2 * n);
  auto step = [&](const AugmentedState& s) {
    const AugmentedState out = cfg.algorithm == Algorithm::HBGD ? hbgd_step(obj, s, cfg.gamma, cfg.beta)
                                                                : hbppa_step(obj, s, cfg.gamma, cfg.beta, cfg);
    Vector v(2 * n);
    v << out.x_curr, out.x_prev;
    return v;
  };
  const double h = 1e-6;
  for (Index c = 0; c < 2 * n; ++c) {
    AugmentedState plus = w, minus = w;
    Vector& p = c < n ? plus.x_curr : plus.x_prev;
    Vector& m = c < n ? minus.x_curr : minus.x_prev;
    p[c % n] += h;
    m[c % n] -= h;
    j.col(c) = (step(plus) - step(minus)) / (2 * h);
  }
  return j;
}

}  // namespace

TEST(Classify, CorpusCriticalPoints) {
  const Objective f = double_well();
  Vector p = Vector::Zero(2);
  EXPECT_EQ(classify_critical_point(f, p), CriticalPointClass::StrictSaddle);
  p << 0, 1;
  EXPECT_EQ(classify_critical_point(f, p), CriticalPointClass::LocalMinCandidate);
  p << 0.3, 1;
  EXPECT_EQ(classify_critical_point(f, p), CriticalPointClass::NotCritical);
  EXPECT_EQ(classify_critical_point(monkey_saddle(), Vector::Zero(2)), CriticalPointClass::Degenerate);
}

TEST(Spectral, UnstableRootsOnTheUnitSaddle) {
  const Objective q = make_objective("quadratic_saddle:1,-1");
  const Vector o = Vector::Zero(2);

  const double hbgd_expected = (1.8 + std::sqrt(2.04)) / 2;
  EXPECT_NEAR(hbgd_expected, 1.61414, 5e-6);
  const StabilityReport g = analyze_stability(q, o, config(Algorithm::HBGD, 0.5, 0.3));
  ASSERT_TRUE(g.analytic_unstable_root);
  EXPECT_LT(rel_err(*g.analytic_unstable_root, hbgd_expected), 1e-12);
  EXPECT_LT(rel_err(g.companion_dominant, hbgd_expected), 1e-8);
  EXPECT_LT(rel_err(eigen_spectral_radius(companion_jacobian_hbgd(q, o, 0.5, 0.3)), hbgd_expected), 1e-8);
  EXPECT_EQ(g.verdict, Verdict::UnstableFixedPoint);
  EXPECT_DOUBLE_EQ(g.a_matrix_extreme, 1.8);

  const double hbppa_expected = (2.5 + std::sqrt(4.25)) / 2;
  EXPECT_NEAR(hbppa_expected, 2.28078, 5e-6);
  const SolverConfig pc = config(Algorithm::HBPPA, 0.5, 0.25);
  const StabilityReport p = analyze_stability(q, o, pc);
  ASSERT_TRUE(p.analytic_unstable_root);
  EXPECT_LT(rel_err(*p.analytic_unstable_root, hbppa_expected), 1e-12);
  EXPECT_LT(rel_err(p.companion_dominant, hbppa_expected), 1e-8);
  EXPECT_LT(rel_err(eigen_spectral_radius(companion_jacobian_hbppa(q, o, 0.5, 0.25, pc)), hbppa_expected), 1e-8);
  EXPECT_EQ(p.verdict, Verdict::UnstableFixedPoint);
}

TEST(Spectral, DoubleWellSaddleReportMatchesClassifyExample) {
  const StabilityReport r = analyze_stability(double_well(), Vector::Zero(2), config(Algorithm::HBGD, 0.5, 0.3));
  EXPECT_EQ(r.critical_class, CriticalPointClass::StrictSaddle);
  EXPECT_EQ(r.verdict, Verdict::UnstableFixedPoint);
  ASSERT_TRUE(r.analytic_unstable_root);
  EXPECT_NEAR(*r.analytic_unstable_root, 1.61414, 5e-6);
}

TEST(Spectral, MinimaAndDegeneratePointsAreNotDeclaredUnstable) {
  Vector m(2);
  m << 0, -1;
  const StabilityReport r = analyze_stability(double_well(), m, config(Algorithm::HBGD, 0.5, 0.25));
  EXPECT_EQ(r.critical_class, CriticalPointClass::LocalMinCandidate);
  EXPECT_LT(r.companion_dominant, 1.0);
  EXPECT_EQ(r.verdict, Verdict::StableOrInconclusive);
  EXPECT_FALSE(r.analytic_unstable_root);

  const Objective ms = monkey_saddle();
  const StabilityReport d = analyze_stability(ms, Vector::Zero(2), config(Algorithm::HBGD, 0.1, 0.25));
  EXPECT_EQ(d.critical_class, CriticalPointClass::Degenerate);
  EXPECT_EQ(d.verdict, Verdict::StableOrInconclusive);
}

TEST(Spectral, AnalyticRootPreconditions) {
  EXPECT_THROW(analytic_unstable_root_hbgd(1.1, 0.25), ConfigRejected);
  EXPECT_THROW(analytic_unstable_root_hbgd(2.0, 1.0), ConfigRejected);
  EXPECT_THROW(analytic_unstable_root_hbppa(0.9, 0.25), ConfigRejected);
  EXPECT_THROW(analytic_unstable_root_hbppa(2.0, 0.5), ConfigRejected);
}

TEST(SpectralProperty, AnalyticRootMatchesPowerIterationOnRandomSaddles) {
  Gen g(55);
  for (int t = 0; t < 60; ++t) {
    const int n = g.integer(1, 5);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = g.uniform(-2, 2);
    a[static_cast<std::size_t>(g.integer(0, n - 1))] = -g.uniform(0.2, 2);
    const Objective q = quadratic_saddle(a);
    const Vector o = Vector::Zero(n);
    const double l = q.lipschitz_bound();
    const double amin = *std::min_element(a.begin(), a.end());

    const double bg = g.uniform(0.05, 0.9);
    const double gg = g.uniform(0.05, 0.95) * 2 * (1 - bg) / l;
    const StabilityReport rg = analyze_stability(q, o, config(Algorithm::HBGD, gg, bg));
    const double c = 1 + bg - gg * amin;
    const double oracle_g = (c + std::sqrt(c * c - 4 * bg)) / 2;
    ASSERT_TRUE(rg.analytic_unstable_root);
    EXPECT_LT(rel_err(*rg.analytic_unstable_root, oracle_g), 1e-12);
    EXPECT_LT(rel_err(rg.companion_dominant, oracle_g), 1e-8);

    const double bp = g.uniform(0.05, 0.45);
    const double gp = g.uniform(0.05, 0.95) / l;
    const StabilityReport rp = analyze_stability(q, o, config(Algorithm::HBPPA, gp, bp));
    const double cp = 1 / (1 + gp * amin);
    const double bb = (1 + bp) * cp;
    const double oracle_p = (bb + std::sqrt(bb * bb - 4 * bp * cp)) / 2;
    ASSERT_TRUE(rp.analytic_unstable_root);
    EXPECT_LT(rel_err(*rp.analytic_unstable_root, oracle_p), 1e-12);
    EXPECT_LT(rel_err(rp.companion_dominant, oracle_p), 1e-8);
  }
}

TEST(CompanionProperty, MatchesFiniteDifferenceJacobianOfTheStepMap) {
  Gen g(66);
  for (const auto& name : default_corpus()) {
    const Objective obj = make_objective(name);
    const double l = obj.lipschitz_bound();
    for (int t = 0; t < 10; ++t) {
      const Vector y = g.in_box(obj.region()) * 0.5;
      const Vector z = g.in_box(obj.region()) * 0.5;
      const double beta = g.uniform(0.05, 0.45);
      const SolverConfig cg = config(Algorithm::HBGD, g.uniform(0.1, 0.9) * 2 * (1 - beta) / l, beta);
      const Matrix jg = companion_jacobian_hbgd(obj, y, cg.gamma, beta);
      EXPECT_LE((jg - fd_jacobian(obj, {y, z}, cg)).cwiseAbs().maxCoeff(), 1e-6) << name;

      const SolverConfig cp = config(Algorithm::HBPPA, g.uniform(0.1, 0.9) / l, beta);
      const Matrix jp = companion_jacobian_hbppa(obj, y, z, cp.gamma, beta, cp);
      EXPECT_LE((jp - fd_jacobian(obj, {y, z}, cp)).cwiseAbs().maxCoeff(), 1e-6) << name;
    }
  }
}

TEST(CompanionProperty, DeterminantIdentity) {
  Gen g(77);
  for (const auto& name : default_corpus()) {
    const Objective obj = make_objective(name);
    const double l = obj.lipschitz_bound();
    const auto n = static_cast<double>(obj.dim());
    for (double beta : {0.1, 0.25, 0.3, 0.45}) {
      for (int t = 0; t < 50; ++t) {
        // Quarter-box samples keep the extrapolated prox center where the
        // local prox of the cubic member is guaranteed to exist.
        const Vector y = g.in_box(obj.region()) * 0.25;
        const Vector z = g.in_box(obj.region()) * 0.25;
        const double gg = g.uniform(0.05, 0.95) * 2 * (1 - beta) / l;
        const double det_g = std::abs(companion_jacobian_hbgd(obj, y, gg, beta).partialPivLu().determinant());
        EXPECT_LT(rel_err(det_g, std::pow(beta, n)), 1e-8) << name;

        const SolverConfig cp = config(Algorithm::HBPPA, g.uniform(0.05, 0.95) / l, beta);
        const Vector gpt = prox(obj, cp.gamma, y + beta * (y - z), cp);
        const Matrix a = (cp.gamma * obj.hessian(gpt) + Matrix::Identity(obj.dim(), obj.dim())).inverse();
        const double expected = std::pow(beta, n) * std::abs(a.determinant());
        const double det_p =
            std::abs(companion_jacobian_hbppa(obj, y, z, cp.gamma, beta, cp).partialPivLu().determinant());
        EXPECT_GT(det_p, 0.0);
        EXPECT_LT(rel_err(det_p, expected), 1e-8) << name;
      }
    }
  }
}
