#include <gtest/gtest.h>

#include <cmath>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/solver.hpp"
#include "support.hpp"

using namespace saddlescape;
using testing_support::Gen;

namespace {

// Same function as the quadratic member but without its closed-form prox,
// forcing the Newton sub-solver.
Objective without_closed_form(const Objective& obj) {
  return obj.with_gradient([obj](const Vector& x) { return obj.gradient(x); });
}

// Root of gamma (y^3 - y) + y - z = 0 by bisection; monotone for gamma < 1/2.
double cubic_prox(double gamma, double z) {
  double lo = -10, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (gamma * (m * m * m - m) + m - z > 0 ? hi : lo) = m;
  }
  return 0.5 * (lo + hi);
}

SolverConfig config(Algorithm a, double gamma, double beta) {
  SolverConfig c;
  c.algorithm = a;
  c.gamma = gamma;
  c.beta = beta;
  return c;
}

}  // namespace

TEST(StepsizeRange, ExactEndpoints) {
  const Interval hb = valid_stepsize_range(Algorithm::HBGD, 0.25, 2.0);
  EXPECT_EQ(hb.lower, 0.0);
  EXPECT_EQ(hb.upper, 0.75);
  const Interval pp = valid_stepsize_range(Algorithm::HBPPA, 0.25, 2.0);
  EXPECT_EQ(pp.lower, 0.0);
  EXPECT_EQ(pp.upper, 0.5);
  EXPECT_FALSE(hb.contains(0.0));
  EXPECT_FALSE(hb.contains(0.75));
  EXPECT_TRUE(hb.contains(0.7499));
}

TEST(StepsizeRange, RejectsInertiaOutsideTheEscapeRanges) {
  EXPECT_THROW(valid_stepsize_range(Algorithm::HBGD, 0.0, 1.0), ConfigRejected);
  EXPECT_THROW(valid_stepsize_range(Algorithm::HBGD, 1.0, 1.0), ConfigRejected);
  EXPECT_THROW(valid_stepsize_range(Algorithm::HBPPA, 0.5, 1.0), ConfigRejected);
  EXPECT_THROW(valid_stepsize_range(Algorithm::HBPPA, 0.25, 0.0), ConfigRejected);
  EXPECT_NO_THROW(valid_stepsize_range(Algorithm::HBGD, 0.9, 1.0));
}

TEST(StepsizeRange, ConvergentRangeAdmitsZeroInertia) {
  const auto r = convergent_stepsize_range(Algorithm::HBGD, 0.0, 2.0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->upper, 1.0);
  EXPECT_FALSE(convergent_stepsize_range(Algorithm::HBPPA, 0.5, 2.0));
}

TEST(StepsizeRangeProperty, HbgdUpperShrinksLinearlyInBeta) {
  Gen g(8);
  for (int t = 0; t < 200; ++t) {
    const double l = g.uniform(0.1, 20);
    const double b1 = g.uniform(0.01, 0.98);
    const double b2 = g.uniform(b1, 0.99);
    const double u1 = valid_stepsize_range(Algorithm::HBGD, b1, l).upper;
    const double u2 = valid_stepsize_range(Algorithm::HBGD, b2, l).upper;
    EXPECT_GE(u1, u2);
    EXPECT_LT(u1, 2.0 / l);
    EXPECT_NEAR(u1 * l, 2 * (1 - b1), 1e-14);
  }
}

TEST(ValidateConfig, GatesOnTheEscapeBounds) {
  SolverConfig c = config(Algorithm::HBGD, 0.75, 0.25);
  EXPECT_THROW(validate_config(c, 2.0), ConfigRejected);
  try {
    validate_config(c, 2.0);
  } catch (const ConfigRejected& e) {
    EXPECT_NE(std::string(e.what()).find("2(1-beta)/L"), std::string::npos);
  }
  c.gamma = 0.7;
  EXPECT_NO_THROW(validate_config(c, 2.0));

  c = config(Algorithm::HBPPA, 0.5, 0.25);
  EXPECT_THROW(validate_config(c, 2.0), ConfigRejected);
  c.gamma = 0.49;
  EXPECT_NO_THROW(validate_config(c, 2.0));
  c.beta = 0.5;
  EXPECT_THROW(validate_config(c, 2.0), ConfigRejected);

  c = config(Algorithm::HBGD, 99, 0);
  c.enforce_bounds = false;
  EXPECT_NO_THROW(validate_config(c, 2.0));
  c.gamma = -1;
  EXPECT_THROW(validate_config(c, 2.0), ConfigRejected);
  c.gamma = 1;
  c.max_iters = 0;
  EXPECT_THROW(validate_config(c, 2.0), ConfigRejected);
}

TEST(Hbgd, ZeroInertiaIsExactlyGradientDescent) {
  Gen g(21);
  for (const auto& name : default_corpus()) {
    const Objective obj = make_objective(name);
    for (int t = 0; t < 20; ++t) {
      const Vector x = g.in_box(obj.region());
      const Vector xp = g.in_box(obj.region());
      const double gamma = g.uniform(0.01, 1.0);
      const AugmentedState next = hbgd_step(obj, {x, xp}, gamma, 0.0);
      const Vector gd = x - gamma * obj.gradient(x);
      EXPECT_EQ(next.x_curr, gd) << name;
      EXPECT_EQ(next.x_prev, x);
    }
  }
}

TEST(Hbgd, MatchesScalarRecurrenceOnQuadratic) {
  // For f = a x^2 / 2: x_{k+1} = (1 + beta - gamma a) x_k - beta x_{k-1}.
  const Objective q = make_objective("quadratic_saddle:1.5,-0.7");
  const double gamma = 0.3, beta = 0.4;
  AugmentedState w{Vector(2), Vector(2)};
  w.x_curr << 0.2, -0.1;
  w.x_prev << 0.25, 0.05;
  double a0 = 0.25, a1 = 0.2, b0 = 0.05, b1 = -0.1;
  for (int k = 0; k < 30; ++k) {
    w = hbgd_step(q, w, gamma, beta);
    const double a2 = (1 + beta - gamma * 1.5) * a1 - beta * a0;
    const double b2 = (1 + beta + gamma * 0.7) * b1 - beta * b0;
    a0 = a1, a1 = a2, b0 = b1, b1 = b2;
    EXPECT_NEAR(w.x_curr[0], a1, 1e-14 * (1 + std::abs(a1)));
    EXPECT_NEAR(w.x_curr[1], b1, 1e-13 * (1 + std::abs(b1)));
  }
}

TEST(Prox, NewtonMatchesClosedFormOnDiagonalQuadratics) {
  Gen g(3);
  const SolverConfig cfg;
  for (int t = 0; t < 100; ++t) {
    const int n = g.integer(1, 6);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = g.uniform(-3, 3);
    const Objective q = quadratic_saddle(a);
    const Objective numeric = without_closed_form(q);
    ASSERT_FALSE(numeric.has_closed_form_prox());
    const double gamma = g.uniform(0.01, 0.99) / q.lipschitz_bound();
    const Vector z = g.vector(n, -2, 2);
    Vector expected(n);
    for (int i = 0; i < n; ++i) expected[i] = z[i] / (1 + gamma * a[static_cast<std::size_t>(i)]);
    const ProxResult r = prox_newton(numeric, gamma, z, cfg);
    EXPECT_LE((r.point - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Prox, NewtonSolvesTheDoubleWellSubproblem) {
  Gen g(4);
  const Objective f = double_well();
  const SolverConfig cfg;
  for (int t = 0; t < 100; ++t) {
    const double gamma = g.uniform(0.01, 0.99) / f.lipschitz_bound();
    const Vector z = g.in_box(f.region());
    const ProxResult r = prox_newton(f, gamma, z, cfg);
    EXPECT_NEAR(r.point[0], z[0] / (1 + gamma), 1e-12);
    EXPECT_NEAR(r.point[1], cubic_prox(gamma, z[1]), 1e-11);
    EXPECT_LE(r.residual, 1e-12 * std::max(1.0, z.norm()));
  }
}

TEST(Prox, RejectsStepsizesWithoutStrongConvexityGuarantee) {
  const Objective f = double_well();
  SolverConfig cfg;
  EXPECT_THROW(prox_newton(f, 1.0 / f.lipschitz_bound(), Vector::Zero(2), cfg), ConfigRejected);
  Vector z(2);
  z << 0.3, 0.9;
  cfg.prox_max_inner_iters = 1;
  EXPECT_THROW(prox_newton(f, 0.4, z, cfg), ProxNonConvergence);
}

TEST(Prox, ShiftedNewtonRecoversFromIndefiniteIterates) {
  // gamma = 2 makes gamma Hess f + I indefinite near y = 0, but the
  // sub-objective is still coercive, so a stationary point exists.
  const Objective f = double_well();
  SolverConfig cfg;
  cfg.enforce_bounds = false;
  Vector z(2);
  z << 0.0, 0.1;
  const ProxResult r = prox_newton(f, 2.0, z, cfg);
  EXPECT_LE((2.0 * f.gradient(r.point) + r.point - z).norm(), 1e-12);
}

TEST(FixedPoints, CriticalPairsAreFixedForBothAlgorithms) {
  for (const auto& name : default_corpus()) {
    const Objective obj = make_objective(name);
    const double l = obj.lipschitz_bound();
    for (const auto& c : obj.known_criticals()) {
      for (double beta : {0.1, 0.25, 0.45}) {
        const AugmentedState w{c.point, c.point};
        const AugmentedState g = hbgd_step(obj, w, 0.9 * 2 * (1 - beta) / l, beta);
        EXPECT_LE((g.x_curr - c.point).norm(), 1e-15) << name;
        EXPECT_EQ(g.x_prev, c.point);

        SolverConfig cfg = config(Algorithm::HBPPA, 0.9 / l, beta);
        const AugmentedState p = hbppa_step(obj, w, cfg.gamma, beta, cfg);
        EXPECT_LE((p.x_curr - c.point).norm(), 10 * cfg.prox_inner_tol) << name;

        const Objective numeric = without_closed_form(obj);
        const AugmentedState pn = hbppa_step(numeric, w, cfg.gamma, beta, cfg);
        EXPECT_LE((pn.x_curr - c.point).norm(), 10 * cfg.prox_inner_tol) << name;
      }
    }
  }
}

TEST(Run, TraceSeriesAreAligned) {
  const Objective f = double_well();
  Vector x0(2);
  x0 << 0.5, 0.3;
  const Trace t = run(f, {x0, x0}, config(Algorithm::HBGD, 0.5, 0.25));
  EXPECT_EQ(t.termination, Termination::GradToleranceMet);
  EXPECT_EQ(t.states.size(), t.steps() + 1);
  EXPECT_EQ(t.grad_norms.size(), t.states.size());
  EXPECT_EQ(t.lyapunov_values.size(), t.states.size());
  EXPECT_EQ(t.displacements.size(), t.states.size());
  EXPECT_EQ(t.prox_inner_iters.size(), t.states.size());
  EXPECT_LE(t.final_grad_norm(), 1e-8);
  EXPECT_EQ(t.displacements[0], 0.0);
  for (std::size_t k = 1; k < t.states.size(); ++k) EXPECT_EQ(t.states[k].x_prev, t.states[k - 1].x_curr);
}

TEST(Run, StartingAtCriticalPointStopsImmediately) {
  const Objective f = double_well();
  const Trace t = run(f, {Vector::Zero(2), Vector::Zero(2)}, config(Algorithm::HBPPA, 0.4, 0.25));
  EXPECT_EQ(t.termination, Termination::GradToleranceMet);
  EXPECT_EQ(t.steps(), 0U);
}

TEST(Run, MaxItersAndDivergence) {
  const Objective f = double_well();
  Vector x0(2);
  x0 << 0.5, 0.3;
  SolverConfig c = config(Algorithm::HBGD, 0.5, 0.25);
  c.max_iters = 3;
  const Trace t = run(f, {x0, x0}, c);
  EXPECT_EQ(t.termination, Termination::MaxIters);
  EXPECT_EQ(t.steps(), 3U);

  // Gradient descent with gamma = 2.2 / L on L x^2 / 2 multiplies x by -1.2.
  const Objective q = make_objective("quadratic_saddle:2");
  SolverConfig gd = config(Algorithm::HBGD, 1.1, 0.0);
  gd.enforce_bounds = false;
  const Trace d = run(q, {Vector::Constant(1, 0.5), Vector::Constant(1, 0.5)}, gd);
  EXPECT_EQ(d.termination, Termination::Diverged);
  for (std::size_t k = 1; k + 1 < d.states.size(); ++k)
    EXPECT_NEAR(d.states[k].x_curr[0], 0.5 * std::pow(-1.2, static_cast<double>(k)),
                1e-12 * std::pow(1.2, static_cast<double>(k)));
}

TEST(Run, NumericalFailureEndsRunAsDiverged) {
  const Objective q = make_objective("quadratic_saddle:-1");
  const Objective broken = q.with_gradient([](const Vector& x) -> Vector {
    if (std::abs(x[0]) > 3) return Vector::Constant(1, NAN);
    return Vector(-x);
  });
  const Trace t = run(broken, {Vector::Constant(1, 0.1), Vector::Constant(1, 0.1)},
                      config(Algorithm::HBGD, 0.5, 0.25));
  EXPECT_EQ(t.termination, Termination::Diverged);
  ASSERT_TRUE(t.failure_iteration.has_value());
  EXPECT_FALSE(t.failure_message.empty());
}

TEST(Run, RejectsOutOfBoundsConfigs) {
  const Objective f = double_well();
  EXPECT_THROW(run(f, {Vector::Zero(2), Vector::Zero(2)}, config(Algorithm::HBGD, 99, 0.25)), ConfigRejected);
  EXPECT_THROW(run(f, {Vector::Zero(3), Vector::Zero(3)}, config(Algorithm::HBGD, 0.1, 0.25)),
               std::invalid_argument);
}

TEST(Algorithm, ParsesNames) {
  EXPECT_EQ(parse_algorithm("HBGD"), Algorithm::HBGD);
  EXPECT_EQ(parse_algorithm("hbppa"), Algorithm::HBPPA);
  EXPECT_THROW(parse_algorithm("adam"), ConfigRejected);
}
