#include <gtest/gtest.h>

#include <charconv>
#include <sstream>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/report_io.hpp"
#include "support.hpp"

using namespace saddlescape;
using testing_support::Gen;

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-8), "1e-08");
  EXPECT_EQ(format_double(-0.0), "-0");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(NAN), "nan");
}

TEST(FormatProperty, EveryDoubleRoundTrips) {
  Gen g(1);
  for (int t = 0; t < 20000; ++t) {
    const double v = g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300));
    const std::string s = format_double(v);
    EXPECT_EQ(s.find(','), std::string::npos);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Format, VectorParsing) {
  const Vector v = parse_vector(" 1.5, -2,+3e-2 ");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v[0], 1.5);
  EXPECT_EQ(v[1], -2);
  EXPECT_EQ(v[2], 0.03);
  EXPECT_EQ(format_vector(v), "1.5,-2,0.03");
  for (const char* bad : {"", "1,,2", "1;2", "abc", "1,nan", "1e999", "1,"})
    EXPECT_THROW(parse_vector(bad), ConfigRejected) << bad;
}

TEST(Config, ParsesKeyValueLines) {
  const ConfigEntries e = parse_config_text("# header\ngamma = 0.5\n\n  algo=hbppa  # trailing\nx0 = 1,2\n");
  ASSERT_EQ(e.size(), 3U);
  EXPECT_EQ(e[0], (std::pair<std::string, std::string>{"gamma", "0.5"}));
  EXPECT_EQ(e[1].second, "hbppa");
  EXPECT_EQ(e[2].second, "1,2");
  EXPECT_EQ(parse_config_text(format_config(e)), e);
  EXPECT_THROW(parse_config_text("gamma 0.5\n"), ConfigRejected);
  EXPECT_THROW(parse_config_text("= 3\n"), ConfigRejected);
}

TEST(Csv, TraceHeaderAndRows) {
  SolverConfig c;
  c.gamma = 0.5;
  Vector x0(2);
  x0 << 0.5, 0.3;
  const Trace t = run(double_well(), {x0, x0}, c);
  std::ostringstream os;
  write_trace_csv(os, t);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,x0,x1,grad_norm,lyapunov,displacement");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1,0.5,0.3,", 0), 0U);
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, t.states.size());
}

TEST(Csv, EscapeAndSweepHeaders) {
  ExperimentConfig c;
  c.solver.gamma = 0.5;
  c.num_trials = 3;
  std::ostringstream os;
  write_escape_csv(os, run_monte_carlo(c));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "trial,seed,terminal_class,terminal_x0,terminal_x1,iterations,final_grad_norm");

  std::ostringstream ss;
  write_sweep_csv(ss, stepsize_sweep("double_well", Algorithm::HBGD, 0.25, {0.3}, 2, 1));
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')),
            "gamma,in_bounds,trials,saddle_terminations,converged,diverged,escape_fraction,convergence_fraction,"
            "mean_iterations");
}

TEST(Json, StabilityReportFields) {
  SolverConfig c;
  c.gamma = 0.5;
  c.beta = 0.3;
  const Json j = to_json(analyze_stability(double_well(), Vector::Zero(2), c));
  EXPECT_EQ(j["critical_class"], "StrictSaddle");
  EXPECT_EQ(j["verdict"], "UnstableFixedPoint");
  EXPECT_TRUE(j["analytic_unstable_root"].is_number());
  EXPECT_TRUE(j.contains("companion_dominant"));
}
