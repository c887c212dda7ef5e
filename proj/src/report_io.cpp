#include "saddlescape/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "saddlescape/errors.hpp"

namespace saddlescape {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json class_or_null(const std::optional<CriticalPointClass>& c) {
  return c ? Json(std::string(to_string(*c))) : Json(nullptr);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_vector(const Vector& v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

Vector parse_vector(std::string_view text) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string token = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first < last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
      throw ConfigRejected("malformed vector component '" + token + "' in '" + std::string(text) + "'");
    vals.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(vals.data(), static_cast<Index>(vals.size()));
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json to_json(const StabilityReport& r) {
  Json j;
  j["algorithm"] = std::string(to_string(r.algorithm));
  j["gamma"] = r.gamma;
  j["beta"] = r.beta;
  j["point"] = to_json(r.point);
  j["critical_class"] = std::string(to_string(r.critical_class));
  j["grad_norm"] = r.grad_norm;
  j["hessian_spectrum"] = r.hessian_spectrum;
  j["a_matrix_extreme"] = r.a_matrix_extreme;
  j["companion_dominant"] = r.companion_dominant;
  j["companion_inconclusive"] = r.companion_inconclusive;
  j["companion_cross_check"] = optional_number(r.companion_cross_check);
  j["analytic_unstable_root"] = optional_number(r.analytic_unstable_root);
  j["verdict"] = std::string(to_string(r.verdict));
  j["jacobian_det_magnitude"] = r.jacobian_det_magnitude;
  return j;
}

Json to_json(const DescentCertificate& c) {
  Json j;
  j["checked_steps"] = c.checked_steps;
  Json v = Json::array();
  for (const auto& viol : c.violations) v.push_back(Json{{"step", viol.step}, {"slack", viol.slack}});
  j["violations"] = std::move(v);
  j["max_violation"] = c.max_violation;
  j["max_slack"] = c.max_slack;
  j["nu"] = c.nu;
  j["cert_tol"] = c.cert_tol;
  j["diagnostic_only"] = c.diagnostic_only;
  return j;
}

Json to_json(const Summability& s) {
  Json j;
  j["steps"] = s.partial_sums.size();
  j["total_length"] = s.partial_sums.empty() ? 0.0 : s.partial_sums.back();
  j["plateaued"] = s.plateaued;
  return j;
}

Json residual_bound_json(const std::vector<bool>& holds) {
  Json failing = Json::array();
  for (std::size_t k = 0; k < holds.size(); ++k)
    if (!holds[k]) failing.push_back(k);
  Json j;
  j["checked_steps"] = holds.size();
  j["all_hold"] = failing.empty();
  j["failing_steps"] = std::move(failing);
  return j;
}

Json to_json(const SolverConfig& c) {
  Json j;
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["gamma"] = c.gamma;
  j["beta"] = c.beta;
  j["max_iters"] = c.max_iters;
  j["grad_stop_tol"] = c.grad_stop_tol;
  j["prox_inner_tol"] = c.prox_inner_tol;
  j["prox_max_inner_iters"] = c.prox_max_inner_iters;
  j["enforce_bounds"] = c.enforce_bounds;
  return j;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["objective"] = c.objective_name;
  j["solver"] = to_json(c.solver);
  j["num_trials"] = c.num_trials;
  j["init_distribution"] = std::string(to_string(c.init_distribution));
  j["gaussian_scale"] = c.gaussian_scale;
  j["independent_x1"] = c.independent_x1;
  j["seed"] = c.seed;
  j["terminal_match_radius"] = c.terminal_match_radius;
  return j;
}

Json to_json(const TrialOutcome& t) {
  Json j;
  j["trial"] = t.trial;
  j["seed"] = t.seed;
  j["termination"] = std::string(to_string(t.termination));
  j["terminal_class"] = class_or_null(t.terminal_class);
  j["terminal_point"] = to_json(t.terminal_point);
  j["iterations"] = t.iterations;
  j["final_grad_norm"] = t.final_grad_norm;
  return j;
}

Json to_json(const EscapeReport& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["trials"] = r.trials;
  Json counts;
  for (auto c : {CriticalPointClass::LocalMinCandidate, CriticalPointClass::StrictSaddle,
                 CriticalPointClass::Degenerate, CriticalPointClass::NotCritical})
    counts[std::string(to_string(c))] = r.count(c);
  j["class_counts"] = std::move(counts);
  j["unresolved"] = r.unresolved;
  j["diverged"] = r.diverged;
  j["converged"] = r.converged;
  j["saddle_terminations"] = r.saddle_terminations();
  j["escape_fraction"] = r.escape_fraction;
  Json trials = Json::array();
  for (const auto& t : r.per_trial) trials.push_back(to_json(t));
  j["per_trial"] = std::move(trials);
  return j;
}

Json to_json(const ProbeReport& r) {
  auto run_json = [](const ProbeRun& pr) {
    Json j = to_json(pr.outcome);
    j.erase("trial");
    j.erase("seed");
    j["start"] = to_json(pr.start);
    return j;
  };
  Json j;
  j["objective"] = r.objective_name;
  j["solver"] = to_json(r.solver);
  j["saddle"] = to_json(r.saddle);
  j["perturbation"] = r.perturbation;
  j["on_slice"] = run_json(r.on_slice);
  j["perturbed"] = run_json(r.perturbed);
  j["at_saddle"] = run_json(r.at_saddle);
  j["reached_saddle"] = r.reached_saddle();
  j["escaped"] = r.escaped();
  j["saddle_fixed"] = r.saddle_fixed();
  j["passed"] = r.passed();
  return j;
}

Json to_json(const SweepTable& t) {
  Json j;
  j["objective"] = t.objective_name;
  j["algorithm"] = std::string(to_string(t.algorithm));
  j["beta"] = t.beta;
  j["lipschitz"] = t.lipschitz;
  j["trials_per_gamma"] = t.trials_per_gamma;
  j["seed"] = t.seed;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["gamma"] = r.gamma;
    row["in_bounds"] = r.in_bounds;
    row["trials"] = r.trials;
    row["saddle_terminations"] = r.saddle_terminations;
    row["converged"] = r.converged;
    row["diverged"] = r.diverged;
    row["escape_fraction"] = r.escape_fraction;
    row["convergence_fraction"] = r.convergence_fraction;
    row["mean_iterations"] = r.mean_iterations;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const CorpusCheck& c) {
  Json j;
  j["name"] = c.name;
  j["max_gradient_error"] = c.max_gradient_error;
  j["max_hessian_error"] = c.max_hessian_error;
  j["max_asymmetry"] = c.max_asymmetry;
  j["lipschitz_estimate"] = c.lipschitz_estimate;
  j["lipschitz_bound"] = c.lipschitz_bound;
  j["max_critical_grad_norm"] = c.max_critical_grad_norm;
  j["passed"] = c.passed;
  return j;
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const Index n = trace.states.empty() ? 0 : trace.states.front().x_curr.size();
  os << 'k';
  for (Index i = 0; i < n; ++i) os << ",x" << i;
  os << ",grad_norm,lyapunov,displacement\n";
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    os << (k + 1);
    for (Index i = 0; i < n; ++i) os << ',' << format_double(trace.states[k].x_curr[i]);
    os << ',' << format_double(trace.grad_norms[k]) << ',' << format_double(trace.lyapunov_values[k]) << ','
       << format_double(trace.displacements[k]) << '\n';
  }
}

void write_escape_csv(std::ostream& os, const EscapeReport& report) {
  Index n = 0;
  for (const auto& t : report.per_trial) n = std::max(n, t.terminal_point.size());
  os << "trial,seed,terminal_class";
  for (Index i = 0; i < n; ++i) os << ",terminal_x" << i;
  os << ",iterations,final_grad_norm\n";
  for (const auto& t : report.per_trial) {
    os << t.trial << ',' << t.seed << ','
       << (t.terminal_class ? to_string(*t.terminal_class) : to_string(t.termination));
    for (Index i = 0; i < n; ++i) os << ',' << format_double(i < t.terminal_point.size() ? t.terminal_point[i] : NAN);
    os << ',' << t.iterations << ',' << format_double(t.final_grad_norm) << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "gamma,in_bounds,trials,saddle_terminations,converged,diverged,escape_fraction,convergence_fraction,"
        "mean_iterations\n";
  for (const auto& r : table.rows) {
    os << format_double(r.gamma) << ',' << (r.in_bounds ? "true" : "false") << ',' << r.trials << ','
       << r.saddle_terminations << ',' << r.converged << ',' << r.diverged << ',' << format_double(r.escape_fraction)
       << ',' << format_double(r.convergence_fraction) << ',' << format_double(r.mean_iterations) << '\n';
  }
}

ConfigEntries parse_config_text(std::string_view text) {
  ConfigEntries out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigRejected("config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ConfigRejected("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string format_config(const ConfigEntries& entries) {
  std::string s;
  for (const auto& [k, v] : entries) s += k + " = " + v + "\n";
  return s;
}

}  // namespace saddlescape
