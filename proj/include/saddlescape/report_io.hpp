#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "saddlescape/corpus.hpp"
#include "saddlescape/experiments.hpp"
#include "saddlescape/lyapunov.hpp"
#include "saddlescape/solver.hpp"
#include "saddlescape/stability.hpp"

namespace saddlescape {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form, independent of the C locale.
/// Non-finite values print as "inf", "-inf" and "nan".
std::string format_double(double v);

/// Comma-separated decimals, the CLI's vector syntax.
std::string format_vector(const Vector& v);
Vector parse_vector(std::string_view text);

Json to_json(const Vector& v);
Json to_json(const StabilityReport& r);
Json to_json(const DescentCertificate& c);
Json to_json(const Summability& s);
Json residual_bound_json(const std::vector<bool>& holds);
Json to_json(const SolverConfig& c);
Json to_json(const ExperimentConfig& c);
Json to_json(const TrialOutcome& t);
Json to_json(const EscapeReport& r);
Json to_json(const ProbeReport& r);
Json to_json(const SweepTable& t);
Json to_json(const CorpusCheck& c);

/// `k,x0,...,x{N-1},grad_norm,lyapunov,displacement`, k starting at 1.
void write_trace_csv(std::ostream& os, const Trace& trace);
/// `trial,seed,terminal_class,terminal_x0,...,iterations,final_grad_norm`.
/// Unresolved trials print their termination (MaxIters/Diverged) as class.
void write_escape_csv(std::ostream& os, const EscapeReport& report);
/// `gamma,in_bounds,trials,saddle_terminations,converged,diverged,escape_fraction,convergence_fraction,mean_iterations`.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

/// Flat `key = value` configuration; `#` starts a comment. Later keys win.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;
ConfigEntries parse_config_text(std::string_view text);
std::string format_config(const ConfigEntries& entries);

}  // namespace saddlescape
