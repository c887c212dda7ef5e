#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "saddlescape/corpus.hpp"
#include "saddlescape/errors.hpp"
#include "saddlescape/experiments.hpp"
#include "saddlescape/lyapunov.hpp"
#include "saddlescape/report_io.hpp"
#include "saddlescape/solver.hpp"
#include "saddlescape/stability.hpp"

namespace py = pybind11;
using namespace saddlescape;

namespace {

// Reports cross the boundary as plain dicts via the same JSON the CLI writes.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SolverConfig make_solver(const std::string& algo, double gamma, double beta, long max_iters, double grad_tol,
                         double prox_tol, int prox_max_inner, bool enforce_bounds) {
  SolverConfig c;
  c.algorithm = parse_algorithm(algo);
  c.gamma = gamma;
  c.beta = beta;
  c.max_iters = max_iters;
  c.grad_stop_tol = grad_tol;
  c.prox_inner_tol = prox_tol;
  c.prox_max_inner_iters = prox_max_inner;
  c.enforce_bounds = enforce_bounds;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heavy-ball saddle-escape toolkit (C++ core)";

  auto base = py::register_exception<Error>(m, "SaddlescapeError", PyExc_RuntimeError);
  py::register_exception<ConfigRejected>(m, "ConfigRejected", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<ProxNonConvergence>(m, "ProxNonConvergence", base.ptr());
  py::register_exception<CorpusInconsistency>(m, "CorpusInconsistency", base.ptr());

  py::class_<Objective>(m, "Objective")
      .def_property_readonly("name", &Objective::name)
      .def_property_readonly("dim", &Objective::dim)
      .def_property_readonly("lipschitz_bound", &Objective::lipschitz_bound)
      .def_property_readonly("coercive", &Objective::coercive)
      .def_property_readonly("region",
                             [](const Objective& o) { return py::make_tuple(o.region().lo, o.region().hi); })
      .def_property_readonly("known_criticals",
                             [](const Objective& o) {
                               py::list out;
                               for (const auto& c : o.known_criticals())
                                 out.append(py::make_tuple(c.point, std::string(to_string(c.expected))));
                               return out;
                             })
      .def("value", &Objective::value)
      .def("gradient", &Objective::gradient)
      .def("hessian", &Objective::hessian)
      .def("__repr__", [](const Objective& o) { return "<Objective " + o.name() + ">"; });

  m.def("make_objective", &make_objective, py::arg("spec"));
  m.def("default_corpus", &default_corpus);
  m.def(
      "validate_objective",
      [](const std::string& name, int points, std::uint64_t seed) {
        return to_py(to_json(validate_objective(make_objective(name), points, seed)));
      },
      py::arg("objective"), py::arg("points") = 100, py::arg("seed") = 2024);

  m.def(
      "valid_stepsize_range",
      [](const std::string& algo, double beta, double lipschitz) {
        const Interval r = valid_stepsize_range(parse_algorithm(algo), beta, lipschitz);
        return py::make_tuple(r.lower, r.upper);
      },
      py::arg("algo"), py::arg("beta"), py::arg("lipschitz"));

  m.def(
      "classify_critical_point",
      [](const std::string& name, const Vector& x, double grad_tol, double curvature_tol) {
        return std::string(to_string(classify_critical_point(make_objective(name), x, grad_tol, curvature_tol)));
      },
      py::arg("objective"), py::arg("x"), py::arg("grad_tol") = kDefaultGradTol,
      py::arg("curvature_tol") = kDefaultCurvatureTol);

  m.def(
      "run",
      [](const std::string& name, const Vector& x0, std::optional<Vector> x1, const std::string& algo, double gamma,
         double beta, long max_iters, double grad_tol, double prox_tol, int prox_max_inner, bool enforce_bounds) {
        const Objective obj = make_objective(name);
        const SolverConfig cfg =
            make_solver(algo, gamma, beta, max_iters, grad_tol, prox_tol, prox_max_inner, enforce_bounds);
        const Vector start1 = x1 ? *x1 : x0;
        const Trace t = run(obj, {start1, x0}, cfg);

        Matrix iterates(static_cast<Index>(t.states.size()), obj.dim());
        for (std::size_t k = 0; k < t.states.size(); ++k) iterates.row(static_cast<Index>(k)) = t.states[k].x_curr;
        py::dict out;
        out["termination"] = std::string(to_string(t.termination));
        out["steps"] = t.steps();
        out["iterates"] = iterates;
        out["grad_norms"] = t.grad_norms;
        out["lyapunov_values"] = t.lyapunov_values;
        out["displacements"] = t.displacements;
        out["final_point"] = t.final_point();
        if (t.states.size() >= 2) {
          out["descent_certificate"] =
              to_py(to_json(verify_descent(t, obj, gamma, beta, default_cert_tol(t, cfg.prox_inner_tol))));
        } else {
          out["descent_certificate"] = py::none();
        }
        out["residual_bound"] = to_py(residual_bound_json(gradient_residual_bound(t, gamma, beta, prox_tol)));
        out["summability"] = to_py(to_json(displacement_summability(t)));
        return out;
      },
      py::arg("objective"), py::arg("x0"), py::arg("x1") = py::none(), py::arg("algo") = "hbgd",
      py::arg("gamma") = 0.1, py::arg("beta") = 0.25, py::arg("max_iters") = 100000, py::arg("grad_tol") = 1e-8,
      py::arg("prox_tol") = 1e-12, py::arg("prox_max_inner") = 100, py::arg("enforce_bounds") = true);

  m.def(
      "analyze_stability",
      [](const std::string& name, const Vector& x, const std::string& algo, double gamma, double beta,
         bool enforce_bounds) {
        const SolverConfig cfg = make_solver(algo, gamma, beta, 100000, 1e-8, 1e-12, 100, enforce_bounds);
        return to_py(to_json(analyze_stability(make_objective(name), x, cfg)));
      },
      py::arg("objective"), py::arg("x"), py::arg("algo") = "hbgd", py::arg("gamma") = 0.1,
      py::arg("beta") = 0.25, py::arg("enforce_bounds") = true);

  m.def(
      "run_monte_carlo",
      [](const std::string& name, const std::string& algo, double gamma, double beta, long trials,
         std::uint64_t seed, const std::string& init, double gaussian_scale, bool independent_x1, int threads,
         bool enforce_bounds) {
        ExperimentConfig c;
        c.objective_name = name;
        c.solver = make_solver(algo, gamma, beta, 100000, 1e-8, 1e-12, 100, enforce_bounds);
        c.num_trials = trials;
        c.seed = seed;
        c.init_distribution = parse_init_distribution(init);
        c.gaussian_scale = gaussian_scale;
        c.independent_x1 = independent_x1;
        c.threads = threads;
        EscapeReport r;
        {
          py::gil_scoped_release release;
          r = run_monte_carlo(c);
        }
        return to_py(to_json(r));
      },
      py::arg("objective") = "double_well", py::arg("algo") = "hbgd", py::arg("gamma") = 0.1,
      py::arg("beta") = 0.25, py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("init") = "uniform_box",
      py::arg("gaussian_scale") = 0.1, py::arg("independent_x1") = true, py::arg("threads") = 0,
      py::arg("enforce_bounds") = true);

  m.def(
      "stable_manifold_probe",
      [](const std::string& name, const std::string& algo, double gamma, double beta, double perturbation) {
        const SolverConfig cfg = make_solver(algo, gamma, beta, 100000, 1e-8, 1e-12, 100, true);
        return to_py(to_json(stable_manifold_probe(name, cfg, perturbation)));
      },
      py::arg("objective") = "double_well", py::arg("algo") = "hbgd", py::arg("gamma") = 0.1,
      py::arg("beta") = 0.25, py::arg("perturbation") = 1e-8);

  m.def(
      "stepsize_sweep",
      [](const std::string& name, const std::string& algo, double beta, const std::vector<double>& gammas,
         long trials, std::uint64_t seed) {
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = stepsize_sweep(name, parse_algorithm(algo), beta, gammas, trials, seed);
        }
        return to_py(to_json(t));
      },
      py::arg("objective"), py::arg("algo"), py::arg("beta"), py::arg("gammas"), py::arg("trials") = 100,
      py::arg("seed") = 0);
}
