"""Heavy-ball saddle-escape toolkit.

Thin re-export of the compiled core. Reports come back as plain dicts with
the same fields as the CLI's JSON files.
"""

from ._core import (
    ConfigRejected,
    CorpusInconsistency,
    NumericalFailure,
    Objective,
    ProxNonConvergence,
    SaddlescapeError,
    analyze_stability,
    classify_critical_point,
    default_corpus,
    make_objective,
    run,
    run_monte_carlo,
    stable_manifold_probe,
    stepsize_sweep,
    valid_stepsize_range,
    validate_objective,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigRejected",
    "CorpusInconsistency",
    "NumericalFailure",
    "Objective",
    "ProxNonConvergence",
    "SaddlescapeError",
    "analyze_stability",
    "classify_critical_point",
    "default_corpus",
    "make_objective",
    "run",
    "run_monte_carlo",
    "stable_manifold_probe",
    "stepsize_sweep",
    "valid_stepsize_range",
    "validate_objective",
]
