"""Parabolic double-curvature arch dam shape optimization.

Two conflicting objectives, concrete volume and worst Willam-Warnke
failure margin, are minimized with a multi-objective charged system
search; the resulting Pareto set is ranked by a multi-criteria
tournament decision maker.
"""

from .benchmarks import BenchmarkProblem, get_benchmark, hypervolume2d, igd
from .config import ConfigError, default_config, load_config, make_mocss_config, make_problem
from .geometry import (
    CanyonProfile,
    ControlLevels,
    DamGeometry,
    DegenerateGeometryError,
    DesignVector,
    LOWER_BOUNDS,
    UPPER_BOUNDS,
    VARIABLE_NAMES,
    lagrange_basis,
)
from .mocss import MocssConfig, MocssResult, pareto_rank, run_mocss
from .mtdm import (
    RankingResult,
    Scenario,
    UndefinedSetError,
    acceptable_mask,
    rank_R,
    tournament_T,
    tournament_t,
)
from .objectives import DamProblem, Evaluation
from .stress_model import LoadCase, StressField, evaluate_stresses, sample_grid
from .willam_warnke import (
    StrengthParams,
    WWCoefficients,
    classify_domain,
    criterion_value,
    criterion_values,
    solve_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BenchmarkProblem", "get_benchmark", "hypervolume2d", "igd",
    "ConfigError", "default_config", "load_config", "make_mocss_config", "make_problem",
    "CanyonProfile", "ControlLevels", "DamGeometry", "DegenerateGeometryError",
    "DesignVector", "LOWER_BOUNDS", "UPPER_BOUNDS", "VARIABLE_NAMES", "lagrange_basis",
    "MocssConfig", "MocssResult", "pareto_rank", "run_mocss",
    "RankingResult",
    "UndefinedSetError", "Scenario", "acceptable_mask", "rank_R", "tournament_T", "tournament_t",
    "DamProblem", "Evaluation",
    "LoadCase", "StressField", "evaluate_stresses", "sample_grid",
    "StrengthParams", "WWCoefficients", "classify_domain", "criterion_value",
    "criterion_values", "solve_coefficients",
]
