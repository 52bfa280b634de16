"""rmfperc: accessibility percolation in the Rough Mount Fuji model.

Deterministic hash-keyed fitness and site fields on leveled DAG families,
exact accessible/open path counting, frontier-sweep survival Monte Carlo,
moment analysis, and threshold bracketing.
"""

__version__ = "1.0.0"

from ._kernels import BACKEND_NAME, available_backends, get_backend
from .analysis import (
    CouplingAudit,
    CurvePoint,
    MomentReport,
    SurvivalCurve,
    ThresholdBracket,
    coupled_survival_curve,
    coupling_audit,
    curve_from_csv,
    curve_to_csv,
    curve_to_json,
    estimate_threshold,
    expected_open_paths,
    isotonic_fit,
    moment_report,
    open_path_counts_mc,
    path_intersection_table,
    run_survival_experiment,
    variance_scaling_study,
)
from .distributions import (
    Distribution,
    Exponential,
    IntervalMass,
    Normal,
    PiecewiseLinearCdf,
    Uniform,
    locate_interval,
    max_mass,
    min_mass,
    parse_distribution,
)
from .errors import (
    NoBracketError,
    ParameterError,
    ResourceGuardError,
    UnsupportedDistributionError,
)
from .fields import (
    CoupledSiteField,
    FitnessField,
    SiteField,
    couple,
    fitness_field,
    site_field,
)
from .graphs import (
    AltLattice,
    Hypercube,
    LeveledDag,
    NaryTree,
    RegularTree,
    SquareLattice,
    parse_family,
)
from .paths import (
    DEFAULT_FRONTIER_GUARD,
    PathCount,
    SurvivalResult,
    count_large_paths,
    count_open_vs_accessible,
    enumerate_large_paths,
    survival_depth,
    survival_depths,
)
from .svg import curve_to_svg

__all__ = [
    "__version__",
    "BACKEND_NAME",
    "available_backends",
    "get_backend",
    "CouplingAudit",
    "CurvePoint",
    "MomentReport",
    "SurvivalCurve",
    "ThresholdBracket",
    "coupled_survival_curve",
    "coupling_audit",
    "curve_from_csv",
    "curve_to_csv",
    "curve_to_json",
    "curve_to_svg",
    "estimate_threshold",
    "expected_open_paths",
    "isotonic_fit",
    "moment_report",
    "open_path_counts_mc",
    "path_intersection_table",
    "run_survival_experiment",
    "variance_scaling_study",
    "Distribution",
    "Exponential",
    "IntervalMass",
    "Normal",
    "PiecewiseLinearCdf",
    "Uniform",
    "locate_interval",
    "max_mass",
    "min_mass",
    "parse_distribution",
    "NoBracketError",
    "ParameterError",
    "ResourceGuardError",
    "UnsupportedDistributionError",
    "CoupledSiteField",
    "FitnessField",
    "SiteField",
    "couple",
    "fitness_field",
    "site_field",
    "AltLattice",
    "Hypercube",
    "LeveledDag",
    "NaryTree",
    "RegularTree",
    "SquareLattice",
    "parse_family",
    "DEFAULT_FRONTIER_GUARD",
    "PathCount",
    "SurvivalResult",
    "count_large_paths",
    "count_open_vs_accessible",
    "enumerate_large_paths",
    "survival_depth",
    "survival_depths",
]
