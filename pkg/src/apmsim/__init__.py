"""Design and simulation toolkit for pneumatic myofibrils built from
sarcomere-like contraction units."""

from .actuation import (
    ActuationState,
    LoadedTrial,
    PressureSweep,
    actuation_strain,
    adjustment_coefficient,
    contraction_force,
    expansion_force,
    junction_stretch,
    restoring_force,
    simulate_pressure,
    simulate_sweep,
)
from .errors import ConfigError, DataError, DomainError, UnbracketedRootError
from .geometry import (
    EllipseHalf,
    MyofibrilSpec,
    SarcomereGeometry,
    SpaGeometry,
    check_length_ratio,
    contraction_angle,
    current_major_axis,
    design_from_a_band,
    myofibril_length,
    myosin_height_bounds,
    resting_length,
    semi_ellipse_arc_length,
    solve_major_axis,
)
from .material import (
    MATERIALS,
    StretchState,
    YeohMaterial,
    cauchy_stress,
    get_material,
    inverse_cauchy_stress,
    strain_energy,
    wall_stress_factor,
)
from .validation import (
    AgreementReport,
    Curve,
    compare_curves,
    discrete_frechet,
    normalized_frechet,
    qq_pairs,
    r_squared,
)

__version__ = "0.1.0"

__all__ = [
    "ActuationState",
    "AgreementReport",
    "ConfigError",
    "Curve",
    "DataError",
    "DomainError",
    "EllipseHalf",
    "LoadedTrial",
    "MATERIALS",
    "MyofibrilSpec",
    "PressureSweep",
    "SarcomereGeometry",
    "SpaGeometry",
    "StretchState",
    "UnbracketedRootError",
    "YeohMaterial",
    "actuation_strain",
    "adjustment_coefficient",
    "cauchy_stress",
    "check_length_ratio",
    "compare_curves",
    "contraction_angle",
    "contraction_force",
    "current_major_axis",
    "design_from_a_band",
    "discrete_frechet",
    "expansion_force",
    "get_material",
    "inverse_cauchy_stress",
    "junction_stretch",
    "myofibril_length",
    "myosin_height_bounds",
    "normalized_frechet",
    "qq_pairs",
    "r_squared",
    "restoring_force",
    "resting_length",
    "semi_ellipse_arc_length",
    "simulate_pressure",
    "simulate_sweep",
    "solve_major_axis",
    "strain_energy",
    "wall_stress_factor",
]
