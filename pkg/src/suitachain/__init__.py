"""Numerical verification of the rigidity chain linking the Bergman kernel,
logarithmic capacity, Green's sublevel volumes, and Euclidean size on
bounded planar domains, with closed-form C^n counterparts."""

__version__ = "0.1.0"

from .bergman import (
    BergmanModel,
    QuadratureRule,
    ball_kernel,
    build_model,
    build_quadrature,
    build_quadrature_adapted,
    kernel_at,
    kernel_certificate,
    kernel_tail_estimate,
    load_model,
    model_from_json,
    model_to_json,
    polydisc_kernel,
    save_model,
)
from .chain import (
    ChainReport,
    classify_rigidity,
    coarea_residual,
    disc_chain_oracle,
    evaluate_chain,
    evaluate_chain_multi,
    isoperimetric_deficit,
    monotonicity_check,
    report_csv_header,
    report_csv_row,
    report_to_json,
)
from .errors import (
    BasisDegenerate,
    ChainViolation,
    ContourNotFound,
    DomainSpecError,
    InvalidCount,
    NoClosedForm,
    PointOutsideDomain,
    PoleEvaluation,
    PoleOutsideDomain,
    RadiusTooLarge,
    ResolutionTooLow,
    SolveFailed,
    SuitachainError,
)
from .geometry import (
    Annulus,
    Ball,
    BoundarySample,
    Disc,
    Ellipse,
    FourierCurve,
    MultiDomain,
    PlanarDomain,
    Polydisc,
    Polygon,
    area,
    boundary_distance,
    boundary_sample,
    contains,
    domain_from_spec,
    domain_to_spec,
    load_domain,
    save_domain,
)
from .green import (
    GreenSolution,
    SolverConfig,
    SublevelProfile,
    capacity_circle_mean,
    capacity_robin,
    disc_oracle,
    evaluate,
    profile_to_csv,
    solve,
    sublevel_profile,
)
from .multidim import (
    IndicatrixResult,
    azukawa_volume,
    indicatrix_distance_gap,
    kernel_distance_gap,
    kernel_indicatrix_gap,
)

__all__ = [
    "__version__",
    # geometry
    "PlanarDomain", "Disc", "Annulus", "Ellipse", "Polygon", "FourierCurve",
    "MultiDomain", "Ball", "Polydisc", "BoundarySample",
    "contains", "boundary_distance", "area", "boundary_sample",
    "domain_to_spec", "domain_from_spec", "load_domain", "save_domain",
    # green
    "SolverConfig", "GreenSolution", "SublevelProfile",
    "solve", "evaluate", "capacity_robin", "capacity_circle_mean",
    "sublevel_profile", "disc_oracle", "profile_to_csv",
    # bergman
    "QuadratureRule", "BergmanModel", "build_quadrature",
    "build_quadrature_adapted", "build_model", "kernel_at",
    "kernel_certificate", "kernel_tail_estimate",
    "ball_kernel", "polydisc_kernel",
    "model_to_json", "model_from_json", "save_model", "load_model",
    # chain
    "ChainReport", "evaluate_chain", "evaluate_chain_multi",
    "disc_chain_oracle", "classify_rigidity", "monotonicity_check",
    "isoperimetric_deficit", "coarea_residual",
    "report_to_json", "report_csv_header", "report_csv_row",
    # multidim
    "IndicatrixResult", "kernel_distance_gap", "azukawa_volume",
    "kernel_indicatrix_gap", "indicatrix_distance_gap",
    # errors
    "SuitachainError", "PointOutsideDomain", "PoleOutsideDomain",
    "PoleEvaluation", "RadiusTooLarge", "SolveFailed", "ContourNotFound",
    "InvalidCount", "ResolutionTooLow", "BasisDegenerate", "NoClosedForm",
    "DomainSpecError", "ChainViolation",
]
