"""Numerical toolkit for warped circle-bundle Kaehler metrics with
quasi-constant holomorphic sectional curvature, and for verifying their
curvature identities at machine precision on sampled points."""

from .geometry import (
    BundleParams,
    ChartKind,
    ChartPoint,
    CircleBundleMetric,
    EuclideanMetric,
    FubiniStudy,
    ProductBase,
    BaseChartMetric,
    WarpedBundleMetric,
    assemble_metric,
    circle_bundle_metric,
    connection_form,
    fubini_study,
)
from .jets import Jet2, seed_chart
from .profile import (
    CubicProfilePolynomial,
    ProfileSolution,
    boundary_report,
    build_polynomial,
    load_profile_table,
    period_length,
    solve_profile,
)

__all__ = [
    "BundleParams", "ChartKind", "ChartPoint", "CircleBundleMetric",
    "EuclideanMetric", "FubiniStudy", "ProductBase", "BaseChartMetric",
    "WarpedBundleMetric", "assemble_metric", "circle_bundle_metric",
    "connection_form", "fubini_study", "Jet2", "seed_chart",
    "CubicProfilePolynomial", "ProfileSolution", "boundary_report",
    "build_polynomial", "load_profile_table", "period_length", "solve_profile",
]

__version__ = "0.1.0"
