"""Enclosures of the numerical range of a rational operator function."""

from .axis import AxisStructure, axis_segments
from .boundary import RegionMap, boundary_set, classify_regions, curve_fixed_alpha, curve_fixed_beta
from .core import OmegaBox, ProblemParams, poles, roots, solve_quartic
from .errors import (
    ConvergenceFailure,
    DegenerateConfiguration,
    EnclosureError,
    OddPairing,
    OnDiskBoundary,
    PoleEvaluation,
    VerificationFailure,
)
from .membership import MembershipVerdict, contains, contains_grid
from .oracle import MatrixPair, sample_numerical_range, sigma_min_T
from .pseudo import Epsilon0Result, epsilon0, epsilon0_grid, pseudo_axis_segments, pseudo_contour, resolvent_bound
from .strip import StripReport, strip_alpha, strip_edges_beta, strip_exists_alpha, strip_exists_beta

__version__ = "0.1.0"
