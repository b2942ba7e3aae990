"""Exact calculator for reduced GW and stable-pairs invariants of K3 and abelian surfaces."""

from .errors import (
    InconsistentODE,
    InsufficientPrecision,
    McfError,
    MissingPrimitiveValue,
    NonIntegralExponent,
    NonIntegralPrefactor,
    NonIntegralSquare,
    NotInvertible,
    PositiveValuationRequired,
    WindowMismatch,
)
from .forms import FormRequest, delta, eisenstein, phi, phi2, s_series, theta
from .gw import PointHodgeQuery, general_mcf_transform, mcf_point_hodge, primitive_point_hodge
from .series import INF, BiSeries, QLaurent, Rat
from .surface import CurveClass, SurfaceKind

__version__ = "0.1.0"
