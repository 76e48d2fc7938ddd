"""Zeta functions of curves over finite fields via rigid cohomology and a map to P^1."""

from .curve import CurveInput, MatrixEntry, build_curve, builtin_hyperelliptic, builtin_superelliptic
from .errors import RigidZetaError
from .oracle import count_points, lpoly_from_counts
from .padic import make_context
from .pipeline import RunConfig, RunResult, run
from .zeta import LPolynomial, counts_from_lpoly

__version__ = "0.1.0"

__all__ = [
    "CurveInput",
    "LPolynomial",
    "MatrixEntry",
    "RigidZetaError",
    "RunConfig",
    "RunResult",
    "build_curve",
    "builtin_hyperelliptic",
    "builtin_superelliptic",
    "count_points",
    "counts_from_lpoly",
    "lpoly_from_counts",
    "make_context",
    "run",
]
