"""Exact scalars, intervals and Sturm certificates."""
from .scalars import (Rational, GaussianRational, QuadExt, MixedRadicandError, lift, cplx,
                      rational_sqrt, tower_sqrt, real_quad_sign)
from .interval import Interval, CInterval, FloatBackend, MPBackend, backend_for, enclose, enclose_complex
from .poly import (Poly, SqrtPoly, sturm_count, count_closed, count_open, isolate_roots, certify_sign,
                   Certificate, SignClaimError, NonNegative, NonPositive, Positive, Negative)

__all__ = [
    "Rational", "GaussianRational", "QuadExt", "MixedRadicandError", "lift", "cplx", "rational_sqrt",
    "tower_sqrt", "real_quad_sign", "Interval", "CInterval", "FloatBackend", "MPBackend",
    "backend_for", "enclose", "enclose_complex", "Poly", "SqrtPoly", "sturm_count", "count_closed",
    "count_open", "isolate_roots", "certify_sign", "Certificate", "SignClaimError", "NonNegative",
    "NonPositive", "Positive", "Negative",
]
