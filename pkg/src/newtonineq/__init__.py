"""Exact verification of Newton-like inequalities for self-conjugate lists."""
__version__ = "0.1.0"

from .esf import (
    EsfSequence,
    FormalValueError,
    HypothesisError,
    SelfConjugateList,
    WedgeSpec,
    elem_sym_all,
    mean_E,
    norm_P,
    wedge_member,
)
from .kernels import BACKEND
from .scalar import binomial, cmp_sqrt_scaled, format_rational, parse_rational

__all__ = [
    "BACKEND",
    "EsfSequence",
    "FormalValueError",
    "HypothesisError",
    "SelfConjugateList",
    "WedgeSpec",
    "binomial",
    "cmp_sqrt_scaled",
    "elem_sym_all",
    "format_rational",
    "mean_E",
    "norm_P",
    "parse_rational",
    "wedge_member",
]
