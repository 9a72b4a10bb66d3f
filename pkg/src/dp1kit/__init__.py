"""Exact lattice and fan computations for a degree-one del Pezzo surface and
the blow-up of P^4 in eight points."""

from .lattice import (
    FOURFOLD, FOURFOLD_CURVE, K_S, K_X, SURFACE, PicClass, RatClass, S, X, adjoint_twist,
    bertini_pullback, canonical_class, make, pair, unit,
)
from .classes import ClassKind, enumerate_kind, orbit, reflect

__all__ = [
    "FOURFOLD", "FOURFOLD_CURVE", "K_S", "K_X", "SURFACE", "PicClass", "RatClass", "S", "X",
    "adjoint_twist", "bertini_pullback", "canonical_class", "make", "pair", "unit",
    "ClassKind", "enumerate_kind", "orbit", "reflect",
]
