"""The determinant map rho from the surface lattice to H^2 of the blow-up X
of P^4 in 8 points, its half, its transpose zeta, and the class formulas
obtained through them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact
from .classes import (
    ClassKind, WeylElement, array_of, bertini_element, enumerate_kind, index_of, require_kind,
    SIMPLE_ROOTS,
)
from .errors import BasisMismatch, DomainError, IntegralityError, KindError
from .lattice import (
    FOURFOLD, FOURFOLD_CURVE, K_S, K_X, N, SURFACE, AnyClass, PicClass, apply, bertini_pullback,
    divisor_dot_curve, make, pair, unit,
)

# columns are images of the coefficient directions h, -e1, ..., -e8
RHO = tuple(
    tuple(row)
    for row in zip(
        *[(-1,) + (-1,) * 8]
        + [(1,) + tuple(-1 if j == i else 1 for j in range(1, 9)) for i in range(1, 9)]
    )
)
RHO_INV = tuple(tuple(r) for r in exact.inverse(RHO))

# zeta on curve coefficients (a; b) of a*h - sum(b_i e_i):
# zeta(h) = 2h + K_S, zeta(-e_i) = 2e_i - e + h
ZETA = tuple(
    tuple(row)
    for row in zip(
        *[(-1,) + (-1,) * 8]
        + [(1,) + tuple(-1 if j == i else 1 for j in range(1, 9)) for i in range(1, 9)]
    )
)
ZETA_INV = tuple(tuple(r) for r in exact.inverse(ZETA))


def _need(x: AnyClass, basis: str) -> None:
    if x.basis != basis:
        raise BasisMismatch(f"expected a class in basis {basis}, got {x.basis}")


def rho(x: AnyClass) -> AnyClass:
    _need(x, SURFACE)
    return apply(RHO, x, FOURFOLD)


def rho_inverse(y: AnyClass) -> AnyClass:
    _need(y, FOURFOLD)
    return apply(RHO_INV, y, SURFACE)


def rho_half(x: AnyClass) -> AnyClass:
    return rho(x) / 2


def rho_half_is_integral(x: AnyClass) -> bool:
    """Criterion: K_S.x even.  Checked against the actual coefficients in tests."""
    k = pair(K_S, x)
    return isinstance(k, int) and k % 2 == 0


def rho_half_integral(x: AnyClass) -> PicClass:
    y = rho_half(x)
    if not y.is_integral:
        raise IntegralityError(f"half of rho({x}) is not integral")
    return y


def zeta(gamma: AnyClass) -> AnyClass:
    _need(gamma, FOURFOLD_CURVE)
    return apply(ZETA, gamma, SURFACE)


def zeta_inverse(x: AnyClass) -> AnyClass:
    _need(x, SURFACE)
    return apply(ZETA_INV, x, FOURFOLD_CURVE)


def curve(*coeffs) -> AnyClass:
    return make(FOURFOLD_CURVE, coeffs)


def adjointness_holds(L: AnyClass, gamma: AnyClass) -> bool:
    return divisor_dot_curve(rho(L), gamma) == pair(L, zeta(gamma))


# -- class formulas ------------------------------------------------------------

def fixed_divisor_class(C: AnyClass) -> PicClass:
    """(sum(m) - d)/2 * (H - sum E) + sum(m_i E_i) for a conic d h - sum m_i e_i."""
    require_kind(C, ClassKind.CONIC)
    d, m = C.d, C.m
    a = (sum(m) - d) // 2
    # H - sum E has coefficients (1; 1..1); m_i E_i has coefficient -m_i
    return make(FOURFOLD, [a] + [a - mi for mi in m])


def d_ell_class(ell: AnyClass) -> PicClass:
    require_kind(ell, ClassKind.MINUS_ONE)
    return rho_half_integral(-K_S + ell)


def h_Y_class(hc: AnyClass) -> AnyClass:
    require_kind(hc, ClassKind.CUBIC)
    return rho_half(-K_S + 3 * hc)


@lru_cache(maxsize=None)
def bertini_x_matrix() -> tuple:
    return weyl_transfer(bertini_element()).matrix


def bertini_on_X(x: AnyClass) -> AnyClass:
    _need(x, FOURFOLD)
    return apply(bertini_x_matrix(), x)


def bianticanonical_pairing(C: AnyClass) -> bool:
    """E_C + iota*E_C = -2K_Y as classes, with -K_Y = rho(-K_S)."""
    require_kind(C, ClassKind.CONIC)
    minus_KY = rho(-K_S)
    return rho_half(bertini_pullback(C)) == 2 * minus_KY - rho_half(C)


def effective_semigroup_generators() -> list[PicClass]:
    out = [-K_X]
    out += [fixed_divisor_class(C) for C in enumerate_kind(ClassKind.CONIC)]
    out += [d_ell_class(l) for l in enumerate_kind(ClassKind.MINUS_ONE)]
    return out


# -- adapted frames ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _cubic_parents() -> dict:
    """BFS tree over the cubic orbit: cubic -> (parent cubic, simple root index)."""
    from .classes import _reflect_t
    h = unit(SURFACE, 0).coeffs
    parents = {h: None}
    frontier = [h]
    while frontier:
        nxt = []
        for x in frontier:
            for k, a in enumerate(SIMPLE_ROOTS):
                y = _reflect_t(a, x)
                if y not in parents:
                    parents[y] = (x, k)
                    nxt.append(y)
        frontier = nxt
    return parents


def adapted_frame(hmark: AnyClass) -> WeylElement:
    """A Weyl element w with w(h) = hmark; w(e_i) is then an adapted basis."""
    require_kind(hmark, ClassKind.CUBIC)
    parents = _cubic_parents()
    refl = [WeylElement.reflection(PicClass(SURFACE, a)) for a in SIMPLE_ROOTS]
    w = WeylElement.identity()
    x = hmark.coeffs
    while parents[x] is not None:
        x, k = parents[x]
        w = w @ refl[k]
    assert w(unit(SURFACE, 0)) == hmark
    return w


def inverse_element(w: WeylElement) -> WeylElement:
    inv = exact.inverse(w.matrix)
    return WeylElement(tuple(tuple(int(v) for v in r) for r in inv))


def in_adapted_basis(hmark: AnyClass, x: AnyClass) -> AnyClass:
    return inverse_element(adapted_frame(hmark))(x)


def gamma_tilde_class(hmark: AnyClass, ell: AnyClass) -> AnyClass:
    """Curve class on X of the transform of a general line in P_l."""
    require_kind(ell, ClassKind.MINUS_ONE)
    lx = in_adapted_basis(hmark, ell)
    d, m = lx.d, lx.m
    if d <= 1:
        raise DomainError(f"h.l = {d} <= 1: P_l lies in the indeterminacy locus")
    return curve(6 * d - 5 - sum(m), *[d - mi - 1 for mi in m])


SPECIAL_CURVE_KINDS = ("line-in-P_ell", "Z_ell", "line-in-E_C")


def zeta_of_special_curves(kind: str, cls: AnyClass) -> PicClass:
    if kind == "line-in-P_ell":
        require_kind(cls, ClassKind.MINUS_ONE)
        return 2 * cls + K_S
    if kind == "Z_ell":
        require_kind(cls, ClassKind.MINUS_ONE)
        return -(2 * cls + K_S)
    if kind == "line-in-E_C":
        require_kind(cls, ClassKind.CONIC)
        return 2 * cls + K_S
    raise DomainError(f"unknown special curve kind {kind!r}")


# -- Weyl transfer --------------------------------------------------------------

@dataclass(frozen=True)
class XAutomorphism:
    matrix: tuple

    def __call__(self, x: AnyClass) -> AnyClass:
        _need(x, FOURFOLD)
        return apply(self.matrix, x)

    def preserves_form(self) -> bool:
        m = np.array(self.matrix, dtype=object)
        g = np.diag([3] + [-1] * 8).astype(object)
        return bool((m.T @ g @ m == g).all())

    def fixes_canonical(self) -> bool:
        return self(K_X) == K_X


def weyl_transfer(w: WeylElement) -> XAutomorphism:
    if not w.is_weyl():
        raise DomainError("input does not preserve the form and fix K_S")
    m = exact.matmul(exact.matmul(RHO, w.matrix), RHO_INV)
    if any(Fraction(v).denominator != 1 for r in m for v in r):
        raise IntegralityError("transferred automorphism is not integral")
    return XAutomorphism(tuple(tuple(int(v) for v in r) for r in m))


# -- cone dictionary ---------------------------------------------------------------

@dataclass(frozen=True)
class XCone:
    """A cone of divisors on X: generators and/or curve classes pairing >= 0."""

    name: str
    generators: tuple
    curve_normals: tuple

    def contains(self, D: AnyClass) -> bool:
        if self.curve_normals:
            return all(divisor_dot_curve(D, g) >= 0 for g in self.curve_normals)
        return exact.in_cone(exact.primitive(D.coeffs), [g.coeffs for g in self.generators])


def _curve_normals_of(surface_normals: np.ndarray) -> tuple:
    return tuple(zeta_inverse(PicClass(SURFACE, tuple(int(v) for v in r))) for r in surface_normals)


def nef_x_facet_curves() -> list[AnyClass]:
    """Curves e_i and L_jk = h - e_j - e_k: zeta-preimages of the 36 facet normals of B_h."""
    h = unit(SURFACE, 0)
    e = [unit(SURFACE, i) for i in range(1, 9)]
    normals = [2 * (h - ei) + K_S for ei in e]
    normals += [-(2 * (h - e[j] - e[k]) + K_S) for j in range(8) for k in range(j + 1, 8)]
    return [zeta_inverse(n) for n in normals]


@lru_cache(maxsize=None)
def nef_x_rays() -> tuple:
    """Extreme rays of {D : D.gamma >= 0 for the 36 facet curves}, by double description."""
    normals = [(g.coeffs[0],) + tuple(-b for b in g.coeffs[1:]) for g in nef_x_facet_curves()]
    return tuple(make(FOURFOLD, r) for r in exact.extreme_rays(normals, N))


def nef_x_matches_chamber_closure() -> bool:
    """Every ray of the 36-facet cone, pulled back by rho, lies in the closure of B_h.

    Together with the trivial reverse inclusion this identifies the cone.
    """
    from .fan import wall_normals, _sign_bytes, label_representative
    from .cones import build_cone, contains
    signs = np.frombuffer(_sign_bytes(label_representative("B_h", unit(SURFACE, 0))), dtype=np.uint8)
    sgn = np.where(signs == 1, 1, -1).astype(np.int64)
    E = build_cone("E")
    from .cones import pair_rows
    for ray in nef_x_rays():
        L = rho_inverse(ray)
        v = exact.primitive(L.coeffs)
        if ((pair_rows(wall_normals(), v) * sgn) < 0).any() or not contains(E, L):
            return False
    return True


def cone_dictionary() -> dict[str, XCone]:
    from .cones import build_cone
    eff = XCone("Eff(X)", tuple(fixed_divisor_class(C) for C in enumerate_kind(ClassKind.CONIC)),
                _curve_normals_of(build_cone("E_DUAL").generators))
    mov = XCone("Mov(X)", (), _curve_normals_of(build_cone("PI_DUAL").generators))
    nef = XCone("Nef(X)", nef_x_rays(), tuple(nef_x_facet_curves()))
    nef_y = XCone("Nef(Y)", tuple(rho(PicClass(SURFACE, tuple(int(v) for v in r)))
                                 for r in build_cone("N").generators),
                  _curve_normals_of(build_cone("N_DUAL").generators))
    return {"Eff": eff, "Mov": mov, "Nef": nef, "NefY": nef_y}


def extremal_in(D: AnyClass, cone: XCone) -> bool:
    tight = [(g.coeffs[0],) + tuple(-b for b in g.coeffs[1:]) for g in cone.curve_normals
             if divisor_dot_curve(D, g) == 0]
    return exact.int_rank(tight, stop_at=8) == 8


def curve_R() -> AnyClass:
    return curve(5, 1, 1, 1, 1, 1, 1, 1, 1)
