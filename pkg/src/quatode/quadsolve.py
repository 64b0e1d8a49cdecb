"""Exact solver for left-coefficient quaternionic quadratics.

Solves q**2 + (a0 + h.aVec) q + b0 + h.bVec = 0 by removing the real part of
the linear coefficient (p = q + a0/2) and then branching on the geometry of
the two imaginary vectors of the reduced equation: parallel, orthogonal, or
generic, plus the degenerate vector-free cases.  The vector-free equation
p**2 + alpha**2 = 0 has a whole sphere of roots; everything else has at most
two, which this module returns in closed form.
"""

from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .quatcore import Quaternion

log = logging.getLogger(__name__)

# relative gate deciding parallel/orthogonal against generic
_CLASSIFY_EPS = 1e-12
# relative gate for the repeated-root branch of the orthogonal case
_DELTA_EPS = 1e-12


class CaseTag(enum.Enum):
    PARALLEL = "parallel"
    ORTHOGONAL = "orthogonal"
    GENERIC = "generic"
    A_ZERO = "a_zero"
    C_ZERO = "c_zero"
    BOTH_ZERO = "both_zero"


class RootKind(enum.Enum):
    DISTINCT = "distinct"
    REPEATED = "repeated"
    SPHERE = "sphere"
    REAL_PAIR = "real_pair"


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Original coefficients plus the reduced-equation quantities.

    The reduced unknown is p = q + a0/2, satisfying
    p**2 + (h.a_vec) p + c0 + h.c_vec = 0.
    """

    a0: float
    a_vec: np.ndarray
    b0: float
    b_vec: np.ndarray
    c0: float = field(init=False)
    c_vec: np.ndarray = field(init=False)
    d0: float = field(init=False)
    d_vec: np.ndarray = field(init=False)
    delta: float = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.a_vec, dtype=float)
        b = np.asarray(self.b_vec, dtype=float)
        object.__setattr__(self, "a_vec", a)
        object.__setattr__(self, "b_vec", b)
        object.__setattr__(self, "c0", self.b0 - self.a0 ** 2 / 4.0)
        c = b - (self.a0 / 2.0) * a
        object.__setattr__(self, "c_vec", c)
        an2 = float(a @ a)
        if an2 > 0.0:
            d0 = float(a @ c) / an2
            object.__setattr__(self, "d0", d0)
            object.__setattr__(self, "d_vec", c - d0 * a)
            cn2 = float(c @ c)
            object.__setattr__(
                self, "delta", 0.25 + (self.c0 - cn2 / an2) / an2)
        else:
            object.__setattr__(self, "d0", math.nan)
            object.__setattr__(self, "d_vec", np.full(3, math.nan))
            object.__setattr__(self, "delta", math.nan)

    @property
    def shift(self) -> float:
        """Real shift taking reduced roots back: q = p - shift."""
        return self.a0 / 2.0

    def a_quaternion(self) -> Quaternion:
        return Quaternion(self.a0, *self.a_vec)

    def b_quaternion(self) -> Quaternion:
        return Quaternion(self.b0, *self.b_vec)


@dataclass(frozen=True)
class BasisCoordinates:
    """Real coordinates of a reduced root p = p0 + h.(x*u + y*v + z*(u x v)).

    u is the linear-coefficient vector; v is either the orthogonal constant
    vector itself or its component orthogonal to u, depending on the case.
    """

    p0: float
    x: float
    y: float
    z: float
    u: np.ndarray
    v: np.ndarray

    def to_quaternion(self) -> Quaternion:
        vec = self.x * self.u + self.y * self.v + self.z * np.cross(self.u, self.v)
        return Quaternion(self.p0, *vec)


@dataclass(frozen=True)
class RootSet:
    """Roots of the original (unshifted) quadratic."""

    kind: RootKind
    case: CaseTag
    roots: tuple[Quaternion, ...] = ()
    alpha: float = 0.0           # sphere radius (imaginary norm)
    center: float = 0.0          # real part of every sphere root
    coordinates: tuple[BasisCoordinates, ...] = ()

    def sphere_samples(self, count: int = 16) -> list[Quaternion]:
        """Deterministic sample of sphere roots center + h.(alpha * axis)."""
        if self.kind is not RootKind.SPHERE:
            raise ValueError("not a sphere root set")
        out = []
        golden = math.pi * (3.0 - math.sqrt(5.0))
        for n in range(count):
            ct = 1.0 - 2.0 * (n + 0.5) / count
            st = math.sqrt(max(0.0, 1.0 - ct * ct))
            ph = golden * n
            axis = np.array([st * math.cos(ph), st * math.sin(ph), ct])
            out.append(Quaternion(self.center, *(self.alpha * axis)))
        return out

    def all_roots(self) -> list[Quaternion]:
        if self.kind is RootKind.SPHERE:
            return self.sphere_samples()
        return list(self.roots)


def normalize(a0: float, a_vec, b0: float, b_vec) -> QuadraticCoeffs:
    """Record coefficients and the reduced-equation data."""
    return QuadraticCoeffs(float(a0), np.asarray(a_vec, dtype=float),
                           float(b0), np.asarray(b_vec, dtype=float))


def classify(c: QuadraticCoeffs) -> CaseTag:
    """Decide which closed-form branch applies to the reduced equation."""
    an = float(np.linalg.norm(c.a_vec))
    cn = float(np.linalg.norm(c.c_vec))
    scale = max(an, cn, math.sqrt(abs(c.c0)), 1e-300)
    if an <= _CLASSIFY_EPS * scale and cn <= _CLASSIFY_EPS * scale:
        return CaseTag.BOTH_ZERO
    if an <= _CLASSIFY_EPS * scale:
        return CaseTag.A_ZERO
    if cn <= _CLASSIFY_EPS * scale:
        return CaseTag.C_ZERO
    cross = float(np.linalg.norm(np.cross(c.a_vec, c.c_vec)))
    dot = float(c.a_vec @ c.c_vec)
    if cross <= _CLASSIFY_EPS * an * cn:
        return CaseTag.PARALLEL
    if abs(dot) <= _CLASSIFY_EPS * an * cn:
        return CaseTag.ORTHOGONAL
    return CaseTag.GENERIC


def residual(c: QuadraticCoeffs, q: Quaternion) -> float:
    """|q**2 + a q + b| for the original equation."""
    a = c.a_quaternion()
    b = c.b_quaternion()
    return (q * q + a * q + b).norm()


def cubic_resolvent(c: QuadraticCoeffs) -> float:
    """Unique positive root w = p0**2 of the generic-case resolvent cubic.

    Solved through companion-matrix eigenvalues plus one Newton polish; by
    Descartes' rule the cubic has exactly one positive real root, so failing
    to find one signals a misclassified input.
    """
    an2 = float(c.a_vec @ c.a_vec)
    dn2 = float(c.d_vec @ c.d_vec)
    c0, d0 = c.c0, c.d0
    coeffs = np.array([
        16.0,
        8.0 * (an2 + 2.0 * c0),
        4.0 * (an2 * (c0 - d0 * d0) + an2 * an2 / 4.0 - dn2),
        -d0 * d0 * an2 * an2,
    ])
    # scaled companion matrix; numpy's eig balances internally
    m = np.zeros((3, 3))
    m[0, :] = -coeffs[1:] / coeffs[0]
    m[1, 0] = 1.0
    m[2, 1] = 1.0
    ws = np.linalg.eigvals(m)
    real_pos = [w.real for w in ws
                if w.real > 0.0 and abs(w.imag) <= 1e-8 * max(1.0, abs(w))]
    if not real_pos:
        raise ArithmeticError(
            "no positive real resolvent root: inconsistent classification")
    w = max(real_pos)
    # one Newton step to polish against eigenvalue roundoff
    poly = np.polynomial.Polynomial(coeffs[::-1])
    dw = poly.deriv()(w)
    if dw != 0.0:
        w -= poly(w) / dw
    if w <= 0.0:
        raise ArithmeticError("resolvent root polished to non-positive value")
    return float(w)


def _complex_pair_to_rootset(c: QuadraticCoeffs, case: CaseTag,
                             unit: np.ndarray, z1: complex, z2: complex) -> RootSet:
    """Lift complex roots along the imaginary unit h.unit and undo the shift."""

    def lift(z: complex) -> Quaternion:
        return Quaternion(z.real - c.shift, *(z.imag * unit))

    if abs(z1 - z2) <= 1e-14 * max(1.0, abs(z1), abs(z2)):
        return RootSet(kind=RootKind.REPEATED, case=case, roots=(lift(z1),))
    return RootSet(kind=RootKind.DISTINCT, case=case,
                   roots=_order_roots((lift(z1), lift(z2))))


def _root_key(q: Quaternion):
    # deterministic output: real part, then imaginary norm, descending
    return (q.w, np.linalg.norm(q.vector()))


def _order_roots(roots) -> tuple[Quaternion, ...]:
    return tuple(sorted(roots, key=_root_key, reverse=True))


def _order_with_coords(pairs) -> tuple[tuple[Quaternion, ...],
                                       tuple[BasisCoordinates, ...]]:
    pairs = sorted(pairs, key=lambda rc: _root_key(rc[0]), reverse=True)
    return tuple(r for r, _ in pairs), tuple(k for _, k in pairs)


def _orthogonal_roots(c: QuadraticCoeffs) -> RootSet:
    an2 = float(c.a_vec @ c.a_vec)
    cn2 = float(c.c_vec @ c.c_vec)
    scale = 1.0 + c.c0 ** 2 + an2 ** 2 + cn2
    if abs(c.delta) <= _DELTA_EPS * scale:
        coord = BasisCoordinates(0.0, -0.5, 0.0, 1.0 / an2,
                                 c.a_vec, c.c_vec)
        root = coord.to_quaternion() - c.shift
        return RootSet(kind=RootKind.REPEATED, case=CaseTag.ORTHOGONAL,
                       roots=(root,), coordinates=(coord,))
    if c.delta > 0.0:
        s = math.sqrt(c.delta)
        coords = tuple(BasisCoordinates(0.0, -0.5 + sgn * s, 0.0, 1.0 / an2,
                                        c.a_vec, c.c_vec)
                       for sgn in (+1.0, -1.0))
    else:
        rad = 2.0 * (math.sqrt(c.c0 ** 2 + cn2) - c.c0) - an2
        if rad < 0.0:
            # provably >= 0 when delta <= 0; clamp rounding noise
            log.info("clamping negative radicand %.3e to zero", rad)
            rad = 0.0
        p0 = 0.5 * math.sqrt(rad)
        coords = tuple(
            BasisCoordinates(sgn * p0, -0.5,
                             -2.0 * sgn * p0 / (4.0 * p0 * p0 + an2),
                             1.0 / (4.0 * p0 * p0 + an2),
                             c.a_vec, c.c_vec)
            for sgn in (+1.0, -1.0))
    roots, coords = _order_with_coords(
        [(k.to_quaternion() - c.shift, k) for k in coords])
    return RootSet(kind=RootKind.DISTINCT, case=CaseTag.ORTHOGONAL,
                   roots=roots, coordinates=coords)


def _generic_roots(c: QuadraticCoeffs) -> RootSet:
    an2 = float(c.a_vec @ c.a_vec)
    w = cubic_resolvent(c)
    coords = []
    for sgn in (+1.0, -1.0):
        p0 = sgn * math.sqrt(w)
        coords.append(BasisCoordinates(
            p0,
            -(p0 + c.d0) / (2.0 * p0),
            -2.0 * p0 / (4.0 * p0 * p0 + an2),
            1.0 / (4.0 * p0 * p0 + an2),
            c.a_vec, c.d_vec))
    roots, coords = _order_with_coords(
        [(k.to_quaternion() - c.shift, k) for k in coords])
    return RootSet(kind=RootKind.DISTINCT, case=CaseTag.GENERIC,
                   roots=roots, coordinates=coords)


def solve(c: QuadraticCoeffs) -> RootSet:
    """All roots of the original quadratic, classified by branch."""
    case = classify(c)
    if case is CaseTag.BOTH_ZERO:
        if c.c0 > 0.0:
            return RootSet(kind=RootKind.SPHERE, case=case,
                           alpha=math.sqrt(c.c0), center=-c.shift)
        if c.c0 < 0.0:
            r = math.sqrt(-c.c0)
            return RootSet(kind=RootKind.REAL_PAIR, case=case,
                           roots=_order_roots((Quaternion(r - c.shift),
                                               Quaternion(-r - c.shift))))
        return RootSet(kind=RootKind.REPEATED, case=case,
                       roots=(Quaternion(-c.shift),))
    if case is CaseTag.A_ZERO:
        cn = float(np.linalg.norm(c.c_vec))
        unit = c.c_vec / cn
        # p**2 = -(c0 + i|c|) in the complex plane of h.unit
        s = cmath.sqrt(complex(-c.c0, -cn))
        return _complex_pair_to_rootset(c, case, unit, s, -s)
    an = float(np.linalg.norm(c.a_vec))
    unit = c.a_vec / an
    if case is CaseTag.C_ZERO:
        disc = cmath.sqrt(complex(-an * an - 4.0 * c.c0, 0.0))
        z1 = (-1j * an + disc) / 2.0
        z2 = (-1j * an - disc) / 2.0
        return _complex_pair_to_rootset(c, case, unit, z1, z2)
    if case is CaseTag.PARALLEL:
        alpha = float(c.a_vec @ c.c_vec) / an
        disc = cmath.sqrt(complex(-an * an - 4.0 * c.c0, -4.0 * alpha))
        z1 = (-1j * an + disc) / 2.0
        z2 = (-1j * an - disc) / 2.0
        return _complex_pair_to_rootset(c, case, unit, z1, z2)
    if case is CaseTag.ORTHOGONAL:
        return _orthogonal_roots(c)
    return _generic_roots(c)


def solve_coeffs(a0: float, a_vec, b0: float, b_vec) -> RootSet:
    return solve(normalize(a0, a_vec, b0, b_vec))


def solve_quaternion(a: Quaternion, b: Quaternion) -> RootSet:
    """Roots of q**2 + a q + b = 0 with quaternionic a, b."""
    return solve_coeffs(a.w, a.vector(), b.w, b.vector())
