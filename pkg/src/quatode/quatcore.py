"""Quaternion arithmetic and the symplectic complex representation.

Scalars are quaternions q = w + x*i + y*j + z*k, component order (1, i, j, k).
Writing q = z1 + j*z2 with complex z1, z2 turns every right-complex-linear map
on quaternions into a 2x2 complex matrix; all eigen machinery downstream is
built on that bridge.  Multiplication is the Hamilton product and is
non-commutative, so division is only provided through explicit inverses.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

# below this imaginary norm, sin|v|/|v| is evaluated by series (removable 0/0)
_EXP_SERIES_CUTOFF = 1e-6


class Quaternion:
    """A real quaternion w + x*i + y*j + z*k."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_complex(cls, c) -> "Quaternion":
        """Embed a complex number onto the (1, i) plane."""
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_vector(cls, v) -> "Quaternion":
        """Pure-imaginary quaternion from a real 3-vector (i, j, k parts)."""
        return cls(0.0, v[0], v[1], v[2])

    @classmethod
    def from_symplectic(cls, z1, z2) -> "Quaternion":
        """Build z1 + j*z2 from the complex pair (z1, z2)."""
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, -z2.imag)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        return cls(a[0], a[1], a[2], a[3])

    # -- views ------------------------------------------------------------

    def symplectic(self) -> tuple[complex, complex]:
        """Complex pair (z1, z2) with self = z1 + j*z2."""
        return complex(self.w, self.x), complex(self.y, -self.z)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def to_complex(self) -> complex:
        """Project onto the (1, i) plane; j/k parts must vanish."""
        if max(abs(self.y), abs(self.z)) > 1e-12 * (1.0 + self.norm()):
            raise ValueError(f"{self!r} has non-complex components")
        return complex(self.w, self.x)

    # -- algebra ----------------------------------------------------------

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        aw, ax, ay, az = self.w, self.x, self.y, self.z
        bw, bx, by, bz = other.w, other.x, other.y, other.z
        return Quaternion(
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        )

    def __rmul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        # only real divisors are unambiguous; otherwise use .inverse() explicitly
        if isinstance(other, numbers.Real):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return (self.w, self.x, self.y, self.z) == (other.w, other.x, other.y, other.z)

    def __repr__(self):
        return f"Quaternion({self.w:g}, {self.x:g}, {self.y:g}, {self.z:g})"

    # -- matrix representations -------------------------------------------

    def left_matrix(self) -> np.ndarray:
        """4x4 real matrix of p -> self * p on (w, x, y, z) columns."""
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array([
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ])

    def right_matrix(self) -> np.ndarray:
        """4x4 real matrix of p -> p * self."""
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array([
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ])

    def counterpart(self) -> np.ndarray:
        """2x2 complex matrix of the right-complex-linear map p -> self * p."""
        z1, z2 = self.symplectic()
        return np.array([[z1, -np.conj(z2)], [z2, np.conj(z1)]])


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, numbers.Real):
        return Quaternion(value)
    if isinstance(value, numbers.Complex):
        return Quaternion.from_complex(value)
    return None


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p*q."""
    return p * q


def exp(q: Quaternion) -> Quaternion:
    """Quaternion exponential exp(w)(cos|v| + (v/|v|) sin|v|), v the imaginary part."""
    vn = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    ew = math.exp(q.w)
    if vn < _EXP_SERIES_CUTOFF:
        v2 = vn * vn
        sinc = 1.0 - v2 / 6.0 + v2 * v2 / 120.0
    else:
        sinc = math.sin(vn) / vn
    f = ew * sinc
    return Quaternion(ew * math.cos(vn), f * q.x, f * q.y, f * q.z)


def isclose(p: Quaternion, q: Quaternion, tol: float = 1e-12) -> bool:
    return (p - q).norm() <= tol


def rebase_sphere_exponential(alpha_vec) -> tuple[Quaternion, Quaternion]:
    """Constant quaternions (c+, c-) expanding an arbitrary-axis oscillation.

    For alpha_vec with norm alpha > 0, exp((h . alpha_vec) x) equals
    exp(i alpha x) c+ + exp(-i alpha x) c- for every real x, with
    c+- = (alpha -+ i (h . alpha_vec)) / (2 alpha).
    """
    v = np.asarray(alpha_vec, dtype=float)
    alpha = float(np.linalg.norm(v))
    if alpha == 0.0:
        raise ValueError("zero axis: no preferred complex unit to rebase onto")
    hv = Quaternion.from_vector(v)
    c_plus = (alpha - I * hv) / (2.0 * alpha)
    c_minus = (alpha + I * hv) / (2.0 * alpha)
    return c_plus, c_minus


@dataclass(frozen=True)
class SymplecticPair:
    """Complex pair (z1, z2) representing the quaternion z1 + j*z2."""

    z1: complex
    z2: complex

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "SymplecticPair":
        z1, z2 = q.symplectic()
        return cls(z1, z2)

    def to_quaternion(self) -> Quaternion:
        return Quaternion.from_symplectic(self.z1, self.z2)


@dataclass(frozen=True)
class RightLinearScalarOp:
    """Scalar operator psi -> A psi + B psi i.

    Commutes with right multiplication by complex numbers, so it has a 2x2
    complex matrix through the symplectic pair.
    """

    A: Quaternion
    B: Quaternion

    def __call__(self, psi: Quaternion) -> Quaternion:
        return self.A * psi + self.B * psi * I

    def counterpart(self) -> np.ndarray:
        # right multiplication by i is the scalar i on both symplectic slots
        return self.A.counterpart() + 1j * self.B.counterpart()

    def matrix4(self) -> np.ndarray:
        """4x4 real matrix of the action on (w, x, y, z)."""
        return self.A.left_matrix() + self.B.left_matrix() @ I.right_matrix()


def apply_right_linear(op: RightLinearScalarOp, psi: Quaternion) -> Quaternion:
    """Apply A psi + B psi i."""
    return op(psi)


def solve_linear_system(rows: list[list[Quaternion]], rhs: list[Quaternion],
                        tol: float = 1e-12) -> list[Quaternion]:
    """Solve a small quaternionic linear system M c = rhs (coefficients left).

    Gaussian elimination with partial pivoting by quaternion norm; all row
    operations multiply from the left, which is the side on which the matrix
    acts on the unknowns.
    """
    n = len(rows)
    m = [list(r) for r in rows]
    b = list(rhs)
    scale = max((e.norm() for r in m for e in r), default=0.0)
    if scale == 0.0:
        raise ValueError("zero matrix")
    for col in range(n):
        piv = max(range(col, n), key=lambda r: m[r][col].norm())
        if m[piv][col].norm() <= tol * scale:
            raise ValueError("singular quaternionic system")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            b[col], b[piv] = b[piv], b[col]
        inv = m[col][col].inverse()
        m[col] = [inv * e for e in m[col]]
        b[col] = inv * b[col]
        for r in range(n):
            if r == col:
                continue
            f = m[r][col]
            if f.norm() == 0.0:
                continue
            m[r] = [e - f * d for e, d in zip(m[r], m[col])]
            b[r] = b[r] - f * b[col]
    return b
