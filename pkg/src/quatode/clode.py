"""Complex-linear quaternionic ODEs and the stationary Schrodinger reduction.

Operators containing the right-acting unit R_i cannot be solved by
quaternionic exponentials: the basis functions are u_n exp(z_n x) with a
quaternion u_n on the left, a complex exponential, and right complex
coefficients.  The four complex eigenvalues z_n come from the 4x4 complex
counterpart of the companion matrix.  The stationary Schrodinger equation
with constant potential V - jW is the worked special case: its exponents
solve a real-coefficient quartic and the two mode quaternions u-+ are pinned
to the gauge with unit complex part.

Branch convention: all complex square roots are principal; every scattering
regime formula downstream follows from that single choice.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .qmat2 import Matrix2CL, lift, svec
from .quatcore import Quaternion, RightLinearScalarOp
from .quatcore import exp as qexp

_RANK_TOL = 1e-9
_MERGE_TOL = 1e-6


class UnsupportedStructureError(ValueError):
    """Counterpart defect beyond a single 2x2 Jordan block."""


class TViolatingError(ValueError):
    """Time reversal has no quaternionic implementation for this potential."""


class ModeNormalizationError(ZeroDivisionError):
    """The unit-complex-part mode gauge is singular: E + sqrt(E^2-|W|^2) = 0."""


@dataclass(frozen=True)
class CLBasisFunction:
    """(u x + u_tilde) exp(z x) or u exp(z x), with exp right-applied.

    Right-multiplying the attached coefficient by a complex scalar rescales
    the function complex-linearly.
    """

    u: Quaternion
    z: complex
    u_tilde: Optional[Quaternion] = None

    def value(self, x: float) -> Quaternion:
        e = Quaternion.from_complex(cmath.exp(self.z * x))
        if self.u_tilde is None:
            return self.u * e
        return (self.u * x + self.u_tilde) * e

    def derivative(self, x: float) -> Quaternion:
        ez = Quaternion.from_complex(self.z * cmath.exp(self.z * x))
        if self.u_tilde is None:
            return self.u * ez
        e = Quaternion.from_complex(cmath.exp(self.z * x))
        return self.u * e + (self.u * x + self.u_tilde) * ez

    def second(self, x: float) -> Quaternion:
        ezz = Quaternion.from_complex(self.z * self.z * cmath.exp(self.z * x))
        if self.u_tilde is None:
            return self.u * ezz
        ez = Quaternion.from_complex(self.z * cmath.exp(self.z * x))
        return 2.0 * (self.u * ez) + (self.u * x + self.u_tilde) * ezz


@dataclass(frozen=True)
class CLSolution:
    """Sum of basis functions with right complex coefficients."""

    basis: tuple[CLBasisFunction, ...]
    coefficients: tuple[complex, ...]

    def value(self, x: float) -> Quaternion:
        out = Quaternion()
        for f, k in zip(self.basis, self.coefficients):
            out = out + f.value(x) * Quaternion.from_complex(k)
        return out

    def derivative(self, x: float) -> Quaternion:
        out = Quaternion()
        for f, k in zip(self.basis, self.coefficients):
            out = out + f.derivative(x) * Quaternion.from_complex(k)
        return out

    def second(self, x: float) -> Quaternion:
        out = Quaternion()
        for f, k in zip(self.basis, self.coefficients):
            out = out + f.second(x) * Quaternion.from_complex(k)
        return out

    def scaled(self, factor: complex) -> "CLSolution":
        return replace(self, coefficients=tuple(
            k * factor for k in self.coefficients))


def _cluster(lams, tol):
    clusters: list[list[complex]] = []
    for z in sorted(lams, key=lambda w: (w.imag, w.real)):
        for cl in clusters:
            if abs(z - sum(cl) / len(cl)) <= tol:
                cl.append(z)
                break
        else:
            clusters.append([z])
    return [(sum(cl) / len(cl), len(cl)) for cl in clusters]


def _nullspace(mat, tol):
    _, s, vh = np.linalg.svd(mat)
    dim = max(1, int(np.sum(s <= tol)))
    return vh[-dim:].conj().T


def solve_clinear(m_cl: Matrix2CL, phi0: Quaternion, dphi0: Quaternion) -> CLSolution:
    """Closed-form solution of the first-order system carried by m_cl.

    The counterpart spectrum gives four complex exponents; the quaternions
    u_n are lifted from counterpart eigenvectors and the complex coefficients
    solve the 4x4 initial-condition system in symplectic coordinates.  The
    only defect handled is a single 2x2 Jordan block, which adds one
    (u x + u_tilde) basis function.
    """
    c = m_cl.counterpart()
    scale = 1.0 + np.linalg.norm(c)
    lam = np.linalg.eigvals(c)
    clusters = _cluster(lam, _MERGE_TOL * scale)
    columns = []
    basis_specs = []  # (z, vec, chain_vec_or_None)
    deficient = 0
    for z, alg in clusters:
        spread = max(abs(w - z) for w in lam if abs(w - z) <= _MERGE_TOL * scale)
        rank_tol = max(_RANK_TOL * scale, 2.0 * spread)
        ns = _nullspace(c - z * np.eye(4), rank_tol)
        geo = min(ns.shape[1], alg)
        if geo == alg:
            for k in range(alg):
                basis_specs.append((z, ns[:, k], None))
        elif alg == 2 and geo == 1:
            deficient += 1
            v = ns[:, 0]
            w, *_ = np.linalg.lstsq(c - z * np.eye(4), v, rcond=None)
            if np.linalg.norm((c - z * np.eye(4)) @ w - v) > 1e3 * rank_tol:
                raise UnsupportedStructureError("broken Jordan chain")
            basis_specs.append((z, v, w))
        else:
            raise UnsupportedStructureError(
                f"eigenvalue {z}: algebraic {alg}, geometric {geo}")
    if deficient > 1:
        raise UnsupportedStructureError("more than one Jordan block")

    basis = []
    for z, v, w in basis_specs:
        u = lift(v)[0]
        if w is None:
            basis.append(CLBasisFunction(u=u, z=z))
            columns.append(v)
        else:
            basis.append(CLBasisFunction(u=u, z=z))
            basis.append(CLBasisFunction(u=u, z=z, u_tilde=lift(w)[0]))
            columns.append(v)
            columns.append(w)
    mat = np.column_stack(columns)
    rhs = svec((phi0, dphi0))
    coeff = np.linalg.solve(mat, rhs)
    return CLSolution(basis=tuple(basis), coefficients=tuple(coeff))


def solve_clinear_ops(a_op: RightLinearScalarOp, b_op: RightLinearScalarOp,
                      phi0: Quaternion, dphi0: Quaternion) -> CLSolution:
    """Solve phi'' + a_op(phi') + b_op(phi) = 0 with given initial data."""
    return solve_clinear(Matrix2CL.companion(a_op, b_op), phi0, dphi0)


def residual(sol: CLSolution, a_op: Callable[[Quaternion], Quaternion],
             b_op: Callable[[Quaternion], Quaternion], x: float) -> float:
    return (sol.second(x) + a_op(sol.derivative(x)) + b_op(sol.value(x))).norm()


# -- stationary Schrodinger specialization ---------------------------------


@dataclass(frozen=True)
class SchrodingerModes:
    """Wave exponents z-+ and mode quaternions u-+ for potential V - jW.

    The spatial solutions are u_-+ exp(+-sqrt(2m)/hbar * z_-+ * x); z values
    are kept in the energy-like convention, so spatial exponents carry the
    extra factor spatial_scale.
    """

    E: float
    V: float
    W: complex
    hbar: float
    m: float
    z_minus: complex
    z_plus: complex
    u_minus: Quaternion
    u_plus: Quaternion

    @property
    def spatial_scale(self) -> float:
        return math.sqrt(2.0 * self.m) / self.hbar

    @property
    def threshold(self) -> float:
        return math.hypot(self.V, abs(self.W))


def schrodinger_modes(E: float, V: float, W: complex,
                      hbar: float = 1.0, m: float = 1.0) -> SchrodingerModes:
    """Exponents and modes of the constant-potential stationary equation.

    z-+ = sqrt(V -+ sqrt(E^2 - |W|^2)) with principal square roots;
    u_- = 1 + j W / (E + sqrt(E^2 - |W|^2)), u_+ = conj(W) / (...) + j.
    """
    if hbar <= 0.0 or m <= 0.0:
        raise ValueError("hbar and m must be positive")
    W = complex(W)
    sigma = cmath.sqrt(complex(E * E - abs(W) ** 2, 0.0))
    denom = E + sigma
    if abs(denom) <= 1e-15 * (abs(E) + abs(sigma) + 1e-300):
        raise ModeNormalizationError(
            "E + sqrt(E^2 - |W|^2) = 0: mode gauge is singular")
    wfrac = W / denom
    z_minus = cmath.sqrt(V - sigma)
    z_plus = cmath.sqrt(V + sigma)
    u_minus = Quaternion(1.0) + Quaternion(0, 0, 1, 0) * Quaternion.from_complex(wfrac)
    u_plus = Quaternion.from_complex(W.conjugate() / denom) + Quaternion(0, 0, 1, 0)
    return SchrodingerModes(E=E, V=V, W=W, hbar=hbar, m=m,
                            z_minus=z_minus, z_plus=z_plus,
                            u_minus=u_minus, u_plus=u_plus)


def mode_quartic_residual(modes: SchrodingerModes, z: complex) -> float:
    """|z^4 - 2 V z^2 + V^2 + |W|^2 - E^2| for a claimed exponent z."""
    v, w2, e = modes.V, abs(modes.W) ** 2, modes.E
    return abs(z ** 4 - 2.0 * v * z ** 2 + v * v + w2 - e * e)


def mode_equation_residual(modes: SchrodingerModes, u: Quaternion, z: complex) -> float:
    """|u z^2 - (V - jW) u - i E u i| for a claimed mode pair (u, z)."""
    i = Quaternion(0, 1, 0, 0)
    pot = Quaternion(modes.V) - Quaternion(0, 0, 1, 0) * Quaternion.from_complex(modes.W)
    r = (u * Quaternion.from_complex(z * z) - pot * u
         - modes.E * (i * u * i))
    return r.norm()


def time_reversal_map(solution: CLSolution, W: complex) -> CLSolution:
    """Left-multiply by j (real W) or k (imaginary W) to reverse time.

    The result solves the equation with the sign of the right-acting i
    flipped.  A fully complex W admits no such map: the physics is
    T-violating.
    """
    W = complex(W)
    mag = abs(W)
    tol = 1e-12 * (mag + 1.0)
    if abs(W.imag) <= tol:
        factor = Quaternion(0, 0, 1, 0)
    elif abs(W.real) <= tol:
        factor = Quaternion(0, 0, 0, 1)
    else:
        raise TViolatingError(
            "W has both real and imaginary parts: T-violating potential")
    basis = tuple(
        CLBasisFunction(u=factor * f.u, z=f.z,
                        u_tilde=None if f.u_tilde is None else factor * f.u_tilde)
        for f in solution.basis)
    return CLSolution(basis=basis, coefficients=solution.coefficients)


def stationary_phase(E: float, hbar: float, zeta0: Quaternion) -> Callable[[float], Quaternion]:
    """Unit time factor t -> exp(-i E t / hbar) * zeta0, zeta0 on the right."""
    if hbar <= 0.0:
        raise ValueError("hbar must be positive")
    if abs(zeta0.norm() - 1.0) > 1e-12:
        raise ValueError("zeta(0) must be a unit quaternion")

    def zeta(t: float) -> Quaternion:
        return qexp(Quaternion(0.0, -E * t / hbar, 0.0, 0.0)) * zeta0

    return zeta
