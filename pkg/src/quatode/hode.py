"""General solutions and IVPs for phi'' + a phi' + b phi = 0 over quaternions.

Coefficients a, b multiply from the left and are constant; solutions combine
a basis of (prefactor * quaternion-exponential) functions with constants
applied from the right.  Distinct characteristic roots give two exponentials,
a repeated root gets an affine prefactor, and the vector-free degenerate
equation (whole sphere of characteristic roots) is spanned by the two
canonical i-axis exponentials; other axes are reachable through
quatcore.rebase_sphere_exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import quadsolve, quatcore
from .quatcore import Quaternion


class DegenerateBasisError(ValueError):
    """Initial conditions cannot be matched: basis matrix is singular."""


@dataclass(frozen=True)
class BasisFunction:
    """prefactor(x) * exp(exponent * x) with an optional affine prefactor.

    prefactor is 1 when kappa is None, else (x + kappa).  The exponent already
    includes any real shift coming from the original linear coefficient.
    """

    exponent: Quaternion
    kappa: Optional[Quaternion] = None

    def value(self, x: float) -> Quaternion:
        e = quatcore.exp(self.exponent * x)
        if self.kappa is None:
            return e
        return (x + self.kappa) * e

    def derivative(self, x: float) -> Quaternion:
        e = quatcore.exp(self.exponent * x)
        if self.kappa is None:
            return self.exponent * e
        return e + (x + self.kappa) * self.exponent * e

    def second(self, x: float) -> Quaternion:
        e = quatcore.exp(self.exponent * x)
        q = self.exponent
        if self.kappa is None:
            return q * q * e
        return 2.0 * (q * e) + (x + self.kappa) * q * q * e


@dataclass(frozen=True)
class GeneralSolution:
    """Two-part basis with right-applied quaternionic coefficients."""

    basis: tuple[BasisFunction, BasisFunction]
    coefficients: Optional[tuple[Quaternion, Quaternion]] = None
    roots: Optional[quadsolve.RootSet] = None

    def with_coefficients(self, c1: Quaternion, c2: Quaternion) -> "GeneralSolution":
        return replace(self, coefficients=(c1, c2))

    def value(self, x: float) -> Quaternion:
        self._require_coeffs()
        c1, c2 = self.coefficients
        return self.basis[0].value(x) * c1 + self.basis[1].value(x) * c2

    def derivative(self, x: float) -> Quaternion:
        self._require_coeffs()
        c1, c2 = self.coefficients
        return self.basis[0].derivative(x) * c1 + self.basis[1].derivative(x) * c2

    def second(self, x: float) -> Quaternion:
        self._require_coeffs()
        c1, c2 = self.coefficients
        return self.basis[0].second(x) * c1 + self.basis[1].second(x) * c2

    def _require_coeffs(self):
        if self.coefficients is None:
            raise ValueError("coefficients not set; solve an IVP first")


def general_solution(a: Quaternion, b: Quaternion) -> GeneralSolution:
    """Basis of the equation, coefficients left unset."""
    roots = quadsolve.solve_quaternion(a, b)
    if roots.kind is quadsolve.RootKind.SPHERE:
        center = roots.center
        basis = (BasisFunction(Quaternion(center, roots.alpha, 0.0, 0.0)),
                 BasisFunction(Quaternion(center, -roots.alpha, 0.0, 0.0)))
    elif roots.kind is quadsolve.RootKind.REPEATED:
        q = roots.roots[0]
        a_vec = a.vector()
        b_vec = b.vector()
        an2 = float(a_vec @ a_vec)
        if an2 > 0.0 and np.linalg.norm(np.cross(a_vec, b_vec)) > 0.0:
            kappa = Quaternion.from_vector(a_vec / an2)
        else:
            # second independent solution is plain x * exp(q x)
            kappa = quatcore.ZERO
        basis = (BasisFunction(q), BasisFunction(q, kappa=kappa))
    else:
        q1, q2 = roots.roots
        basis = (BasisFunction(q1), BasisFunction(q2))
    return GeneralSolution(basis=basis, roots=roots)


def solve_ivp(a: Quaternion, b: Quaternion,
              phi0: Quaternion, dphi0: Quaternion) -> GeneralSolution:
    """Fix the right coefficients from phi(0), phi'(0)."""
    sol = general_solution(a, b)
    b1, b2 = sol.basis
    rows = [[b1.value(0.0), b2.value(0.0)],
            [b1.derivative(0.0), b2.derivative(0.0)]]
    try:
        c1, c2 = quatcore.solve_linear_system(rows, [phi0, dphi0])
    except ValueError as exc:
        raise DegenerateBasisError(str(exc)) from exc
    return sol.with_coefficients(c1, c2)


def evaluate(sol: GeneralSolution, x: float) -> tuple[Quaternion, Quaternion]:
    """Analytic (phi, phi') at x."""
    return sol.value(x), sol.derivative(x)


def residual(sol: GeneralSolution, a: Quaternion, b: Quaternion, x: float) -> float:
    """|phi'' + a phi' + b phi| at x."""
    return (sol.second(x) + a * sol.derivative(x) + b * sol.value(x)).norm()


def wronskian(phi1: Quaternion, phi2: Quaternion,
              dphi1: Quaternion, dphi2: Quaternion) -> float:
    """Non-negative Dieudonne/Study determinant of [[phi1, phi2], [dphi1, dphi2]].

    Uses the Schur-type factorization |phi1| |dphi2 - dphi1 phi1^-1 phi2|,
    falling back to the equivalent factorizations led by the other entries
    when the leading factor vanishes.
    """
    forms = (
        (phi1, lambda: dphi2 - dphi1 * phi1.inverse() * phi2),
        (phi2, lambda: dphi1 - dphi2 * phi2.inverse() * phi1),
        (dphi1, lambda: phi2 - phi1 * dphi1.inverse() * dphi2),
        (dphi2, lambda: phi1 - phi2 * dphi2.inverse() * dphi1),
    )
    scale = max(phi1.norm(), phi2.norm(), dphi1.norm(), dphi2.norm())
    if scale == 0.0:
        return 0.0
    for lead, schur in forms:
        if lead.norm() > 1e-14 * scale:
            return lead.norm() * schur().norm()
    return 0.0


def wronskian_all_forms(phi1, phi2, dphi1, dphi2) -> list[float]:
    """All four factorizations; they agree whenever every entry is invertible."""
    return [
        phi1.norm() * (dphi2 - dphi1 * phi1.inverse() * phi2).norm(),
        phi2.norm() * (dphi1 - dphi2 * phi2.inverse() * phi1).norm(),
        dphi1.norm() * (phi2 - phi1 * dphi1.inverse() * dphi2).norm(),
        dphi2.norm() * (phi1 - phi2 * dphi2.inverse() * dphi1).norm(),
    ]


def repeated_root_cancellation(a: Quaternion, b: Quaternion) -> float:
    """Norm of 2q + a + [b, h.a/|a|^2] at the repeated characteristic root.

    This combination is what multiplies exp(q x) when the affine-prefactor
    solution is substituted into the equation; it must vanish identically.
    """
    a_vec = a.vector()
    an2 = float(a_vec @ a_vec)
    if an2 == 0.0:
        raise ValueError("needs a nonzero linear coefficient vector")
    cross = np.cross(a_vec, b.vector())
    p = Quaternion.from_vector(cross / an2 - a_vec / 2.0)
    q = p - a.w / 2.0
    kappa = Quaternion.from_vector(a_vec / an2)
    comm = b * kappa - kappa * b
    return (2.0 * q + a + comm).norm()


def exponential_wronskian(p1: Quaternion, p2: Quaternion,
                          q1: Quaternion, q2: Quaternion, x: float) -> float:
    """Closed form |p1 - p2| |exp(q1 x)| |exp(q2 x)| for an exponential basis."""
    return (p1 - p2).norm() * math.exp(q1.w * x) * math.exp(q2.w * x)
