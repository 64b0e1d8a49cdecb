"""Brute-force verification tools: RK4 integration, residuals, companion roots.

Everything here is deliberately independent of the closed-form solvers so it
can act as a cross-check.  States are carried as flat 8-vectors holding the
four real components of (phi, dphi); right-i actions enter the derivative
callbacks as exact 4x4 matrices, never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quatcore import Quaternion, RightLinearScalarOp


class DivergenceError(RuntimeError):
    """Raised when an integration produces a non-finite state."""

    def __init__(self, x: float):
        super().__init__(f"non-finite state at x = {x}")
        self.x = x


@dataclass
class Trajectory:
    """Uniform-grid integration output; states[n] = (phi, dphi) as 8 reals."""

    xs: np.ndarray
    states: np.ndarray

    def phi(self, n: int) -> Quaternion:
        return Quaternion.from_array(self.states[n, :4])

    def dphi(self, n: int) -> Quaternion:
        return Quaternion.from_array(self.states[n, 4:])

    @property
    def step_size(self) -> float:
        return float(self.xs[1] - self.xs[0])


def pack_state(phi: Quaternion, dphi: Quaternion) -> np.ndarray:
    return np.concatenate([phi.to_array(), dphi.to_array()])


def rk4_integrate(rhs: Callable[[float, np.ndarray], np.ndarray],
                  phi0: Quaternion, dphi0: Quaternion,
                  x0: float, x1: float, steps: int) -> Trajectory:
    """Classical fixed-step RK4 on the 8-real state (phi, dphi)."""
    if steps < 16:
        raise ValueError("need at least 16 steps")
    xs = np.linspace(x0, x1, steps + 1)
    h = (x1 - x0) / steps
    states = np.empty((steps + 1, 8))
    y = pack_state(phi0, dphi0)
    states[0] = y
    for n in range(steps):
        x = xs[n]
        k1 = rhs(x, y)
        k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(x + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise DivergenceError(float(xs[n + 1]))
        states[n + 1] = y
    return Trajectory(xs=xs, states=states)


def qlinear_rhs(a: Quaternion, b: Quaternion) -> Callable[[float, np.ndarray], np.ndarray]:
    """Derivative callback for phi'' + a phi' + b phi = 0 (left coefficients)."""
    k = np.zeros((8, 8))
    k[:4, 4:] = np.eye(4)
    k[4:, :4] = -b.left_matrix()
    k[4:, 4:] = -a.left_matrix()
    return lambda x, y: k @ y


def clinear_rhs(a_op: RightLinearScalarOp, b_op: RightLinearScalarOp
                ) -> Callable[[float, np.ndarray], np.ndarray]:
    """Derivative callback for phi'' + a_op(phi') + b_op(phi) = 0."""
    k = np.zeros((8, 8))
    k[:4, 4:] = np.eye(4)
    k[4:, :4] = -b_op.matrix4()
    k[4:, 4:] = -a_op.matrix4()
    return lambda x, y: k @ y


def residual_max(evaluator: Callable[[float, int], Quaternion],
                 op_a: Callable[[Quaternion], Quaternion],
                 op_b: Callable[[Quaternion], Quaternion],
                 xs) -> float:
    """Max |phi'' + op_a(phi') + op_b(phi)| over sample points.

    evaluator(x, k) must return the analytic k-th derivative for k in 0..2.
    """
    worst = 0.0
    for x in xs:
        r = evaluator(x, 2) + op_a(evaluator(x, 1)) + op_b(evaluator(x, 0))
        worst = max(worst, r.norm())
    return worst


def companion_roots(coeffs) -> np.ndarray:
    """Roots of a complex polynomial via the (balanced) companion matrix.

    coeffs are highest-degree first, as for numpy.roots.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if c[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    return np.roots(c)
