"""Independent mini-oracles for the test suite.

Everything here is deliberately hand-rolled (tuple arithmetic, series
summation, bisection) so expected values never flow through the code paths
under test.
"""

from __future__ import annotations

import math

import numpy as np

# quaternions as plain (w, x, y, z) tuples --------------------------------

QI = (0.0, 1.0, 0.0, 0.0)
QJ = (0.0, 0.0, 1.0, 0.0)
QK = (0.0, 0.0, 0.0, 1.0)


def qmul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw)


def qadd(a, b):
    return tuple(u + v for u, v in zip(a, b))


def qscale(s, a):
    return tuple(s * u for u in a)


def qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def qnorm(a):
    return math.sqrt(sum(u * u for u in a))


def qexp_series(a, terms=80):
    """exp by plain power-series summation."""
    total = (1.0, 0.0, 0.0, 0.0)
    term = (1.0, 0.0, 0.0, 0.0)
    for n in range(1, terms):
        term = qscale(1.0 / n, qmul(term, a))
        total = qadd(total, term)
    return total


def as_tuple(q):
    return (q.w, q.x, q.y, q.z)


def qdist(q, t):
    """Distance between a package Quaternion and a plain tuple."""
    return qnorm(tuple(u - v for u, v in zip(as_tuple(q), t)))


def rand_quaternion(rng, scale=1.0):
    from quatode.quatcore import Quaternion
    return Quaternion(*(scale * rng.standard_normal(4)))


# independent textbook scattering formulas --------------------------------


def step_reflection(E, V, m=1.0, hbar=1.0):
    """Reflection coefficient of the complex step, E > V > 0."""
    p = math.sqrt(2.0 * m * E)
    pp = math.sqrt(2.0 * m * (E - V))
    return ((p - pp) / (p + pp)) ** 2


def barrier_transmission(E, V, a, m=1.0, hbar=1.0):
    """Transmission through the complex rectangular barrier."""
    if E < V:
        kap = math.sqrt(2.0 * m * (V - E)) / hbar
        return 1.0 / (1.0 + V * V * math.sinh(kap * a) ** 2 / (4.0 * E * (V - E)))
    if E > V:
        k2 = math.sqrt(2.0 * m * (E - V)) / hbar
        return 1.0 / (1.0 + V * V * math.sin(k2 * a) ** 2 / (4.0 * E * (E - V)))
    return 1.0 / (1.0 + m * E * a * a / (2.0 * hbar * hbar))


def well_bound_energies(V, a, m=1.0, hbar=1.0):
    """Finite-well energies by bisection on the even/odd matching conditions."""

    def even(E):
        el = math.sqrt(2.0 * m * (V - abs(E))) / hbar
        k = math.sqrt(2.0 * m * abs(E)) / hbar
        return el * math.tan(el * a / 2.0) - k

    def odd(E):
        el = math.sqrt(2.0 * m * (V - abs(E))) / hbar
        k = math.sqrt(2.0 * m * abs(E)) / hbar
        t = math.tan(el * a / 2.0)
        if t == 0.0:
            return math.inf
        return -el / t - k

    roots = []
    for f in (even, odd):
        grid = np.linspace(-V * (1.0 - 1e-12), -V * 1e-12, 40001)
        vals = []
        for e in grid:
            try:
                vals.append(f(float(e)))
            except ValueError:
                vals.append(math.nan)
        for n in range(len(grid) - 1):
            v0, v1 = vals[n], vals[n + 1]
            if not (math.isfinite(v0) and math.isfinite(v1)) or v0 * v1 > 0:
                continue
            lo, hi, flo = float(grid[n]), float(grid[n + 1]), v0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            mid = 0.5 * (lo + hi)
            # discard tan-pole sign flips
            if abs(f(mid)) < 1e-4 * (1.0 + 2.0 * m * V / hbar ** 2):
                roots.append(mid)
    return sorted(roots)
