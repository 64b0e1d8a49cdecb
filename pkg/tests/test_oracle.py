import math

import numpy as np
import pytest

from quatode import clode, hode, oracle
from quatode.quatcore import I, J, K, ONE, Quaternion, RightLinearScalarOp

from helpers import rand_quaternion


def test_rk4_simple_oscillator():
    traj = oracle.rk4_integrate(oracle.qlinear_rhs(Quaternion(), ONE),
                                ONE, Quaternion(), 0.0, 1.0, 1024)
    assert abs(traj.phi(-1).w - math.cos(1.0)) < 1e-8
    assert abs(traj.dphi(-1).w + math.sin(1.0)) < 1e-8
    assert traj.xs.shape == (1025,) and traj.states.shape == (1025, 8)
    assert abs(traj.step_size - 1.0 / 1024) < 1e-15


def test_rk4_fourth_order_convergence():
    err = {}
    for steps in (32, 64):
        traj = oracle.rk4_integrate(oracle.qlinear_rhs(Quaternion(), ONE),
                                    ONE, Quaternion(), 0.0, 1.0, steps)
        err[steps] = abs(traj.phi(-1).w - math.cos(1.0))
    factor = err[32] / err[64]
    assert 12.0 < factor < 20.0


def test_rk4_minimum_steps():
    with pytest.raises(ValueError):
        oracle.rk4_integrate(oracle.qlinear_rhs(Quaternion(), ONE),
                             ONE, Quaternion(), 0.0, 1.0, 8)


def test_rk4_divergence_reports_location():
    def blowup(x, y):
        return 1e8 * y

    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(oracle.DivergenceError) as info:
            oracle.rk4_integrate(blowup, ONE, ONE, 0.0, 1.0, 64)
    assert 0.0 < info.value.x <= 1.0


def test_rk4_matches_worked_closed_forms():
    # quaternionic example with distinct generic roots
    a, b = I - 2 * ONE, 2 * ONE + K
    sol = hode.solve_ivp(a, b, Quaternion(), J)
    traj = oracle.rk4_integrate(oracle.qlinear_rhs(a, b), Quaternion(), J,
                                0.0, 1.0, 4096)
    assert (traj.phi(-1) - sol.value(1.0)).norm() < 1e-6
    # complex-linear example
    zero = RightLinearScalarOp(Quaternion(), Quaternion())
    b_op = RightLinearScalarOp(Quaternion(), -J)
    csol = clode.solve_clinear_ops(zero, b_op, J, K)
    traj = oracle.rk4_integrate(oracle.clinear_rhs(zero, b_op), J, K,
                                0.0, 1.0, 4096)
    assert (traj.phi(-1) - csol.value(1.0)).norm() < 1e-6


def test_residual_max_detects_perturbation():
    a, b = K, J
    sol = hode.solve_ivp(a, b, I + K, ONE)
    xs = np.linspace(0.0, 1.0, 9)

    def exact(x, k):
        return (sol.value(x), sol.derivative(x), sol.second(x))[k]

    assert oracle.residual_max(exact, lambda q: a * q, lambda q: b * q, xs) < 1e-10
    bad_b = b + Quaternion(1e-3)
    r = oracle.residual_max(exact, lambda q: a * q, lambda q: bad_b * q, xs)
    assert r > 1e-4


def test_residual_max_sphere_basis():
    alpha = 2.0
    sol = hode.solve_ivp(Quaternion(), Quaternion(alpha ** 2), ONE, Quaternion())

    def exact(x, k):
        return (sol.value(x), sol.derivative(x), sol.second(x))[k]

    xs = np.linspace(0.0, 2.0, 9)
    assert oracle.residual_max(exact, lambda q: Quaternion(),
                               lambda q: alpha ** 2 * q, xs) < 1e-12


def test_companion_roots_simple():
    roots = sorted(oracle.companion_roots([1, 0, 1]), key=lambda z: z.imag)
    assert abs(roots[0] + 1j) < 1e-12 and abs(roots[1] - 1j) < 1e-12


def test_companion_roots_resolvent_cubic():
    roots = oracle.companion_roots([16, 24, -3, -1])
    assert min(abs(r - 0.25) for r in roots) < 1e-12


def test_companion_roots_schrodinger_quartic():
    E, V, Wabs = 5.0, 3.0, 2.0
    m = clode.schrodinger_modes(E=E, V=V, W=Wabs)
    roots = oracle.companion_roots([1, 0, -2 * V, 0, V * V + Wabs ** 2 - E * E])
    for z in (m.z_minus, -m.z_minus, m.z_plus, -m.z_plus):
        assert min(abs(r - z) for r in roots) < 1e-12


def test_companion_roots_validation():
    with pytest.raises(ValueError):
        oracle.companion_roots([0, 1, 2])
    with pytest.raises(ValueError):
        oracle.companion_roots([3.0])


def test_rk4_backward_integration():
    a, b = K, J
    sol = hode.solve_ivp(a, b, I + K, ONE)
    traj = oracle.rk4_integrate(oracle.qlinear_rhs(a, b), I + K, ONE,
                                0.0, -1.0, 2048)
    assert (traj.phi(-1) - sol.value(-1.0)).norm() < 1e-6


def test_oracle_equivalence_sample():
    rng = np.random.default_rng(80)
    for _ in range(10):
        a, b = rand_quaternion(rng), rand_quaternion(rng)
        phi0, dphi0 = rand_quaternion(rng), rand_quaternion(rng)
        sol = hode.solve_ivp(a, b, phi0, dphi0)
        traj = oracle.rk4_integrate(oracle.qlinear_rhs(a, b), phi0, dphi0,
                                    0.0, 1.0, 4096)
        worst = max((traj.phi(n) - sol.value(traj.xs[n])).norm()
                    for n in range(0, 4097, 128))
        assert worst < 1e-6
