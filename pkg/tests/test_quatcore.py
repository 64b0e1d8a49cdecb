import math

import numpy as np
import pytest

from quatode.quatcore import (
    I, J, K, ONE, Quaternion, RightLinearScalarOp, SymplecticPair,
    apply_right_linear, exp, mul, rebase_sphere_exponential,
    solve_linear_system,
)

from helpers import as_tuple, qdist, qexp_series, qmul, rand_quaternion


def test_defining_relations():
    assert (I * J - K).norm() == 0.0
    assert (J * K - I).norm() == 0.0
    assert (K * I - J).norm() == 0.0
    for unit in (I, J, K):
        assert (unit * unit + ONE).norm() == 0.0
    assert (I * J * K + ONE).norm() == 0.0


def test_distributivity_example():
    got = mul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0))
    assert as_tuple(got) == (1.0, 1.0, 1.0, 1.0)


def test_inverse_matches_conjugate_formula():
    q = Quaternion(2, 1, -3, 0)
    inv = q.inverse()
    expected = q.conjugate() / q.norm2()
    assert (inv - expected).norm() == 0.0
    assert (q * inv - ONE).norm() < 1e-15
    assert (inv * q - ONE).norm() < 1e-15


def test_norm_multiplicativity_bulk():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        p = rand_quaternion(rng)
        q = rand_quaternion(rng)
        assert abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * (
            1.0 + p.norm() * q.norm())


def test_mul_against_tuple_oracle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        p = rand_quaternion(rng, 2.0)
        q = rand_quaternion(rng, 2.0)
        assert qdist(p * q, qmul(as_tuple(p), as_tuple(q))) < 1e-14


def test_exp_zero():
    assert as_tuple(exp(Quaternion())) == (1.0, 0.0, 0.0, 0.0)


def test_exp_euler_on_k_axis():
    got = exp(K * (math.pi / 2.0))
    assert (got - K).norm() < 1e-15


def test_exp_against_series_oracle():
    rng = np.random.default_rng(9)
    for q in [I + J] + [rand_quaternion(rng) for _ in range(50)]:
        assert qdist(exp(q), qexp_series(as_tuple(q))) < 1e-12


def test_exp_small_imaginary_part_series_branch():
    for eps in (1e-7, 1e-9, 1e-12, 0.0):
        q = Quaternion(0.3, eps, 0.0, 0.0)
        assert qdist(exp(q), qexp_series(as_tuple(q))) < 1e-14


def test_exp_addition_on_commuting_arguments():
    rng = np.random.default_rng(10)
    for _ in range(50):
        q = rand_quaternion(rng)
        s, t = rng.standard_normal(2)
        lhs = exp((s + t) * q)
        rhs = exp(s * q) * exp(t * q)
        assert (lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm())


def test_symplectic_roundtrip_exact():
    rng = np.random.default_rng(11)
    for _ in range(200):
        q = rand_quaternion(rng, 3.0)
        z1, z2 = q.symplectic()
        back = Quaternion.from_symplectic(z1, z2)
        assert as_tuple(back) == as_tuple(q)
        pair = SymplecticPair.from_quaternion(q)
        assert as_tuple(pair.to_quaternion()) == as_tuple(q)


def test_symplectic_i_multiplication_rules():
    rng = np.random.default_rng(12)
    for _ in range(100):
        q = rand_quaternion(rng)
        z1, z2 = q.symplectic()
        r1, r2 = (q * I).symplectic()
        assert abs(r1 - 1j * z1) < 1e-15 and abs(r2 - 1j * z2) < 1e-15
        l1, l2 = (I * q).symplectic()
        assert abs(l1 - 1j * z1) < 1e-15 and abs(l2 + 1j * z2) < 1e-15


def test_counterpart_functor():
    rng = np.random.default_rng(13)
    for _ in range(300):
        p = rand_quaternion(rng)
        q = rand_quaternion(rng)
        lhs = (p * q).counterpart()
        rhs = p.counterpart() @ q.counterpart()
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * (1.0 + p.norm() * q.norm())


def test_counterpart_acts_like_left_multiplication():
    rng = np.random.default_rng(14)
    for _ in range(100):
        p = rand_quaternion(rng)
        q = rand_quaternion(rng)
        v = np.array(q.symplectic())
        got = p.counterpart() @ v
        z1, z2 = (p * q).symplectic()
        assert abs(got[0] - z1) + abs(got[1] - z2) < 1e-13


def test_right_linear_op_identity_and_pure_right_i():
    assert as_tuple(apply_right_linear(RightLinearScalarOp(ONE, Quaternion()), J)) \
        == (0.0, 0.0, 1.0, 0.0)
    got = apply_right_linear(RightLinearScalarOp(Quaternion(), ONE), J)
    assert (got + K).norm() == 0.0  # j i = -k


def test_right_linear_op_mixed_example():
    # i(1+k) + j(1+k)i expanded by the product table: -1 + i - j - k
    op = RightLinearScalarOp(I, J)
    got = apply_right_linear(op, ONE + K)
    assert as_tuple(got) == (-1.0, 1.0, -1.0, -1.0)


def test_right_linear_op_commutes_with_right_complex():
    rng = np.random.default_rng(15)
    for _ in range(100):
        op = RightLinearScalarOp(rand_quaternion(rng), rand_quaternion(rng))
        psi = rand_quaternion(rng)
        z = complex(*rng.standard_normal(2))
        lhs = op(psi * Quaternion.from_complex(z))
        rhs = op(psi) * Quaternion.from_complex(z)
        assert (lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm())


def test_right_linear_op_counterpart_and_matrix4():
    rng = np.random.default_rng(16)
    for _ in range(50):
        op = RightLinearScalarOp(rand_quaternion(rng), rand_quaternion(rng))
        psi = rand_quaternion(rng)
        out = op(psi)
        v = np.array(psi.symplectic())
        got = op.counterpart() @ v
        z1, z2 = out.symplectic()
        assert abs(got[0] - z1) + abs(got[1] - z2) < 1e-13
        got4 = op.matrix4() @ psi.to_array()
        assert np.max(np.abs(got4 - out.to_array())) < 1e-13


def test_rebase_on_i_axis_is_trivial():
    c_plus, c_minus = rebase_sphere_exponential([2.5, 0, 0])
    assert (c_plus - ONE).norm() < 1e-15
    assert c_minus.norm() < 1e-15


def test_rebase_k_axis_quarter_turn():
    alpha = 1.7
    c_plus, c_minus = rebase_sphere_exponential([0, 0, alpha])
    x = math.pi / (2.0 * alpha)
    lhs = exp(Quaternion(0, 0, 0, alpha) * x)
    rhs = Quaternion.from_complex(np.exp(1j * alpha * x)) * c_plus \
        + Quaternion.from_complex(np.exp(-1j * alpha * x)) * c_minus
    assert (lhs - K).norm() < 1e-14
    assert (rhs - K).norm() < 1e-14


def test_rebase_identity_random_axes():
    rng = np.random.default_rng(17)
    for _ in range(200):
        v = rng.standard_normal(3)
        v *= rng.uniform(0.2, 3.0) / np.linalg.norm(v)
        alpha = np.linalg.norm(v)
        c_plus, c_minus = rebase_sphere_exponential(v)
        for x in (0.3, 1.7):
            lhs = exp(Quaternion.from_vector(v) * x)
            rhs = Quaternion.from_complex(np.exp(1j * alpha * x)) * c_plus \
                + Quaternion.from_complex(np.exp(-1j * alpha * x)) * c_minus
            assert (lhs - rhs).norm() < 1e-13


def test_rebase_zero_axis_rejected():
    with pytest.raises(ValueError):
        rebase_sphere_exponential([0.0, 0.0, 0.0])


def test_solve_linear_system_random():
    rng = np.random.default_rng(18)
    for _ in range(100):
        rows = [[rand_quaternion(rng) for _ in range(2)] for _ in range(2)]
        c = [rand_quaternion(rng), rand_quaternion(rng)]
        rhs = [rows[0][0] * c[0] + rows[0][1] * c[1],
               rows[1][0] * c[0] + rows[1][1] * c[1]]
        got = solve_linear_system(rows, rhs)
        assert (got[0] - c[0]).norm() < 1e-10
        assert (got[1] - c[1]).norm() < 1e-10


def test_solve_linear_system_singular():
    rows = [[ONE, I], [ONE, I]]
    with pytest.raises(ValueError):
        solve_linear_system(rows, [ONE, J])


def test_division_restricted_to_reals():
    q = Quaternion(1, 2, 3, 4)
    assert as_tuple(q / 2.0) == (0.5, 1.0, 1.5, 2.0)
    with pytest.raises(TypeError):
        q / I  # noqa: B018 - evaluating for the exception


def test_complex_embedding_arithmetic():
    q = Quaternion(0, 0, 1, 0)
    assert as_tuple(q * 1j) == (0.0, 0.0, 0.0, -1.0)   # j i = -k
    assert as_tuple(1j * q) == (0.0, 0.0, 0.0, 1.0)    # i j = k
