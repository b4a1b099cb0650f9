"""Truncated Wiener-Hopf operator tests.

Oracle for the conjugation action: alpha_a(x) = u^a x (u*)^a computed by
direct a-fold multiplication, independent of the vectorized generator path.
"""

import numpy as np
import pytest

from whlab import toeplitz
from whlab.errors import InputValidationError, WindowOverflowError
from whlab.sampling import random_complex, random_unitary
from whlab.toeplitz import SymbolFunction, TruncatedOperator


def test_trivial_action_flags():
    act = toeplitz.trivial_action(2)
    assert act.unital and act.injective and act.surjective and act.automorphic


def test_conjugation_action_matches_direct_composition(rng):
    u = random_unitary(rng, 2)
    act = toeplitz.conjugation_action(u)
    x = random_complex(rng, 2)
    expected = x.copy()
    for a in range(6):
        assert np.allclose(act.apply(a, x), expected, atol=1e-12)
        expected = u @ expected @ u.conj().T
    # negative powers undo positive ones
    y = act.apply(3, x)
    assert np.allclose(act.apply(-3, y), x, atol=1e-12)


def test_action_constructor_rejects_non_star_hom():
    bad = np.diag([1.0, 2.0, 3.0, 4.0])  # scales matrix units inconsistently
    with pytest.raises(InputValidationError):
        toeplitz.EndomorphismAction(k=2, generator=bad)


def test_rep_pi_identity_and_scalar():
    act = toeplitz.trivial_action(1)
    assert np.allclose(toeplitz.rep_pi(np.eye(1), act, 5).matrix, np.eye(6))
    c = np.array([[2.5 - 1j]])
    assert np.allclose(toeplitz.rep_pi(c, act, 3).matrix, (2.5 - 1j) * np.eye(4))


def test_rep_pi_conjugation_blocks(rng):
    u = random_unitary(rng, 2)
    act = toeplitz.conjugation_action(u)
    x = random_complex(rng, 2)
    op = toeplitz.rep_pi(x, act, 6)
    expected = x.copy()
    for a in range(7):
        assert np.allclose(op.blocks[a, a], expected, atol=1e-12)
        expected = u @ expected @ u.conj().T


def test_isometry_basics():
    assert np.allclose(toeplitz.isometry_V(0, 4).matrix, np.eye(5))
    v1 = toeplitz.isometry_V(1, 4)
    # V_1 V_1* = 1 - (projection onto position 0)
    p0 = np.zeros((5, 5))
    p0[0, 0] = 1.0
    assert np.allclose((v1 @ v1.adjoint()).matrix, np.eye(5) - p0)


def test_isometry_law_with_headroom():
    # V_a*V_a = 1 holds for the lattice operators; compress the composite
    for n in (4, 9):
        for a in range(0, n):
            wide = toeplitz.isometry_V(a, n + a)
            prod = (wide.adjoint() @ wide).subwindow(n)
            assert np.allclose(prod.matrix, np.eye(n + 1))


def test_shift_semigroup_law():
    n = 9
    for a in range(4):
        for b in range(4):
            lhs = toeplitz.isometry_V(b, n) @ toeplitz.isometry_V(a, n)
            rhs = toeplitz.isometry_V(a + b, n)
            assert np.allclose(lhs.matrix, rhs.matrix)


def test_isometry_range_error():
    with pytest.raises(WindowOverflowError):
        toeplitz.isometry_V(5, 4)


def test_wiener_hopf_delta_zero_is_identity():
    act = toeplitz.trivial_action(1)
    f = SymbolFunction(k=1, values={0: [[1.0]]})
    assert np.allclose(toeplitz.wiener_hopf(f, act, 6).matrix, np.eye(7))


def test_wiener_hopf_delta_one_is_shift():
    act = toeplitz.trivial_action(1)
    f = SymbolFunction(k=1, values={1: [[1.0]]})
    assert np.allclose(toeplitz.wiener_hopf(f, act, 6).matrix, toeplitz.isometry_V(1, 6).matrix)


def test_wiener_hopf_tridiagonal():
    act = toeplitz.trivial_action(1)
    f = SymbolFunction(k=1, values={-1: [[2.0]], 1: [[3.0]]})
    w = toeplitz.wiener_hopf(f, act, 4).matrix
    expected = 3.0 * np.diag(np.ones(4), -1) + 2.0 * np.diag(np.ones(4), 1)
    assert np.allclose(w, expected)


def test_wiener_hopf_support_range_error():
    act = toeplitz.trivial_action(1)
    f = SymbolFunction(k=1, values={9: [[1.0]]})
    with pytest.raises(WindowOverflowError):
        toeplitz.wiener_hopf(f, act, 4)


def test_covariance_residual_trivial_cases(rng):
    act = toeplitz.trivial_action(1)
    x = random_complex(rng, 1)
    assert toeplitz.covariance_residual(x, 0, act, 8) == 0.0
    for a in range(1, 6):
        assert toeplitz.covariance_residual(x, a, act, 8) <= 1e-15


def test_covariance_residual_conjugation(rng):
    u = random_unitary(rng, 2)
    act = toeplitz.conjugation_action(u)
    for a in range(0, 6):
        x = random_complex(rng, 2)
        assert toeplitz.covariance_residual(x, a, act, 16) <= 1e-12


def test_intertwining_exact(rng):
    u = random_unitary(rng, 2)
    act = toeplitz.conjugation_action(u)
    n = 10
    for a in range(0, 5):
        x = random_complex(rng, 2)
        v = toeplitz.isometry_V(a, n, 2)
        lhs = v.adjoint() @ toeplitz.rep_pi(x, act, n)
        rhs = toeplitz.rep_pi(act.apply(a, x), act, n) @ v.adjoint()
        assert (lhs - rhs).norm() <= 1e-12


def test_symbol_product_on_interior_blocks(rng):
    act = toeplitz.trivial_action(1)
    n = 24
    for _ in range(10):
        fvals = {g: [[complex(rng.standard_normal(), rng.standard_normal())]] for g in range(-3, 4)}
        hvals = {g: [[complex(rng.standard_normal(), rng.standard_normal())]] for g in range(-3, 4)}
        f = SymbolFunction(k=1, values=fvals)
        h = SymbolFunction(k=1, values=hvals)
        lhs = toeplitz.wiener_hopf(f, act, n) @ toeplitz.wiener_hopf(h, act, n)
        rhs = toeplitz.wiener_hopf(f.convolve(h), act, n)
        diff = lhs.interior(6) - rhs.interior(6)
        assert np.linalg.norm(diff, 2) <= 1e-10


def test_adjoint_symbol_on_interior_blocks(rng):
    u = random_unitary(rng, 2)
    act = toeplitz.conjugation_action(u)
    n = 20
    f = SymbolFunction(k=2, values={g: random_complex(rng, 2) for g in range(-2, 3)})
    lhs = toeplitz.wiener_hopf(f, act, n).adjoint().interior(2)
    rhs = toeplitz.wiener_hopf(f.twisted_reflection(act), act, n).interior(2)
    assert np.linalg.norm(lhs - rhs, 2) <= 1e-10


def test_truncated_operator_roundtrip(rng):
    op = TruncatedOperator(2, 2, rng.standard_normal((3, 3, 2, 2)))
    back = TruncatedOperator.from_matrix(2, 2, op.matrix)
    assert np.allclose(op.blocks, back.blocks)
    assert np.allclose(op.adjoint().matrix, op.matrix.conj().T)


def test_symbol_validation():
    with pytest.raises(InputValidationError):
        SymbolFunction(k=2, values={0: [[1.0]]})


def test_symbols_split_into_interior_convolutions(rng):
    # at desk scale the density statement is exact: every finitely supported
    # symbol is a finite sum of products delta_a * delta_b with a in the
    # interior of the semigroup and b in the interior of its inverse
    values = {g: [[complex(rng.standard_normal(), rng.standard_normal())]] for g in range(-4, 5)}
    f = SymbolFunction(k=1, values=values)
    total = SymbolFunction(k=1, values={})
    for g, v in values.items():
        a = max(g + 1, 1)          # a >= 1: interior of the semigroup
        b = g - a                  # b <= -1: interior of the inverse
        assert a >= 1 and b <= -1
        phi = SymbolFunction(k=1, values={a: v})
        psi = SymbolFunction(k=1, values={b: [[1.0]]})
        total = SymbolFunction(
            k=1,
            values={h: total(h) + phi.convolve(psi)(h) for h in range(-8, 9)},
        )
    for g in range(-8, 9):
        assert total(g) == pytest.approx(f(g))
