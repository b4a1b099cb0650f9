"""Jordan algebra and cone classification tests."""

import numpy as np
import pytest

from whlab import jordan, spectra
from whlab.errors import InputValidationError
from whlab.jordan import ConeClass, OrderRelation
from whlab.sampling import random_hermitian, random_positive

DIAG = [np.diag([1.0, 0.0]).astype(complex)]


def test_empty_generators_span_identity():
    alg = jordan.generate_algebra([], dim=2)
    assert alg.rank == 1
    assert alg.contains(3.0 * np.eye(2))


def test_diagonal_generator_gives_diagonal_algebra():
    alg = jordan.generate_algebra(DIAG)
    assert alg.rank == 2
    assert alg.contains(np.diag([5.0, -2.0]))
    assert not alg.contains(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_elementary_hermitians_generate_full_space():
    alg = jordan.hermitian_algebra(2)
    assert alg.rank == 4  # real dimension of Herm(2)


def test_generate_rejects_non_hermitian():
    with pytest.raises(InputValidationError):
        jordan.generate_algebra([np.array([[0.0, 1.0], [0.0, 0.0]])])


def test_closure_is_idempotent(rng):
    for dim in (2, 3):
        gens = [random_hermitian(rng, dim) for _ in range(2)]
        alg = jordan.generate_algebra(gens, dim=dim)
        again = jordan.generate_algebra(alg.basis, dim=dim)
        assert alg.rank == again.rank
        assert all(again.contains(b) for b in alg.basis)
        assert all(alg.contains(b) for b in again.basis)


def test_basis_closed_under_anticommutator(rng):
    alg = jordan.generate_algebra([random_hermitian(rng, 3)], dim=3)
    for a in alg.basis:
        for b in alg.basis:
            assert alg.contains(0.5 * (a @ b + b @ a))


def test_classify_examples():
    full = jordan.hermitian_algebra(2)
    assert jordan.classify(full, np.eye(2)) == ConeClass.INTERIOR
    diag_alg = jordan.generate_algebra(DIAG)
    assert jordan.classify(diag_alg, np.diag([1.0, 0.0])) == ConeClass.BOUNDARY
    assert jordan.classify(diag_alg, np.array([[0.0, 1.0], [1.0, 0.0]])) == ConeClass.OUTSIDE_ALGEBRA
    assert jordan.classify(full, -np.eye(2)) == ConeClass.OUTSIDE_CONE


def test_classify_cone_axioms(rng):
    full = jordan.hermitian_algebra(3)
    for _ in range(30):
        a = random_positive(rng, 3) + 0.05 * np.eye(3)
        b = random_positive(rng, 3) + 0.05 * np.eye(3)
        assert jordan.classify(full, a) == ConeClass.INTERIOR
        assert jordan.classify(full, a + b) == ConeClass.INTERIOR
        t = float(rng.uniform(0.2, 4.0))
        assert jordan.classify(full, t * a) == ConeClass.INTERIOR
        eps = 0.5 * spectra.lambda_min(a)
        assert jordan.classify(full, a - eps * np.eye(3)) == ConeClass.INTERIOR


def test_order_compare_examples():
    assert jordan.order_compare(np.zeros((2, 2)), np.eye(2)) == OrderRelation.LT
    a = np.array([[2.0, 1.0], [1.0, 3.0]], dtype=complex)
    assert jordan.order_compare(a, a) == OrderRelation.LEQ
    assert (
        jordan.order_compare(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        == OrderRelation.INCOMPARABLE_OR_GT
    )


def test_order_compare_dimension_mismatch():
    with pytest.raises(InputValidationError):
        jordan.order_compare(np.eye(2), np.eye(3))
