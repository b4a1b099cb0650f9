"""Seeded random matrix generators used by the verification suites and tests.

Every generator takes an explicit numpy Generator; nothing here touches
global random state.
"""

from __future__ import annotations

import numpy as np


def random_complex(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = random_complex(rng, n, scale)
    return 0.5 * (g + g.conj().T)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed R diagonal."""
    q, r = np.linalg.qr(random_complex(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_positive(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Random positive semidefinite matrix G*G."""
    g = random_complex(rng, n, scale)
    return g.conj().T @ g


def random_positive_definite(
    rng: np.random.Generator, n: int, eig_low: float = 0.25, eig_high: float = 4.0
) -> np.ndarray:
    """Positive definite with eigenvalues drawn uniformly from [eig_low, eig_high].

    The controlled spectrum keeps inverses and the products built on top of
    them well conditioned in property sweeps.
    """
    u = random_unitary(rng, n)
    eigs = rng.uniform(eig_low, eig_high, size=n)
    return u @ np.diag(eigs).astype(np.complex128) @ u.conj().T
