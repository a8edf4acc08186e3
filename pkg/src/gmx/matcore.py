"""Dense complex linear algebra for multiqubit operators.

All matrices are plain ``numpy.ndarray`` objects with dtype ``complex128``
and row-major layout.  The routines here are sized for ``2**N x 2**N``
operators with N <= 8, where dense storage and full eigendecompositions
are cheap; nothing in this module tries to exploit sparsity.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Tolerance for accepting a matrix as Hermitian (entrywise deviation).
HERM_TOL = 1e-10
# Most negative eigenvalue tolerated before an operator is rejected as
# non-positive-semidefinite.
PSD_TOL = 1e-8


class HermEig(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors``
    are the matching orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (a + a^dagger)/2."""
    return 0.5 * (a + a.conj().T)


def herm_deviation(a: np.ndarray) -> float:
    """Largest entrywise deviation of ``a`` from its conjugate transpose."""
    return float(np.abs(a - a.conj().T).max())


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a (x) b``; output dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of matrices."""
    out = np.array([[1.0 + 0.0j]])
    for f in factors:
        out = np.kron(out, f)
    return out


def herm_eig(a: np.ndarray, tol: float = HERM_TOL) -> HermEig:
    """Full eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : ndarray
        Square matrix, Hermitian to within ``tol``.
    tol : float
        Entrywise Hermiticity tolerance.

    Returns
    -------
    HermEig
        Real eigenvalues in ascending order and an orthonormal
        eigenvector matrix (columns).

    Raises
    ------
    ValueError
        If ``a`` deviates from Hermiticity by more than ``tol``.
    """
    a = np.asarray(a, dtype=complex)
    dev = herm_deviation(a)
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: max |a - a^dag| = {dev:.3e} > {tol:.1e}")
    w, v = np.linalg.eigh(hermitize(a))
    return HermEig(eigenvalues=w, eigenvectors=v)


def psd_sqrt(a: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix.

    Eigenvalues in ``[-HERM_TOL, 0)`` are clamped to zero; anything below
    ``-tol`` raises.  The output ``s`` is Hermitian, PSD and satisfies
    ``s @ s == a`` to about 1e-9.
    """
    w, v = herm_eig(a)
    lo = float(w.min())
    if lo < -tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {lo:.3e} < -{tol:.1e}")
    s = np.sqrt(np.clip(w, 0.0, None))
    return hermitize((v * s) @ v.conj().T)
