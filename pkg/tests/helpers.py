"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from gmx.states import DensityMatrix, random_density_matrix


def ghz(n: int) -> DensityMatrix:
    from gmx.states import _wrap

    mat = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i in (0, -1):
        for j in (0, -1):
            mat[i, j] = 0.5
    return _wrap(n, mat)


def random_states(counts: dict[int, int], seed0: int = 0):
    """Yield random density matrices of mixed ranks, deterministically."""
    for n, count in counts.items():
        for k in range(count):
            rank = (k % (2 ** n)) + 1
            yield random_density_matrix(n, rank, seed=seed0 + 7919 * n + k)


def circular_distance(angle: float, target: float, period: float) -> float:
    """Distance between two angles on a circle of the given period."""
    d = (angle - target) % period
    return min(d, period - d)


def loop_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Four-index definition of the Kronecker product, used as an oracle."""
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def qubit_permutation_matrix(n: int, perm: tuple[int, ...]) -> np.ndarray:
    """Permutation matrix sending qubit j to position perm[j] (0-based tuples)."""
    dim = 2 ** n
    p = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n - 1 - j)) & 1 for j in range(n)]
        new_bits = [0] * n
        for j in range(n):
            new_bits[perm[j]] = bits[j]
        new_idx = sum(b << (n - 1 - j) for j, b in enumerate(new_bits))
        p[new_idx, idx] = 1.0
    return p
