"""Independent check: a bipartite cut is separable iff every 2x2 minor of the
reshaped coefficient matrix vanishes.

Shares only the bipartition enumeration with the block test, never the
proportionality code. Cost is O(4**n) per cut; meant for small n.
"""
from __future__ import annotations

import numpy as np

from .blocks import DEFAULT_TOL
from .permutations import Bipartition, iter_bipartitions
from .states import PureState


def coefficient_matrix(s: PureState, i: int) -> np.ndarray:
    """Entry (j, k) is c_{j * 2**(n-i) + k}."""
    if not 1 <= i <= s.n - 1:
        raise ValueError(f"cut width must be in 1..{s.n - 1}, got {i}")
    return s.amplitudes.reshape(2**i, 2 ** (s.n - i))


def max_minor(m: np.ndarray) -> float:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"degenerate coefficient matrix of shape {m.shape}")
    rows = m.shape[0]
    worst = 0.0
    for j in range(rows - 1):
        a = m[j]
        b = m[j + 1:]
        # minors from rows (j, j') and columns (k, k'):  a_k b_k' - a_k' b_k
        minors = a[None, :, None] * b[:, None, :] - a[None, None, :] * b[:, :, None]
        if minors.size:
            worst = max(worst, float(np.abs(minors).max()))
    return worst


def minor_test(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff every 2x2 minor is below tol * |m|_F**2 (rank at most one)."""
    m = np.asarray(m, dtype=np.complex128)
    scale = float(np.linalg.norm(m)) ** 2
    return max_minor(m) <= tol * scale


def _permuted(s: PureState, bp: Bipartition) -> PureState:
    # explicit bit-by-bit index map, kept separate from the transpose path
    n = s.n
    idx = np.arange(2**n)
    target = np.zeros_like(idx)
    for p in range(1, n + 1):
        bit = (idx >> (n - p)) & 1
        target |= bit << (n - bp.mover(p))
    out = np.empty_like(s.amplitudes)
    out[target] = s.amplitudes
    return PureState(n, out)


def cut_separable(s: PureState, bp: Bipartition, tol: float = DEFAULT_TOL) -> bool:
    return minor_test(coefficient_matrix(_permuted(s, bp), bp.width), tol)


def oracle_verdict(s: PureState, tol: float = DEFAULT_TOL) -> bool:
    """Genuinely entangled iff the minor test fails at every bipartition."""
    if s.n < 2:
        raise ValueError(f"oracle needs n >= 2, got {s.n}")
    return not any(cut_separable(s, bp, tol) for bp in iter_bipartitions(s.n))
