"""Block-vector view of a coefficient vector and the proportionality test.

Splitting C at width i gives 2**i contiguous blocks of length 2**(n-i); C is a
tensor product V1 (x) V2 at that width iff every non-zero block is a multiple
of one fixed non-zero block. Proportionality is judged by the cross products
u_j v_m - u_m v_j, which need no division by small entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .states import PureState

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    source: PureState
    i: int
    blocks: np.ndarray  # shape (2**i, 2**(n-i)); row l is block C^(l)

    def __len__(self):
        return self.blocks.shape[0]

    def __getitem__(self, l: int) -> np.ndarray:
        return self.blocks[l]


@dataclass(frozen=True)
class ProportionalityResult:
    proportional: bool
    ratio: Optional[complex] = None
    witness: Optional[tuple[int, int]] = None
    residual: float = 0.0


@dataclass(frozen=True, eq=False)
class SplitFactors:
    width: int
    v1: np.ndarray
    v2: np.ndarray
    reference: int
    residual: float

    @property
    def ratios(self) -> np.ndarray:
        return self.v1 / self.v1[self.reference]


@dataclass(frozen=True)
class NotDecomposable:
    width: int
    block_pair: tuple[int, int]
    witness: tuple[int, int]
    residual: float

    def to_json(self) -> dict:
        return {
            "blocks": list(self.block_pair),
            "witness": list(self.witness),
            "residual": self.residual,
        }


def blocks(s: PureState, i: int) -> BlockMatrix:
    if not 1 <= i <= s.n - 1:
        raise ValueError(f"split width must be in 1..{s.n - 1}, got {i}")
    return BlockMatrix(s, i, s.amplitudes.reshape(2**i, 2 ** (s.n - i)))


def _cross_witness(u: np.ndarray, v: np.ndarray) -> tuple[tuple[int, int], float]:
    # Row of the cross-product matrix through u's dominant entry; if u and v
    # are not proportional this row has a non-zero entry.
    j = int(np.argmax(np.abs(u)))
    row = np.abs(u[j] * v - u * v[j])
    m = int(np.argmax(row))
    return (min(j, m), max(j, m)), float(row[m])


def proportional(u, v, tol: float = DEFAULT_TOL) -> ProportionalityResult:
    """Decide whether v = k u for some complex k.

    The test is scale-invariant: sqrt(sum_{j<m} |u_j v_m - u_m v_j|^2) is
    compared against tol * |u| * |v|. A numerically zero vector counts as
    proportional to any non-zero one.
    """
    u = np.asarray(u, dtype=np.complex128).reshape(-1)
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.size} vs {v.size}")
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if max(nu, nv) == 0.0 or (nu <= tol * nv and nv <= tol * nu):
        raise ValueError("both vectors are zero; there is no reference to compare against")
    if nv <= tol * nu:
        return ProportionalityResult(True, ratio=0j, residual=_cross_witness(u, v)[1])
    if nu <= tol * nv:
        # u is zero; v = k u has no finite k
        return ProportionalityResult(True, ratio=complex(np.inf, 0), residual=_cross_witness(v, u)[1])
    k = complex(np.vdot(u, v) / nu**2)
    # Lagrange identity: the cross-product norm equals |u| * |v - k u|
    rn = float(np.linalg.norm(v - k * u))
    pair, mag = _cross_witness(u, v)
    if rn <= tol * nv:
        return ProportionalityResult(True, ratio=k, residual=mag)
    return ProportionalityResult(False, witness=pair, residual=mag)


def _row_norms(M: np.ndarray) -> np.ndarray:
    F = M.view(np.float64)
    return np.sqrt(np.einsum("ij,ij->i", F, F))


def decompose_at(s: PureState, i: int, tol: float = DEFAULT_TOL) -> SplitFactors | NotDecomposable:
    """Try C = V1 (x) V2 with V1 of length 2**i.

    The first non-zero block is the reference; every other non-zero block must
    be proportional to it. On success V2 is the unit-norm reference block with
    its leading non-zero entry rotated real positive, and V1 holds the block
    ratios scaled by the reference norm (times that phase).
    """
    if not 1 <= i <= s.n - 1:
        raise ValueError(f"split width must be in 1..{s.n - 1}, got {i}")
    return split_amplitudes(s.amplitudes, i, tol)


def split_amplitudes(amps: np.ndarray, i: int, tol: float = DEFAULT_TOL) -> SplitFactors | NotDecomposable:
    """decompose_at on a raw contiguous amplitude array (no state validation)."""
    M = amps.reshape(2**i, -1)
    norms = _row_norms(M)
    cnorm = float(np.sqrt(np.dot(norms, norms)))
    nonzero = norms > tol * cnorm
    r = int(np.argmax(nonzero))
    u = M[r]
    nu = norms[r]
    uc = u.conj()

    # check blocks in growing chunks so an entangled cut usually fails after
    # one block instead of touching the whole vector
    others = np.flatnonzero(nonzero)
    others = others[others != r]
    start, size = 0, 1
    while start < others.size:
        idx = others[start:start + size]
        B = M[idx]
        k = (B @ uc) / nu**2
        resid = _row_norms(B - k[:, None] * u[None, :])
        bad = np.flatnonzero(resid > tol * norms[idx])
        if bad.size:
            l = int(idx[bad[0]])
            pair, mag = _cross_witness(u, M[l])
            return NotDecomposable(i, (r, l), pair, mag)
        start += size
        size *= 4

    k = (M @ uc) / nu**2
    k[r] = 1.0
    v2 = u / nu
    lead = int(np.argmax(np.abs(v2) > tol))
    phase = v2[lead] / abs(v2[lead])
    v2 = v2 / phase
    v1 = k * (nu * phase)
    err = np.linalg.norm(amps - np.kron(v1, v2)) / cnorm
    return SplitFactors(i, v1, v2, r, float(err))


def two_qubit_product_test(s: PureState, tol: float = DEFAULT_TOL) -> bool:
    """Closed form for two qubits: product iff c0 c3 == c1 c2."""
    if s.n != 2:
        raise ValueError(f"two-qubit test needs n = 2, got {s.n}")
    c = s.amplitudes
    return bool(abs(c[0] * c[3] - c[1] * c[2]) <= tol * float(np.vdot(c, c).real))
