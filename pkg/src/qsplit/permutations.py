"""Qubit permutations and the canonical list of bipartitions to scan.

Convention: a permutation maps positions to positions (1-based) and the basis
bit sitting at position p moves to position perm(p). Qubit 1 is the most
significant bit of the basis index.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .states import PureState


@dataclass(frozen=True)
class QubitPermutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if sorted(mapping) != list(range(1, len(mapping) + 1)):
            raise ValueError(f"not a permutation of 1..{len(mapping)}: {list(mapping)}")
        object.__setattr__(self, "mapping", mapping)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, p: int) -> int:
        return self.mapping[p - 1]

    def is_identity(self) -> bool:
        return all(q == p for p, q in enumerate(self.mapping, start=1))

    def to_list(self) -> list[int]:
        return list(self.mapping)

    @classmethod
    def identity(cls, n: int) -> QubitPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> QubitPermutation:
        m = list(range(1, n + 1))
        m[a - 1], m[b - 1] = b, a
        return cls(tuple(m))


def compose(pi: QubitPermutation, sigma: QubitPermutation) -> QubitPermutation:
    """pi after sigma: apply(compose(pi, sigma), s) == apply(pi, apply(sigma, s))."""
    if pi.n != sigma.n:
        raise ValueError(f"size mismatch: {pi.n} vs {sigma.n}")
    return QubitPermutation(tuple(pi(sigma(p)) for p in range(1, pi.n + 1)))


def inverse(pi: QubitPermutation) -> QubitPermutation:
    inv = [0] * pi.n
    for p, q in enumerate(pi.mapping, start=1):
        inv[q - 1] = p
    return QubitPermutation(tuple(inv))


def apply(pi: QubitPermutation, s: PureState) -> PureState:
    """Relabel qubits of s: the bit at position p of every basis index moves to pi(p)."""
    if pi.n != s.n:
        raise ValueError(f"permutation on {pi.n} qubits applied to a {s.n}-qubit state")
    if pi.is_identity():
        return s
    return PureState(s.n, permute_amplitudes(s.amplitudes, pi))


def permute_amplitudes(amps: np.ndarray, pi: QubitPermutation) -> np.ndarray:
    n = pi.n
    # result axis pi(p)-1 takes input axis p-1
    src = [p - 1 for p in inverse(pi).mapping]
    # merge runs of consecutive axes that stay adjacent; fewer, larger axes
    # make the transpose much cheaper
    runs = [[src[0]]]
    for a in src[1:]:
        if a == runs[-1][-1] + 1:
            runs[-1].append(a)
        else:
            runs.append([a])
    by_start = sorted(range(len(runs)), key=lambda r: runs[r][0])
    shape = [2 ** len(runs[r]) for r in by_start]
    where = {r: g for g, r in enumerate(by_start)}
    axes = [where[r] for r in range(len(runs))]
    return np.ascontiguousarray(amps.reshape(shape).transpose(axes)).reshape(-1)


def index_map(pi: QubitPermutation) -> dict[int, int]:
    """Where each basis index goes under pi (pure-integer reference, for checking)."""
    n = pi.n
    out = {}
    for k in range(2**n):
        j = 0
        for p in range(1, n + 1):
            bit = (k >> (n - p)) & 1
            j |= bit << (n - pi(p))
        out[k] = j
    return out


def mover_for(left: Sequence[int], n: int) -> QubitPermutation:
    """Transposition chain (k_l, l) ... (k_2, 2)(k_1, 1) carrying sorted `left` onto 1..l."""
    # pos[q] = current position of original qubit q; at[p] = original qubit now at p
    pos = list(range(n + 1))
    at = list(range(n + 1))
    for j, k in enumerate(sorted(left), start=1):
        pk = pos[k]
        if pk == j:
            continue
        other = at[j]
        at[j], at[pk] = k, other
        pos[k], pos[other] = j, pk
    return QubitPermutation(tuple(pos[1:]))


@dataclass(frozen=True)
class Bipartition:
    """An unordered split of 1..n, stored in canonical form.

    `left` is the smaller side (ties: the side containing qubit 1). `mover`
    brings one side onto the leading positions 1..`width`; `leading` names that
    side. When either side already is a prefix 1..k the mover is the identity.
    """

    n: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    mover: QubitPermutation
    width: int
    leading: tuple[int, ...]

    def label(self) -> str:
        fmt = lambda side: "{" + ",".join(map(str, side)) + "}"
        return f"{fmt(self.left)}|{fmt(self.right)}"

    def to_json(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "mover": self.mover.to_list(),
            "width": self.width,
        }


def canonical_side(subset: Sequence[int], n: int) -> tuple[int, ...]:
    s = tuple(sorted(subset))
    comp = tuple(q for q in range(1, n + 1) if q not in s)
    if not s or not comp:
        raise ValueError("a bipartition needs two non-empty sides")
    if len(comp) < len(s) or (len(comp) == len(s) and comp[0] == 1):
        return comp
    return s


def make_bipartition(subset: Sequence[int], n: int) -> Bipartition:
    left = canonical_side(subset, n)
    right = tuple(q for q in range(1, n + 1) if q not in left)
    if left == tuple(range(1, len(left) + 1)):
        leading = left
    elif right == tuple(range(1, len(right) + 1)):
        leading = right
    else:
        leading = left
    if leading == tuple(range(1, len(leading) + 1)):
        mover = QubitPermutation.identity(n)
    else:
        mover = mover_for(leading, n)
    return Bipartition(n, left, right, mover, len(leading), leading)


def iter_bipartitions(n: int) -> Iterator[Bipartition]:
    if n < 2:
        raise ValueError(f"bipartitions need n >= 2, got {n}")
    for size in range(1, n // 2 + 1):
        for left in combinations(range(1, n + 1), size):
            if 2 * size == n and left[0] != 1:
                continue
            yield make_bipartition(left, n)


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All 2**(n-1) - 1 unordered splits, by ascending |left| then lexicographic."""
    return list(iter_bipartitions(n))


def bipartition_count(n: int) -> int:
    if n < 2:
        raise ValueError(f"bipartitions need n >= 2, got {n}")
    return 2 ** (n - 1) - 1


def permutation_budget(n: int) -> int:
    """Distinct permuted coefficient vectors to examine: 2**(n-1) - (n-1).

    All n-1 prefix splits share the identity-permuted vector.
    """
    if n < 2:
        raise ValueError(f"permutation budget needs n >= 2, got {n}")
    return 2 ** (n - 1) - (n - 1)
