"""Pure n-qubit states as coefficient vectors, plus the named states we test on.

Basis ordering: entry k of the amplitude array is the coefficient of |k>, where
qubit 1 is the most significant bit of k. Ascending index is then the same as
ascending lexicographic order of the ket strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class PureState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.n:
            raise ValueError(
                f"expected 2**{self.n} = {2**self.n} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if not np.any(amps):
            raise ValueError("the zero vector is not a state")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> PureState:
        return PureState(self.n, self.amplitudes / self.norm())

    def __repr__(self):
        return f"PureState(n={self.n}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


def make_state(n: int, amplitudes: Sequence[complex]) -> PureState:
    """Build a state from raw amplitudes; values are stored as given, not normalized."""
    return PureState(n, np.asarray(amplitudes))


def tensor(a: PureState, *rest: PureState) -> PureState:
    """Kronecker product; the first operand's qubits become the leading qubits."""
    out = a
    for b in rest:
        out = PureState(out.n + b.n, np.kron(out.amplitudes, b.amplitudes))
    return out


def basis_state(bits: str) -> PureState:
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return PureState(len(bits), amps)


def _normalized(n: int, amps: np.ndarray) -> PureState:
    return PureState(n, amps / np.linalg.norm(amps))


def ghz(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"ghz needs n >= 2, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0
    return _normalized(n, amps)


def dicke(i: int, n: int) -> PureState:
    """Equal superposition of all n-bit kets of Hamming weight i."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"dicke needs 0 <= i <= n and n >= 1, got i={i}, n={n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    for ones in combinations(range(n), i):
        amps[sum(1 << (n - 1 - q) for q in ones)] = 1.0
    return _normalized(n, amps)


def w(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"w needs n >= 2, got {n}")
    return dicke(1, n)


def dicke_pair(i: int, n: int) -> PureState:
    """Normalized |i,n> + |n-i,n>."""
    if not 0 <= i <= n:
        raise ValueError(f"dicke_pair needs 0 <= i <= n, got i={i}, n={n}")
    return _normalized(n, dicke(i, n).amplitudes + dicke(n - i, n).amplitudes)


def dw(n: int) -> PureState:
    if n < 3:
        raise ValueError(f"dw needs n >= 3, got {n}")
    return dicke_pair(1, n)


def ghz_plus_w(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"ghz_plus_w needs n >= 2, got {n}")
    return _normalized(n, ghz(n).amplitudes + w(n).amplitudes)


def zeta3() -> PureState:
    # (|001> + |010> + |100> + |111>) / 2
    return PureState(3, np.array([0, 1, 1, 0, 1, 0, 0, 1], dtype=np.complex128) / 2)


def random_state(n: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return _normalized(n, amps)


NAMED_STATES = {
    "ghz": ghz,
    "w": w,
    "dw": dw,
    "ghzw": ghz_plus_w,
}


# JSON state files: {"n": int, "amplitudes": [[re, im], ...]}

def state_to_json(s: PureState) -> dict:
    return {
        "n": s.n,
        "amplitudes": [[float(z.real), float(z.imag)] for z in s.amplitudes],
    }


def state_from_json(obj) -> PureState:
    if not isinstance(obj, dict) or "n" not in obj or "amplitudes" not in obj:
        raise ValueError('state file must be an object with keys "n" and "amplitudes"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    raw = obj["amplitudes"]
    if not isinstance(raw, list):
        raise ValueError('"amplitudes" must be a list of [re, im] pairs')
    amps = []
    for k, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise ValueError(f"amplitude {k} is not a [re, im] pair of numbers: {pair!r}")
        amps.append(complex(pair[0], pair[1]))
    if len(amps) & (len(amps) - 1) or not amps:
        raise ValueError(f"amplitude count {len(amps)} is not a power of two")
    return PureState(n, np.array(amps, dtype=np.complex128))
