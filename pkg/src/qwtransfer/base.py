from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from qwtransfer.smallmat import DimensionError


@dataclass(frozen=True)
class WalkModel:
    """Walk descriptor: graph size ``N`` and the 1-based sender/receiver labels.

    Subclasses fix the family name, the minimum supported ``N`` and how many
    walk steps one application of the effective operator represents.
    """

    N: int
    s: int = 1
    r: int = 2

    family: ClassVar[str] = ""
    min_n: ClassVar[int] = 3
    period: ClassVar[int] = 1

    def __post_init__(self):
        for name in ("N", "s", "r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if self.N < self.min_n:
            raise ValueError(f"{self.family}: N={self.N} is below the minimum {self.min_n}")
        for name in ("s", "r"):
            if not 1 <= getattr(self, name) <= self.N:
                raise ValueError(f"{self.family}: {name}={getattr(self, name)} outside 1..{self.N}")
        if self.s == self.r:
            raise ValueError(f"{self.family}: sender and receiver must differ (both {self.s})")

    @property
    def si(self):
        return self.s - 1

    @property
    def ri(self):
        return self.r - 1

    @property
    def dim(self):
        raise NotImplementedError

    def check_state(self, state):
        state = np.asarray(state)
        if state.shape != (self.dim,):
            raise DimensionError(f"{self.family} N={self.N}: expected state of length {self.dim}, got {state.shape}")
        return np.ascontiguousarray(state, dtype=np.complex128)

    def swapped(self):
        return type(self)(self.N, self.r, self.s)

    def describe(self):
        return {"family": self.family, "N": int(self.N), "sender": int(self.s), "receiver": int(self.r)}

    def evolve(self, state, steps):
        """Yield the state at t = 0, 1, ..., steps."""
        psi = self.check_state(state).copy()
        yield psi
        for _ in range(steps):
            psi = self.step(psi)
            yield psi


def nearest_even_peak(x, fidelity):
    """Even step count near ``x`` (a continuous period) with the higher ``fidelity``.

    The two even integers bracketing ``x`` are compared; ties go to the smaller.
    """
    lo = 2 * int(np.floor(x / 2.0))
    candidates = [c for c in (lo, lo + 2) if c > 0] or [2]
    return max(candidates, key=lambda c: (fidelity(c), -c))


def round_half_away(x):
    return int(np.floor(x + 0.5)) if x >= 0 else -int(np.floor(-x + 0.5))
