"""Deterministic key generators for tests and benchmarks.

Random draws come from SplitMix64 evaluated on a counter: draw ``i`` of seed
``s`` is ``mix(s + (i + 1) * 0x9E3779B97F4A7C15)`` where ``mix`` is

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

with all arithmetic mod 2**64. A draw below a bound ``m`` is ``draw % m``
(slightly biased for huge ``m``, but trivially reproducible in any language).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

KEY_LIMIT = 1 << 63
WORD_RANGE = 1 << 64

DISTRIBUTIONS = ("uniform", "worst_case", "best_case", "sorted", "reverse", "all_equal")


def splitmix64(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Draws ``start`` .. ``start + count - 1`` of the SplitMix64 stream for ``seed``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed % WORD_RANGE) + idx * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def uniform_keys(n: int, m: int, seed: int) -> np.ndarray:
    """``n`` keys drawn from ``[0, m)``; ``m`` may be up to ``2**64``."""
    if n and m < 1:
        raise ValueError(f"empty key range m={m}")
    raw = splitmix64(seed, n)
    if m >= WORD_RANGE:
        return raw
    return raw % np.uint64(m)


@dataclass(frozen=True)
class DatasetSpec:
    """What to generate.

    ``beta`` scales the key range to ``m = beta * n`` for ``uniform`` and
    bounds the single far key of ``best_case``. ``value`` pins the key of
    ``all_equal`` (drawn from the seed when omitted). ``full_universe`` makes
    ``uniform`` draw from the whole 64-bit word instead.
    """

    n: int
    distribution: str = "uniform"
    beta: float = 1.0
    seed: int = 0
    value: int | None = None
    full_universe: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.distribution!r}; expected one of {DISTRIBUTIONS}"
            )
        if self.distribution == "uniform" and self.beta < 1:
            raise ValueError(f"uniform datasets need beta >= 1, got {self.beta}")

    @property
    def m(self) -> int:
        """Nominal key range for uniform draws."""
        if self.full_universe:
            return WORD_RANGE
        return max(1, int(self.beta * self.n))


def generate(spec: DatasetSpec) -> np.ndarray:
    n, seed = spec.n, spec.seed
    dist = spec.distribution
    if dist == "uniform":
        m = spec.m
        if not spec.full_universe and m > KEY_LIMIT:
            raise ValueError(f"range {m} exceeds 2**63 without full_universe")
        return uniform_keys(n, m, seed)
    if dist == "worst_case":
        # one key per interval of width n: each binding-loop pass sorts one
        return np.arange(n, dtype=np.uint64) * np.uint64(n)
    if dist == "best_case":
        if n == 0:
            return np.zeros(0, dtype=np.uint64)
        keys = np.empty(n, dtype=np.uint64)
        keys[: n - 1] = uniform_keys(n - 1, n, seed)
        far = max(int(spec.beta * n), n + 1)
        keys[n - 1] = n + int(splitmix64(seed, 1, start=n)[0] % np.uint64(far - n))
        slot = int(splitmix64(seed, 1, start=n + 1)[0] % np.uint64(n))
        keys[slot], keys[n - 1] = keys[n - 1], keys[slot]
        return keys
    if dist == "sorted":
        keys = uniform_keys(n, spec.m, seed)
        keys.sort()
        return keys
    if dist == "reverse":
        keys = uniform_keys(n, spec.m, seed)
        keys.sort()
        return keys[::-1].copy()
    # all_equal
    value = spec.value
    if value is None:
        value = int(uniform_keys(1, spec.m, seed)[0])
    return np.full(n, value, dtype=np.uint64)
