"""Checks that a sort's output is a sorted permutation of its input."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from apsort.baselines import oracle_sort


@dataclass(frozen=True)
class VerificationResult:
    sorted: bool
    multiset_preserved: bool
    payload_pairing_ok: bool

    @property
    def ok(self) -> bool:
        return self.sorted and self.multiset_preserved and self.payload_pairing_ok

    def first_failure(self) -> str | None:
        if not self.multiset_preserved:
            return "multiset"
        if not self.sorted:
            return "order"
        if not self.payload_pairing_ok:
            return "payload pairing"
        return None


def first_descent(keys: np.ndarray) -> int | None:
    """Index ``i`` of the first pair with ``keys[i] > keys[i + 1]``."""
    keys = np.asarray(keys, dtype=np.uint64)
    bad = np.flatnonzero(keys[1:] < keys[:-1])
    return int(bad[0]) if bad.size else None


def verify(original_keys, result_keys, result_payloads=None) -> VerificationResult:
    """Compare a sort result against its input.

    Payload pairing is checked only when ``result_payloads`` is given. The
    payloads must be original indices: each must appear exactly once, and
    ``original_keys[p]`` must equal the key that ``p`` came out next to.
    """
    orig = np.asarray(original_keys, dtype=np.uint64)
    res = np.asarray(result_keys, dtype=np.uint64)
    is_sorted = first_descent(res) is None
    if len(orig) != len(res):
        return VerificationResult(is_sorted, False, result_payloads is None)

    multiset = bool(np.array_equal(oracle_sort(orig), oracle_sort(res)))
    pairing = True
    if result_payloads is not None:
        pay = np.asarray(result_payloads).astype(np.int64, copy=False)
        n = len(orig)
        pairing = len(pay) == n and (
            n == 0
            or (
                np.array_equal(np.sort(pay), np.arange(n))
                and np.array_equal(orig[pay], res)
            )
        )
    return VerificationResult(is_sorted, multiset, bool(pairing))
