"""In-place associative permutation sort for integer keys.

The sort works on a :class:`KeyedList`: a buffer of unsigned 64-bit key words
plus an optional parallel payload buffer. Keys must stay below ``2**63``
because bit 63 tags a word as a node while a pass is in flight; use
:func:`sort_full_universe` for keys that use the whole word.

Each binding-loop iteration sorts the keys that fall in ``[delta, delta + n)``
to the front of the remaining suffix in five phases (practice, accumulate,
repractice, permute, restore) and defers the rest to the next iteration. The
phases are exposed individually so their intermediate states can be traced
and checked.

The technique is unstable: equal keys may come out in any order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from apsort import _kernels as K

WORD_BITS = 64
TAG_BIT = WORD_BITS - 1
KEY_LIMIT = 1 << TAG_BIT

_NO_PAYLOAD = np.empty((0, 1), dtype=np.uint8)
_NO_LOG = np.empty((0, 5), dtype=np.int64)


class ContractViolation(RuntimeError):
    """A phase was handed a list that is not in the state it requires."""


class KeyRangeError(ValueError):
    """A key uses the tag bit (is >= 2**63)."""


def hash_key(key: int, delta: int, n: int) -> int | None:
    """Map ``key`` to its slot in an interval of length ``n`` starting at ``delta``.

    Returns ``None`` when the key lies beyond the interval.
    """
    j = key - delta
    return j if j < n else None


def unhash(j: int, delta: int) -> int:
    return j + delta


def is_tagged(word: int) -> bool:
    return bool(int(word) >> TAG_BIT)


def record_of(word: int) -> int:
    return int(word) & (KEY_LIMIT - 1)


def make_node(record: int) -> int:
    return KEY_LIMIT | record


class KeyedList:
    """Key words and an optional payload buffer sorted together in place.

    Parameters
    ----------
    keys : array_like
        Key words. A ``uint64`` ndarray is used as-is (the sort writes
        through to it); anything else is copied into a new ``uint64`` array.
    payloads : array_like, optional
        One fixed-size item per key. 1-D numeric arrays hold one item per
        entry; a 2-D array holds one item per row; structured dtypes are
        handled as raw bytes and must be C-contiguous.
    """

    def __init__(self, keys, payloads=None):
        if isinstance(keys, np.ndarray) and keys.dtype == np.uint64 and keys.ndim == 1:
            self.keys = keys
        else:
            self.keys = _to_words(keys)
        if payloads is not None:
            payloads = np.asarray(payloads)
            if payloads.ndim == 0 or len(payloads) != len(self.keys):
                raise ValueError(
                    f"payloads length {len(payloads)} != keys length {len(self.keys)}"
                )
            if payloads.dtype == object:
                raise TypeError("payload items must be fixed-size, not Python objects")
        self.payloads = payloads
        self._pay2d = _payload_matrix(payloads)

    @classmethod
    def with_index_payloads(cls, keys) -> KeyedList:
        """Attach each element's original position as its payload."""
        kl = cls(keys)
        kl.payloads = np.arange(len(kl.keys), dtype=np.int64)
        kl._pay2d = _payload_matrix(kl.payloads)
        return kl

    def __len__(self):
        return len(self.keys)

    def __repr__(self):
        extra = "" if self.payloads is None else f", payloads={self.payloads!r}"
        return f"KeyedList(keys={self.keys!r}{extra})"

    @property
    def words(self) -> np.ndarray:
        """Signed view of the key buffer; tagged words read as negative."""
        return self.keys.view(np.int64)

    @property
    def has_payloads(self) -> bool:
        return self.payloads is not None

    def slice(self, start: int, stop: int | None = None) -> KeyedList:
        """A KeyedList viewing ``[start, stop)`` of this one's buffers."""
        sub = KeyedList.__new__(KeyedList)
        sub.keys = self.keys[start:stop]
        sub.payloads = None if self.payloads is None else self.payloads[start:stop]
        sub._pay2d = _payload_matrix(sub.payloads)
        return sub

    def _kernel_args(self):
        if self._pay2d is None:
            return self.words, _NO_PAYLOAD, False
        return self.words, self._pay2d, True


def _to_words(keys) -> np.ndarray:
    values = list(keys) if not isinstance(keys, np.ndarray) else keys
    if isinstance(values, np.ndarray) and values.dtype.kind in "ui":
        if values.dtype.kind == "i" and values.size and values.min() < 0:
            raise ValueError("keys must be non-negative")
        return values.astype(np.uint64)
    out = np.empty(len(values), dtype=np.uint64)
    for i, v in enumerate(values):
        v = int(v)
        if v < 0 or v >= 1 << WORD_BITS:
            raise ValueError(f"key {v} does not fit in an unsigned {WORD_BITS}-bit word")
        out[i] = v
    return out


def _payload_matrix(payloads):
    if payloads is None:
        return None
    if payloads.dtype.fields is not None or payloads.dtype.kind == "V":
        if not payloads.flags.c_contiguous:
            raise ValueError("structured payloads must be C-contiguous")
        return payloads.view(np.uint8).reshape(len(payloads), payloads.dtype.itemsize)
    if payloads.ndim == 1:
        return payloads.reshape(-1, 1)
    if payloads.ndim == 2:
        return payloads
    return payloads.reshape(len(payloads), -1)


@dataclass
class IntervalView:
    """The suffix ``[offset, offset + length)`` being sorted in one iteration."""

    offset: int
    length: int
    delta: int
    delta_prime: int

    @classmethod
    def over(cls, kl: KeyedList, offset: int = 0, length: int | None = None) -> IntervalView:
        """View a range of ``kl`` with delta = its minimum and delta' = its maximum."""
        if length is None:
            length = len(kl) - offset
        if offset < 0 or length < 1 or offset + length > len(kl):
            raise ValueError(f"bad view [{offset}, {offset}+{length}) over {len(kl)} keys")
        lo, hi = K.min_max_key(kl.words, offset, length, 0)
        return cls(offset, length, int(lo), int(hi))


@dataclass(frozen=True)
class IterationCounters:
    n_d: int
    n_c: int
    n_d_prime: int
    delta: int
    delta_prime: int

    @property
    def n_practiced(self) -> int:
        return self.n_d + self.n_c


@dataclass
class SortReport:
    iterations: int
    per_iteration: list[IterationCounters] = field(default_factory=list)
    elapsed: float = 0.0
    verified: bool = False


def _check_view(view: IntervalView, kl: KeyedList):
    if view.offset < 0 or view.length < 0 or view.offset + view.length > len(kl):
        raise ContractViolation(f"view {view} escapes a list of {len(kl)} keys")


def practice(view: IntervalView, kl: KeyedList) -> IterationCounters:
    """Create one node per distinct in-interval key and count its repeats.

    Afterwards the node for key ``k`` sits at ``k - delta`` with record
    ``count(k) - 1``. Out-of-interval keys are counted and the smallest one
    becomes the returned ``delta_prime``.
    """
    _check_view(view, kl)
    words, pay, has_pay = kl._kernel_args()
    if __debug__:
        region = words[view.offset:view.offset + view.length]
        if region.size and region.min() < 0:
            raise ContractViolation("practice requires untagged words")
        if region.size and int(region.min()) < view.delta:
            raise ContractViolation("delta exceeds a key in the view")
    n_d, n_c, n_dp, dp = K.practice_kernel(
        words, pay, has_pay, view.offset, view.length, view.delta, view.delta_prime, 0
    )
    return IterationCounters(int(n_d), int(n_c), int(n_dp), view.delta, int(dp))


def accumulate(view: IntervalView, kl: KeyedList) -> None:
    """Turn node records into the sorted position of each key's last element."""
    _check_view(view, kl)
    K.accumulate_kernel(kl.words, view.offset, view.length, 0)


def repractice(view: IntervalView, kl: KeyedList) -> None:
    """Hand each idle key a ticket (its sorted position) from its node.

    Scans right to left; each ticket decrements its node's record, leaving the
    node holding its key's run start.
    """
    _check_view(view, kl)
    K.repractice_kernel(kl.words, view.offset, view.length, view.delta, 0)


def permute(view: IntervalView, kl: KeyedList, counters: IterationCounters) -> None:
    _check_view(view, kl)
    words, pay, has_pay = kl._kernel_args()
    rc = K.permute_kernel(
        words, pay, has_pay, view.offset, view.length, counters.n_practiced, 0
    )
    if rc < 0:
        raise ContractViolation("permute found an inconsistent ticket or node record")


def restore(view: IntervalView, kl: KeyedList, counters: IterationCounters) -> None:
    _check_view(view, kl)
    if K.restore_kernel(kl.words, view.offset, counters.n_practiced, view.delta, 0) < 0:
        raise ContractViolation("restore expects a node at the start of the prefix")


PHASES = ("practice", "accumulate", "repractice", "permute", "restore")


def run_phases(view: IntervalView, kl: KeyedList, on_phase=None) -> IterationCounters:
    """Run the five phases in order, calling ``on_phase(name, counters)`` after each."""
    counters = practice(view, kl)
    if on_phase:
        on_phase("practice", counters)
    for name, step in (("accumulate", accumulate), ("repractice", repractice)):
        step(view, kl)
        if on_phase:
            on_phase(name, counters)
    for name, step in (("permute", permute), ("restore", restore)):
        step(view, kl, counters)
        if on_phase:
            on_phase(name, counters)
    return counters


def sort_interval(view: IntervalView, kl: KeyedList) -> IterationCounters:
    """Sort the keys in ``[delta, delta + length)`` to the front of the view."""
    _check_view(view, kl)
    if view.length == 0:
        raise ContractViolation("sort_interval needs a non-empty view")
    words, pay, has_pay = kl._kernel_args()
    n_d, n_c, n_dp, dp = K.sort_interval_kernel(
        words, pay, has_pay, view.offset, view.length, view.delta, view.delta_prime, 0
    )
    if n_d < 0:
        raise ContractViolation("phase contract violated during sort_interval")
    return IterationCounters(int(n_d), int(n_c), int(n_dp), view.delta, int(dp))


def check_key_range(kl: KeyedList) -> None:
    if len(kl) and kl.words.min() < 0:
        raise KeyRangeError(
            "keys >= 2**63 collide with the tag bit; use sort_full_universe"
        )


def sort_in_place(kl: KeyedList) -> int:
    """Sort ``kl`` and return the iteration count, with no reporting."""
    check_key_range(kl)
    words, pay, has_pay = kl._kernel_args()
    iterations = K.bind_kernel(words, pay, has_pay, 0, len(words), 0, True, 0, _NO_LOG)
    if iterations < 0:
        raise ContractViolation("phase contract violated during sort")
    return iterations


def sort(kl: KeyedList, *, record: bool = True, verify: bool = True) -> SortReport:
    """Sort ``kl`` in place by key.

    ``record`` keeps the per-iteration counters (at most ``len(kl)`` rows);
    ``verify`` checks the keys came out ascending. Raises
    :class:`KeyRangeError` if any key is ``>= 2**63``.
    """
    check_key_range(kl)
    n = len(kl)
    words, pay, has_pay = kl._kernel_args()
    log = np.empty((n, 5), dtype=np.int64) if record else _NO_LOG
    start = time.perf_counter()
    iterations = K.bind_kernel(words, pay, has_pay, 0, n, 0, True, 0, log)
    elapsed = time.perf_counter() - start
    if iterations < 0:
        raise ContractViolation("phase contract violated during sort")
    per_iteration = [
        IterationCounters(*(int(v) for v in row)) for row in log[:iterations]
    ]
    verified = bool(K.is_ascending(kl.keys)) if verify else False
    return SortReport(iterations, per_iteration, elapsed, verified)


def split_universe(kl: KeyedList) -> int:
    """Move keys below ``2**63`` to the front and subtract ``2**63`` from the rest.

    Returns the boundary index. The partition is unstable.
    """
    words, pay, has_pay = kl._kernel_args()
    return int(K.split_kernel(words, pay, has_pay))


def sort_full_universe(kl: KeyedList, *, record: bool = True) -> SortReport:
    """Sort keys spanning the whole 64-bit word: split, sort both halves, unshift."""
    start = time.perf_counter()
    boundary = split_universe(kl)
    low = sort(kl.slice(0, boundary), record=record, verify=False)
    high = sort(kl.slice(boundary), record=record, verify=False)
    K.set_top_bit(kl.words, boundary)
    elapsed = time.perf_counter() - start
    return SortReport(
        low.iterations + high.iterations,
        low.per_iteration + high.per_iteration,
        elapsed,
        bool(K.is_ascending(kl.keys)),
    )


def high_bits_width(n: int) -> int:
    """Number of leading key bits used to group ``n`` words: ceil(log2 n)."""
    return (n - 1).bit_length() if n > 1 else 0


def high_bits_key(word: int, n: int) -> int:
    b = high_bits_width(n)
    return (int(word) & (KEY_LIMIT - 1)) >> (TAG_BIT - b) if b else 0


def sort_by_high_bits(kl: KeyedList) -> np.ndarray:
    """Group words by their top ceil(log2 n) bits (below the tag bit), in place.

    The remaining low bits travel with each word untouched; groups come out in
    ascending order but are not sorted internally. Returns group start
    positions followed by ``n``.
    """
    check_key_range(kl)
    n = len(kl)
    if n <= 1:
        return np.array([0, n] if n else [0], dtype=np.int64)
    shift = TAG_BIT - high_bits_width(n)
    words, pay, has_pay = kl._kernel_args()
    if K.bind_kernel(words, pay, has_pay, 0, n, 0, False, shift, _NO_LOG) < 0:
        raise ContractViolation("phase contract violated during high-bits pass")
    groups = words >> shift
    starts = np.flatnonzero(np.diff(groups)) + 1
    return np.concatenate(([0], starts, [n])).astype(np.int64)
