"""Allocation counting for the in-place claim.

Two counters are read around a call: the numba runtime's allocation counter
(every heap allocation a compiled kernel makes, arrays included) and the
Python allocator's traced peak (which also sees NumPy buffers). Handing an
array to a compiled function costs one small runtime allocation for its
wrapper regardless of size, so :func:`sort_allocations` subtracts a control
call that passes the same buffers but sorts nothing. What remains is what the
phases themselves allocate.
"""

from __future__ import annotations

import tracemalloc
from dataclasses import dataclass

from numba.core.runtime import _nrt_python, rtsys

from apsort import _kernels as K
from apsort.core import _NO_LOG, KeyedList, check_key_range


@dataclass(frozen=True)
class AllocationCount:
    runtime_allocs: int
    traced_peak_bytes: int

    def __sub__(self, other):
        return AllocationCount(
            self.runtime_allocs - other.runtime_allocs,
            self.traced_peak_bytes - other.traced_peak_bytes,
        )


def count_allocations(fn, *args) -> tuple[AllocationCount, object]:
    """Run ``fn(*args)`` and report what it allocated, plus its return value."""
    if not _nrt_python.memsys_stats_enabled():
        _nrt_python.memsys_enable_stats()
    was_tracing = tracemalloc.is_tracing()
    if not was_tracing:
        tracemalloc.start()
    try:
        before = rtsys.get_allocation_stats().alloc
        base = tracemalloc.get_traced_memory()[0]
        tracemalloc.reset_peak()
        result = fn(*args)
        peak = tracemalloc.get_traced_memory()[1]
        after = rtsys.get_allocation_stats().alloc
    finally:
        if not was_tracing:
            tracemalloc.stop()
    return AllocationCount(after - before, max(0, peak - base)), result


def sort_allocations(kl: KeyedList) -> tuple[AllocationCount, int]:
    """Allocations made by the binding loop while sorting ``kl`` in place.

    Returns the count net of the control call, and the iteration count.
    """
    check_key_range(kl)
    words, pay, has_pay = kl._kernel_args()
    n = len(words)
    run = K.bind_kernel
    control_args = (words, pay, has_pay, 0, 0, 0, True, 0, _NO_LOG)
    # the first traced dispatch keeps a small int alive; take the control
    # from the second
    count_allocations(run, *control_args)
    control, _ = count_allocations(run, *control_args)
    measured, iterations = count_allocations(
        run, words, pay, has_pay, 0, n, 0, True, 0, _NO_LOG
    )
    return measured - control, int(iterations)
