"""Reference sorts: the correctness oracle and the benchmark baselines.

None of these share code with the associative permutation sort. The baselines
sort ``uint64`` arrays in place; :func:`oracle_sort` returns a sorted copy.
"""

import numba as nb
import numpy as np

_jit = nb.njit(cache=True, nogil=True)

INSERTION_CUTOFF = 16


def _as_words(keys):
    if isinstance(keys, np.ndarray) and keys.dtype == np.uint64:
        return keys
    return np.array([int(k) for k in keys], dtype=np.uint64)


@_jit
def _merge_sort(a):
    # bottom-up, ping-ponging between a and one scratch buffer
    n = a.shape[0]
    src = a.copy()
    dst = np.empty_like(a)
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            for k in range(lo, hi):
                if i < mid and (j >= hi or src[i] <= src[j]):
                    dst[k] = src[i]
                    i += 1
                else:
                    dst[k] = src[j]
                    j += 1
        src, dst = dst, src
        width *= 2
    return src


def oracle_sort(keys) -> np.ndarray:
    """Ascending copy of ``keys`` by a plain merge sort. Input is left alone."""
    return _merge_sort(_as_words(keys))


@_jit
def _lsd_radix(a):
    n = a.shape[0]
    buf = np.empty_like(a)
    counts = np.zeros(256, dtype=np.int64)
    src = a
    dst = buf
    for shift in range(0, 64, 8):
        counts[:] = 0
        for i in range(n):
            counts[(src[i] >> np.uint64(shift)) & np.uint64(0xFF)] += 1
        total = 0
        for d in range(256):
            c = counts[d]
            counts[d] = total
            total += c
        for i in range(n):
            d = (src[i] >> np.uint64(shift)) & np.uint64(0xFF)
            dst[counts[d]] = src[i]
            counts[d] += 1
        src, dst = dst, src
    # eight passes: the result lands back in a


def lsd_radix_sort(keys: np.ndarray) -> None:
    """LSD radix sort with byte digits, eight passes over 64-bit words."""
    _lsd_radix(keys)


@_jit
def _insertion(a, lo, hi):
    for i in range(lo + 1, hi):
        x = a[i]
        j = i - 1
        while j >= lo and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


@_jit
def _bucket(a):
    n = a.shape[0]
    if n < 2:
        return
    lo = a[0]
    hi = a[0]
    for i in range(n):
        if a[i] < lo:
            lo = a[i]
        if a[i] > hi:
            hi = a[i]
    # key * n / m with m = hi - lo + 1, in floating point; rounding is
    # monotone so bucket order still follows key order
    scale = n / (float(hi - lo) + 1.0)
    starts = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        b = min(int(float(a[i] - lo) * scale), n - 1)
        starts[b + 1] += 1
    for b in range(n):
        starts[b + 1] += starts[b]
    fill = starts[:n].copy()
    out = np.empty_like(a)
    for i in range(n):
        b = min(int(float(a[i] - lo) * scale), n - 1)
        out[fill[b]] = a[i]
        fill[b] += 1
    for b in range(n):
        if starts[b + 1] - starts[b] > 1:
            _insertion(out, starts[b], starts[b + 1])
    a[:] = out


def bucket_sort(keys: np.ndarray) -> None:
    """Bucket sort with ``n`` buckets over ``[min, max]``, insertion sort inside each."""
    _bucket(keys)


@_jit
def _median3(a, lo, mid, hi):
    if a[mid] < a[lo]:
        a[mid], a[lo] = a[lo], a[mid]
    if a[hi] < a[lo]:
        a[hi], a[lo] = a[lo], a[hi]
    if a[hi] < a[mid]:
        a[hi], a[mid] = a[mid], a[hi]
    return a[mid]


@_jit
def _quicksort(a):
    n = a.shape[0]
    # the larger side is pushed and the loop continues on the smaller one,
    # so at most 64 ranges are ever pending
    stack = np.empty(128, dtype=np.int64)
    stack[0] = 0
    stack[1] = n - 1
    top = 2
    while top > 0:
        top -= 2
        lo = stack[top]
        hi = stack[top + 1]
        while hi - lo + 1 > INSERTION_CUTOFF:
            pivot = _median3(a, lo, (lo + hi) // 2, hi)
            i = lo
            j = hi
            while i <= j:
                while a[i] < pivot:
                    i += 1
                while a[j] > pivot:
                    j -= 1
                if i <= j:
                    a[i], a[j] = a[j], a[i]
                    i += 1
                    j -= 1
            if j - lo > hi - i:
                stack[top] = lo
                stack[top + 1] = j
                lo = i
            else:
                stack[top] = i
                stack[top + 1] = hi
                hi = j
            top += 2
        _insertion(a, lo, hi + 1)


def comparison_sort(keys: np.ndarray) -> None:
    """Quicksort: median-of-three pivot, Hoare partition, insertion sort below 16."""
    if len(keys) > 1:
        _quicksort(keys)


def platform_sort(keys: np.ndarray) -> None:
    """NumPy's default in-place sort, for reference."""
    keys.sort()
