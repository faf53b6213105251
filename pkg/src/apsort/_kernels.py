"""Compiled kernels for associative permutation sort.

Every kernel works on the signed 64-bit view of the key buffer. Bit 63 is the
node tag, so a tagged word is simply a negative int64. The low 63 bits split
into a key field (bits ``shift``..62) and a satellite field (bits
0..``shift``-1). With ``shift == 0`` the satellite field is empty and the whole
63-bit value is the key. Records and tickets are written into the key field;
satellite bits ride along with the word they belong to.

Payloads are passed as a 2-D array with one row per element. Keys-only sorts
pass an empty array and ``has_pay=False``.

None of these kernels allocate. Contract violations are reported through the
``CONTRACT_VIOLATION`` return code instead of exceptions.
"""

import numba as nb
import numpy as np

TAG = np.int64(-(2**63))
VALUE_MASK = np.int64(2**63 - 1)

CONTRACT_VIOLATION = -1

_jit = nb.njit(cache=True, nogil=True)


@_jit
def swap_rows(pay, i, j):
    for c in range(pay.shape[1]):
        t = pay[i, c]
        pay[i, c] = pay[j, c]
        pay[j, c] = t


@_jit
def min_max_key(keys, off, n, shift):
    lo = keys[off] >> shift
    hi = lo
    for i in range(off + 1, off + n):
        v = keys[i] >> shift
        if v < lo:
            lo = v
        elif v > hi:
            hi = v
    return lo, hi


@_jit
def max_key(keys, off, n, shift):
    hi = keys[off] >> shift
    for i in range(off + 1, off + n):
        v = keys[i] >> shift
        if v > hi:
            hi = v
    return hi


@_jit
def practice_kernel(keys, pay, has_pay, off, n, delta, delta_prime, shift):
    """Algorithm A. Returns (n_d, n_c, n_d_prime, delta_prime)."""
    unit = np.int64(1) << shift
    sat_mask = unit - 1
    n_d = 0
    n_c = 0
    n_dp = 0
    i = 0
    while i < n:
        x = keys[off + i]
        if x < 0:
            i += 1
            continue
        v = x >> shift
        j = v - delta
        if j >= n:
            n_dp += 1
            if v < delta_prime:
                delta_prime = v
            i += 1
            continue
        y = keys[off + j]
        if y >= 0:
            # first occurrence: the key becomes a node at j, the occupant of j
            # takes the vacated slot i
            keys[off + i] = y
            keys[off + j] = TAG | (x & sat_mask)
            if has_pay:
                swap_rows(pay, off + i, off + j)
            if j <= i:
                i += 1
            n_d += 1
        else:
            keys[off + j] = y + unit
            n_c += 1
            i += 1
    return n_d, n_c, n_dp, delta_prime


@_jit
def accumulate_kernel(keys, off, n, shift):
    """Algorithm B with the node's own slot counted in the running total."""
    unit = np.int64(1) << shift
    sat_mask = unit - 1
    total = 0
    for i in range(off, off + n):
        x = keys[i]
        if x < 0:
            rec = ((x & VALUE_MASK) >> shift) + total
            keys[i] = TAG | (rec << shift) | (x & sat_mask)
            total = rec + 1


@_jit
def repractice_kernel(keys, off, n, delta, shift):
    unit = np.int64(1) << shift
    sat_mask = unit - 1
    for i in range(off + n - 1, off - 1, -1):
        x = keys[i]
        if x < 0:
            continue
        j = (x >> shift) - delta
        if j >= n:
            continue
        y = keys[off + j]
        ticket = (y & VALUE_MASK) >> shift
        keys[i] = (ticket << shift) | (x & sat_mask)
        keys[off + j] = y - unit


@_jit
def permute_kernel(keys, pay, has_pay, off, n, n_practiced, shift):
    """Algorithm D. Returns the number of swaps, or CONTRACT_VIOLATION."""
    sat_mask = (np.int64(1) << shift) - 1
    k = n_practiced
    swaps = 0
    # every swap parks one element for good, so n + n_practiced bounds a
    # valid run
    budget = n + n_practiced
    i = 0
    while i < n_practiced:
        x = keys[off + i]
        if x < 0:
            i += 1
            continue
        v = x >> shift
        if v == i:
            i += 1
            continue
        if v < n:
            j = v
        else:
            if k >= n:
                return CONTRACT_VIOLATION
            j = k
            k += 1
        keys[off + i] = keys[off + j]
        keys[off + j] = x
        if has_pay:
            swap_rows(pay, off + i, off + j)
        swaps += 1
        y = keys[off + i]
        # inner cycle: chase nodes to their run starts, leaving each one's
        # former position in its record
        while y < 0:
            p = (y & VALUE_MASK) >> shift
            if p >= n_practiced or swaps >= budget:
                return CONTRACT_VIOLATION
            keys[off + i] = keys[off + p]
            keys[off + p] = TAG | (j << shift) | (y & sat_mask)
            if has_pay:
                swap_rows(pay, off + i, off + p)
            swaps += 1
            if p == i:
                break
            y = keys[off + i]
            j = p
        if swaps > budget:
            return CONTRACT_VIOLATION
    return swaps


@_jit
def restore_kernel(keys, off, n_practiced, delta, shift):
    sat_mask = (np.int64(1) << shift) - 1
    if n_practiced > 0 and keys[off] >= 0:
        return CONTRACT_VIOLATION
    key = np.int64(0)
    for i in range(off, off + n_practiced):
        x = keys[i]
        if x < 0:
            key = ((x & VALUE_MASK) >> shift) + delta
        keys[i] = (key << shift) | (x & sat_mask)
    return 0


@_jit
def sort_interval_kernel(keys, pay, has_pay, off, n, delta, delta_prime, shift):
    n_d, n_c, n_dp, delta_prime = practice_kernel(
        keys, pay, has_pay, off, n, delta, delta_prime, shift
    )
    accumulate_kernel(keys, off, n, shift)
    repractice_kernel(keys, off, n, delta, shift)
    if permute_kernel(keys, pay, has_pay, off, n, n_d + n_c, shift) < 0:
        return CONTRACT_VIOLATION, n_c, n_dp, delta_prime
    if restore_kernel(keys, off, n_d + n_c, delta, shift) < 0:
        return CONTRACT_VIOLATION, n_c, n_dp, delta_prime
    return n_d, n_c, n_dp, delta_prime


@_jit
def bind_kernel(keys, pay, has_pay, off, n, delta, use_min, shift, log):
    """Binding loop over the suffix keys[off:off+n].

    When ``use_min`` is false the first interval starts at ``delta`` as given;
    later intervals always start at the smallest deferred key. Rows of ``log``
    receive (n_d, n_c, n_d', delta, delta') per iteration while they last.
    Returns the iteration count or CONTRACT_VIOLATION.
    """
    if n == 0:
        return 0
    lo, hi = min_max_key(keys, off, n, shift)
    if use_min:
        delta = lo
    iterations = 0
    while True:
        if iterations > 0:
            hi = max_key(keys, off, n, shift)
        n_d, n_c, n_dp, delta_prime = sort_interval_kernel(
            keys, pay, has_pay, off, n, delta, hi, shift
        )
        if n_d < 0:
            return CONTRACT_VIOLATION
        if iterations < log.shape[0]:
            log[iterations, 0] = n_d
            log[iterations, 1] = n_c
            log[iterations, 2] = n_dp
            log[iterations, 3] = delta
            log[iterations, 4] = delta_prime
        iterations += 1
        if n_dp == 0:
            return iterations
        off += n_d + n_c
        n = n_dp
        delta = delta_prime


@_jit
def split_kernel(keys, pay, has_pay):
    """Partition words below 2**63 ahead of the rest, clearing bit 63 of the rest."""
    n = keys.shape[0]
    lo = 0
    hi = n - 1
    while True:
        while lo <= hi and keys[lo] >= 0:
            lo += 1
        while lo <= hi and keys[hi] < 0:
            hi -= 1
        if lo >= hi:
            break
        t = keys[lo]
        keys[lo] = keys[hi]
        keys[hi] = t
        if has_pay:
            swap_rows(pay, lo, hi)
    for i in range(lo, n):
        keys[i] &= VALUE_MASK
    return lo


@_jit
def set_top_bit(keys, start):
    for i in range(start, keys.shape[0]):
        keys[i] |= TAG


@_jit
def is_ascending(keys):
    for i in range(1, keys.shape[0]):
        if keys[i] < keys[i - 1]:
            return False
    return True
