import numpy as np

from apsort.alloc import count_allocations, sort_allocations
from apsort.baselines import oracle_sort
from apsort.core import KeyedList
from apsort.datasets import uniform_keys


def test_hook_sees_kernel_allocations():
    keys = uniform_keys(100_000, 100_000, seed=1)
    oracle_sort(keys[:4])
    counts, _ = count_allocations(oracle_sort, keys)
    assert counts.runtime_allocs >= 2
    assert counts.traced_peak_bytes >= 8 * len(keys)


def test_hook_sees_numpy_allocations():
    counts, _ = count_allocations(np.zeros, 10_000)
    assert counts.traced_peak_bytes >= 80_000


def test_sort_allocates_nothing_small():
    for pay in (False, True):
        keys = uniform_keys(5000, 20_000, seed=2)
        kl = KeyedList.with_index_payloads(keys) if pay else KeyedList(keys)
        counts, iterations = sort_allocations(kl)
        assert counts.runtime_allocs == 0
        assert counts.traced_peak_bytes == 0
        assert iterations >= 1
        assert (kl.keys[1:] >= kl.keys[:-1]).all()
