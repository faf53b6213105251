import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apsort.core import (
    KEY_LIMIT,
    KeyedList,
    KeyRangeError,
    high_bits_key,
    sort,
    sort_by_high_bits,
    sort_full_universe,
    sort_in_place,
    split_universe,
)
from apsort.datasets import DatasetSpec, generate, uniform_keys


def sorted_list(keys, **kw):
    kl = KeyedList(keys)
    report = sort(kl, **kw)
    return kl.keys.tolist(), report


def test_sort_example():
    keys, report = sorted_list([3, 1, 3, 7, 1, 3])
    assert keys == [1, 1, 3, 3, 3, 7]
    assert report.iterations == 2
    assert report.verified
    assert [(c.n_d, c.n_c, c.n_d_prime) for c in report.per_iteration] == [(2, 3, 1), (1, 0, 0)]
    assert report.per_iteration[1].delta == 7


def test_sort_empty():
    keys, report = sorted_list([])
    assert keys == [] and report.iterations == 0 and report.per_iteration == []


def test_sort_singleton():
    keys, report = sorted_list([42])
    assert keys == [42] and report.iterations == 1


def test_worst_case_eight():
    n = 8
    keys, report = sorted_list([j * n for j in range(n)][::-1])
    assert keys == [j * n for j in range(n)]
    assert report.iterations == n


def test_sort_writes_through_to_caller_array():
    a = np.array([5, 2, 9, 2], dtype=np.uint64)
    sort(KeyedList(a))
    assert a.tolist() == [2, 2, 5, 9]


def test_sort_rejects_tag_bit_keys():
    with pytest.raises(KeyRangeError):
        sort(KeyedList([1, KEY_LIMIT]))
    with pytest.raises(KeyRangeError):
        sort_in_place(KeyedList([KEY_LIMIT + 5]))


def test_largest_allowed_key():
    keys, _ = sorted_list([KEY_LIMIT - 1, 0, KEY_LIMIT - 1, 7])
    assert keys == [0, 7, KEY_LIMIT - 1, KEY_LIMIT - 1]


def test_payload_length_mismatch():
    with pytest.raises(ValueError):
        KeyedList([1, 2], payloads=[0])


@settings(max_examples=300)
@given(st.lists(st.integers(0, 2**63 - 1), max_size=60))
def test_sort_matches_sorted_with_pairing(keys):
    kl = KeyedList.with_index_payloads(keys)
    report = sort(kl)
    assert kl.keys.tolist() == sorted(keys)
    assert sorted(kl.payloads.tolist()) == list(range(len(keys)))
    assert [keys[p] for p in kl.payloads.tolist()] == kl.keys.tolist()
    assert sum(c.n_d + c.n_c for c in report.per_iteration) == len(keys)


@settings(max_examples=200)
@given(st.integers(1, 50).flatmap(lambda n: st.lists(st.integers(0, 4 * n), min_size=n, max_size=n)))
def test_dense_keys_counters(keys):
    kl = KeyedList(keys)
    report = sort(kl)
    assert kl.keys.tolist() == sorted(keys)
    for c in report.per_iteration:
        assert c.n_d >= 1


@given(st.lists(st.integers(0, 30), max_size=40))
def test_float_and_structured_payloads(keys):
    n = len(keys)
    rec = np.zeros(n, dtype=[("idx", "<i4"), ("tag", "S3")])
    rec["idx"] = np.arange(n)
    rec["tag"] = [str(k).encode()[:3] for k in keys]
    kl = KeyedList(keys, payloads=rec)
    sort(kl)
    assert kl.keys.tolist() == sorted(keys)
    assert [keys[i] for i in rec["idx"]] == kl.keys.tolist()
    assert [str(k).encode()[:3] for k in kl.keys.tolist()] == rec["tag"].tolist()

    fl = np.array(keys, dtype=np.float64) / 2
    kl = KeyedList(keys, payloads=fl)
    sort(kl)
    assert (fl * 2).tolist() == kl.keys.tolist()


def test_two_column_payload_rows_move_together():
    keys = [4, 1, 3, 1]
    pay = np.array([[40, -4], [10, -1], [30, -3], [11, -11]])
    sort(KeyedList(keys, payloads=pay))
    assert sorted(map(tuple, pay[:2].tolist())) == [(10, -1), (11, -11)]
    assert pay[2:].tolist() == [[30, -3], [40, -4]]


def test_uniform_beta_one_single_iteration():
    for n in (1, 10, 1000, 50_000):
        keys = uniform_keys(n, n, seed=n)
        assert sort(KeyedList(keys)).iterations == 1


def test_keys_within_window_single_iteration():
    base = 10**12
    keys = [base + k for k in (5, 0, 9, 3, 3, 9, 1, 7, 2, 0)]
    assert sort(KeyedList(keys)).iterations == 1


def test_best_case_at_most_two_iterations():
    for seed in range(20):
        keys = generate(DatasetSpec(200, "best_case", beta=50, seed=seed))
        assert sort(KeyedList(keys)).iterations <= 2


def test_iterations_never_exceed_n():
    for seed in range(30):
        keys = uniform_keys(100, 2**40, seed)
        report = sort(KeyedList(keys))
        assert 1 <= report.iterations <= 100


# -- universe splitting ------------------------------------------------------


def test_split_universe_example():
    kl = KeyedList([KEY_LIMIT + 1, 3])
    assert split_universe(kl) == 1
    assert kl.keys.tolist() == [3, 1]


def test_split_universe_all_low():
    keys = [5, 0, 9]
    kl = KeyedList(keys)
    assert split_universe(kl) == 3
    assert kl.keys.tolist() == keys


def test_full_universe_wrapper_example():
    kl = KeyedList([KEY_LIMIT + 1, 3])
    sort_full_universe(kl)
    assert kl.keys.tolist() == [3, KEY_LIMIT + 1]


def test_full_universe_random_thousand():
    keys = uniform_keys(1000, 2**64, seed=7)
    original = keys.copy()
    kl = KeyedList.with_index_payloads(keys)
    report = sort_full_universe(kl)
    assert kl.keys.tolist() == sorted(original.tolist())
    assert np.array_equal(original[kl.payloads], kl.keys)
    assert report.verified


@given(st.lists(st.integers(0, 2**64 - 1), max_size=40))
def test_split_universe_partition(keys):
    kl = KeyedList(keys)
    b = split_universe(kl)
    low = [k for k in keys if k < KEY_LIMIT]
    high = [k - KEY_LIMIT for k in keys if k >= KEY_LIMIT]
    assert b == len(low)
    assert Counter(kl.keys[:b].tolist()) == Counter(low)
    assert Counter(kl.keys[b:].tolist()) == Counter(high)


# -- high-bits grouping ------------------------------------------------------


def with_high_bits(groups, n, low_bits=None):
    """Words whose top ceil(log2 n) bits below the tag are ``groups``."""
    shift = 63 - math.ceil(math.log2(n))
    low_bits = low_bits or [0] * len(groups)
    return [(g << shift) | lo for g, lo in zip(groups, low_bits)]


def test_high_bits_example():
    words = with_high_bits([2, 0, 2, 1], 4, low_bits=[11, 22, 33, 44])
    kl = KeyedList(words)
    bounds = sort_by_high_bits(kl)
    assert bounds.tolist() == [0, 1, 2, 4]
    assert [high_bits_key(w, 4) for w in kl.keys.tolist()] == [0, 1, 2, 2]
    assert Counter(kl.keys.tolist()) == Counter(words)


def test_high_bits_single_word():
    kl = KeyedList([12345])
    assert sort_by_high_bits(kl).tolist() == [0, 1]
    assert kl.keys.tolist() == [12345]


def test_high_bits_empty():
    assert sort_by_high_bits(KeyedList([])).tolist() == [0]


def test_high_bits_all_equal_group():
    words = with_high_bits([3] * 6, 6, low_bits=[6, 5, 4, 3, 2, 1])
    kl = KeyedList(words)
    assert sort_by_high_bits(kl).tolist() == [0, 6]
    assert Counter(kl.keys.tolist()) == Counter(words)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 2**63 - 1), min_size=2, max_size=80))
def test_high_bits_groups_against_counting(words):
    n = len(words)
    kl = KeyedList.with_index_payloads(words)
    bounds = sort_by_high_bits(kl).tolist()
    out = kl.keys.tolist()
    assert Counter(out) == Counter(words)
    assert [words[p] for p in kl.payloads.tolist()] == out
    groups = [high_bits_key(w, n) for w in out]
    assert groups == sorted(groups)
    counts = Counter(high_bits_key(w, n) for w in words)
    sizes = [b - a for a, b in zip(bounds, bounds[1:])]
    assert sizes == [counts[g] for g in sorted(counts)]
