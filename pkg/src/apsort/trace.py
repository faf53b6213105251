"""Phase-by-phase snapshots of the first binding-loop iteration."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from apsort.core import (
    PHASES,
    IntervalView,
    IterationCounters,
    KeyedList,
    check_key_range,
    is_tagged,
    make_node,
    record_of,
    run_phases,
)

MAX_TRACE_KEYS = 4096

_NODE = re.compile(r"node\((\d+)\)")


def render_words(words) -> str:
    """Tagged words print as ``node(record)``, others as decimals."""
    out = []
    for w in np.asarray(words, dtype=np.uint64).tolist():
        out.append(f"node({record_of(w)})" if is_tagged(w) else str(w))
    return " ".join(out)


def parse_words(text: str) -> np.ndarray:
    words = []
    for tok in text.split():
        m = _NODE.fullmatch(tok)
        words.append(make_node(int(m.group(1))) if m else int(tok))
    return np.array(words, dtype=np.uint64)


@dataclass(frozen=True)
class PhaseSnapshot:
    phase: str
    words: str
    counters: IterationCounters

    def header(self) -> str:
        c = self.counters
        return (
            f"# {self.phase}: n_d={c.n_d} n_c={c.n_c} n_d'={c.n_d_prime} "
            f"delta={c.delta} delta'={c.delta_prime}"
        )


def trace_first_iteration(keys) -> list[PhaseSnapshot]:
    """Run the five phases once over the whole list, snapshotting after each.

    ``keys`` is modified in place when it is a ``uint64`` array.
    """
    kl = KeyedList(keys)
    if len(kl) == 0:
        return []
    if len(kl) > MAX_TRACE_KEYS:
        raise ValueError(f"trace is limited to {MAX_TRACE_KEYS} keys, got {len(kl)}")
    check_key_range(kl)
    view = IntervalView.over(kl)
    snaps = []
    run_phases(
        view,
        kl,
        lambda name, counters: snaps.append(
            PhaseSnapshot(name, render_words(kl.keys), counters)
        ),
    )
    return snaps


def select(snapshots, phase: str):
    if phase == "all":
        return list(snapshots)
    if phase not in PHASES:
        raise ValueError(f"unknown phase {phase!r}")
    return [s for s in snapshots if s.phase == phase]
