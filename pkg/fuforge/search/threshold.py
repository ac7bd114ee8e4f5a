"""
Exact FS thresholds: the least N such that every r-coloring of [1, N] has a
monochromatic k-term FS witness.

The search extends colorings of 1, 2, 3, ... one element at a time. Coloring m
with c can only complete witnesses whose total is exactly m, so each step
checks just those. Element 1 always gets color 0. The longest coloring that
avoids every witness has length L, and the threshold is L + 1.

Branches fix the colors of the next few elements after 1; the prefix depth is
constant so the node count does not depend on how branches are scheduled.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple

from fuforge.errors import OutOfRange

logger = logging.getLogger(__name__)

PREFIX_DEPTH = 3


def completes_witness(colors: List[Optional[int]], m: int, k: int) -> bool:
    """
    True iff some x_0 < ... < x_(k-1) with total m has all subset sums
    colored like m (every sum lies in [1, m], so all are already colored).
    """
    color = colors[m]

    def extend(last: int, sums: List[int], total: int, placed: int) -> bool:
        remaining = k - placed
        if remaining == 1:
            v = m - total
            return v > last and all(colors[s + v] == color for s in sums) and colors[v] == color
        top = (m - total - remaining * (remaining - 1) // 2) // remaining
        for v in range(last + 1, top + 1):
            if colors[v] != color:
                continue
            new_sums = [s + v for s in sums]
            if all(colors[s] == color for s in new_sums):
                if extend(v, sums + [v] + new_sums, total + v, placed + 1):
                    return True
        return False

    return extend(0, [], 0, 0)


@dataclass(frozen=True)
class ThresholdBranch:
    """Longest witness-free coloring inside one prefix branch."""
    longest: int
    coloring: Tuple[int, ...]
    nodes: int
    exhausted: bool


class _Budget(Exception):
    pass


def threshold_branch(task) -> ThresholdBranch:
    k, r, n_max, prefix, budget = task
    colors: List[Optional[int]] = [None] * (n_max + 1)
    state = {"nodes": 0, "best": 0, "coloring": ()}

    def tick():
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            raise _Budget()

    def record(m: int):
        if m > state["best"]:
            state["best"] = m
            state["coloring"] = tuple(colors[1:m + 1])

    def dfs(m: int) -> bool:
        """Returns True once a witness-free coloring of all of [1, n_max] exists."""
        if m > n_max:
            return True
        for c in range(r):
            tick()
            colors[m] = c
            if not completes_witness(colors, m, k):
                record(m)
                if dfs(m + 1):
                    return True
        colors[m] = None
        return False

    try:
        for m, c in enumerate((0,) + prefix, start=1):
            tick()
            colors[m] = c
            if completes_witness(colors, m, k):
                return ThresholdBranch(state["best"], state["coloring"], state["nodes"], False)
            record(m)
        dfs(len(prefix) + 2)
    except _Budget:
        return ThresholdBranch(state["best"], state["coloring"], state["nodes"], True)
    return ThresholdBranch(state["best"], state["coloring"], state["nodes"], False)


@dataclass(frozen=True)
class ThresholdOutcome:
    """
    `value` is the threshold, or None when unresolved: either a branch ran
    out of budget or a witness-free coloring of all of [1, n_max] exists.
    `extremal` is the first longest witness-free coloring found.
    """
    k: int
    r: int
    n_max: int
    value: Optional[int]
    extremal: Tuple[int, ...]
    nodes_explored: int

    @property
    def resolved(self) -> bool:
        return self.value is not None

    def result_json(self):
        if self.value is None:
            return {"unresolved": self.n_max}
        return {"threshold": self.value, "extremal": list(self.extremal)}


def prefix_tasks(k: int, r: int, n_max: int, budget: Optional[int]) -> list:
    depth = max(0, min(PREFIX_DEPTH, n_max - 1))
    return [(k, r, n_max, prefix, budget) for prefix in product(range(r), repeat=depth)]


def fs_threshold(k: int, r: int, n_max: int, budget: Optional[int] = None, mapper=None) -> ThresholdOutcome:
    """
    The least N <= n_max forcing a monochromatic k-term FS witness in every
    r-coloring of [1, N].

    Args:
        k: Witness length.
        r: Number of colors.
        n_max: Search bound.
        budget: Node limit per branch.
        mapper: Optional map-like callable to run branches on workers.

    Returns:
        The ThresholdOutcome.
    """
    if k < 1 or r < 1 or n_max < 1:
        raise OutOfRange("k, r and n_max must be positive")
    tasks = prefix_tasks(k, r, n_max, budget)
    results = list((mapper or map)(threshold_branch, tasks))
    nodes = sum(res.nodes for res in results)
    longest, extremal = 0, ()
    for res in results:
        if res.longest > longest:
            longest, extremal = res.longest, res.coloring
    unresolved = any(res.exhausted for res in results) or longest >= n_max
    value = None if unresolved else longest + 1
    logger.debug("threshold k=%d r=%d n_max=%d: longest witness-free coloring %d, %d nodes",
                 k, r, n_max, longest, nodes)
    return ThresholdOutcome(k, r, n_max, value, extremal, nodes)
