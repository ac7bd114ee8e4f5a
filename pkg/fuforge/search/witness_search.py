"""
Exhaustive search for monochromatic generating families.

- fs_witness: x_0 < ... < x_(k-1) in [1, N] with all subset sums colored alike;
- fu_witness: pairwise disjoint t_0..t_(k-1) with all nonempty unions colored alike;
- pair_witness: an ordered family whose qualifying (u, v) pairs share a color.

Each search is a depth-first walk in lexicographic order, so the first witness
found is the lexicographically least one. The walk is split into branches by
its first generator; branches are independent tasks that a caller may map over
a worker pool. Every witness is re-checked by `verify_witness` before it is
returned.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from fuforge.core.finset import FinSet
from fuforge.errors import OutOfRange, WitnessFault
from fuforge.search.coloring import Coloring

logger = logging.getLogger(__name__)

Mapper = Callable[[Callable, Iterable], Iterable]


@dataclass(frozen=True)
class Witness:
    """A color and the generators whose sums (or unions) all carry it."""
    color: int
    generators: Tuple

    def to_json(self) -> dict:
        gens = [list(g) if isinstance(g, FinSet) else int(g) for g in self.generators]
        return {"color": self.color, "generators": gens}


@dataclass(frozen=True)
class BranchResult:
    """Outcome of one branch: the first witness in it, nodes visited, budget state."""
    generators: Optional[Tuple]
    nodes: int
    exhausted: bool


@dataclass(frozen=True)
class SearchOutcome:
    """
    `status` is "witness", "none" or "unresolved" (a branch ran out of budget
    before any witness was found in an earlier branch).
    """
    status: str
    witness: Optional[Witness]
    nodes_explored: int

    @property
    def resolved(self) -> bool:
        return self.status != "unresolved"

    def result_json(self):
        if self.status == "witness":
            return {"witness": self.witness.to_json()}
        return self.status


class _Budget(Exception):
    pass


class _Counter:
    def __init__(self, budget: Optional[int]):
        self.nodes = 0
        self.budget = budget

    def tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Budget()


def _run_branch(walk, counter: _Counter) -> BranchResult:
    try:
        found = walk()
    except _Budget:
        return BranchResult(None, counter.nodes, True)
    return BranchResult(found, counter.nodes, False)


def _merge(results: Sequence[BranchResult], coloring: Coloring, kind: str) -> SearchOutcome:
    """First branch (in prefix order) that resolves decides; nodes are summed up to it."""
    nodes = 0
    for result in results:
        nodes += result.nodes
        if result.exhausted:
            return SearchOutcome("unresolved", None, nodes)
        if result.generators is not None:
            witness = Witness(coloring.color(_first_element(kind, result.generators)), result.generators)
            if not verify_witness(coloring, witness):
                raise WitnessFault(f"witness {witness.to_json()} failed re-verification")
            return SearchOutcome("witness", witness, nodes)
    return SearchOutcome("none", None, nodes)


def _first_element(kind: str, generators: Tuple):
    if kind == "pairs":
        return generators[0], generators[1]
    return generators[0]


def _drive(branch_fn, tasks: List, coloring: Coloring, kind: str, mapper: Optional[Mapper]) -> SearchOutcome:
    if mapper is None:
        results = []
        for task in tasks:
            result = branch_fn(task)
            results.append(result)
            if result.exhausted or result.generators is not None:
                break
    else:
        results = list(mapper(branch_fn, tasks))
    outcome = _merge(results, coloring, kind)
    logger.debug("%s search over %s: %s after %d nodes", kind, coloring.domain.describe(),
                 outcome.status, outcome.nodes_explored)
    return outcome


# --- FS witnesses on [1, N] ---

def fs_branch(task) -> BranchResult:
    """Searches the witnesses starting with x_0 = task's first term."""
    colors, N, k, x0, budget = task
    counter = _Counter(budget)
    color = colors[x0]

    def extend(chosen: List[int], sums: List[int], total: int):
        if len(chosen) == k:
            return tuple(chosen)
        remaining = k - len(chosen)
        top = (N - total - remaining * (remaining - 1) // 2) // remaining
        for v in range(chosen[-1] + 1, top + 1):
            counter.tick()
            new_sums = [v] + [s + v for s in sums]
            if all(colors[s] == color for s in new_sums):
                found = extend(chosen + [v], sums + new_sums, total + v)
                if found:
                    return found
        return None

    def walk():
        counter.tick()
        return extend([x0], [x0], x0)

    return _run_branch(walk, counter)


def fs_witness(c: Coloring, k: int, budget: Optional[int] = None,
               mapper: Optional[Mapper] = None) -> SearchOutcome:
    """
    Lexicographically least x_0 < ... < x_(k-1) with all 2^k - 1 subset sums
    at most N and of one color.

    Args:
        c: A coloring of [1, N].
        k: Number of generators.
        budget: Node limit per branch (None for unlimited).
        mapper: A map-like callable for running branches (e.g. a worker pool);
            branches run lazily in order when omitted.
    """
    if k < 1:
        raise OutOfRange("k must be at least 1")
    if c.domain.kind != "interval":
        raise OutOfRange("fs_witness needs an interval coloring")
    N = c.domain.size
    colors = c.table.tolist()
    # the smallest possible total with x_0 = v is k*v + k(k-1)/2
    tasks = [(colors, N, k, x0, budget) for x0 in range(1, N + 1)
             if k * x0 + k * (k - 1) // 2 <= N]
    return _drive(fs_branch, tasks, c, "interval", mapper)


# --- FU witnesses on subsets of {0..n-1} ---

def _lex_masks(n: int) -> List[int]:
    """Nonempty masks sorted by their sorted element tuples."""
    return sorted(range(1, 1 << n), key=lambda m: FinSet(m, max(64, n)).sort_key())


def fu_branch(task) -> BranchResult:
    colors, n, k, first, order, budget = task
    counter = _Counter(budget)
    color = colors[first]

    def extend(chosen: List[int], unions: List[int], used: int):
        if len(chosen) == k:
            return tuple(chosen)
        low = chosen[-1] & -chosen[-1]
        for t in order:
            if t & used or (t & -t) <= low:
                continue
            counter.tick()
            new_unions = [t] + [u | t for u in unions]
            if all(colors[u] == color for u in new_unions):
                found = extend(chosen + [t], unions + new_unions, used | t)
                if found:
                    return found
        return None

    def walk():
        counter.tick()
        found = extend([first], [first], first)
        return tuple(FinSet(m, max(64, n)) for m in found) if found else None

    return _run_branch(walk, counter)


def fu_witness(c: Coloring, k: int, budget: Optional[int] = None,
               mapper: Optional[Mapper] = None) -> SearchOutcome:
    """
    Lexicographically least family of k pairwise disjoint nonempty sets,
    listed by increasing minimum, whose nonempty unions share one color.
    """
    if k < 1:
        raise OutOfRange("k must be at least 1")
    if c.domain.kind != "subsets":
        raise OutOfRange("fu_witness needs a subset coloring")
    n = c.domain.size
    colors = c.table.tolist()
    order = _lex_masks(n)
    tasks = [(colors, n, k, first, order, budget) for first in order]
    return _drive(fu_branch, tasks, c, "subsets", mapper)


# --- Pair witnesses on ordered pairs ---

def _pairs_added(unions: List[Tuple[int, int]], new_index: int, new_mask: int):
    """
    Pairs (u, v) that appear once member `new_index` joins an ordered family:
    v contains the new member and u lies entirely below v.

    `unions` holds (index set, union mask) for the unions built so far.
    """
    tops = [(idx | 1 << new_index, mask | new_mask) for idx, mask in unions] + [(1 << new_index, new_mask)]
    for v_idx, v_mask in tops:
        v_low = v_idx & -v_idx
        for u_idx, u_mask in unions:
            if u_idx < v_low:
                yield u_mask, v_mask


def pair_branch(task) -> BranchResult:
    colors, n, k, first, order, highs, lows, budget = task
    counter = _Counter(budget)

    def extend(chosen: List[int], unions: List[Tuple[int, int]], color: Optional[int]):
        if len(chosen) == k:
            return tuple(chosen)
        top = highs[chosen[-1]]
        for t in order:
            if lows[t] <= top:
                continue
            counter.tick()
            new_color = color
            ok = True
            for u, v in _pairs_added(unions, len(chosen), t):
                cell = colors[u][v]
                if new_color is None:
                    new_color = cell
                if cell != new_color:
                    ok = False
                    break
            if ok:
                grown = unions + [(idx | 1 << len(chosen), mask | t) for idx, mask in unions]
                grown.append((1 << len(chosen), t))
                found = extend(chosen + [t], grown, new_color)
                if found:
                    return found
        return None

    def walk():
        counter.tick()
        found = extend([first], [(1, first)], None)
        return tuple(FinSet(m, max(64, n)) for m in found) if found else None

    return _run_branch(walk, counter)


def pair_witness(c: Coloring, k: int, budget: Optional[int] = None,
                 mapper: Optional[Mapper] = None) -> SearchOutcome:
    """
    Lexicographically least ordered family t_0 < ... < t_(k-1) such that every
    pair (u, v) of its unions with max(u) < min(v) has the same color.
    """
    if k < 2:
        raise OutOfRange("pair witnesses need k >= 2")
    if c.domain.kind != "pairs":
        raise OutOfRange("pair_witness needs a pair coloring")
    n = c.domain.size
    colors = c.table.tolist()
    order = _lex_masks(n)
    highs = [m.bit_length() - 1 for m in range(1 << n)]
    lows = [(m & -m).bit_length() - 1 for m in range(1 << n)]
    tasks = [(colors, n, k, first, order, highs, lows, budget) for first in order]
    return _drive(pair_branch, tasks, c, "pairs", mapper)


# --- Independent re-check ---

def _nonempty_index_sets(k: int):
    for size in range(1, k + 1):
        yield from combinations(range(k), size)


def verify_witness(c: Coloring, witness: Witness) -> bool:
    """
    Recomputes every sum, union or qualifying pair of the witness from scratch
    and compares its color with the witness color.
    """
    gens = witness.generators
    k = len(gens)
    kind = c.domain.kind
    try:
        if kind == "interval":
            if any(b <= a for a, b in zip(gens, gens[1:])) or gens[0] < 1:
                return False
            sums = {sum(gens[i] for i in idx) for idx in _nonempty_index_sets(k)}
            return all(s <= c.domain.size and c.color(s) == witness.color for s in sums)

        union = FinSet.empty()
        for g in gens:
            if not g or not union.isdisjoint(g):
                return False
            union = union | g
        unions = {idx: FinSet.of(e for i in idx for e in gens[i]) for idx in _nonempty_index_sets(k)}
        if kind == "subsets":
            return all(c.color(u) == witness.color for u in unions.values())

        if any(a.max >= b.min for a, b in zip(gens, gens[1:])):
            return False
        for u in unions.values():
            for v in unions.values():
                if u.max < v.min and c.color((u, v)) != witness.color:
                    return False
        return True
    except Exception as e:  # a malformed witness is simply not a witness
        logger.debug("witness re-check raised %s", e)
        return False
