"""
Finite semigroups and principal ultrafilters.

This module gives the set-level calculus of translations a computable model:
- `FiniteSemigroup` holds a validated (associative) operation table.
- `PrincipalPoint` stands for the principal ultrafilter at a point; a set
  belongs to it iff it contains the point.
- Translations s^-1 A, the sets A^-q, the five identities about them, the
  idempotent search and the Galvin fixpoint check are evaluated by
  enumeration over the carrier.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional

import numpy as np

from fuforge.errors import AlgebraFault, AssociativityError, NotIdempotent, OutOfRange

logger = logging.getLogger(__name__)

Subset = FrozenSet[int]


def associative_mask(tables: np.ndarray) -> np.ndarray:
    """
    Vectorised associativity test.

    Args:
        tables: An integer array of shape (K, n, n) of operation tables.

    Returns:
        A boolean array of length K, True where the table is associative.
    """
    k, n, _ = tables.shape
    kk = np.arange(k)[:, None, None, None]
    a = np.arange(n)[None, :, None, None]
    b = np.arange(n)[None, None, :, None]
    c = np.arange(n)[None, None, None, :]
    left = tables[kk, tables[kk, a, b], c]
    right = tables[kk, a, tables[kk, b, c]]
    return (left == right).all(axis=(1, 2, 3))


class FiniteSemigroup:
    """
    A finite semigroup on {0..n-1} given by its operation table.

    Associativity and the range of every entry are checked at construction;
    instances are immutable afterwards.
    """

    def __init__(self, table, name: Optional[str] = None):
        """
        Args:
            table: A row-major n x n integer matrix; table[a][b] is a.b.
            name: An optional label used in reports.

        Raises:
            AssociativityError: if the table is ragged, out of range or not associative.
        """
        try:
            arr = np.array(table, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise AssociativityError(f"not an integer matrix: {e}") from e
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise AssociativityError("operation table must be a nonempty square matrix")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise AssociativityError(f"table entries must lie in [0, {n})")
        if not associative_mask(arr[None])[0]:
            raise AssociativityError("operation table is not associative")
        arr.setflags(write=False)
        self._table = arr
        self.name = name

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def carrier(self) -> Subset:
        return frozenset(range(self.order))

    def op(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def check_element(self, *elements: int) -> None:
        for e in elements:
            if not 0 <= e < self.order:
                raise OutOfRange(f"element {e} not in carrier of order {self.order}")

    def check_subset(self, subset: Iterable[int]) -> Subset:
        subset = frozenset(subset)
        self.check_element(*subset)
        return subset

    def to_json(self) -> List[List[int]]:
        return self._table.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSemigroup) and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash(self._table.tobytes())

    def __repr__(self) -> str:
        label = self.name or "S"
        return f"FiniteSemigroup({label}, order={self.order})"


@dataclass(frozen=True)
class PrincipalPoint:
    """The principal ultrafilter at `point`: A belongs to it iff point is in A."""
    point: int

    def contains(self, subset: Iterable[int]) -> bool:
        return self.point in frozenset(subset)

    def times(self, semigroup: FiniteSemigroup, other: "PrincipalPoint") -> "PrincipalPoint":
        """Product p.q of principal ultrafilters, the principal one at p.q."""
        semigroup.check_element(self.point, other.point)
        return PrincipalPoint(semigroup.op(self.point, other.point))


# --- Named semigroups ---

def cyclic_group(n: int) -> FiniteSemigroup:
    """Z_n under addition."""
    return FiniteSemigroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def left_zero(n: int) -> FiniteSemigroup:
    """The left-zero semigroup a.b = a."""
    return FiniteSemigroup([[a] * n for a in range(n)], name=f"LZ{n}")


def fu_with_zero(n: int) -> FiniteSemigroup:
    """
    Nonempty subsets of {0..n-1} under disjoint union, made total by a zero.

    Element i < 2^n - 1 is the set with bitmask i + 1; element 2^n - 1 is the
    adjoined zero that absorbs every undefined product.
    """
    size = 1 << n
    zero = size - 1
    table = np.full((size, size), zero, dtype=np.int64)
    for i in range(zero):
        for j in range(zero):
            s, t = i + 1, j + 1
            if s & t == 0:
                table[i, j] = (s | t) - 1
    return FiniteSemigroup(table, name=f"F{n}+0")


# --- Enumeration ---

def _all_tables(order: int) -> np.ndarray:
    cells = order * order
    grid = np.array(list(itertools.product(range(order), repeat=cells)), dtype=np.int64)
    return grid.reshape(-1, order, order)


def _backtrack_tables(order: int) -> List[np.ndarray]:
    # plain lists: this loop is dominated by scalar lookups
    table = [[-1] * order for _ in range(order)]
    cells = [(a, b) for a in range(order) for b in range(order)]
    found: List[np.ndarray] = []
    rng = range(order)

    def consistent() -> bool:
        for a in rng:
            row_a = table[a]
            for b in rng:
                ab = row_a[b]
                if ab < 0:
                    continue
                row_b, row_ab = table[b], table[ab]
                for c in rng:
                    bc = row_b[c]
                    if bc < 0:
                        continue
                    left, right = row_ab[c], row_a[bc]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def fill(pos: int) -> None:
        if pos == len(cells):
            found.append(np.array(table, dtype=np.int64))
            return
        a, b = cells[pos]
        for v in rng:
            table[a][b] = v
            if consistent():
                fill(pos + 1)
        table[a][b] = -1

    fill(0)
    return found


def enumerate_semigroups(order: int) -> List[FiniteSemigroup]:
    """
    All associative operation tables of the given order (labelled, not up to
    isomorphism).

    Orders 1-3 filter every table at once; order 4 backtracks cell by cell and
    prunes on partial associativity. There are 1, 8, 113 and 3492 of them.
    """
    if order < 1:
        raise OutOfRange("order must be positive")
    if order <= 3:
        tables = _all_tables(order)
        tables = tables[associative_mask(tables)]
    elif order == 4:
        tables = _backtrack_tables(order)
    else:
        raise OutOfRange("semigroup enumeration is capped at order 4")
    logger.debug("enumerated %d semigroups of order %d", len(tables), order)
    return [FiniteSemigroup(t, name=f"S{order}#{i}") for i, t in enumerate(tables)]


def sample_semigroups(order: int, count: int, seed: int) -> List[FiniteSemigroup]:
    """A seeded sample (without replacement) from `enumerate_semigroups(order)`."""
    pool = enumerate_semigroups(order)
    if count >= len(pool):
        return pool
    rng = np.random.default_rng(seed)
    picks = sorted(rng.choice(len(pool), size=count, replace=False).tolist())
    return [pool[i] for i in picks]


# --- Translations and A^-q ---

def translate_preimage(S: FiniteSemigroup, s: int, A: Iterable[int]) -> Subset:
    """s^-1 A = { t | s.t in A }."""
    A = S.check_subset(A)
    S.check_element(s)
    row = S.table[s]
    return frozenset(t for t in range(S.order) if int(row[t]) in A)


def a_minus_q(S: FiniteSemigroup, A: Iterable[int], q: PrincipalPoint) -> Subset:
    """A^-q = { s | s^-1 A in q } = { s | s.q in A } for principal q."""
    A = S.check_subset(A)
    S.check_element(q.point)
    column = S.table[:, q.point]
    return frozenset(s for s in range(S.order) if int(column[s]) in A)


def star(S: FiniteSemigroup, A: Iterable[int], q: PrincipalPoint) -> Subset:
    """A* = A^-q & A, with respect to q."""
    A = S.check_subset(A)
    return a_minus_q(S, A, q) & A


TRICK_NAMES = (
    "double_translate",       # t^-1 s^-1 A = (st)^-1 A
    "translate_commutes",     # s^-1 A^-q = (s^-1 A)^-q
    "intersection",           # (A & B)^-q = A^-q & B^-q
    "star_translate",         # (s^-1 A)* = s^-1 A*
    "iterated_minus",         # (A^-q)^-p = A^-(p.q)
)


@dataclass(frozen=True)
class TricksReport:
    """Per-identity verdicts with both evaluated sides."""
    results: Dict[str, bool]
    sides: Dict[str, tuple]

    @property
    def all_hold(self) -> bool:
        return all(self.results.values())

    def failures(self) -> List[str]:
        return [name for name in TRICK_NAMES if not self.results[name]]


def verify_tricks(S: FiniteSemigroup, A: Iterable[int], s: int, t: int,
                  p: PrincipalPoint, q: PrincipalPoint,
                  B: Optional[Iterable[int]] = None) -> TricksReport:
    """
    Evaluates both sides of the five identities about A^-q.

    Args:
        S: The semigroup.
        A: The subset the identities are about.
        s, t: Carrier elements.
        p, q: Principal points; p.q is the principal point at p.q.
        B: The second set of the intersection identity (default: complement of A).

    Returns:
        A TricksReport.
    """
    A = S.check_subset(A)
    B = S.check_subset(S.carrier - A if B is None else B)
    S.check_element(s, t, p.point, q.point)
    pq = p.times(S, q)

    sides = {
        "double_translate": (
            translate_preimage(S, t, translate_preimage(S, s, A)),
            translate_preimage(S, S.op(s, t), A)),
        "translate_commutes": (
            translate_preimage(S, s, a_minus_q(S, A, q)),
            a_minus_q(S, translate_preimage(S, s, A), q)),
        "intersection": (
            a_minus_q(S, A & B, q),
            a_minus_q(S, A, q) & a_minus_q(S, B, q)),
        "star_translate": (
            star(S, translate_preimage(S, s, A), q),
            translate_preimage(S, s, star(S, A, q))),
        "iterated_minus": (
            a_minus_q(S, a_minus_q(S, A, q), p),
            a_minus_q(S, A, pq)),
    }
    results = {name: lhs == rhs for name, (lhs, rhs) in sides.items()}
    return TricksReport(results=results, sides=sides)


# --- Idempotents ---

def find_idempotent(S: FiniteSemigroup, start: int = 0) -> int:
    """
    Returns an idempotent of S found in the cyclic subsemigroup of `start`.

    The powers start, start^2, ... eventually cycle; the cycle is a group
    whose identity is the unique idempotent power.

    Raises:
        AlgebraFault: if no idempotent turns up (only possible if the table
            was not associative after all).
    """
    S.check_element(start)
    seen: Dict[int, int] = {}
    powers: List[int] = []
    current = start
    while current not in seen:
        seen[current] = len(powers)
        powers.append(current)
        current = S.op(current, start)
    for e in powers[seen[current]:]:
        if S.op(e, e) == e:
            return e
    raise AlgebraFault(f"no idempotent power of {start} in {S!r}")


def idempotents(S: FiniteSemigroup) -> List[int]:
    diag = np.diagonal(S.table)
    return [int(e) for e in np.flatnonzero(diag == np.arange(S.order))]


@dataclass(frozen=True)
class GalvinReport:
    a_star: Subset
    member_implies_star: bool
    star_fixpoint: bool

    @property
    def passed(self) -> bool:
        return self.member_implies_star and self.star_fixpoint


def galvin_star_check(S: FiniteSemigroup, A: Iterable[int], p: PrincipalPoint) -> GalvinReport:
    """
    Checks both conclusions of the fixpoint lemma for an idempotent principal p:
    A in p implies A* in p, and (A*)* = A*.

    Raises:
        NotIdempotent: if p.p != p.
    """
    A = S.check_subset(A)
    S.check_element(p.point)
    if S.op(p.point, p.point) != p.point:
        raise NotIdempotent(f"point {p.point} is not idempotent")
    a_star = star(S, A, p)
    member_implies_star = (not p.contains(A)) or p.contains(a_star)
    star_fixpoint = star(S, a_star, p) == a_star
    return GalvinReport(a_star=a_star, member_implies_star=member_implies_star,
                        star_fixpoint=star_fixpoint)
