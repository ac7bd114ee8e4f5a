"""
Finite sets of non-negative integers and the partial semigroup of finite unions.

Sets are stored as integer bitmasks below a universe bound, so equality and
hashing are structural and cheap. The partial operation only joins nonempty
disjoint sets; everything else about the empty set (bookkeeping, supports)
works as usual.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, Sequence, Tuple

from fuforge.errors import OutOfRange, Undefined

DEFAULT_UNIVERSE = 64


def make_bitset(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


def iter_indexes(value: int) -> Iterator[int]:
    index = 0
    while value:
        if value & 1:
            yield index
        value >>= 1
        index += 1


@dataclass(frozen=True, order=False)
class FinSet:
    """
    A finite set of non-negative integers below `universe`.

    Two sets are equal iff they have the same elements; the universe bound
    only constrains construction.
    """
    mask: int = 0
    universe: int = field(default=DEFAULT_UNIVERSE, compare=False)

    def __post_init__(self):
        if self.mask < 0:
            raise OutOfRange("a set mask cannot be negative")
        if self.mask >> self.universe:
            raise OutOfRange(f"elements must be below the universe bound {self.universe}")

    @classmethod
    def of(cls, elements: Iterable[int], universe: int = DEFAULT_UNIVERSE) -> "FinSet":
        """
        Builds a set from its elements.

        Args:
            elements: Non-negative integers below `universe`.
            universe: The universe bound U.

        Returns:
            The canonical FinSet.
        """
        elements = list(elements)
        for e in elements:
            if not 0 <= e < universe:
                raise OutOfRange(f"element {e} outside [0, {universe})")
        return cls(make_bitset(elements), universe)

    @classmethod
    def empty(cls, universe: int = DEFAULT_UNIVERSE) -> "FinSet":
        return cls(0, universe)

    # --- Queries ---

    def __iter__(self) -> Iterator[int]:
        return iter_indexes(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, item: int) -> bool:
        return item >= 0 and bool(self.mask >> item & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def min(self) -> int:
        if not self.mask:
            raise ValueError("min of the empty set")
        return (self.mask & -self.mask).bit_length() - 1

    @property
    def max(self) -> int:
        if not self.mask:
            raise ValueError("max of the empty set")
        return self.mask.bit_length() - 1

    def elements(self) -> Tuple[int, ...]:
        return tuple(self)

    # --- Plain set algebra (total; the partial operation is below) ---

    def _bound(self, other: "FinSet") -> int:
        return max(self.universe, other.universe)

    def union(self, other: "FinSet") -> "FinSet":
        return FinSet(self.mask | other.mask, self._bound(other))

    def intersection(self, other: "FinSet") -> "FinSet":
        return FinSet(self.mask & other.mask, self._bound(other))

    def difference(self, other: "FinSet") -> "FinSet":
        return FinSet(self.mask & ~other.mask, self._bound(other))

    def issubset(self, other: "FinSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "FinSet") -> bool:
        return self.mask & other.mask == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def sort_key(self) -> Tuple[int, ...]:
        """Key for the lexicographic order on sorted element tuples."""
        return self.elements()

    def __str__(self) -> str:
        return format_finset(self)

    def __repr__(self) -> str:
        return f"FinSet({format_finset(self)})"


# --- The partial semigroup F ---

def _require_nonempty(*sets: FinSet) -> None:
    for s in sets:
        if not s:
            raise Undefined("the empty set is not an element of the partial semigroup")


def disjoint_union(s: FinSet, t: FinSet) -> FinSet:
    """
    The partial operation of F: s . t = s | t, defined iff s and t are disjoint.

    Raises:
        Undefined: if s and t overlap (or one of them is empty).
    """
    _require_nonempty(s, t)
    if not s.isdisjoint(t):
        raise Undefined(f"{s} and {t} are not disjoint")
    return s.union(t)


def is_compatible(s: FinSet, t: FinSet) -> bool:
    """True iff t lies in sigma(s), i.e. s . t is defined."""
    _require_nonempty(s, t)
    return s.isdisjoint(t)


def is_ordered_pair(v: FinSet, w: FinSet) -> bool:
    """True iff max(v) < min(w), i.e. (v, w) lies in F^2_<."""
    _require_nonempty(v, w)
    return v.max < w.min


# --- Text form ---

def format_finset(s: FinSet) -> str:
    return "{" + ",".join(str(e) for e in s) + "}"


def parse_finset(text: str, universe: int = DEFAULT_UNIVERSE) -> FinSet:
    """
    Parses the "{0,2,5}" form; elements must be strictly increasing.

    Raises:
        ValueError: on malformed text.
    """
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"expected {{...}}, got {text!r}")
    body = body[1:-1].strip()
    if not body:
        return FinSet.empty(universe)
    elements = [int(part) for part in body.split(",")]
    if any(b <= a for a, b in zip(elements, elements[1:])):
        raise ValueError(f"elements of {text!r} are not strictly increasing")
    return FinSet.of(elements, universe)


# --- FU-sets ---

def subsets_of(n: int, universe: int = DEFAULT_UNIVERSE) -> Iterator[FinSet]:
    """All nonempty subsets of {0..n-1}, by increasing mask."""
    for mask in range(1, 1 << n):
        yield FinSet(mask, max(universe, n))


def fu_elements(members: Sequence[FinSet]) -> Dict[FinSet, FinSet]:
    """
    Maps every index set v (nonempty) to the union of the members indexed by v.

    Args:
        members: A family of pairwise-disjoint nonempty sets.

    Returns:
        A dict from index sets to unions, in increasing order of index mask.
    """
    out = {}
    n = len(members)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            union = FinSet.empty()
            for i in idx:
                union = union | members[i]
            out[FinSet.of(idx)] = union
    return dict(sorted(out.items(), key=lambda kv: kv[0].mask))
