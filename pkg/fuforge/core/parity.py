"""
Adjacency parity on FU-sets.

For a family s = (s_0, ..., s_(n-1)) of pairwise disjoint nonempty sets and a
union t of some of its members, pi(t) is the set of indices i such that both
s_i and s_(i+1) lie inside t. This module provides:
- pi and its additivity across a separating index,
- emerged indices (adjacent pairs split between two disjoint unions),
- the four-way classification of the gaps of x by a filler y,
- the x / y / z construction that forces a parity clash on homogeneous families.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from fuforge.core.finset import DEFAULT_UNIVERSE, FinSet
from fuforge.errors import (AlgebraFault, BadCover, InvalidFamily, NotInFU, OutOfRange,
                            TooShort, Undefined)

logger = logging.getLogger(__name__)

GAP_KINDS = ("begin-only", "end-only", "both", "neither")


class FUFamily:
    """
    A finite family of pairwise disjoint nonempty sets.

    Args:
        members: The sets s_0..s_(n-1).

    Raises:
        InvalidFamily: for an empty member or two overlapping members.
    """

    def __init__(self, members: Sequence[FinSet]):
        self.members: Tuple[FinSet, ...] = tuple(members)
        seen = FinSet.empty()
        for i, member in enumerate(self.members):
            if not member:
                raise InvalidFamily(f"member {i} is empty")
            if not seen.isdisjoint(member):
                raise InvalidFamily(f"member {i} = {member} overlaps an earlier member")
            seen = seen | member
        self.ground = seen

    @classmethod
    def from_json(cls, text: str) -> "FUFamily":
        """Reads a JSON array of integer arrays, e.g. "[[0,1],[3]]"."""
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidFamily(f"family is not valid JSON: {e}") from e
        if not isinstance(raw, list) or not all(isinstance(m, list) for m in raw):
            raise InvalidFamily("family must be a JSON array of integer arrays")
        if not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for m in raw for e in m):
            raise InvalidFamily("family members must hold non-negative integers")
        bound = max([DEFAULT_UNIVERSE] + [e + 1 for m in raw for e in m])
        return cls([FinSet.of(m, bound) for m in raw])

    @classmethod
    def singletons(cls, n: int) -> "FUFamily":
        return cls([FinSet.of([i]) for i in range(n)])

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> FinSet:
        return self.members[i]

    @property
    def ordered(self) -> bool:
        """True iff max(s_i) < min(s_(i+1)) for all i."""
        return all(a.max < b.min for a, b in zip(self.members, self.members[1:]))

    def s_supp(self, t: FinSet) -> FinSet:
        """
        The indices of the members that make up t.

        Raises:
            NotInFU: if t is not a union of members (the empty union is allowed).
        """
        indices = [i for i, m in enumerate(self.members) if m.issubset(t)]
        if self.union_of(indices) != t:
            raise NotInFU(f"{t} is not a union of family members")
        return FinSet.of(indices, max(DEFAULT_UNIVERSE, len(self.members)))

    def union_of(self, indices) -> FinSet:
        out = FinSet.empty(self.ground.universe)
        for i in indices:
            out = out | self.members[i]
        return out

    def to_json(self) -> list:
        return [list(m) for m in self.members]


def _adjacent(indices: FinSet) -> FinSet:
    return FinSet(indices.mask & (indices.mask >> 1), indices.universe)


def pi(family: FUFamily, t: FinSet) -> FinSet:
    """{ i | s_i and s_(i+1) are both inside t }."""
    return _adjacent(family.s_supp(t))


def _require_disjoint(x: FinSet, t: FinSet) -> None:
    if not x.isdisjoint(t):
        raise Undefined(f"{x} and {t} are not disjoint")


def parity_additive(family: FUFamily, x: FinSet, t: FinSet) -> bool:
    """
    True iff some index strictly separates the s-supports of x and t.

    When it does, pi(x | t) must be the disjoint union of pi(x) and pi(t);
    a failure of that raises AlgebraFault.
    """
    _require_disjoint(x, t)
    sx, st = family.s_supp(x), family.s_supp(t)
    if not sx or not st:
        return False
    separated = st.min - sx.max >= 2 or sx.min - st.max >= 2
    if separated:
        whole, px, pt = pi(family, x | t), pi(family, x), pi(family, t)
        if whole != px | pt or not px.isdisjoint(pt):
            raise AlgebraFault(f"pi is not additive on {x} and {t}")
    return separated


def emerged_indices(family: FUFamily, x: FinSet, y: FinSet) -> FinSet:
    """{ i | s_i in x and s_(i+1) in y, or the other way round }."""
    _require_disjoint(x, y)
    sx, sy = family.s_supp(x).mask, family.s_supp(y).mask
    mask = (sx & (sy >> 1)) | (sy & (sx >> 1))
    return FinSet(mask, max(DEFAULT_UNIVERSE, len(family)))


@dataclass(frozen=True)
class Gap:
    """A maximal run [start, end] of s-indices missing from x, inside x's span."""
    start: int
    end: int
    kind: str

    def to_json(self) -> dict:
        return {"gap": [self.start, self.end], "type": self.kind}


def classify_gaps(family: FUFamily, x: FinSet, y: FinSet) -> List[Gap]:
    """
    Tags each gap of x by whether y fills its first and/or last index.

    Gaps are the maximal runs strictly between s-min(x) and s-max(x).
    """
    _require_disjoint(x, y)
    sx, sy = family.s_supp(x), family.s_supp(y)
    gaps: List[Gap] = []
    if not sx:
        return gaps
    start: Optional[int] = None
    for i in range(sx.min, sx.max + 1):
        if i not in sx and start is None:
            start = i
        elif i in sx and start is not None:
            end = i - 1
            first, last = start in sy, end in sy
            kind = ("both" if first and last else "begin-only" if first
                    else "end-only" if last else "neither")
            gaps.append(Gap(start, end, kind))
            start = None
    return gaps


# --- The x / y / z construction ---

def cover_map_for(family: FUFamily, t: Sequence[FinSet], b: int) -> Dict[int, int]:
    """
    Maps every i >= b to the index of the t-member containing s_i.

    Raises:
        BadCover: if some s_i with i >= b lies in no t-member.
    """
    cover = {}
    for i in range(b, len(family)):
        j = next((j for j, member in enumerate(t) if family[i].issubset(member)), None)
        if j is None:
            raise BadCover(f"s_{i} = {family[i]} is not inside any member of t")
        cover[i] = j
    return cover


@dataclass(frozen=True)
class XYZReport:
    """The outcome of one x / y / z construction."""
    x: FinSet
    b1: int
    y: FinSet
    z: FinSet
    pi_xy: FinSet
    pi_xz: FinSet
    emerged_xy: int
    emerged_xz: int
    homogeneous: bool

    @property
    def clash(self) -> bool:
        return not (len(self.pi_xy) % 2 == 0 and len(self.pi_xz) % 2 == 0)

    @property
    def verdict(self) -> str:
        return "parity clash" if self.clash else "consistent"

    @property
    def z_empty(self) -> bool:
        return not self.z

    def to_json(self) -> dict:
        return {
            "x": list(self.x), "b1": self.b1, "y": list(self.y), "z": list(self.z),
            "pi_xy": list(self.pi_xy), "pi_xz": list(self.pi_xz),
            "emerged_xy": self.emerged_xy, "emerged_xz": self.emerged_xz,
            "verdict": self.verdict, "homogeneous": self.homogeneous, "z_empty": self.z_empty,
        }


def construct_xyz(family: FUFamily, t: Sequence[FinSet], b: int,
                  cover_map: Optional[Dict[int, int]] = None) -> XYZReport:
    """
    Builds x, b1, y and z from a condensation t of s and a starting index b.

    x is the union of the t-members whose s-support meets [0, b], b1 its
    s-max, y the t-member containing s_(b1+1) and z the union of the members
    covering the indices in [b, b1) that are not already in x or y.

    Args:
        family: The family s.
        t: Pairwise disjoint unions of s-members.
        b: The starting index.
        cover_map: i -> j with s_i inside t_j for all i >= b; computed if omitted.

    Returns:
        The XYZReport.

    Raises:
        BadCover: if cover_map does not witness the covering.
        TooShort: if b1 + 1 runs past the end of the family.
    """
    n = len(family)
    if not 0 <= b < n:
        raise OutOfRange(f"b = {b} outside [0, {n})")
    t = FUFamily(t).members
    supports = [family.s_supp(member) for member in t]
    if cover_map is None:
        cover_map = cover_map_for(family, t, b)
    for i in range(b, n):
        j = cover_map.get(i)
        if j is None or not 0 <= j < len(t) or i not in supports[j]:
            raise BadCover(f"cover map does not place s_{i} inside a member of t")

    low = FinSet.of(range(b + 1))
    x = FinSet.empty()
    for member, support in zip(t, supports):
        if not support.isdisjoint(low):
            x = x | member
    b1 = family.s_supp(x).max
    if b1 + 1 >= n:
        raise TooShort(f"b1 + 1 = {b1 + 1} is past the last index {n - 1}")
    y = t[cover_map[b1 + 1]]
    z = FinSet.empty()
    for i in range(b, b1):
        z = z | t[cover_map[i]]
    z = z - (x | y)

    pi_x, pi_y, pi_z = pi(family, x), pi(family, y), pi(family, z)
    homogeneous = all(len(p) % 2 == 0 for p in (pi_x, pi_y, pi_z))
    below = FinSet.of(range(b1))
    report = XYZReport(
        x=x, b1=b1, y=y, z=z,
        pi_xy=pi(family, x | y), pi_xz=pi(family, x | z),
        emerged_xy=len(emerged_indices(family, x, y) & below),
        emerged_xz=len(emerged_indices(family, x, z) & below),
        homogeneous=homogeneous,
    )
    logger.debug("xyz b=%d: x=%s b1=%d y=%s z=%s -> %s", b, x, b1, y, z, report.verdict)
    return report
