"""
FS-sets of finite integer sequences.

This module covers the finite-sums side of the theory:
- growth checks (x_n > g * sum of the earlier terms),
- enumeration of FS_k(x) with a sum -> index-set decoding map,
- x-supports, unique sums, condensations and their heredity,
- the natural isomorphism between FS(x) and finite unions of indices.

Subset sums are enumerated with numpy: the sum of the terms selected by bitmask
m sits at position m of one array, built by repeated doubling.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from fuforge.core.finset import DEFAULT_UNIVERSE, FinSet
from fuforge.errors import NonUnique, NotInFS, OutOfRange, TooLarge

logger = logging.getLogger(__name__)

MAX_ENUMERATION_LENGTH = 24
MAX_PAIR_CHECK_LENGTH = 12
GROWTH_FACTORS = (4, 2)


def check_growth(x: Sequence[int], g: int) -> bool:
    """True iff x_n > g * sum_{i<n} x_i for every n."""
    if not x:
        raise ValueError("growth is only defined for nonempty sequences")
    partial = 0
    for term in x:
        if term <= g * partial:
            return False
        partial += term
    return True


def first_growth_violation(x: Sequence[int], g: int) -> Optional[int]:
    """The first n with x_n <= g * sum_{i<n} x_i, or None."""
    partial = 0
    for n, term in enumerate(x):
        if term <= g * partial:
            return n
        partial += term
    return None


@dataclass(frozen=True)
class GrowthSequence:
    """
    A finite sequence of positive integers with its verified growth factor.

    `growth_factor` is the largest of (4, 2) the terms satisfy, or None.
    """
    terms: Tuple[int, ...]
    growth_factor: Optional[int] = None

    def __post_init__(self):
        if not self.terms:
            raise OutOfRange("a sequence needs at least one term")
        if any(int(t) < 1 for t in self.terms):
            raise OutOfRange("all terms must be positive")
        if self.growth_factor is not None and not check_growth(self.terms, self.growth_factor):
            raise OutOfRange(f"recorded growth factor {self.growth_factor} does not hold")

    @classmethod
    def from_terms(cls, terms: Sequence[int]) -> "GrowthSequence":
        terms = tuple(int(t) for t in terms)
        factor = next((g for g in GROWTH_FACTORS if terms and min(terms) >= 1
                       and check_growth(terms, g)), None)
        return cls(terms, factor)

    def __len__(self) -> int:
        return len(self.terms)


SequenceLike = Union[GrowthSequence, Sequence[int]]


def _as_sequence(x: SequenceLike) -> GrowthSequence:
    return x if isinstance(x, GrowthSequence) else GrowthSequence.from_terms(x)


def subset_sums(terms: Sequence[int]) -> np.ndarray:
    """
    Sums of all subsets of `terms`, indexed by bitmask (position 0 is the
    empty sum).
    """
    dtype = np.int64 if sum(terms) < 2 ** 62 else object
    sums = np.zeros(1, dtype=dtype)
    for term in terms:
        sums = np.concatenate([sums, sums + term])
    return sums


class FSCatalog:
    """
    The enumerated FS_k(x): all sums over nonempty index sets inside [k, N).

    `unique` tells whether the decoding map exists, i.e. whether all
    2^(N-k) - 1 sums are distinct. Index sets are reported with the original
    indices of x.
    """

    def __init__(self, source: GrowthSequence, k: int, mask_sums: np.ndarray):
        self.source = source
        self.k = k
        self._mask_sums = mask_sums
        values = mask_sums[1:]
        self._order = np.argsort(values, kind="stable")
        self._sorted = values[self._order]
        self.sums = np.unique(values)
        self.unique = self.sums.size == values.size

    @property
    def length(self) -> int:
        return len(self.source) - self.k

    @property
    def universe(self) -> int:
        return max(DEFAULT_UNIVERSE, len(self.source))

    def __contains__(self, z: int) -> bool:
        pos = int(np.searchsorted(self._sorted, z))
        return pos < len(self._sorted) and int(self._sorted[pos]) == z

    def sum_of(self, mask: int) -> int:
        """The sum over the (local) index mask, bit i standing for x_(k+i)."""
        return int(self._mask_sums[mask])

    def lookup_mask(self, z: int) -> int:
        """Local mask of the first enumerated representation of z."""
        pos = int(np.searchsorted(self._sorted, z))
        if pos >= len(self._sorted) or int(self._sorted[pos]) != z:
            raise NotInFS(f"{z} is not in FS_{self.k}(x)")
        return int(self._order[pos]) + 1

    def to_index_set(self, local_mask: int) -> FinSet:
        return FinSet(local_mask << self.k, self.universe)

    def to_json(self) -> dict:
        """`{sums, decode?}` with decode only present for unique representations."""
        out = {"terms": list(self.source.terms), "k": self.k,
               "sums": [int(v) for v in self.sums]}
        if self.unique:
            out["decode"] = {str(int(self._mask_sums[m])): list(self.to_index_set(m))
                             for m in range(1, len(self._mask_sums))}
        return out


def enumerate_fs(x: SequenceLike, k: int = 0,
                 max_length: int = MAX_ENUMERATION_LENGTH) -> FSCatalog:
    """
    Builds the catalog of FS_k(x).

    Args:
        x: The sequence.
        k: Number of leading terms to drop.
        max_length: Cap on N - k for full enumeration.

    Raises:
        OutOfRange: if k is not below N.
        TooLarge: if N - k exceeds the cap (use greedy decoding instead).
    """
    x = _as_sequence(x)
    if not 0 <= k < len(x):
        raise OutOfRange(f"k={k} must lie in [0, {len(x)})")
    if len(x) - k > max_length:
        raise TooLarge(f"{len(x) - k} terms exceed the enumeration cap of {max_length}")
    catalog = FSCatalog(x, k, subset_sums(x.terms[k:]))
    logger.debug("FS_%d of %d terms: %d sums, unique=%s", k, len(x), catalog.sums.size, catalog.unique)
    return catalog


def _greedy_mask(x: GrowthSequence, k: int, z: int) -> int:
    remaining, mask = z, 0
    for i in range(len(x) - 1, k - 1, -1):
        if x.terms[i] <= remaining:
            remaining -= x.terms[i]
            mask |= 1 << (i - k)
    if remaining or not mask:
        raise NotInFS(f"{z} is not in FS_{k}(x)")
    return mask


def decode_supp(cat: FSCatalog, z: int) -> FinSet:
    """
    The x-support of z: the index set v with sum_{i in v} x_i = z.

    Growth-verified sequences are decoded greedily from the largest term;
    others use the enumeration.

    Raises:
        NonUnique: if x lacks unique representations.
        NotInFS: if z is not a finite sum.
    """
    if not cat.unique:
        raise NonUnique("x does not have unique representations")
    if cat.source.growth_factor is not None:
        return cat.to_index_set(_greedy_mask(cat.source, cat.k, z))
    return cat.to_index_set(cat.lookup_mask(z))


def greedy_decode(x: SequenceLike, z: int) -> FinSet:
    """Greedy x-support for sequences too long to enumerate (needs growth)."""
    x = _as_sequence(x)
    if x.growth_factor is None and not check_growth(x.terms, 1):
        raise NonUnique("greedy decoding needs x_n > sum of the earlier terms")
    return FinSet(_greedy_mask(x, 0, z), max(DEFAULT_UNIVERSE, len(x)))


def x_min(cat: FSCatalog, z: int) -> int:
    return decode_supp(cat, z).min


def x_max(cat: FSCatalog, z: int) -> int:
    return decode_supp(cat, z).max


def unique_sums_holds(x: SequenceLike) -> bool:
    """
    Checks, for all nonempty index sets s, t, that
    sum_s x + sum_t x lies in FS(x) iff s and t are disjoint.

    Raises:
        TooLarge: beyond MAX_PAIR_CHECK_LENGTH terms.
    """
    x = _as_sequence(x)
    if len(x) > MAX_PAIR_CHECK_LENGTH:
        raise TooLarge(f"pairwise check is capped at {MAX_PAIR_CHECK_LENGTH} terms")
    sums = subset_sums(x.terms)[1:]
    masks = np.arange(1, 1 << len(x))
    pair_sums = sums[:, None] + sums[None, :]
    in_fs = np.isin(pair_sums, np.unique(sums))
    disjoint = (masks[:, None] & masks[None, :]) == 0
    return bool(np.array_equal(in_fs, disjoint))


# --- Condensations ---

@dataclass(frozen=True)
class Condensation:
    """
    y as block sums of x. `growth_inherited` is None unless x has a verified
    growth factor and y is increasing.
    """
    terms: Tuple[int, ...]
    blocks: Tuple[FinSet, ...]
    pairwise_disjoint: bool
    increasing: bool
    growth_inherited: Optional[bool]

    def to_json(self) -> dict:
        return {"terms": list(self.terms), "blocks": [list(b) for b in self.blocks],
                "pairwise_disjoint": self.pairwise_disjoint, "increasing": self.increasing,
                "growth_inherited": self.growth_inherited}


@dataclass(frozen=True)
class Refusal:
    """Why y is not a condensation: the first sum of FS(y) missing from FS(x)."""
    reason: str
    violating_sum: int

    def to_json(self) -> dict:
        return {"refusal": self.reason, "violating_sum": self.violating_sum}


def is_condensation(y: Sequence[int], x: SequenceLike,
                    max_length: int = MAX_ENUMERATION_LENGTH) -> Union[Condensation, Refusal]:
    """
    Decides whether FS(y) is contained in FS(x) and, if so, returns the blocks.

    Raises:
        NonUnique: if x lacks unique representations.
    """
    x = _as_sequence(x)
    cat = enumerate_fs(x, 0, max_length)
    if not cat.unique:
        raise NonUnique("x does not have unique representations")
    y = tuple(int(v) for v in y)
    if not y:
        raise OutOfRange("y needs at least one term")
    for j, term in enumerate(y):
        if term < 1 or term not in cat:
            return Refusal(f"y_{j} is not in FS(x)", term)
    for value in np.unique(subset_sums(y)[1:]):
        if int(value) not in cat:
            return Refusal("FS(y) is not contained in FS(x)", int(value))

    blocks = tuple(decode_supp(cat, term) for term in y)
    pairwise_disjoint = all(a.isdisjoint(b) for i, a in enumerate(blocks) for b in blocks[i + 1:])
    increasing = all(a < b for a, b in zip(y, y[1:]))
    inherited = None
    if x.growth_factor is not None and increasing:
        inherited = check_growth(y, x.growth_factor)
    return Condensation(y, blocks, pairwise_disjoint, increasing, inherited)


def enumerate_condensations(n: int, max_blocks: int) -> Iterator[Tuple[FinSet, ...]]:
    """
    All families of at most `max_blocks` pairwise-disjoint nonempty blocks of
    indices in [0, n), each family listed once with blocks ordered by min.
    """
    labels = [0] * n

    def walk(pos: int, used: int) -> Iterator[Tuple[FinSet, ...]]:
        if pos == n:
            if used:
                yield tuple(FinSet.of(i for i in range(n) if labels[i] == b)
                            for b in range(1, used + 1))
            return
        for label in range(0, min(used + 1, max_blocks) + 1):
            labels[pos] = label
            yield from walk(pos + 1, max(used, label))
        labels[pos] = 0

    yield from walk(0, 0)


# --- The natural isomorphism ---

def additive_iso_image(cat: FSCatalog, z: int) -> FinSet:
    """phi(sum_{i in F} x_i) = F."""
    return decode_supp(cat, z)


def binary_image(cat: FSCatalog, z: int) -> int:
    """The natural isomorphism onto FS(2^n): sum_{i in F} x_i maps to sum_{i in F} 2^i."""
    return decode_supp(cat, z).mask


def iso_homomorphism_holds(cat: FSCatalog) -> bool:
    """
    phi(z1 + z2) = phi(z1) | phi(z2) for all z1, z2 with disjoint supports
    (their sum is always in FS(x)).
    """
    if not cat.unique:
        raise NonUnique("x does not have unique representations")
    full = (1 << cat.length) - 1
    for m1 in range(1, full + 1):
        rest = full & ~m1
        m2 = rest
        while m2:
            z1, z2 = cat.sum_of(m1), cat.sum_of(m2)
            image = additive_iso_image(cat, z1 + z2)
            if image != additive_iso_image(cat, z1) | additive_iso_image(cat, z2):
                return False
            m2 = (m2 - 1) & rest
    return True


def link_support_indices(supports: Sequence[FinSet], L: FinSet, N: int) -> FinSet:
    """
    { n < N | supp(x_n) meets L }, for supports computed by the caller
    (x-supports or alpha-supports).
    """
    bound = min(N, len(supports))
    return FinSet.of((n for n in range(bound) if not supports[n].isdisjoint(L)),
                     max(DEFAULT_UNIVERSE, bound))
