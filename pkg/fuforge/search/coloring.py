"""
Finite colorings of the three search domains.

- interval: the integers 1..N, table indexed by the integer (slot 0 unused);
- subsets: the nonempty subsets of {0..n-1}, table indexed by bitmask;
- pairs: ordered pairs (v, w) of nonempty subsets with max(v) < min(w), as a
  2^n x 2^n table indexed by (mask(v), mask(w)); other cells hold -1.

Named generators cover the reproducible test colorings; anything else is given
as an explicit JSON table.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Union

import numpy as np

from fuforge.core.finset import FinSet
from fuforge.errors import InvalidColoring, UsageError

DOMAIN_KINDS = ("interval", "subsets", "pairs")
MAX_SUBSET_N = 20
MAX_PAIR_N = 10

Element = Union[int, FinSet, tuple]


@dataclass(frozen=True)
class Domain:
    """A search domain: `kind` with size N (interval) or n (ground set)."""
    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise InvalidColoring(f"unknown domain kind {self.kind!r}")
        if self.size < 1:
            raise InvalidColoring("domain size must be positive")
        if self.kind == "subsets" and self.size > MAX_SUBSET_N:
            raise InvalidColoring(f"subset domains are capped at n = {MAX_SUBSET_N}")
        if self.kind == "pairs" and self.size > MAX_PAIR_N:
            raise InvalidColoring(f"pair domains are capped at n = {MAX_PAIR_N}")

    @property
    def table_shape(self) -> tuple:
        if self.kind == "interval":
            return (self.size + 1,)
        if self.kind == "subsets":
            return (1 << self.size,)
        return (1 << self.size, 1 << self.size)

    def valid_cells(self) -> np.ndarray:
        """Boolean mask of the table cells that are domain elements."""
        if self.kind == "interval":
            valid = np.ones(self.size + 1, dtype=bool)
            valid[0] = False
            return valid
        if self.kind == "subsets":
            valid = np.ones(1 << self.size, dtype=bool)
            valid[0] = False
            return valid
        lows, highs = _mask_extremes(self.size)
        valid = highs[:, None] < lows[None, :]
        valid[0, :] = False
        valid[:, 0] = False
        return valid

    def describe(self) -> str:
        return {"interval": "fs[1,{}]", "subsets": "fu[{}]", "pairs": "pairs[{}]"}[self.kind].format(self.size)


def _mask_extremes(n: int):
    """Per-mask min and max element (the empty mask gets sentinels)."""
    size = 1 << n
    lows = np.full(size, n + 1, dtype=np.int64)
    highs = np.full(size, n + 1, dtype=np.int64)
    for mask in range(1, size):
        lows[mask] = (mask & -mask).bit_length() - 1
        highs[mask] = mask.bit_length() - 1
    return lows, highs


def mask_sizes(n: int) -> np.ndarray:
    sizes = np.zeros(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        sizes[mask] = sizes[mask >> 1] + (mask & 1)
    return sizes


class Coloring:
    """
    A total r-coloring of a domain, stored as a read-only numpy table.

    Args:
        domain: The colored domain.
        r: Number of colors.
        table: Colors per cell; cells outside the domain are ignored.
        name: How the coloring was produced, for reports.

    Raises:
        InvalidColoring: if the shape is wrong or a domain cell is outside [0, r).
    """

    def __init__(self, domain: Domain, r: int, table, name: str = "table"):
        table = np.array(table, dtype=np.int64)
        if r < 1:
            raise InvalidColoring("a coloring needs at least one color")
        if table.shape != domain.table_shape:
            raise InvalidColoring(f"table shape {table.shape} does not match {domain.table_shape}")
        valid = domain.valid_cells()
        cells = table[valid]
        if cells.size and (cells.min() < 0 or cells.max() >= r):
            raise InvalidColoring(f"colors must lie in [0, {r})")
        table = np.where(valid, table, -1)
        table.setflags(write=False)
        self.domain = domain
        self.r = r
        self.table = table
        self.name = name

    def color(self, element: Element) -> int:
        """Color of an integer, a FinSet, or a (FinSet, FinSet) pair."""
        if isinstance(element, tuple):
            v, w = element
            value = self.table[v.mask, w.mask]
        elif isinstance(element, FinSet):
            value = self.table[element.mask]
        else:
            value = self.table[element]
        if value < 0:
            raise InvalidColoring(f"{element!r} is not an element of {self.domain.describe()}")
        return int(value)

    def digest(self) -> str:
        """Stable hash of (domain, r, table) for cache keys."""
        h = hashlib.sha256()
        h.update(f"{self.domain.kind}:{self.domain.size}:{self.r}:".encode())
        h.update(np.ascontiguousarray(self.table).tobytes())
        return h.hexdigest()

    def to_json(self) -> dict:
        return {"domain": self.domain.kind, "size": self.domain.size, "r": self.r,
                "name": self.name, "table": self.table.tolist()}


# --- Named generators ---

def constant(domain: Domain, r: int = 1) -> Coloring:
    return Coloring(domain, max(r, 1), np.zeros(domain.table_shape, dtype=np.int64), "constant")


def parity(N: int, r: int = 2) -> Coloring:
    """n -> n mod r on [1, N]."""
    return Coloring(Domain("interval", N), r, np.arange(N + 1) % r, "parity")


def threshold(N: int, cut: int) -> Coloring:
    """n -> [n >= cut] on [1, N]."""
    return Coloring(Domain("interval", N), 2, (np.arange(N + 1) >= cut).astype(np.int64), "threshold")


def size_parity(n: int) -> Coloring:
    """t -> |t| mod 2 on the nonempty subsets of {0..n-1}."""
    return Coloring(Domain("subsets", n), 2, mask_sizes(n) % 2, "size-parity")


def min_parity(n: int) -> Coloring:
    """t -> min(t) mod 2."""
    lows, _ = _mask_extremes(n)
    return Coloring(Domain("subsets", n), 2, lows % 2, "min-parity")


def pair_size_parity(n: int) -> Coloring:
    """(v, w) -> (|v| + |w|) mod 2."""
    sizes = mask_sizes(n)
    return Coloring(Domain("pairs", n), 2, (sizes[:, None] + sizes[None, :]) % 2, "pair-size-parity")


def random_coloring(domain: Domain, r: int, seed: int) -> Coloring:
    rng = np.random.default_rng(seed)
    return Coloring(domain, r, rng.integers(0, r, size=domain.table_shape), f"random({seed})")


def from_table(domain: Domain, r: int, values: Sequence) -> Coloring:
    """
    An explicit coloring. Interval tables list colors of 1..N, subset tables
    colors of masks 1..2^n-1; pair tables are given as full 2^n x 2^n arrays.
    """
    if domain.kind in ("interval", "subsets"):
        values = [0] + list(values)
    return Coloring(domain, r, values, "table")


_NAMED: Dict[str, Callable[..., Coloring]] = {
    "constant": lambda d, r, seed, cut: constant(d, r),
    "parity": lambda d, r, seed, cut: parity(d.size, r),
    "threshold": lambda d, r, seed, cut: threshold(d.size, cut if cut is not None else d.size // 2 + 1),
    "size-parity": lambda d, r, seed, cut: size_parity(d.size),
    "min-parity": lambda d, r, seed, cut: min_parity(d.size),
    "pair-size-parity": lambda d, r, seed, cut: pair_size_parity(d.size),
    "random": lambda d, r, seed, cut: random_coloring(d, r, seed),
}

_KINDS_OF = {
    "parity": ("interval",), "threshold": ("interval",),
    "size-parity": ("subsets",), "min-parity": ("subsets",),
    "pair-size-parity": ("pairs",),
}

COLORING_NAMES = tuple(_NAMED)


def make_coloring(spec: str, domain: Domain, r: int = 2, seed: int = 0,
                  cut: Optional[int] = None) -> Coloring:
    """
    Resolves a CLI coloring spec: a generator name or a JSON table.

    Raises:
        UsageError: for an unknown name, a name that does not fit the domain,
            or an unreadable table.
    """
    spec = spec.strip()
    if spec in _NAMED:
        kinds = _KINDS_OF.get(spec)
        if kinds and domain.kind not in kinds:
            raise UsageError(f"coloring {spec!r} does not apply to {domain.kind} domains")
        return _NAMED[spec](domain, r, seed, cut)
    try:
        values = json.loads(spec)
    except json.JSONDecodeError:
        raise UsageError(f"unknown coloring {spec!r}; expected one of {', '.join(COLORING_NAMES)} "
                         f"or a JSON table") from None
    if not isinstance(values, list):
        raise UsageError("a coloring table must be a JSON array")
    try:
        return from_table(domain, r, values)
    except (InvalidColoring, ValueError) as e:
        raise UsageError(f"bad coloring table: {e}") from e
