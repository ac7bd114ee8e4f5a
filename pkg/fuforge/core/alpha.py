"""
Mixed-radix expansions over divisible bases.

A divisible base a = (a_0 = 1, a_1, ..., a_M) has integer radices
r_i = a_(i+1) / a_i >= 2. Every n below the capacity a_(M+1) = a_M * r_M has a
unique digit vector with 0 <= d_i < r_i and n = sum d_i * a_i.

Besides expansion this module holds the arithmetic cores of the trivial-sums
and nearly-trivial-sums arguments:
- no-carry addition and disjoint supports,
- splitting a + b inside FS(x) into the parts contributed by a and b,
- the U_(z,n) membership test, the telescoping carry cascade and the carry bound.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from fuforge.core.finset import DEFAULT_UNIVERSE, FinSet
from fuforge.core.fs_engine import decode_supp, enumerate_fs
from fuforge.errors import (AlgebraFault, BadZ, InvalidBase, InvalidDigits, NotInFS,
                            OutOfRange, Overflow, PreconditionFailed)


@dataclass(frozen=True)
class DivisibleBase:
    """
    A finite truncation a_0..a_M of a divisible sequence.

    `top_radix` is r_M, the radix of the last digit; it fixes the capacity
    a_(M+1) = a_M * r_M.
    """
    terms: Tuple[int, ...]
    top_radix: int

    def __post_init__(self):
        if not self.terms or self.terms[0] != 1:
            raise InvalidBase("a divisible base starts with a_0 = 1")
        for lo, hi in zip(self.terms, self.terms[1:]):
            if hi % lo or hi // lo < 2:
                raise InvalidBase(f"{hi} is not a proper multiple of {lo}")
        if self.top_radix < 2:
            raise InvalidBase("radices must be at least 2")

    @classmethod
    def from_terms(cls, terms: Sequence[int], top_radix: Optional[int] = None) -> "DivisibleBase":
        """
        Validates and builds a base; the top radix defaults to the previous one.

        Raises:
            InvalidBase: for a_0 != 1, a non-dividing step or a radix below 2.
        """
        terms = tuple(int(t) for t in terms)
        if top_radix is None:
            top_radix = terms[-1] // terms[-2] if len(terms) > 1 else 2
        return cls(terms, int(top_radix))

    @classmethod
    def pow2(cls, length: int) -> "DivisibleBase":
        """The binary base 1, 2, ..., 2^(length-1)."""
        if length < 1:
            raise InvalidBase("a base needs at least one term")
        return cls(tuple(1 << i for i in range(length)), 2)

    @property
    def M(self) -> int:
        return len(self.terms) - 1

    @property
    def radices(self) -> Tuple[int, ...]:
        inner = tuple(hi // lo for lo, hi in zip(self.terms, self.terms[1:]))
        return inner + (self.top_radix,)

    @property
    def capacity(self) -> int:
        return self.terms[-1] * self.top_radix

    def a(self, i: int) -> int:
        """a_i for 0 <= i <= M + 1 (the last one being the capacity)."""
        if i == len(self.terms):
            return self.capacity
        if not 0 <= i < len(self.terms):
            raise OutOfRange(f"a_{i} is outside the truncated base")
        return self.terms[i]

    def to_json(self) -> list:
        return list(self.terms)


def parse_int_list(text: str) -> list:
    """Reads "1,2,6" or the JSON form "[1,2,6]"."""
    body = text.strip()
    if not body.startswith("["):
        body = f"[{body}]"
    try:
        values = json.loads(body)
    except json.JSONDecodeError as e:
        raise ValueError(f"expected a list of integers, got {text!r}") from e
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ValueError(f"expected a list of integers, got {text!r}")
    return values


def parse_base(text: str, pow2_length: int = 13) -> DivisibleBase:
    """Reads "pow2", "1,2,6,24" or a JSON integer array."""
    if text.strip() == "pow2":
        return DivisibleBase.pow2(pow2_length)
    try:
        terms = parse_int_list(text)
    except ValueError as e:
        raise InvalidBase(str(e)) from e
    if not terms:
        raise InvalidBase("a base needs at least one term")
    return DivisibleBase.from_terms(terms)


@dataclass(frozen=True)
class AlphaExpansion:
    digits: Tuple[int, ...]
    base: DivisibleBase

    @property
    def support(self) -> FinSet:
        return FinSet.of((i for i, d in enumerate(self.digits) if d),
                         max(DEFAULT_UNIVERSE, len(self.digits)))

    def __str__(self) -> str:
        return ":".join(str(d) for d in self.digits)


def expand(base: DivisibleBase, n: int) -> AlphaExpansion:
    """
    The unique digit vector of n, least significant digit first.

    Raises:
        Overflow: if n is negative or not below the capacity.
    """
    if n < 0 or n >= base.capacity:
        raise Overflow(f"{n} is not representable below {base.capacity}")
    digits = tuple((n // a) % r for a, r in zip(base.terms, base.radices))
    return AlphaExpansion(digits, base)


def reconstruct(expansion: AlphaExpansion) -> int:
    return sum(d * a for d, a in zip(expansion.digits, expansion.base.terms))


def alpha_support(base: DivisibleBase, n: int) -> FinSet:
    return expand(base, n).support


def alpha_min(base: DivisibleBase, n: int) -> int:
    return alpha_support(base, n).min


def alpha_max(base: DivisibleBase, n: int) -> int:
    return alpha_support(base, n).max


def no_carry_add(base: DivisibleBase, m: int, n: int) -> bool:
    """
    True iff alpha(m + n) is the digitwise sum alpha(m) + alpha(n).

    Raises:
        Overflow: if m, n or m + n is not representable.
    """
    dm, dn = expand(base, m).digits, expand(base, n).digits
    expand(base, m + n)
    return all(x + y < r for x, y, r in zip(dm, dn, base.radices))


def disjoint_alpha_support(base: DivisibleBase, x: Sequence[int]) -> bool:
    seen = FinSet.empty()
    for term in x:
        support = alpha_support(base, term)
        if not seen.isdisjoint(support):
            return False
        seen = seen | support
    return True


def trivial_sum_split(base: DivisibleBase, x: Sequence[int], a: int, b: int) -> Tuple[FinSet, FinSet]:
    """
    Splits the x-support H of a + b into the indices contributed by a and by b.

    With m the first index whose alpha-min lies above alpha-max(a), and b
    supported strictly above alpha-max(x_m), the sum a + b can only be in FS(x)
    if a and b are themselves sums over complementary parts of H.

    Args:
        base: The divisible base.
        x: Terms with pairwise disjoint alpha-supports, increasing in value and
            in alpha-min.
        a: The low summand.
        b: The high summand.

    Returns:
        (H_a, H_b) with H_a | H_b = H, sum over H_a = a and sum over H_b = b.

    Raises:
        PreconditionFailed: naming the clause that does not hold.
        NotInFS: if a + b is not a finite sum of x.
    """
    if a < 1 or b < 1:
        raise PreconditionFailed("positive", "a and b must be positive")
    if not x or any(t < 1 for t in x):
        raise PreconditionFailed("positive", "x must consist of positive terms")
    if not disjoint_alpha_support(base, x):
        raise PreconditionFailed("disjoint", "x does not have disjoint alpha-support")
    mins = [alpha_min(base, t) for t in x]
    if any(hi <= lo for lo, hi in zip(mins, mins[1:])) or any(hi <= lo for lo, hi in zip(x, x[1:])):
        raise PreconditionFailed("increasing", "x must increase in value and in alpha-min")

    top_a = alpha_max(base, a)
    m = next((i for i, lo in enumerate(mins) if top_a < lo), None)
    if m is None:
        raise PreconditionFailed("m", f"no term of x lies above alpha-max({a}) = {top_a}")
    if not alpha_max(base, x[m]) < alpha_min(base, b):
        raise PreconditionFailed(
            "b_support", f"alpha-min({b}) = {alpha_min(base, b)} must exceed "
                         f"alpha-max(x_{m}) = {alpha_max(base, x[m])}")

    cat = enumerate_fs(x)
    if a + b not in cat:
        raise NotInFS(f"{a + b} is not in FS(x)")
    H = decode_supp(cat, a + b)
    support_a = alpha_support(base, a)
    H_a = FinSet.of(j for j in H if not alpha_support(base, x[j]).isdisjoint(support_a))
    H_b = H - H_a
    if sum(x[j] for j in H_a) != a or sum(x[j] for j in H_b) != b:
        raise AlgebraFault(f"split of {a} + {b} over {H} does not reproduce the summands")
    return H_a, H_b


def u_zn_member(base: DivisibleBase, z: int, n: int, w: int) -> bool:
    """
    Membership of w in U_(z,n): alpha(w) agrees with alpha(z) below n, and w > z.

    Raises:
        BadZ: if z >= a_n.
        Overflow: if w is not representable.
    """
    a_n = base.a(n)
    if not 0 <= z < a_n:
        raise BadZ(f"z = {z} must lie below a_{n} = {a_n}")
    low_w, low_z = expand(base, w).digits[:n], expand(base, z).digits[:n]
    return low_w == low_z and w > z


def telescoping_check(base: DivisibleBase, k: int, n: int) -> bool:
    """
    sum_{k < i <= n} (r_i - 1) * a_i + a_(k+1) == a_(n+1), for k <= n < M.
    """
    if not 0 <= k <= n < base.M:
        raise OutOfRange(f"need 0 <= k <= n < M = {base.M}, got k={k}, n={n}")
    radices = base.radices
    cascade = sum((radices[i] - 1) * base.terms[i] for i in range(k + 1, n + 1))
    return cascade + base.terms[k + 1] == base.terms[n + 1]


def _check_digits(base: DivisibleBase, digits: Sequence[int], name: str) -> None:
    for i, (d, r) in enumerate(zip(digits, base.radices)):
        if not 0 <= d < r:
            raise InvalidDigits(f"{name}[{i}] = {d} outside [0, {r})")


def carry_bound_check(base: DivisibleBase, s2: int, u_digits: Sequence[int],
                      v_digits: Sequence[int]) -> bool:
    """
    The "not enough carrying" bound: 0 < sum u_i a_i + sum v_i a_i < a_(s2+1),
    with u over positions below s2 and v over positions up to s2 with a
    non-maximal top digit.

    Raises:
        InvalidDigits: if the digit vectors violate the preconditions.
    """
    if not 0 <= s2 <= base.M:
        raise InvalidDigits(f"s2 = {s2} outside the base")
    if len(u_digits) != s2 or len(v_digits) != s2 + 1:
        raise InvalidDigits(f"expected {s2} digits for u and {s2 + 1} for v")
    _check_digits(base, u_digits, "u")
    _check_digits(base, v_digits, "v")
    if v_digits[s2] > base.radices[s2] - 2:
        raise InvalidDigits(f"v[{s2}] must be at most r_{s2} - 2")
    if not any(u_digits) and not any(v_digits):
        raise InvalidDigits("u and v cannot both be zero")
    total = (sum(d * a for d, a in zip(u_digits, base.terms))
             + sum(d * a for d, a in zip(v_digits, base.terms)))
    return 0 < total < base.a(s2 + 1)
