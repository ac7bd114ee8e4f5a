"""
Brute-force reference implementations.

Everything here works on plain Python values (lists, tuples, frozensets) and
recomputes its answer from the definitions by full enumeration. Nothing is
imported from the optimized packages, so a disagreement between the two paths
always points at a real defect.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from fuforge.errors import BudgetExceeded

IndexSet = FrozenSet[int]


def _index_sets(n: int):
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            yield idx


# --- FS-sets ---

@lru_cache(maxsize=128)
def _sum_table(x: Tuple[int, ...]) -> Dict[int, FrozenSet[IndexSet]]:
    table: Dict[int, Set[IndexSet]] = {}
    for idx in _index_sets(len(x)):
        table.setdefault(sum(x[i] for i in idx), set()).add(frozenset(idx))
    return {z: frozenset(reps) for z, reps in table.items()}


def naive_decode(x: Sequence[int], z: int) -> Set[IndexSet]:
    """Every index set v with sum_{i in v} x_i = z."""
    if len(x) > 20:
        raise BudgetExceeded("naive decoding is limited to 20 terms")
    return set(_sum_table(tuple(x)).get(z, ()))


def naive_growth_violation(x: Sequence[int], g: int) -> Optional[int]:
    """First n with x_n <= g * (x_0 + ... + x_{n-1}), or None."""
    for n in range(len(x)):
        if x[n] <= g * sum(x[:n]):
            return n
    return None


def naive_unique_sums(x: Sequence[int]) -> bool:
    """For all index sets s, t: sum(s) + sum(t) lies in FS(x) iff s and t are disjoint."""
    sets = list(_index_sets(len(x)))
    for s in sets:
        for t in sets:
            total = sum(x[i] for i in s) + sum(x[i] for i in t)
            if bool(naive_decode(x, total)) != set(s).isdisjoint(t):
                return False
    return True


def naive_condensation(x: Sequence[int], y: Sequence[int]) -> Optional[List[IndexSet]]:
    """
    The index set of x under each term of y, or None when FS(y) leaves FS(x)
    or some term of y has several representations.
    """
    for idx in _index_sets(len(y)):
        if not naive_decode(x, sum(y[i] for i in idx)):
            return None
    blocks = []
    for term in y:
        reps = naive_decode(x, term)
        if len(reps) != 1:
            return None
        blocks.append(reps.pop())
    return blocks


def _has_fs_witness(colors: Dict[int, int], N: int, k: int) -> bool:
    for xs in combinations(range(1, N + 1), k):
        sums = [sum(xs[i] for i in idx) for idx in _index_sets(k)]
        if all(s <= N for s in sums) and len({colors[s] for s in sums}) == 1:
            return True
    return False


def naive_threshold(k: int, r: int, N: int, budget: int = 2 ** 16) -> bool:
    """
    True iff every r-coloring of [1, N] admits a monochromatic k-term FS
    witness, by enumerating all colorings and all candidate witnesses.
    """
    if r ** N > budget:
        raise BudgetExceeded(f"{r}^{N} colorings exceed the budget of {budget}")
    for assignment in product(range(r), repeat=N):
        colors = dict(zip(range(1, N + 1), assignment))
        if not _has_fs_witness(colors, N, k):
            return False
    return True


def naive_fs_witness(colors: Sequence[int], N: int, k: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Lexicographically least FS witness; colors[v] is the color of v."""
    for xs in combinations(range(1, N + 1), k):
        sums = [sum(xs[i] for i in idx) for idx in _index_sets(k)]
        if all(s <= N for s in sums) and len({colors[s] for s in sums}) == 1:
            return colors[xs[0]], xs
    return None


# --- FU-sets and pairs ---

def _lex_sets(n: int) -> List[Tuple[int, ...]]:
    return sorted(idx for idx in _index_sets(n))


def _mask(elements) -> int:
    return sum(1 << e for e in elements)


def _unions(family: Sequence[Tuple[int, ...]]) -> Dict[Tuple[int, ...], FrozenSet[int]]:
    return {idx: frozenset(e for i in idx for e in family[i]) for idx in _index_sets(len(family))}


def _pairwise_disjoint(family) -> bool:
    seen: Set[int] = set()
    for member in family:
        if seen & set(member):
            return False
        seen |= set(member)
    return True


def naive_fu_witness(colors: Sequence[int], n: int, k: int) -> Optional[Tuple[int, Tuple]]:
    """
    Lexicographically least family of k disjoint nonempty subsets of {0..n-1}
    whose unions share a color; colors[mask] is the color of a subset.
    """
    for family in combinations(_lex_sets(n), k):
        if not _pairwise_disjoint(family):
            continue
        seen = {colors[_mask(u)] for u in _unions(family).values()}
        if len(seen) == 1:
            return seen.pop(), family
    return None


def naive_pair_witness(colors: Sequence[Sequence[int]], n: int, k: int) -> Optional[Tuple[int, Tuple]]:
    """
    Lexicographically least ordered family of k sets such that every pair
    (u, v) of its unions with max(u) < min(v) has one color;
    colors[mask(u)][mask(v)] is the color of the pair.
    """
    for family in combinations(_lex_sets(n), k):
        if any(max(a) >= min(b) for a, b in zip(family, family[1:])):
            continue
        unions = list(_unions(family).values())
        seen = {colors[_mask(u)][_mask(v)] for u in unions for v in unions if max(u) < min(v)}
        if len(seen) == 1:
            return seen.pop(), family
    return None


def naive_pi(members: Sequence[Set[int]], t: Set[int]) -> Set[int]:
    """{ i | members i and i+1 both lie inside t }; t must be a union of members."""
    inside = [set(m) <= set(t) for m in members]
    covered = set().union(*(set(m) for m, ok in zip(members, inside) if ok)) if any(inside) else set()
    if covered != set(t):
        raise ValueError(f"{sorted(t)} is not a union of members")
    return {i for i in range(len(members) - 1) if inside[i] and inside[i + 1]}


def naive_emerged(members: Sequence[Set[int]], x: Set[int], y: Set[int]) -> Set[int]:
    out = set()
    for i in range(len(members) - 1):
        a, b = set(members[i]), set(members[i + 1])
        if (a <= set(x) and b <= set(y)) or (a <= set(y) and b <= set(x)):
            out.add(i)
    return out


# --- Mixed radix ---

def naive_expand(base: Sequence[int], n: int, top_radix: Optional[int] = None) -> List[int]:
    """Digits of n over the base, by division from the most significant term."""
    if top_radix is None:
        top_radix = base[-1] // base[-2] if len(base) > 1 else 2
    if not 0 <= n < base[-1] * top_radix:
        raise ValueError(f"{n} is not representable")
    digits = [0] * len(base)
    rest = n
    for i in range(len(base) - 1, -1, -1):
        digits[i], rest = divmod(rest, base[i])
    return digits


def naive_lemma_sweep(base: Sequence[int], P: int, K: int, B: int,
                      budget: int = 10 ** 8, top_radix: Optional[int] = None) -> List[dict]:
    """
    Searches for counterexamples to the trivial-sums implication.

    Sequences x have at most K positive terms supported on positions below P,
    pairwise disjoint supports, and increase both in value and in the lowest
    support position. For each a, b in [1, B) with a + b in FS(x) such that,
    with m the first index whose lowest position exceeds the top position of
    a, every position of b lies above the top position of x_m, the sweep
    reports (x, a, b) unless both a and b are in FS(x).
    """
    if top_radix is None:
        top_radix = base[-1] // base[-2] if len(base) > 1 else 2
    full = base[-1] * top_radix
    limit = base[P] if P < len(base) else full
    if B > full:
        raise ValueError(f"values below {B} are not all representable")
    supports = [frozenset(i for i, d in enumerate(naive_expand(base, v, top_radix)) if d)
                for v in range(max(limit, B))]
    low = [min(s) if s else -1 for s in supports]
    high = [max(s) if s else -1 for s in supports]

    terms = [v for v in range(1, limit) if all(i < P for i in supports[v])]
    found: List[dict] = []
    steps = 0

    def sweep(x: List[int]):
        nonlocal steps
        fs = {sum(x[i] for i in idx) for idx in _index_sets(len(x))}
        for s in fs:
            for a in range(1, min(s, B)):
                b = s - a
                if b >= B:
                    continue
                steps += 1
                if steps > budget:
                    raise BudgetExceeded("lemma sweep exceeded its step budget")
                m = next((i for i, t in enumerate(x) if high[a] < low[t]), None)
                if m is None or not high[x[m]] < low[b]:
                    continue
                if a not in fs or b not in fs:
                    found.append({"x": list(x), "a": a, "b": b})

    def grow(x: List[int], used: FrozenSet[int]):
        if x:
            sweep(x)
        if len(x) == K:
            return
        for v in terms:
            if x and (v <= x[-1] or low[v] <= low[x[-1]]):
                continue
            if used & supports[v]:
                continue
            grow(x + [v], used | supports[v])

    grow([], frozenset())
    return found


def naive_u_zn(base: Sequence[int], z: int, n: int, w: int,
               top_radix: Optional[int] = None) -> bool:
    """True iff w > z and w agrees with z on every digit below position n."""
    return w > z and naive_expand(base, w, top_radix)[:n] == naive_expand(base, z, top_radix)[:n]


def naive_telescoping(base: Sequence[int], k: int, n: int) -> bool:
    """Adds (r_i - 1) copies of a_i for k < i <= n to a_(k+1) and compares with a_(n+1)."""
    total = base[k + 1]
    for i in range(k + 1, n + 1):
        for _ in range(base[i + 1] // base[i] - 1):
            total += base[i]
    return total == base[n + 1]


def naive_carry_bound(base: Sequence[int], s2: int, u: Sequence[int], v: Sequence[int],
                      top_radix: Optional[int] = None) -> bool:
    """True iff the sum of the digit vectors u and v is positive with no digit above s2."""
    total = sum(d * base[i] for i, d in enumerate(u)) + sum(d * base[i] for i, d in enumerate(v))
    if total <= 0:
        return False
    try:
        digits = naive_expand(base, total, top_radix)
    except ValueError:
        return False
    return not any(digits[s2 + 1:])


# --- Semigroups ---

def naive_idempotents(table: Sequence[Sequence[int]]) -> List[int]:
    return [e for e in range(len(table)) if table[e][e] == e]


def _pre(table, u: int, X: Set[int]) -> Set[int]:
    return {v for v in range(len(table)) if table[u][v] in X}


def _minus(table, X: Set[int], point: int) -> Set[int]:
    return {u for u in range(len(table)) if point in _pre(table, u, X)}


def naive_galvin(table: Sequence[Sequence[int]], A: Set[int], p: int) -> Dict[str, bool]:
    """
    The fixpoint check for an idempotent p, where A belongs to the principal
    point p iff p is in A and A* = A & A^-p.
    """
    if table[p][p] != p:
        raise ValueError(f"{p} is not idempotent")
    A = set(A)
    star = A & _minus(table, A, p)
    return {
        "member_implies_star": p not in A or p in star,
        "star_fixpoint": star & _minus(table, star, p) == star,
    }


def naive_tricks(table: Sequence[Sequence[int]], A: Set[int], s: int, t: int,
                 p: int, q: int, B: Optional[Set[int]] = None) -> Dict[str, bool]:
    """The five identities about A^-q, each side computed from its definition."""
    n = len(table)
    A = set(A)
    B = set(range(n)) - A if B is None else set(B)

    def pre(u, X):
        return _pre(table, u, X)

    def minus(X, point):
        return _minus(table, X, point)

    def star(X, point):
        return X & minus(X, point)

    return {
        "double_translate": pre(t, pre(s, A)) == pre(table[s][t], A),
        "translate_commutes": pre(s, minus(A, q)) == minus(pre(s, A), q),
        "intersection": minus(A & B, q) == minus(A, q) & minus(B, q),
        "star_translate": star(pre(s, A), q) == pre(s, star(A, q)),
        "iterated_minus": minus(minus(A, q), p) == minus(A, table[p][q]),
    }
