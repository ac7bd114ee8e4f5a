"""
Sweep drivers behind `fuforge verify`.

Each suite checks one family of finitary identities over an exhaustive or
seeded-random domain and returns a SuiteReport listing every counterexample.
With `oracle=True` every suite computes its expected answers with the
brute-force twins in `fuforge.oracle.naive` instead of the optimized code.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from fuforge.core import alpha, fs_engine, parity, semigroup
from fuforge.core.alpha import DivisibleBase
from fuforge.core.finset import FinSet
from fuforge.errors import FuForgeError, TooShort, UsageError
from fuforge.oracle import naive

logger = logging.getLogger(__name__)

DEFAULT_TEST_BASES = ((1, 2, 4, 8, 16, 32, 64, 128), (1, 2, 6, 24, 120))


@dataclass
class SuiteParams:
    """Inputs shared by the suites; unused fields are ignored by a suite."""
    base: Optional[DivisibleBase] = None
    seq: Optional[Tuple[int, ...]] = None
    factor: int = 4
    order: Optional[int] = None
    seed: int = 20240601
    oracle: bool = False
    growth_trials: int = 1000
    heredity_trials: int = 200
    sample_count: int = 25
    positions: int = 6
    terms: int = 3
    bound: int = 64
    max_family: int = 6
    max_s2: int = 6


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def absorb(self, other: "SuiteReport") -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)

    def to_json(self) -> dict:
        return {"suite": self.suite, "checked": self.checked,
                "violations": self.violations, "ok": self.ok}


Mapper = Callable[[Callable, Iterable], Iterable]


def _map(mapper: Optional[Mapper], func, tasks) -> list:
    return list((mapper or map)(func, tasks))


def _bases(params: SuiteParams) -> List[DivisibleBase]:
    if params.base is not None:
        return [params.base]
    return [DivisibleBase.from_terms(terms) for terms in DEFAULT_TEST_BASES]


def _subsets(n: int) -> List[frozenset]:
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def _semigroups(params: SuiteParams) -> List[semigroup.FiniteSemigroup]:
    if params.order is None:
        return [S for order in (1, 2, 3) for S in semigroup.enumerate_semigroups(order)]
    if params.order <= 3:
        return semigroup.enumerate_semigroups(params.order)
    if params.order == 4:
        return semigroup.sample_semigroups(4, params.sample_count, params.seed)
    raise UsageError("semigroup suites support orders 1 to 4")


# --- Semigroup suites ---

def tricks_chunk(task) -> SuiteReport:
    """All (A, s, t, p, q) and all (A, B, q) for one operation table."""
    table, oracle = task
    S = semigroup.FiniteSemigroup(table)
    n = S.order
    report = SuiteReport("tricks")
    subsets = _subsets(n)
    for A in subsets:
        for s, t, p, q in product(range(n), repeat=4):
            report.checked += 1
            if oracle:
                verdicts = naive.naive_tricks(table, set(A), s, t, p, q)
            else:
                verdicts = semigroup.verify_tricks(
                    S, A, s, t, semigroup.PrincipalPoint(p), semigroup.PrincipalPoint(q)).results
            failed = [name for name, ok in verdicts.items() if not ok]
            if failed:
                report.violations.append({"table": table, "A": sorted(A), "s": s, "t": t,
                                          "p": p, "q": q, "failed": failed})
        for B in subsets:
            for q in range(n):
                report.checked += 1
                point = semigroup.PrincipalPoint(q)
                lhs = semigroup.a_minus_q(S, A & B, point)
                rhs = semigroup.a_minus_q(S, A, point) & semigroup.a_minus_q(S, B, point)
                if lhs != rhs:
                    report.violations.append({"table": table, "A": sorted(A), "B": sorted(B),
                                              "q": q, "failed": ["intersection"]})
    return report


def verify_tricks_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("tricks")
    tasks = [(S.to_json(), params.oracle) for S in _semigroups(params)]
    for part in _map(mapper, tricks_chunk, tasks):
        report.absorb(part)
    return report


def verify_idempotent_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("idempotent")
    for S in _semigroups(params):
        expected = (naive.naive_idempotents(S.to_json()) if params.oracle
                    else semigroup.idempotents(S))
        for start in range(S.order):
            report.checked += 1
            try:
                e = semigroup.find_idempotent(S, start)
            except FuForgeError as err:
                report.violations.append({"table": S.to_json(), "start": start, "error": str(err)})
                continue
            if S.op(e, e) != e or e not in expected:
                report.violations.append({"table": S.to_json(), "start": start, "found": e})
    return report


def verify_galvin_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("galvin")
    for S in _semigroups(params):
        table = S.to_json()
        points = naive.naive_idempotents(table) if params.oracle else semigroup.idempotents(S)
        for p in points:
            for A in _subsets(S.order):
                report.checked += 1
                if params.oracle:
                    verdicts = naive.naive_galvin(table, set(A), p)
                    failed = [name for name, ok in verdicts.items() if not ok]
                    if failed:
                        report.violations.append({"table": table, "A": sorted(A), "p": p,
                                                  "failed": failed})
                    continue
                result = semigroup.galvin_star_check(S, A, semigroup.PrincipalPoint(p))
                if not result.passed:
                    report.violations.append({"table": table, "A": sorted(A), "p": p,
                                              "a_star": sorted(result.a_star)})
    return report


# --- FS-set suites ---

def random_growth_sequence(rng: np.random.Generator, length: int, g: int) -> Tuple[int, ...]:
    """x_n = g * (sum of earlier terms) + a random positive slack."""
    terms, partial = [], 0
    for _ in range(length):
        term = g * partial + int(rng.integers(1, 10))
        terms.append(term)
        partial += term
    return tuple(terms)


def verify_growth_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """
    With --seq: the growth condition for the given factor, reporting the first
    failing index. Otherwise: factor-2 sequences must enumerate to distinct
    sums with greedy decoding matching the enumeration.
    """
    report = SuiteReport("growth")
    if params.seq is not None:
        report.checked = len(params.seq)
        if params.oracle:
            n = naive.naive_growth_violation(params.seq, params.factor)
        else:
            n = fs_engine.first_growth_violation(params.seq, params.factor)
        if n is not None:
            report.violations.append({"seq": list(params.seq), "factor": params.factor, "n": n})
        return report

    rng = np.random.default_rng(params.seed)
    for _ in range(params.growth_trials):
        x = random_growth_sequence(rng, int(rng.integers(1, 11)), 2)
        report.checked += 1
        if params.oracle:
            for mask in range(1, 1 << len(x)):
                idx = frozenset(i for i in range(len(x)) if mask >> i & 1)
                z = sum(x[i] for i in idx)
                if naive.naive_decode(x, z) != {idx} or fs_engine.greedy_decode(x, z).mask != mask:
                    report.violations.append({"seq": list(x), "z": z, "reason": "greedy decode mismatch"})
                    break
            continue
        cat = fs_engine.enumerate_fs(x)
        if cat.sums.size != 2 ** len(x) - 1:
            report.violations.append({"seq": list(x), "reason": "duplicate sums"})
            continue
        for mask in range(1, 1 << len(x)):
            z = cat.sum_of(mask)
            greedy = fs_engine.greedy_decode(x, z)
            if greedy.mask != mask or fs_engine.decode_supp(cat, z).mask != mask:
                report.violations.append({"seq": list(x), "z": z, "reason": "greedy decode mismatch"})
                break
    return report

def verify_unique_sums_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("unique-sums")
    if params.seq is not None:
        report.checked = 1
        check = naive.naive_unique_sums if params.oracle else fs_engine.unique_sums_holds
        if not check(params.seq):
            report.violations.append({"seq": list(params.seq)})
        return report

    rng = np.random.default_rng(params.seed)
    for _ in range(params.growth_trials):
        x = random_growth_sequence(rng, int(rng.integers(1, 9)), 2)
        report.checked += 1
        if params.oracle:
            if not naive.naive_unique_sums(x):
                report.violations.append({"seq": list(x), "reason": "unique sums"})
            elif len(x) <= 6 and not _naive_homomorphism(x):
                report.violations.append({"seq": list(x), "reason": "not a homomorphism"})
            continue
        if not fs_engine.unique_sums_holds(x):
            report.violations.append({"seq": list(x), "reason": "unique sums"})
        elif len(x) <= 6 and not fs_engine.iso_homomorphism_holds(fs_engine.enumerate_fs(x)):
            report.violations.append({"seq": list(x), "reason": "not a homomorphism"})
    return report


def _naive_homomorphism(x: Tuple[int, ...]) -> bool:
    """Sums of disjoint index sets decode to exactly their union."""
    sets = [frozenset(i for i in range(len(x)) if mask >> i & 1) for mask in range(1, 1 << len(x))]
    for u in sets:
        for v in sets:
            if u.isdisjoint(v):
                total = sum(x[i] for i in u) + sum(x[i] for i in v)
                if naive.naive_decode(x, total) != {u | v}:
                    return False
    return True


def verify_heredity_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """Increasing condensations of growth-4 sequences keep disjoint blocks and growth 4."""
    report = SuiteReport("heredity")
    rng = np.random.default_rng(params.seed)
    families = list(fs_engine.enumerate_condensations(5, 4))
    for _ in range(params.heredity_trials):
        x = fs_engine.GrowthSequence.from_terms(random_growth_sequence(rng, 5, 4))
        for blocks in families:
            y = sorted(sum(x.terms[i] for i in block) for block in blocks)
            report.checked += 1
            if params.oracle:
                found = naive.naive_condensation(x.terms, y)
                if found is None:
                    report.violations.append({"seq": list(x.terms), "y": y, "refusal": "not a condensation"})
                elif not all(a.isdisjoint(b) for i, a in enumerate(found) for b in found[i + 1:]) \
                        or naive.naive_growth_violation(y, 4) is not None:
                    report.violations.append({"seq": list(x.terms), "y": y, "blocks": [list(b) for b in blocks]})
                continue
            result = fs_engine.is_condensation(y, x)
            if not isinstance(result, fs_engine.Condensation):
                report.violations.append({"seq": list(x.terms), "y": y, "refusal": result.reason})
            elif not (result.pairwise_disjoint and result.growth_inherited):
                report.violations.append({"seq": list(x.terms), "y": y, "blocks": [list(b) for b in blocks]})
    return report


# --- Mixed-radix suites ---

def disjoint_support_sequences(base: DivisibleBase, positions: int, max_terms: int):
    """
    Sequences of at most `max_terms` terms supported below `positions`, with
    pairwise disjoint alpha-supports, increasing in value and in alpha-min.
    """
    limit = base.a(min(positions, len(base.terms)))
    supports = {v: alpha.alpha_support(base, v) for v in range(1, limit)}
    terms = [v for v, s in supports.items() if s.max < positions]

    def grow(x: List[int], used: FinSet):
        if x:
            yield tuple(x)
        if len(x) == max_terms:
            return
        for v in terms:
            if x and (v <= x[-1] or supports[v].min <= supports[x[-1]].min):
                continue
            if not used.isdisjoint(supports[v]):
                continue
            yield from grow(x + [v], used | supports[v])

    yield from grow([], FinSet.empty())


def verify_trivial_sum_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """
    For every admissible x and a, b below the bound with a + b in FS(x) and
    the trivial-sum hypotheses, trivial_sum_split must recover a and b.
    """
    report = SuiteReport("trivial-sum")
    base = params.base or DivisibleBase.pow2(max(params.positions, params.bound.bit_length()))
    if params.oracle:
        found = naive.naive_lemma_sweep(list(base.terms), params.positions, params.terms,
                                        params.bound, top_radix=base.top_radix)
        report.checked = 1
        report.violations.extend(found)
        return report

    lo = lru_cache(maxsize=None)(lambda v: alpha.alpha_min(base, v))
    hi = lru_cache(maxsize=None)(lambda v: alpha.alpha_max(base, v))
    for x in disjoint_support_sequences(base, params.positions, params.terms):
        cat = fs_engine.enumerate_fs(x)
        for s in (int(v) for v in cat.sums):
            for a in range(1, min(s, params.bound)):
                b = s - a
                if b >= params.bound:
                    continue
                m = next((i for i, t in enumerate(x) if hi(a) < lo(t)), None)
                if m is None or not hi(x[m]) < lo(b):
                    continue
                report.checked += 1
                try:
                    H_a, H_b = alpha.trivial_sum_split(base, x, a, b)
                except FuForgeError as err:
                    report.violations.append({"x": list(x), "a": a, "b": b, "error": str(err)})
                    continue
                if sum(x[j] for j in H_a) != a or sum(x[j] for j in H_b) != b:
                    report.violations.append({"x": list(x), "a": a, "b": b})
    return report


def verify_uzn_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """u_zn_member(z, n, w) iff w > z and a_n divides w - z, exhaustively."""
    report = SuiteReport("uzn")
    for base in _bases(params):
        for n in range(base.M + 1):
            a_n = base.a(n)
            for z in range(a_n):
                for w in range(base.capacity):
                    report.checked += 1
                    if params.oracle:
                        expected = naive.naive_u_zn(list(base.terms), z, n, w, base.top_radix)
                    else:
                        expected = w > z and (w - z) % a_n == 0
                    if alpha.u_zn_member(base, z, n, w) != expected:
                        report.violations.append({"base": base.to_json(), "z": z, "n": n, "w": w})
    return report


def verify_telescoping_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("telescoping")
    for base in _bases(params):
        for k in range(base.M):
            for n in range(k, base.M):
                report.checked += 1
                if params.oracle:
                    holds = naive.naive_telescoping(list(base.terms), k, n)
                else:
                    holds = alpha.telescoping_check(base, k, n)
                if not holds:
                    report.violations.append({"base": base.to_json(), "k": k, "n": n})
    return report


def verify_carry_bound_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """Every digit vector pair meeting the preconditions, for s2 up to max_s2."""
    report = SuiteReport("carry-bound")
    for base in _bases(params):
        radices = base.radices
        for s2 in range(min(params.max_s2, base.M) + 1):
            u_space = product(*(range(r) for r in radices[:s2]))
            v_ranges = [range(r) for r in radices[:s2]] + [range(radices[s2] - 1)]
            v_list = list(product(*v_ranges))
            for u in u_space:
                for v in v_list:
                    if not any(u) and not any(v):
                        continue
                    report.checked += 1
                    if params.oracle:
                        holds = naive.naive_carry_bound(list(base.terms), s2, u, v, base.top_radix)
                    else:
                        holds = alpha.carry_bound_check(base, s2, u, v)
                    if not holds:
                        report.violations.append({"base": base.to_json(), "s2": s2,
                                                  "u": list(u), "v": list(v)})
    return report


# --- Parity suite ---

def parity_chunk(task) -> SuiteReport:
    """All checks for the singleton family of size n."""
    n, oracle = task
    report = SuiteReport("parity-core")
    family = parity.FUFamily.singletons(n)
    members = [set(m) for m in family.members]

    # decomposition, separation and gap bookkeeping over all disjoint (x, y)
    for labels in product((0, 1, 2), repeat=n):
        x = FinSet.of(i for i, l in enumerate(labels) if l == 1)
        y = FinSet.of(i for i, l in enumerate(labels) if l == 2)
        if not x or not y:
            continue
        report.checked += 1
        if oracle:
            whole = naive.naive_pi(members, set(x | y))
            parts = naive.naive_pi(members, set(x)) | naive.naive_pi(members, set(y))
            emerged = naive.naive_emerged(members, set(x), set(y))
            if whole != parts | emerged:
                report.violations.append({"n": n, "x": list(x), "y": list(y), "check": "decomposition"})
            continue
        emerged = parity.emerged_indices(family, x, y)
        px, py = parity.pi(family, x), parity.pi(family, y)
        if parity.pi(family, x | y) != px | py | emerged or not px.isdisjoint(py):
            report.violations.append({"n": n, "x": list(x), "y": list(y), "check": "decomposition"})
        try:
            separated = parity.parity_additive(family, x, y)
        except FuForgeError:
            separated, emerged = True, emerged or FinSet.of([n])
        if separated and emerged:
            report.violations.append({"n": n, "x": list(x), "y": list(y), "check": "separation"})
        gaps = parity.classify_gaps(family, x, y)
        weights = {"begin-only": 1, "end-only": 1, "both": 2, "neither": 0}
        span = FinSet.of(range(x.min, x.max))
        if len(emerged & span) != sum(weights[g.kind] for g in gaps):
            report.violations.append({"n": n, "x": list(x), "y": list(y), "check": "gaps"})

    if oracle or n > 6:
        return report

    # the x / y / z construction over every condensation and start index
    for blocks in fs_engine.enumerate_condensations(n, n):
        t = [family.union_of(block) for block in blocks]
        covered = FinSet.empty()
        for block in blocks:
            covered = covered | block
        for b in range(n):
            if not all(i in covered for i in range(b, n)):
                continue
            try:
                result = parity.construct_xyz(family, t, b)
            except TooShort:
                continue
            report.checked += 1
            total = (len(parity.emerged_indices(family, result.x, result.y))
                     + len(parity.emerged_indices(family, result.x, result.z)))
            if total % 2 != 1:
                report.violations.append({"n": n, "t": [list(m) for m in t], "b": b,
                                          "check": "odd emerged count"})
            if result.homogeneous and not result.clash:
                report.violations.append({"n": n, "t": [list(m) for m in t], "b": b,
                                          "check": "homogeneous without clash", **result.to_json()})
    return report


def verify_parity_core_suite(params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    report = SuiteReport("parity-core")
    tasks = [(n, params.oracle) for n in range(1, params.max_family + 2)]
    for part in _map(mapper, parity_chunk, tasks):
        report.absorb(part)
    return report


SUITES: Dict[str, Callable[[SuiteParams, Optional[Mapper]], SuiteReport]] = {
    "tricks": verify_tricks_suite,
    "idempotent": verify_idempotent_suite,
    "galvin": verify_galvin_suite,
    "growth": verify_growth_suite,
    "unique-sums": verify_unique_sums_suite,
    "trivial-sum": verify_trivial_sum_suite,
    "uzn": verify_uzn_suite,
    "telescoping": verify_telescoping_suite,
    "carry-bound": verify_carry_bound_suite,
    "parity-core": verify_parity_core_suite,
    "heredity": verify_heredity_suite,
}


def run_suite(name: str, params: SuiteParams, mapper: Optional[Mapper] = None) -> SuiteReport:
    """
    Runs the named suite.

    Raises:
        UsageError: for an unknown suite name.
    """
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    report = SUITES[name](params, mapper)
    logger.info("verify %s: %d violations over %d checks", name, len(report.violations), report.checked)
    return report
