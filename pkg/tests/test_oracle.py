import ast
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from fuforge.core import semigroup
from fuforge.core.alpha import DivisibleBase, expand
from fuforge.core.finset import FinSet
from fuforge.core.fs_engine import decode_supp, enumerate_fs
from fuforge.core.parity import FUFamily, emerged_indices, pi
from fuforge.errors import BudgetExceeded
from fuforge.oracle import naive
from fuforge.search.coloring import Domain, min_parity, random_coloring, size_parity
from fuforge.search.threshold import fs_threshold
from fuforge.search.witness_search import fs_witness, fu_witness, pair_witness


def test_oracle_imports_nothing_optimized():
    tree = ast.parse(Path(naive.__file__).read_text(encoding="utf-8"))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            imported.update(alias.name for alias in node.names)
        elif isinstance(node, ast.ImportFrom):
            imported.add(node.module)
    fuforge_modules = {name for name in imported if name.startswith("fuforge")}
    assert fuforge_modules == {"fuforge.errors"}
    assert "numpy" not in imported


# --- Reference values ---

def test_naive_decode():
    assert naive.naive_decode((1, 5, 25), 26) == {frozenset({0, 2})}
    assert naive.naive_decode((2, 2), 2) == {frozenset({0}), frozenset({1})}
    assert naive.naive_decode((1, 5, 25), 2) == set()


@pytest.mark.parametrize("N, expected", [(3, True), (2, False)])
def test_naive_threshold_single_color(N, expected):
    assert naive.naive_threshold(2, 1, N) is expected


def test_naive_threshold_budget():
    with pytest.raises(BudgetExceeded):
        naive.naive_threshold(2, 2, 20, budget=1000)


@pytest.mark.parametrize("base, P, K, B", [
    ((1, 2, 4, 8), 4, 1, 16),
    ((1, 2, 6, 24), 4, 2, 24),
])
def test_lemma_sweep_finds_nothing(base, P, K, B):
    assert naive.naive_lemma_sweep(base, P, K, B) == []


@pytest.mark.slow
def test_lemma_sweep_binary_eight_positions():
    assert naive.naive_lemma_sweep(tuple(2 ** i for i in range(8)), 8, 3, 256) == []


def test_naive_expand():
    assert naive.naive_expand((1, 2, 6, 24), 17) == [1, 2, 2, 0]
    with pytest.raises(ValueError):
        naive.naive_expand((1, 2, 6, 24), 96)


def test_naive_pi_rejects_non_unions():
    with pytest.raises(ValueError):
        naive.naive_pi([{0}, {1, 2}], {0, 1})


def test_naive_growth_violation():
    assert naive.naive_growth_violation((1, 2, 4, 8), 4) == 1
    assert naive.naive_growth_violation((1, 5, 25, 125), 4) is None
    assert naive.naive_growth_violation((1, 5, 25, 125), 5) == 1


def test_naive_unique_sums():
    assert naive.naive_unique_sums((3, 13, 65))
    assert not naive.naive_unique_sums((1, 2, 4))


def test_naive_condensation():
    blocks = naive.naive_condensation((1, 5, 25, 125, 625), (6, 150))
    assert blocks == [frozenset({0, 1}), frozenset({2, 3})]
    assert naive.naive_condensation((1, 5, 25), (6, 26)) is None


def test_naive_mixed_radix_checks():
    base = (1, 2, 6, 24)
    assert naive.naive_u_zn(base, 1, 2, 7)
    assert not naive.naive_u_zn(base, 1, 2, 3)
    assert not naive.naive_u_zn(base, 7, 2, 7)
    assert naive.naive_telescoping(base, 0, 2)
    assert naive.naive_carry_bound(base, 1, [1], [1, 1])
    assert not naive.naive_carry_bound(base, 1, [1], [1, 2])
    assert not naive.naive_carry_bound(base, 0, [], [0])


@pytest.mark.slow
def test_lemma_sweep_factorial_base():
    assert naive.naive_lemma_sweep((1, 2, 6, 24, 120), 5, 3, 120) == []


# --- Agreement with the optimized paths ---

@pytest.mark.parametrize("terms", [(1, 2, 6, 24), (1, 2, 4, 8, 16), (1, 3, 9, 27)])
def test_expansions_agree(terms):
    base = DivisibleBase.from_terms(terms)
    for n in range(base.capacity):
        assert list(expand(base, n).digits) == naive.naive_expand(terms, n)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=40), min_size=1, max_size=8, unique=True), st.data())
def test_decoding_agrees(x, data):
    cat = enumerate_fs(x)
    z = data.draw(st.integers(min_value=1, max_value=sum(x)))
    supports = naive.naive_decode(x, z)
    if not cat.unique:
        return
    if not supports:
        assert z not in cat
    else:
        assert {frozenset(decode_supp(cat, z))} == supports


def test_threshold_agrees_with_oracle():
    outcome = fs_threshold(2, 2, 12)
    naive_value = next(N for N in range(1, 13) if naive.naive_threshold(2, 2, N))
    assert outcome.value == naive_value == 9


@pytest.mark.parametrize("k, r", [(1, 2), (2, 1), (3, 1)])
def test_small_thresholds_agree_with_oracle(k, r):
    naive_value = next(N for N in range(1, 12) if naive.naive_threshold(k, r, N))
    assert fs_threshold(k, r, 12).value == naive_value


@pytest.mark.parametrize("seed", range(6))
def test_fs_witnesses_agree(seed):
    c = random_coloring(Domain("interval", 14), 2, seed)
    outcome = fs_witness(c, 3)
    found = naive.naive_fs_witness(c.table.tolist(), 14, 3)
    if found is None:
        assert outcome.status == "none"
    else:
        assert (outcome.witness.color, outcome.witness.generators) == found


def _as_tuples(generators):
    return tuple(tuple(g) for g in generators)


@pytest.mark.parametrize("coloring", [
    size_parity(4), min_parity(3),
    random_coloring(Domain("subsets", 4), 2, 1), random_coloring(Domain("subsets", 4), 3, 2),
])
def test_fu_witnesses_agree(coloring):
    n = coloring.domain.size
    for k in (2, 3):
        outcome = fu_witness(coloring, k)
        found = naive.naive_fu_witness(coloring.table.tolist(), n, k)
        if found is None:
            assert outcome.status == "none"
        else:
            assert (outcome.witness.color, _as_tuples(outcome.witness.generators)) == found


@pytest.mark.parametrize("seed", range(4))
def test_pair_witnesses_agree(seed):
    c = random_coloring(Domain("pairs", 4), 2, seed)
    for k in (2, 3):
        outcome = pair_witness(c, k)
        found = naive.naive_pair_witness(c.table.tolist(), 4, k)
        if found is None:
            assert outcome.status == "none"
        else:
            assert (outcome.witness.color, _as_tuples(outcome.witness.generators)) == found


def test_parity_maps_agree():
    family = FUFamily([FinSet.of([0, 7]), FinSet.of([1]), FinSet.of([2, 3]), FinSet.of([4]), FinSet.of([5, 6])])
    members = [set(m) for m in family.members]
    for x_idx in range(1, 32):
        x = family.union_of(i for i in range(5) if x_idx >> i & 1)
        assert set(pi(family, x)) == naive.naive_pi(members, set(x))
        rest = [i for i in range(5) if not x_idx >> i & 1]
        for y_bits in range(1, 1 << len(rest)):
            y = family.union_of(rest[j] for j in range(len(rest)) if y_bits >> j & 1)
            assert set(emerged_indices(family, x, y)) == naive.naive_emerged(members, set(x), set(y))


def test_semigroup_checks_agree():
    for S in semigroup.enumerate_semigroups(2):
        table = S.to_json()
        assert semigroup.idempotents(S) == naive.naive_idempotents(table)
        for A in ({0}, {1}, {0, 1}, set()):
            for s, t, p, q in ((0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)):
                report = semigroup.verify_tricks(S, A, s, t, semigroup.PrincipalPoint(p),
                                                 semigroup.PrincipalPoint(q))
                assert report.results == naive.naive_tricks(table, A, s, t, p, q)


def test_galvin_checks_agree():
    for S in semigroup.enumerate_semigroups(3):
        table = S.to_json()
        for p in semigroup.idempotents(S):
            for bits in range(8):
                A = {i for i in range(3) if bits >> i & 1}
                report = semigroup.galvin_star_check(S, A, semigroup.PrincipalPoint(p))
                assert naive.naive_galvin(table, A, p) == {
                    "member_implies_star": report.member_implies_star,
                    "star_fixpoint": report.star_fixpoint,
                }
