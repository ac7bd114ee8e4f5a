from itertools import product

import pytest

from fuforge.core.finset import FinSet
from fuforge.core.fs_engine import enumerate_condensations
from fuforge.core.parity import (
    FUFamily, classify_gaps, construct_xyz, cover_map_for, emerged_indices, parity_additive, pi,
)
from fuforge.errors import BadCover, InvalidFamily, NotInFU, OutOfRange, TooShort, Undefined


def fs(*elements):
    return FinSet.of(elements)


def u(family, *indices):
    return family.union_of(indices)


S4, S6 = FUFamily.singletons(4), FUFamily.singletons(6)


def disjoint_pairs(n):
    for labels in product((0, 1, 2), repeat=n):
        x = FinSet.of(i for i, l in enumerate(labels) if l == 1)
        y = FinSet.of(i for i, l in enumerate(labels) if l == 2)
        if x and y:
            yield x, y


# --- Families ---

def test_family_validation():
    with pytest.raises(InvalidFamily):
        FUFamily([fs(0, 1), fs(1, 2)])
    with pytest.raises(InvalidFamily):
        FUFamily([fs(0), FinSet.empty()])


def test_family_from_json():
    family = FUFamily.from_json("[[0,1],[3],[70]]")
    assert len(family) == 3
    assert family[2] == FinSet.of([70], universe=71)
    assert family.ordered
    assert family.to_json() == [[0, 1], [3], [70]]
    for text in ("[[0,1],[1]]", "[0,1]", "not json", '[["a"],[1]]', "[[true]]", "[[-1]]", "[[1.5]]"):
        with pytest.raises(InvalidFamily):
            FUFamily.from_json(text)


def test_s_supp():
    family = FUFamily([fs(0, 1), fs(4), fs(2, 3)])
    assert not family.ordered
    assert family.s_supp(fs(0, 1, 2, 3)) == fs(0, 2)
    assert family.s_supp(FinSet.empty()) == FinSet.empty()
    with pytest.raises(NotInFU):
        family.s_supp(fs(0, 4))


# --- pi ---

@pytest.mark.parametrize("indices, expected", [((0, 1, 3), (0,)), ((2,), ()), ((0, 1, 2), (0, 1))])
def test_pi(indices, expected):
    assert pi(S4, u(S4, *indices)) == fs(*expected)


def test_pi_with_wider_members():
    family = FUFamily([fs(0, 5), fs(1), fs(2, 3)])
    assert pi(family, fs(0, 1, 5)) == fs(0)


# --- Additivity and emerged indices ---

def test_parity_additive():
    x, t = u(S6, 0, 1), u(S6, 4, 5)
    assert parity_additive(S6, x, t)
    assert pi(S6, x | t) == fs(0, 4)
    assert not parity_additive(S6, u(S6, 0), u(S6, 1))
    assert parity_additive(S6, u(S6, 0, 2), u(S6, 4))


def test_parity_additive_needs_disjoint_arguments():
    with pytest.raises(Undefined):
        parity_additive(S6, u(S6, 0, 1), u(S6, 1))


@pytest.mark.parametrize("x, y, expected", [((0,), (1,), (0,)), ((0, 2), (1,), (0, 1)), ((0,), (2,), ())])
def test_emerged_indices(x, y, expected):
    assert emerged_indices(S4, u(S4, *x), u(S4, *y)) == fs(*expected)


@pytest.mark.parametrize("n", range(1, 8))
def test_pi_decomposes_over_emerged_indices(n):
    family = FUFamily.singletons(n)
    for x, y in disjoint_pairs(n):
        emerged = emerged_indices(family, x, y)
        px, py = pi(family, x), pi(family, y)
        assert pi(family, x | y) == px | py | emerged
        assert px.isdisjoint(py) and px.isdisjoint(emerged) and py.isdisjoint(emerged)
        if parity_additive(family, x, y):
            assert not emerged


# --- Gaps ---

def test_classify_gaps():
    [gap] = classify_gaps(S4, u(S4, 0, 3), u(S4, 1, 2))
    assert (gap.start, gap.end, gap.kind) == (1, 2, "both")
    [gap] = classify_gaps(S4, u(S4, 0, 3), u(S4, 1))
    assert gap.kind == "begin-only"
    [gap] = classify_gaps(S4, u(S4, 0, 3), u(S4, 2))
    assert gap.kind == "end-only"
    assert classify_gaps(S4, u(S4, 0, 1), u(S4, 2)) == []
    assert gap.to_json() == {"gap": [1, 2], "type": "end-only"}


def test_single_index_gap_filled_is_both():
    [gap] = classify_gaps(S4, u(S4, 0, 2), u(S4, 1))
    assert (gap.start, gap.end, gap.kind) == (1, 1, "both")


@pytest.mark.parametrize("n", range(2, 7))
def test_gap_bookkeeping_counts_emerged_indices(n):
    family = FUFamily.singletons(n)
    weight = {"begin-only": 1, "end-only": 1, "both": 2, "neither": 0}
    for x, y in disjoint_pairs(n):
        inside = emerged_indices(family, x, y) & FinSet.of(range(x.min, x.max))
        gaps = classify_gaps(family, x, y)
        assert len(inside) == sum(weight[g.kind] for g in gaps)
        single_ended = sum(g.kind in ("begin-only", "end-only") for g in gaps)
        assert len(inside) % 2 == single_ended % 2


# --- The x / y / z construction ---

def test_construct_xyz():
    t = [u(S6, 0, 2), u(S6, 1), u(S6, 3, 4, 5)]
    report = construct_xyz(S6, t, 0)
    assert report.x == fs(0, 2)
    assert report.b1 == 2
    assert report.y == fs(3, 4, 5)
    assert report.z == fs(1)
    assert report.pi_xy == fs(2, 3, 4)
    assert report.pi_xz == fs(0, 1)
    assert (report.emerged_xy, report.emerged_xz) == (0, 2)
    assert report.homogeneous
    assert report.clash
    assert report.to_json()["verdict"] == "parity clash"


def test_construct_xyz_with_trivial_condensation():
    report = construct_xyz(S6, list(S6.members), 0)
    assert report.x == fs(0)
    assert report.b1 == 0
    assert report.y == fs(1)
    assert report.z_empty
    assert report.pi_xy == fs(0)
    assert report.clash


def test_construct_xyz_too_short():
    t = [u(S6, 0, 5), u(S6, 1, 2, 3, 4)]
    with pytest.raises(TooShort):
        construct_xyz(S6, t, 0)


def test_construct_xyz_bad_arguments():
    t = [u(S6, 0), u(S6, 1, 2)]
    with pytest.raises(BadCover):
        construct_xyz(S6, t, 0)
    with pytest.raises(BadCover):
        cover_map_for(S6, t, 0)
    full = list(S6.members)
    with pytest.raises(BadCover):
        construct_xyz(S6, full, 0, cover_map={i: 0 for i in range(6)})
    with pytest.raises(OutOfRange):
        construct_xyz(S6, full, 6)


def test_explicit_cover_map_is_accepted():
    t = [u(S6, 0, 2), u(S6, 1), u(S6, 3, 4, 5)]
    cover = {0: 0, 1: 1, 2: 0, 3: 2, 4: 2, 5: 2}
    assert construct_xyz(S6, t, 0, cover_map=cover) == construct_xyz(S6, t, 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_homogeneous_condensations_always_clash(n):
    family = FUFamily.singletons(n)
    for blocks in enumerate_condensations(n, n):
        t = [family.union_of(block) for block in blocks]
        covered = FinSet.empty()
        for block in blocks:
            covered = covered | block
        for b in range(n):
            if any(i not in covered for i in range(b, n)):
                continue
            try:
                report = construct_xyz(family, t, b)
            except TooShort:
                continue
            total = (len(emerged_indices(family, report.x, report.y))
                     + len(emerged_indices(family, report.x, report.z)))
            assert total % 2 == 1
            if report.homogeneous:
                assert report.clash
