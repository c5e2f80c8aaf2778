from fractions import Fraction

import pytest

from conftest import FIELD_GRID, geom
from nikodym.bound2d import (
    Branch,
    asymptotic_floor,
    audit,
    direction_classes,
    nikodym_2d_lower_bound,
)
from nikodym.errors import InvalidWitness
from nikodym.search import min_nikodym
from nikodym.sets import PointSet
from nikodym.verify import is_nikodym


def _branches(q):
    s = q // 3
    return q * q - s * (q - 1) - 2 * q, 3 * s * (q - 1 - s)


@pytest.mark.parametrize("q,expected", [(2, 0), (3, 1), (4, 5), (5, 9), (7, 23), (8, 30), (9, 39)])
def test_lower_bound_values(q, expected):
    # q=3: min(9-2-6, 3*1*1); q=9: min(81-24-18, 9*5)
    assert nikodym_2d_lower_bound(q) == expected == max(0, min(_branches(q)))


def test_asymptotic_floor_values():
    assert asymptotic_floor(9) == (39, 35)
    assert asymptotic_floor(3) == (1, 1)
    a, b = asymptotic_floor(300)
    assert abs(a - 60000) <= 300 * 5 and abs(b - 60000) <= 300 * 5
    assert isinstance(a, Fraction)


def test_lower_bound_dominates_envelope():
    for q in range(2, 400):
        assert nikodym_2d_lower_bound(q) >= Fraction(2 * q * q, 3) - Fraction(7 * q, 3)
        if q >= 3:
            small, large = _branches(q)
            e1, e2 = asymptotic_floor(q)
            assert small >= e1 and large >= e2


def test_single_point_complement_ag23():
    g = geom(3)
    b = PointSet.full(g).remove(4)
    a = audit(b, is_nikodym(b).witnesses)
    assert a.branch is Branch.SMALL_COMPLEMENT
    assert a.threshold == 8 and a.bound == 1 and a.size == 8 and a.verdict
    assert a.report().splitlines()[-1] == "branch=small_complement q=3 s=1 size=8 bound=1 verdict=holds"


def test_degenerate_q2():
    g = geom(2)
    b = PointSet.from_points(g, [0])
    a = audit(b, is_nikodym(b).witnesses)
    assert a.s == 0 and a.branch is Branch.SMALL_COMPLEMENT and a.bound == 0 and a.verdict


@pytest.mark.parametrize("q", FIELD_GRID)
def test_point_complements(q):
    g = geom(q)
    for x in [0, g.num_points // 2, g.num_points - 1]:
        b = PointSet.full(g).remove(x)
        a = audit(b, is_nikodym(b).witnesses)
        assert a.verdict and a.size >= nikodym_2d_lower_bound(q)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_search_witness_audits(q):
    g = geom(q)
    b = min_nikodym(g).witness
    w = is_nikodym(b).witnesses
    dc = direction_classes(b, w)
    assert sum(dc.sizes) == g.num_points - b.size
    assert dc.sizes == sorted(dc.sizes, reverse=True) and len(dc.sizes) == q + 1
    a = audit(b, w)
    assert a.verdict and b.size >= nikodym_2d_lower_bound(q)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_forced_large_branch(q):
    g = geom(q)
    b = min_nikodym(g).witness
    a = audit(b, is_nikodym(b).witnesses, force_large=True)
    s = q // 3
    assert a.branch is Branch.LARGE_COMPLEMENT and a.forced
    assert [len(c) for c in a.chosen] == [s, s, s]
    assert a.union_size >= 3 * s * (q - 1 - s) == a.bound
    # per-line counts respect the (q-1), (q-1-s), (q-1-2s) deductions
    for i, t in enumerate(a.term_counts):
        assert t >= q - 1 - (i // s) * s
    xs, ys, zs = a.chosen
    for u in xs:
        for v in xs:
            if u != v:
                assert g.line_masks[u] & g.line_masks[v] == 0
    assert "union=" in a.summary()


def test_invalid_witness():
    g = geom(3)
    b = PointSet.full(g).remove(0)
    with pytest.raises(InvalidWitness):
        audit(b, {})
    with pytest.raises(ValueError):
        audit(PointSet.full(geom(2, 3)), {})
