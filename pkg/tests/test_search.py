import pytest

from vdelta.families import figure12_knot, figure13_knot
from vdelta.gauss import new_diagram, parse_gauss_code
from vdelta.invariants import odd_writhe
from vdelta.moves import replay
from vdelta.search import SearchBudget, bfs_distance, enumerate_classes

EMPTY = new_diagram(1)


def test_same_diagram_is_distance_zero():
    d = figure12_knot(1, 1)
    r = bfs_distance(d, d, SearchBudget(3, 1, 100))
    assert r.found and r.distance == 0 and len(r.certificate) == 0


def test_reidemeister_only_is_distance_zero():
    r = bfs_distance(parse_gauss_code("O1+,O2-,U2-,U1+"), EMPTY, SearchBudget(2, 1, 1000))
    assert r.found and r.distance == 0


def test_figure12_distance_one():
    d = figure12_knot(1, 1)
    r = bfs_distance(d, EMPTY, SearchBudget(5, 2, 50000))
    assert r.found and r.distance == 1
    assert r.distance >= abs(odd_writhe(d)) // 2
    assert replay(r.certificate) and r.certificate.vd_cost == 1


def test_monotone_in_budget():
    d = figure13_knot(1, 2)
    small = bfs_distance(d, EMPTY, SearchBudget(7, 1, 50000))
    large = bfs_distance(d, EMPTY, SearchBudget(9, 2, 50000))
    assert small.found and large.found and large.distance <= small.distance


def test_budget_exhaustion_flags():
    d = figure12_knot(1, 1)
    r = bfs_distance(d, EMPTY, SearchBudget(3, 0, 100000))
    assert not r.found and r.frontier_exhausted
    r = bfs_distance(d, EMPTY, SearchBudget(9, 2, 1))
    assert not r.found and not r.frontier_exhausted
    r = bfs_distance(d, EMPTY, SearchBudget(2, 2, 100))
    assert not r.found


def test_component_mismatch():
    with pytest.raises(ValueError):
        bfs_distance(EMPTY, new_diagram(2), SearchBudget())


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(-1, 1, 1)


def test_deterministic():
    d = figure13_knot(1, 2)
    a = bfs_distance(d, EMPTY, SearchBudget(9, 2, 50000))
    b = bfs_distance(d, EMPTY, SearchBudget(9, 2, 50000))
    assert a.to_json() == b.to_json()


def test_classes():
    assert [p for p, _ in enumerate_classes(2, SearchBudget(2, 1, 5000))] == [(0, 0), (1, 1)]
    assert len(enumerate_classes(3, SearchBudget(3, 1, 5000))) == 4
    assert len(enumerate_classes(2, SearchBudget(0, 1, 10))) == 1
    with pytest.raises(ValueError):
        enumerate_classes(1, SearchBudget())
