import itertools
import random

import pytest
from hypothesis import given, settings

from gen import diagrams, knots, random_diagram
from vdelta.equivalence import (
    BoundsReport,
    CanonicalModel,
    canonical_model_diagram,
    classical_unknotting_obstruction,
    decide_vdelta_equivalence,
    descend_to_trivial,
    reduce_to_model,
    reidemeister_simplify,
    unknot_sequence,
    vdelta_bounds,
)
from vdelta.errors import UnsupportedError
from vdelta.families import figure12_knot, figure13_knot, model_link
from vdelta.gauss import canonical_code, new_diagram, parse_gauss_code
from vdelta.invariants import odd_writhe, parity_vector
from vdelta.moves import replay

EMPTY = new_diagram(1)


def test_model_diagram():
    assert canonical_model_diagram(CanonicalModel((0, 0, 0))).num_chords == 0
    assert canonical_model_diagram(CanonicalModel((1, 0, 1, 1, 0))) == model_link((1, 0, 1, 1, 0))
    for a in itertools.product((0, 1), repeat=3):
        m = CanonicalModel(a)
        assert parity_vector(canonical_model_diagram(m)) == ((sum(a) % 2,) + a) == m.parity
    with pytest.raises(ValueError):
        CanonicalModel(())


def test_model_is_fixed_point():
    for a in itertools.product((0, 1), repeat=3):
        m, seq = reduce_to_model(model_link(a))
        assert m.a == a and len(seq) == 0


def test_three_parallel_chords():
    d = parse_gauss_code("O1+,O2+,O3+|U1+,U2+,U3+")
    m, seq = reduce_to_model(d)
    assert m.a == (1,)
    assert replay(seq)


def test_reduce_rejects_knots():
    with pytest.raises(UnsupportedError):
        reduce_to_model(parse_gauss_code("O1+,U1+"))


@settings(max_examples=60, deadline=None)
@given(diagrams(min_components=2, max_components=4, max_chords=6))
def test_reduce_matches_parity(d):
    m, seq = reduce_to_model(d)
    assert m.a == parity_vector(d)[1:]
    assert replay(seq)
    assert canonical_code(seq.end) == canonical_code(canonical_model_diagram(m))


def test_decide():
    assert decide_vdelta_equivalence(model_link((1, 0)), model_link((1, 0)))
    assert not decide_vdelta_equivalence(model_link((1, 0)), model_link((0, 1)))
    assert decide_vdelta_equivalence(figure13_knot(1, 2), EMPTY)
    with pytest.raises(ValueError):
        decide_vdelta_equivalence(model_link((1,)), model_link((1, 0)))


def test_decide_unordered():
    a, b = model_link((1, 0)), model_link((0, 1))
    assert decide_vdelta_equivalence(a, b, ordered=False)
    # (0,1,1) is a permutation of (1,1,0)
    assert decide_vdelta_equivalence(model_link((1, 1)), model_link((1, 0)), ordered=False)
    assert not decide_vdelta_equivalence(model_link((1, 1, 1)), model_link((0, 0, 0)), ordered=False)


def test_unknot_small_cases():
    assert len(unknot_sequence(EMPTY)) == 0
    seq = unknot_sequence(parse_gauss_code("O1+,U1+"))
    assert [s.kind for s in seq.steps] == ["R1_delete"] and seq.vd_cost == 0


@settings(max_examples=60, deadline=None)
@given(knots(max_chords=8))
def test_unknot_replays(d):
    seq = unknot_sequence(d)
    assert replay(seq) and seq.end.num_chords == 0


@settings(max_examples=30, deadline=None)
@given(knots(max_chords=5), knots(max_chords=5))
def test_bounds_are_consistent(d1, d2):
    r = vdelta_bounds(d1, d2)
    assert r.lower <= r.upper
    assert replay(r.certificate)
    assert r.certificate.vd_cost == r.upper
    assert canonical_code(r.certificate.end) == canonical_code(d2)


def test_bounds_identity_and_json():
    d = figure12_knot(1, 1)
    r = vdelta_bounds(d, d)
    assert (r.lower, r.upper) == (0, 0)
    data = r.to_json()
    assert data["lower"] == 0 and data["upper"] == 0 and data["certificate"]["steps"] == []
    assert BoundsReport(1, None).to_json()["upper"] == "unbounded"


def test_bounds_for_families():
    for m in (1, 2):
        r = vdelta_bounds(figure12_knot(m, 2), EMPTY)
        assert (r.lower, r.upper) == (m, m)
        r = vdelta_bounds(figure13_knot(m, 2), EMPTY)
        assert (r.lower, r.upper) == (m, m)


def test_descent_respects_cost_cap():
    assert descend_to_trivial(figure12_knot(2, 1), 1) is None
    found = descend_to_trivial(figure12_knot(2, 1), 2)
    assert found is not None and found.vd_cost == 2 and replay(found)


def test_simplify_keeps_invariants():
    rng = random.Random(5)
    for _ in range(30):
        d = random_diagram(rng, 1, 6)
        seq = reidemeister_simplify(d)
        assert replay(seq) and seq.vd_cost == 0
        assert odd_writhe(seq.end) == odd_writhe(d)


def test_obstruction():
    assert classical_unknotting_obstruction(figure13_knot(2, 3))
    assert not classical_unknotting_obstruction(EMPTY)
    assert not classical_unknotting_obstruction(figure12_knot(2, 2))
