import pytest
from hypothesis import given, settings

from gen import brute_bracket_terms, brute_index, diagrams, knots
from vdelta.errors import ResourceError, UnsupportedError
from vdelta.gauss import new_diagram, parse_gauss_code
from vdelta.invariants import (
    f_polynomial,
    index,
    indices,
    kauffman_bracket,
    n_writhe,
    odd_writhe,
    parity_vector,
    writhe,
)
from vdelta.laurent import A, LaurentPolynomial as L


def test_trivial_values():
    e = new_diagram(1)
    assert odd_writhe(e) == 0 and n_writhe(e) == {} and writhe(e) == 0
    assert f_polynomial(e) == 1
    assert parity_vector(new_diagram(3)) == (0, 0, 0)


def test_kinks_normalize_to_one():
    assert kauffman_bracket(parse_gauss_code("O1+,U1+")) == -(A**3)
    assert kauffman_bracket(parse_gauss_code("U1+,O1+")) == -(A**3)
    assert kauffman_bracket(parse_gauss_code("O1-,U1-")) == -(A**-3)
    for code in ("O1+,U1+", "O1-,U1-", "U1-,O1-"):
        assert f_polynomial(parse_gauss_code(code)) == 1
    assert index(parse_gauss_code("O1+,U1+"), 1) == 0


def test_classical_knots():
    # right-handed trefoil and figure-eight
    trefoil = parse_gauss_code("O1+,U2+,O3+,U1+,O2+,U3+")
    assert f_polynomial(trefoil) == L({-4: 1, -12: 1, -16: -1})
    eight = parse_gauss_code("O1+,U2+,O3-,U4-,O2+,U1+,O4-,U3-")
    assert f_polynomial(eight) == L({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})
    assert odd_writhe(trefoil) == 0


def test_virtual_trefoil():
    d = parse_gauss_code("O1+,O2+,U1+,U2+")
    assert indices(d) == {1: -1, 2: 1}
    assert n_writhe(d) == {-1: 1, 1: 1}
    assert odd_writhe(d) == 2
    assert f_polynomial(d) == L({-4: 1, -6: 1, -10: -1})


def test_index_needs_a_knot():
    with pytest.raises(UnsupportedError):
        indices(parse_gauss_code("O1+|U1+"))


def test_budget():
    d = parse_gauss_code("O1+,U2+,O3+,U1+,O2+,U3+")
    with pytest.raises(ResourceError):
        f_polynomial(d, budget=2)


def test_parity_examples():
    assert parity_vector(parse_gauss_code("O1+|U1+")) == (1, 1)
    assert parity_vector(parse_gauss_code("O1+,O2+,O3+|U1+|0|U2+|U3+|0")) == (1, 1, 0, 1, 1, 0)


@settings(max_examples=80, deadline=None)
@given(knots(max_chords=7))
def test_index_matches_walk(d):
    assert indices(d) == {c: brute_index(d, c) for c in d.chord_ids}


@settings(max_examples=80, deadline=None)
@given(knots(max_chords=9))
def test_odd_writhe_is_even(d):
    assert odd_writhe(d) % 2 == 0
    assert 0 not in n_writhe(d)


@settings(max_examples=60, deadline=None)
@given(diagrams(max_chords=5))
def test_bracket_matches_union_find_oracle(d):
    assert kauffman_bracket(d).terms == brute_bracket_terms(d)


@settings(max_examples=60, deadline=None)
@given(diagrams(max_chords=6, max_components=4))
def test_parity_sum_even(d):
    assert sum(parity_vector(d)) % 2 == 0
