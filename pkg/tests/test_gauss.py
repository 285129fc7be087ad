import random

import pytest
from hypothesis import given

from gen import all_diagrams, brute_canonical, diagrams
from vdelta.errors import ChordNotFoundError, GaussParseError
from vdelta.gauss import (
    GaussDiagram,
    canonical_code,
    canonical_form,
    is_self_chord,
    isomorphism,
    new_diagram,
    parse_gauss_code,
    serialize,
)


def test_new_diagram():
    assert new_diagram(1).num_chords == 0
    assert new_diagram(3).n_components == 3
    with pytest.raises(ValueError):
        new_diagram(0)


def test_parse_kink_and_link():
    d = parse_gauss_code("O1+,U1+")
    assert d.is_knot and d.num_chords == 1 and d.sign(1) == 1
    link = parse_gauss_code("O1+|U1+")
    assert link.n_components == 2 and not is_self_chord(link, 1)
    assert is_self_chord(d, 1)


def test_parse_ignores_whitespace_and_reads_empty_components():
    d = parse_gauss_code(" O1+, O2+ | U1+ | 0 | U2+ ")
    assert serialize(d) == "O1+,O2+|U1+|0|U2+"
    assert parse_gauss_code("") == new_diagram(1)
    assert parse_gauss_code("0") == new_diagram(1)


@pytest.mark.parametrize(
    "text, where",
    [
        ("O1+,O1+", 4),  # duplicate role
        ("O1+,U1-", 4),  # sign mismatch
        ("O1+", 0),  # single occurrence
        ("O1+,X2+", 4),  # malformed token
        ("O1+,U1+,", 8),  # trailing comma
    ],
)
def test_parse_errors_report_position(text, where):
    with pytest.raises(GaussParseError) as info:
        parse_gauss_code(text)
    assert info.value.position == where


def test_unknown_chord():
    with pytest.raises(ChordNotFoundError):
        is_self_chord(parse_gauss_code("O1+,U1+"), 7)


def test_serialize_empty_knot():
    assert serialize(new_diagram(1)) == ""
    assert serialize(new_diagram(2)) == "0|0"


def test_three_chord_round_trip():
    text = "O1+,U2+,O3+,U1+,O2+,U3+"
    assert serialize(parse_gauss_code(text)) == text


def test_canonical_code_examples():
    assert canonical_code(parse_gauss_code("O1+,U1+")) == canonical_code(parse_gauss_code("U1+,O1+"))
    assert canonical_code(parse_gauss_code("O1+,U1+")) != canonical_code(parse_gauss_code("O1-,U1-"))
    a = parse_gauss_code("O1+,U3-,O3-,U1+")
    b = parse_gauss_code("O3+,U1-,O1-,U3+")
    assert canonical_code(a) == canonical_code(b)


def test_component_order_matters():
    a = parse_gauss_code("O1+|U1+|0")
    b = parse_gauss_code("O1+|0|U1+")
    assert canonical_code(a) != canonical_code(b)


def _rotate_relabel(d, rng):
    ids = d.chord_ids
    perm = ids[:]
    rng.shuffle(perm)
    ren = {old: new + 10 for old, new in zip(ids, perm)}
    comps = []
    for comp in d.components:
        k = rng.randrange(len(comp)) if comp else 0
        comps.append([(ren[c], r) for c, r in comp[k:] + comp[:k]])
    return GaussDiagram(comps, {ren[c]: s for c, s in d.signs.items()})


@given(diagrams(max_chords=6))
def test_canonical_code_invariance(d):
    rng = random.Random(serialize(d))
    e = _rotate_relabel(d, rng)
    assert canonical_code(d) == canonical_code(e)
    assert canonical_form(e) == canonical_form(d)
    assert parse_gauss_code(canonical_code(d)) == canonical_form(d)
    iso = isomorphism(d, e)
    assert iso is not None


@given(diagrams(max_chords=6))
def test_round_trip(d):
    assert parse_gauss_code(serialize(d)) == d


def test_canonical_code_matches_brute_force_classes():
    # the partition by canonical_code equals the partition by exhaustive
    # minimisation over rotations and relabellings
    for n in (1, 2):
        for k in range(0, 4 if n == 1 else 3):
            by_code, by_brute = {}, {}
            for d in all_diagrams(n, k):
                by_code.setdefault(canonical_code(d), set()).add(serialize(d))
                by_brute.setdefault(brute_canonical(d), set()).add(serialize(d))
            assert sorted(map(sorted, by_code.values())) == sorted(map(sorted, by_brute.values()))


def test_accessors():
    d = parse_gauss_code("O1+,U2-,O2-,U1+")
    assert d.locate(2, "O") == (0, 2)
    ch = d.chord(1)
    assert ch.over.position == 0 and ch.under.position == 3 and ch.over.component == 1
    assert d.next_id() == 3
    assert len(list(d.endpoints())) == 4
