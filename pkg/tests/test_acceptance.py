"""The eleven acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""

from __future__ import annotations

import itertools
import random

import pytest

from gen import all_diagrams, random_diagram
from vdelta import triangles
from vdelta.equivalence import (
    classical_unknotting_obstruction,
    decide_vdelta_equivalence,
    reduce_to_model,
    unknot_sequence,
    vdelta_bounds,
)
from vdelta.families import figure12_knot, figure13_knot, figure13_triangles, model_link
from vdelta.gauss import GaussDiagram, canonical_code, new_diagram, parse_gauss_code, serialize
from vdelta.invariants import f_polynomial, indices, n_writhe, odd_writhe, parity_vector
from vdelta.laurent import LaurentPolynomial as L
from vdelta.moves import MoveInstance, apply, enumerate_sites, replay, site_chords
from vdelta.search import SearchBudget, bfs_distance, enumerate_classes

EMPTY = new_diagram(1)


@pytest.fixture
def criterion(record_property):
    def tag(number: int, title: str) -> None:
        record_property("criterion", (number, title))

    return tag


def jones_formula(m: int, s: int) -> L:
    sum_i = L({8 * i: 1 for i in range(1, m + 1)})
    inner = L({8 * s - 2: -1}) + L({4 * j: (-1) ** j for j in range(1, 2 * s)})
    return L({8 * m: 1}) + L({-4: 1, -8: -1}) * sum_i * inner


def random_vd_insertion(rng: random.Random, d: GaussDiagram) -> MoveInstance:
    kind = rng.choice(("delta", "delta_prime"))
    signs, segs = rng.choice(triangles.labelled_patterns(kind))
    site = list(signs)
    for seg in segs:
        comp = rng.randrange(d.n_components)
        site += [comp, rng.randint(0, len(d.components[comp]))]
        for c, r in seg:
            site += [c, 0 if r == "O" else 1]
    return MoveInstance("VD_vr" if kind == "delta" else "VD_vr_prime", tuple(site))


def test_c01_jones_formula(criterion):
    criterion(1, "Jones formula and max degree 8m+8s-6 for figure12_knot, m,s in 1..3")
    for m, s in itertools.product((1, 2, 3), repeat=2):
        f = f_polynomial(figure12_knot(m, s))
        assert f == jones_formula(m, s), (m, s)
        assert f.max_degree() == 8 * m + 8 * s - 6


def test_c02_index_fixtures(criterion):
    criterion(2, "figure13_knot(1,s) indices for s in 2..4")
    for s in (2, 3, 4):
        d = figure13_knot(1, s)
        ind = indices(d)
        a1, a2, a3 = figure13_triangles(1, s)[0]
        assert (ind[a1], ind[a2], ind[a3]) == (1, 2 * s, -2 * s - 1)
        bs = [c for c in d.chord_ids if c not in (a1, a2, a3)]
        assert len(bs) == 2 * s and all(ind[b] == 2 for b in bs)


def test_c03_writhe_table(criterion):
    criterion(3, "figure13_knot n-writhe table, J = 2m, J_1 != J_-1")
    for m, s in itertools.product((1, 2), (2, 3)):
        d = figure13_knot(m, s)
        expected = {2 * s: -m, 2: 2 * m * s, 1: m, -2 * s - 1: m}
        assert n_writhe(d) == dict(sorted(expected.items()))
        assert odd_writhe(d) == 2 * m
        assert classical_unknotting_obstruction(d)


def test_c04_odd_writhe_parity(criterion):
    criterion(4, "J even on 10,000 random knots; J(figure12_knot) = -2m")
    rng = random.Random(4)
    for _ in range(10_000):
        d = random_diagram(rng, 1, rng.randint(0, 10))
        assert odd_writhe(d) % 2 == 0
    for m, s in itertools.product((1, 2, 3), repeat=2):
        assert odd_writhe(figure12_knot(m, s)) == -2 * m


def test_c05_unknotting_numbers(criterion):
    criterion(5, "vdelta_bounds = (m, m) with replaying certificates for both families")
    cases = [(figure12_knot(m, s), m) for m in (1, 2, 3) for s in (1, 2, 3)]
    cases += [(figure13_knot(m, s), m) for m in (1, 2) for s in (2, 3)]
    for d, m in cases:
        r = vdelta_bounds(d, EMPTY)
        assert (r.lower, r.upper) == (m, m), serialize(d)
        assert replay(r.certificate)
        assert r.certificate.vd_cost == m


def test_c06_search_cross_check(criterion):
    criterion(6, "bfs_distance(figure13_knot(1,2), empty) = 1 with a verified certificate")
    r = bfs_distance(figure13_knot(1, 2), EMPTY, SearchBudget(max_chords=9, max_vd_moves=2))
    assert r.found and r.distance == 1
    assert replay(r.certificate) and r.certificate.vd_cost == 1


def test_c07_vd_step_properties(criterion):
    criterion(7, "VD sites: 0 or 2 odd-index chords, |dJ| in {0,2} (1,000 diagrams)")
    rng = random.Random(7)
    checked = 0
    for _ in range(1000):
        d = random_diagram(rng, 1, rng.randint(0, 6))
        d = apply(d, random_vd_insertion(rng, d))
        sites = enumerate_sites(d, ("VD_rv", "VD_rv_prime"))
        assert sites
        ind = indices(d)
        for m in sites:
            odd = sum(1 for c in site_chords(d, m) if ind[c] % 2)
            assert odd in (0, 2)
            assert abs(odd_writhe(d) - odd_writhe(apply(d, m))) in (0, 2)
            checked += 1
    assert checked >= 1000


def test_c08_reidemeister_invariance(criterion):
    criterion(8, "R moves keep J_n, parities, f (1,000 pairs); VD keeps parities")
    rng = random.Random(8)
    kinds = ("R1_insert", "R1_delete", "R2_insert", "R2_delete", "R3")
    pairs = 0
    while pairs < 1000:
        n = rng.randint(1, 3)
        d = random_diagram(rng, n, rng.randint(0, 5))
        if rng.random() < 0.5:
            # plant deletable structure so every kind gets exercised
            d = apply(d, rng.choice(enumerate_sites(d, rng.choice(("R1_insert", "R2_insert")))))
        sites = enumerate_sites(d, rng.choice(kinds), max_chords=7)
        if not sites:
            continue
        e = apply(d, rng.choice(sites))
        pairs += 1
        assert parity_vector(e) == parity_vector(d)
        assert f_polynomial(e) == f_polynomial(d)
        if n == 1:
            assert n_writhe(e) == n_writhe(d)
        vd = random_vd_insertion(rng, d)
        grown = apply(d, vd)
        assert parity_vector(grown) == parity_vector(d)
        for m in enumerate_sites(grown, ("VD_rv", "VD_rv_prime")):
            assert parity_vector(apply(grown, m)) == parity_vector(d)


def test_c09_link_classification(criterion):
    criterion(9, "decider on models, 2^(n-1) classes, reduce_to_model on 500 random links")
    for n in (2, 3, 4):
        models = list(itertools.product((0, 1), repeat=n - 1))
        for a, b in itertools.product(models, repeat=2):
            assert decide_vdelta_equivalence(model_link(a), model_link(b)) == (a == b)
        classes = enumerate_classes(n, SearchBudget(max_chords=n, max_vd_moves=1, max_states=20_000))
        assert len(classes) == 2 ** (n - 1)
    rng = random.Random(9)
    for _ in range(500):
        d = random_diagram(rng, rng.randint(2, 4), rng.randint(0, 8))
        p = parity_vector(d)
        assert sum(p) % 2 == 0
        model, seq = reduce_to_model(d)
        assert model.a == p[1:]
        assert replay(seq)


def test_c10_knot_unknotting(criterion):
    criterion(10, "unknot_sequence replays to the empty diagram on 1,000 random knots")
    rng = random.Random(10)
    for _ in range(1000):
        d = random_diagram(rng, 1, rng.randint(0, 8))
        seq = unknot_sequence(d)
        assert replay(seq)
        assert seq.end.num_chords == 0


def _relabel(d: GaussDiagram, perm) -> GaussDiagram:
    ren = dict(zip(d.chord_ids, perm))
    return GaussDiagram(
        [[(ren[c], r) for c, r in comp] for comp in d.components],
        {ren[c]: s for c, s in d.signs.items()},
    )


def test_c11_round_trip(criterion):
    criterion(11, "parse/serialize round trip, rotation/relabel invariance, all diagrams <= 3 chords")
    total = 0
    for n in (1, 2, 3):
        for k in range(4):
            for d in all_diagrams(n, k):
                total += 1
                text = serialize(d)
                assert parse_gauss_code(text) == d
                code = canonical_code(d)
                for ci, comp in enumerate(d.components):
                    for r in range(1, len(comp)):
                        comps = list(d.components)
                        comps[ci] = comp[r:] + comp[:r]
                        assert canonical_code(GaussDiagram(comps, d.signs)) == code
                ids = list(range(1, k + 1))
                for perm in itertools.permutations([i + 4 for i in ids]):
                    assert canonical_code(_relabel(d, perm)) == code
    assert total > 0
