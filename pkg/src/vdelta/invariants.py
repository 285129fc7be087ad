"""Chord index, n-writhes, odd writhe, parities and the f-polynomial."""

from __future__ import annotations

from collections import Counter

from .errors import ResourceError, UnsupportedError
from .gauss import OVER, UNDER, GaussDiagram
from .laurent import LaurentPolynomial

__all__ = [
    "DEFAULT_STATE_BUDGET",
    "index",
    "indices",
    "n_writhe",
    "odd_writhe",
    "writhe",
    "parity_vector",
    "kauffman_bracket",
    "f_polynomial",
]

DEFAULT_STATE_BUDGET = 24


def _require_knot(d: GaussDiagram) -> None:
    if d.n_components != 1:
        raise UnsupportedError("index and n-writhes are defined for knot diagrams only")


def indices(d: GaussDiagram) -> dict[int, int]:
    """Index of every chord of a knot diagram.

    Endpoint weights: the terminal (Under) endpoint of a chord of sign e
    carries +e, the initial (Over) endpoint carries -e.  The index of a chord
    sums the weights strictly inside the arc running from its Over endpoint
    forward to its Under endpoint.
    """
    _require_knot(d)
    (comp,) = d.components
    weights = [d.sign(c) if r == UNDER else -d.sign(c) for c, r in comp]
    prefix = [0]
    for w in weights:
        prefix.append(prefix[-1] + w)
    total = prefix[-1]  # always 0
    out = {}
    for c in d.chord_ids:
        _, i = d.locate(c, OVER)
        _, j = d.locate(c, UNDER)
        if i < j:
            out[c] = prefix[j] - prefix[i + 1]
        else:
            out[c] = total - prefix[i + 1] + prefix[j]
    return out


def index(d: GaussDiagram, chord: int) -> int:
    _require_knot(d)
    d.sign(chord)  # raises for unknown ids
    return indices(d)[chord]


def n_writhe(d: GaussDiagram) -> dict[int, int]:
    """``{n: J_n}`` over nonzero n with nonzero J_n."""
    table: Counter[int] = Counter()
    for c, ind in indices(d).items():
        if ind != 0:
            table[ind] += d.sign(c)
    return {n: v for n, v in sorted(table.items()) if v}


def odd_writhe(d: GaussDiagram) -> int:
    return sum(v for n, v in n_writhe(d).items() if n % 2)


def writhe(d: GaussDiagram) -> int:
    return sum(d.signs.values())


def parity_vector(d: GaussDiagram) -> tuple[int, ...]:
    """Parity of the number of nonself-chord endpoints on each component.

    Self-chords put two endpoints on one circle, so this is also the parity of
    the total endpoint count per circle.
    """
    return tuple(len(comp) % 2 for comp in d.components)


def _loop_count_factory(d: GaussDiagram):
    """Return ``(chords, oriented_of, count)`` where ``count(mask)`` gives the
    number of loops when chord ``k`` gets the oriented smoothing iff bit k is
    set."""
    slots = []
    nxt = []
    offset = 0
    for comp in d.components:
        n = len(comp)
        for p in range(n):
            slots.append(comp[p])
            nxt.append(offset + (p + 1) % n)
        offset += n
    empty = sum(1 for comp in d.components if not comp)
    where: dict[int, list[int]] = {}
    for s, (c, _) in enumerate(slots):
        where.setdefault(c, []).append(s)
    chords = d.chord_ids
    pairs = [tuple(where[c]) for c in chords]
    total = len(slots)

    # point 2s is "arriving at slot s", 2s+1 is "leaving slot s"
    arc = [0] * (2 * total)
    for s in range(total):
        arc[2 * s + 1] = 2 * nxt[s]
        arc[2 * nxt[s]] = 2 * s + 1

    def count(mask: int) -> int:
        join = [0] * (2 * total)
        for k, (x, y) in enumerate(pairs):
            if mask >> k & 1:
                join[2 * x], join[2 * y + 1] = 2 * y + 1, 2 * x
                join[2 * y], join[2 * x + 1] = 2 * x + 1, 2 * y
            else:
                join[2 * x], join[2 * y] = 2 * y, 2 * x
                join[2 * x + 1], join[2 * y + 1] = 2 * y + 1, 2 * x + 1
        seen = bytearray(2 * total)
        loops = 0
        for start in range(2 * total):
            if seen[start]:
                continue
            loops += 1
            p = start
            while not seen[p]:
                seen[p] = 1
                q = join[p]
                seen[q] = 1
                p = arc[q]
        return loops + empty

    return chords, count


def kauffman_bracket(d: GaussDiagram, *, budget: int = DEFAULT_STATE_BUDGET) -> LaurentPolynomial:
    """State sum <d> with <O> = 1, over all 2^(#chords) smoothings.

    The A-smoothing of a positive chord is the orientation-respecting one; for
    a negative chord it is the other one.  Loops are counted by regluing arcs.
    """
    if d.num_chords > budget:
        raise ResourceError(f"{d.num_chords} chords exceed the state-sum budget of {budget}")
    chords, count = _loop_count_factory(d)
    n = len(chords)
    positive = 0
    for k, c in enumerate(chords):
        if d.sign(c) > 0:
            positive |= 1 << k
    tally: Counter[tuple[int, int]] = Counter()
    for state in range(1 << n):
        # bit set in state = A-smoothing
        oriented = ~(state ^ positive) & ((1 << n) - 1)
        a_count = bin(state).count("1")
        tally[(2 * a_count - n, count(oriented))] += 1
    delta = LaurentPolynomial({2: -1, -2: -1})
    out = LaurentPolynomial()
    powers = {}
    for (exp, loops), mult in tally.items():
        if loops - 1 not in powers:
            powers[loops - 1] = delta ** (loops - 1)
        out = out + LaurentPolynomial.monomial(exp, mult) * powers[loops - 1]
    return out


def f_polynomial(d: GaussDiagram, *, budget: int = DEFAULT_STATE_BUDGET) -> LaurentPolynomial:
    """Normalized bracket ``(-A^3)^(-w) <d>``."""
    w = writhe(d)
    norm = LaurentPolynomial.monomial(-3 * w, -1 if w % 2 else 1)
    return norm * kauffman_bracket(d, budget=budget)
