"""Parametric knot families and the canonical model links.

``figure12_knot(m, s)`` is a twisted grid: ``2m`` negative horizontal chords
nested inside one another and ``2s - 1`` vertical chords nested the same way,
the two nests interleaved so that every horizontal chord crosses every
vertical one.  Horizontal chords alternate between index ``+1`` and ``-1``;
vertical chords have index 0.

``figure13_knot(m, s)`` is the closure of ``m`` copies of the tangle ``T_s``.
Within a copy, chords ``a1, a2, a3`` bound a Delta triangle and ``b1..b2s``
form a nest of index-2 chords.
"""

from __future__ import annotations

from typing import Sequence

from .gauss import OVER, UNDER, GaussDiagram

__all__ = ["figure12_knot", "figure13_knot", "figure13_triangles", "model_link"]


def _check_int(name: str, value: int, low: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {value!r}")


def figure12_knot(m: int, s: int) -> GaussDiagram:
    """Knot ``K_s(m)`` with ``2m + 2s - 1`` chords, all negative.

    Chords ``1..2m`` are horizontal, ``2m+1..2m+2s-1`` vertical.  Changing the
    crossings of chords ``1..m`` gives a diagram that Reidemeister moves
    reduce to the trivial knot.
    """
    _check_int("m", m, 1)
    _check_int("s", s, 1)
    horizontal = list(range(1, 2 * m + 1))
    vertical = list(range(2 * m + 1, 2 * m + 2 * s))

    def first_role(i: int) -> str:
        # orientations alternate along each nest
        return OVER if i % 2 else UNDER

    def second_role(i: int) -> str:
        return UNDER if i % 2 else OVER

    seq = [(c, first_role(i)) for i, c in enumerate(horizontal)]
    seq += [(c, first_role(i)) for i, c in enumerate(vertical)]
    seq += [(c, second_role(i)) for i, c in reversed(list(enumerate(horizontal)))]
    seq += [(c, second_role(i)) for i, c in reversed(list(enumerate(vertical)))]
    signs = {c: -1 for c in horizontal + vertical}
    return GaussDiagram([seq], signs)


def _t_block(offset: int, s: int) -> tuple[list[tuple[int, str]], dict[int, int]]:
    a1, a2, a3 = offset + 1, offset + 2, offset + 3
    bs = [offset + 3 + i for i in range(1, 2 * s + 1)]
    seq = [(a3, UNDER), (a1, OVER), (a2, OVER), (a1, UNDER)]
    seq += [(b, UNDER) for b in bs]
    seq += [(a3, OVER), (a2, UNDER)]
    seq += [(b, OVER) for b in reversed(bs)]
    signs = {a1: 1, a2: -1, a3: 1}
    signs.update({b: 1 for b in bs})
    return seq, signs


def figure13_knot(m: int, s: int) -> GaussDiagram:
    """Closure of ``m`` copies of ``T_s``; ``m(2s + 3)`` chords.

    Copy ``k`` (0-based) uses ids ``k(2s+3) + 1 ..``: ``a1, a2, a3`` first,
    then ``b1..b2s``.  See :func:`figure13_triangles`.
    """
    _check_int("m", m, 1)
    _check_int("s", s, 2)
    seq: list[tuple[int, str]] = []
    signs: dict[int, int] = {}
    for k in range(m):
        block, block_signs = _t_block(k * (2 * s + 3), s)
        seq += block
        signs.update(block_signs)
    return GaussDiagram([seq], signs)


def figure13_triangles(m: int, s: int) -> list[tuple[int, int, int]]:
    """Ids ``(a1, a2, a3)`` of every copy in :func:`figure13_knot`."""
    _check_int("m", m, 1)
    _check_int("s", s, 2)
    step = 2 * s + 3
    return [(k * step + 1, k * step + 2, k * step + 3) for k in range(m)]


def model_link(a: Sequence[int]) -> GaussDiagram:
    """Model diagram ``H(a_2, ..., a_n)``.

    Component 1 carries the Over endpoints of one positive chord per ``i``
    with ``a_i = 1``, in order of ``i``; the Under endpoint is the only
    endpoint on component ``i``.  All other components are empty.
    """
    bits = [int(x) for x in a]
    if not bits:
        raise ValueError("a model link needs at least two components")
    if any(x not in (0, 1) for x in bits):
        raise ValueError(f"model bits must be 0 or 1, got {list(a)!r}")
    first: list[tuple[int, str]] = []
    others: list[list[tuple[int, str]]] = []
    signs: dict[int, int] = {}
    for bit in bits:
        if bit:
            c = len(signs) + 1
            signs[c] = 1
            first.append((c, OVER))
            others.append([(c, UNDER)])
        else:
            others.append([])
    return GaussDiagram([first] + others, signs)
