"""Gauss-diagram shapes of three strands bounding a triangle.

Both the third Reidemeister move and the virtualized Delta-move act on three
chords that pairwise share an adjacent pair of endpoints.  Which sign/role/
order patterns are legal is read off from an actual planar triangle: three
straight strands with every choice of orientation and crossing heights.

A *pattern* is ``(signs, segments)``: ``signs[k]`` is the sign of local chord
``k`` and each of the three segments is the ordered pair of endpoints
``((chord, role), (chord, role))`` met along one strand.
"""

from __future__ import annotations

import functools
import itertools
from typing import Callable

from .gauss import OVER, UNDER

Segment = tuple[tuple[int, str], tuple[int, str]]
Pattern = tuple[tuple[int, int, int], tuple[Segment, Segment, Segment]]

# vertices A=(0,0), B=(2,0), C=(1,2); strand k runs along one side
_POINT = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 2.0)}
# strand -> (first vertex, second vertex) when traversed in its base direction
_SIDE = {0: (0, 1), 1: (1, 2), 2: (2, 0)}


def _vertex(i: int, j: int) -> int:
    (v,) = set(_SIDE[i]) & set(_SIDE[j])
    return v


def _direction(strand: int, orient: int) -> tuple[float, float]:
    a, b = _SIDE[strand]
    (x0, y0), (x1, y1) = _POINT[a], _POINT[b]
    return (orient * (x1 - x0), orient * (y1 - y0))


def _geometric_pattern(orient: tuple[int, int, int], over: Callable[[int, int], bool]) -> Pattern:
    dirs = [_direction(k, orient[k]) for k in range(3)]
    signs = [0, 0, 0]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        hi, lo = (i, j) if over(i, j) else (j, i)
        (ax, ay), (bx, by) = dirs[hi], dirs[lo]
        signs[_vertex(i, j)] = 1 if ax * by - ay * bx > 0 else -1
    segments = []
    for k in range(3):
        verts = _SIDE[k] if orient[k] > 0 else _SIDE[k][::-1]
        seg = []
        for v in verts:
            (other,) = [s for s in range(3) if s != k and v in _SIDE[s]]
            seg.append((v, OVER if over(k, other) else UNDER))
        segments.append(tuple(seg))
    return tuple(signs), tuple(segments)


def canonical_pattern(p: Pattern) -> Pattern:
    """Representative of ``p`` up to renaming the three chords and reordering
    segments."""
    signs, segments = p
    best = None
    for perm in itertools.permutations(range(3)):
        new_signs = [0, 0, 0]
        for old, new in enumerate(perm):
            new_signs[new] = signs[old]
        new_segs = tuple(
            sorted(tuple((perm[c], r) for c, r in seg) for seg in segments)
        )
        cand = (tuple(new_signs), new_segs)
        if best is None or cand < best:
            best = cand
    return best


def reverse_segments(p: Pattern) -> Pattern:
    signs, segments = p
    return signs, tuple(seg[::-1] for seg in segments)


def _collect(over_relations) -> frozenset:
    out = set()
    for over in over_relations:
        for orient in itertools.product((1, -1), repeat=3):
            out.add(canonical_pattern(_geometric_pattern(orient, over)))
    return frozenset(out)


def _cyclic(chirality: int):
    order = {(0, 1), (1, 2), (2, 0)}
    if chirality > 0:
        return lambda i, j: (i, j) in order
    return lambda i, j: (j, i) in order


def _stacked(heights):
    return lambda i, j: heights[i] > heights[j]


# Delta triangle: each strand passes over one neighbour and under the other.
# The unprimed chirality has strand k over strand k-1 (mod 3); the primed one
# is its crossing-changed mirror.
DELTA_PATTERNS = _collect([_cyclic(-1)])
DELTA_PRIME_PATTERNS = _collect([_cyclic(1)])
# Reidemeister III triangle: top, middle and bottom strand.
R3_PATTERNS = _collect([_stacked(h) for h in itertools.permutations(range(3))])


def pattern_kind(p: Pattern) -> str | None:
    """``'delta'``, ``'delta_prime'``, ``'r3'`` or None for a raw pattern."""
    c = canonical_pattern(p)
    if c in DELTA_PATTERNS:
        return "delta"
    if c in DELTA_PRIME_PATTERNS:
        return "delta_prime"
    if c in R3_PATTERNS:
        return "r3"
    return None


@functools.lru_cache(maxsize=None)
def labelled_patterns(kind: str) -> tuple[Pattern, ...]:
    """All labelled patterns of one kind, in a fixed order.

    Labelled means chord names and segment order are significant, which is
    what an insertion needs.  Duplicates of the same labelled pattern are
    dropped.
    """
    table = {"delta": DELTA_PATTERNS, "delta_prime": DELTA_PRIME_PATTERNS, "r3": R3_PATTERNS}[kind]
    out = set()
    for signs in itertools.product((1, -1), repeat=3):
        for roles in itertools.product((OVER, UNDER), repeat=6):
            for segs in _segment_layouts():
                idx = iter(roles)
                segments = tuple(tuple((c, next(idx)) for c in seg) for seg in segs)
                p = (signs, segments)
                if _roles_consistent(p) and canonical_pattern(p) in table:
                    out.add(p)
    return tuple(sorted(out))


def _segment_layouts():
    # each unordered pair of chords shares one segment; fix segment i to hold
    # the pair missing chord i, and choose the order inside each segment
    pairs = [(1, 2), (0, 2), (0, 1)]
    for flips in itertools.product((False, True), repeat=3):
        yield tuple(p[::-1] if f else p for p, f in zip(pairs, flips))


def _roles_consistent(p: Pattern) -> bool:
    seen: dict[int, set[str]] = {0: set(), 1: set(), 2: set()}
    for seg in p[1]:
        for c, r in seg:
            if r in seen[c]:
                return False
            seen[c].add(r)
    return all(len(v) == 2 for v in seen.values())
