"""Model links, the vDelta decision procedure and unknotting bounds.

Links are ordered: component ``i`` of one diagram is compared with component
``i`` of the other.  Two links with the same number of components are
vDelta-equivalent exactly when their parity vectors agree, and every knot is
vDelta-equivalent to the trivial knot.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import MoveError, UnsupportedError
from .families import model_link
from .gauss import OVER, UNDER, GaussDiagram, canonical_code, new_diagram
from .invariants import n_writhe, odd_writhe, parity_vector
from .moves import (
    MoveInstance,
    MoveSequence,
    Step,
    apply,
    apply_macro,
    apply_step,
    enumerate_sites,
    invert_sequence,
    make_macro,
    replay,
)

__all__ = [
    "CanonicalModel",
    "BoundsReport",
    "canonical_model_diagram",
    "reduce_to_model",
    "decide_vdelta_equivalence",
    "unknot_sequence",
    "reidemeister_simplify",
    "descend_to_trivial",
    "vdelta_bounds",
    "classical_unknotting_obstruction",
]


@dataclass(frozen=True)
class CanonicalModel:
    """Model link ``M(a_2, ..., a_n)``; ``a`` holds the bits for components
    ``2..n``."""

    a: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(x) for x in self.a)
        if not bits or any(x not in (0, 1) for x in bits):
            raise ValueError(f"model bits must be a nonempty 0/1 sequence, got {self.a!r}")
        object.__setattr__(self, "a", bits)

    @property
    def n(self) -> int:
        return len(self.a) + 1

    @property
    def parity(self) -> tuple[int, ...]:
        return (sum(self.a) % 2,) + self.a


def canonical_model_diagram(m: CanonicalModel) -> GaussDiagram:
    return model_link(m.a)


# ---------------------------------------------------------------------------
# sequence building


class _Builder:
    """Accumulates steps while tracking the current diagram."""

    def __init__(self, start: GaussDiagram):
        self.start = start
        self.d = start
        self.steps: list[Step] = []

    def move(self, kind: str, site: tuple[int, ...]) -> None:
        step = MoveInstance(kind, site)
        self.d = apply(self.d, step)
        self.steps.append(step)

    def macro(self, kind: str, site: tuple[int, ...]) -> None:
        step = make_macro(self.d, kind, site)
        self.d = apply_macro(self.d, step)
        self.steps.append(step)

    def sequence(self) -> MoveSequence:
        return MoveSequence(self.start, list(self.steps), self.d)


def _bring_next_to(b: _Builder, mover: tuple[int, str], anchor: tuple[int, str]) -> None:
    """Swap ``mover`` along its circle until it is adjacent to ``anchor``.

    Both endpoints must lie on the same component.  The shorter of the two
    directions is used.
    """
    comp, p = b.d.locate(*mover)
    comp2, q = b.d.locate(*anchor)
    if comp != comp2:
        raise MoveError("endpoints lie on different components")
    n = len(b.d.components[comp])
    forward = (q - p) % n - 1  # swaps moving forward until just before anchor
    backward = (p - q) % n - 1  # swaps moving backward until just after anchor
    if forward <= backward:
        for _ in range(forward):
            _, p = b.d.locate(*mover)
            b.macro("Swap", (comp, p))
    else:
        for _ in range(backward):
            _, p = b.d.locate(*mover)
            b.macro("Swap", (comp, (p - 1) % n))


def _closest_self_chord(d: GaussDiagram, comp: int | None = None) -> int | None:
    best = None
    for c in d.chord_ids:
        co, po = d.locate(c, OVER)
        cu, pu = d.locate(c, UNDER)
        if co != cu or (comp is not None and co != comp):
            continue
        n = len(d.components[co])
        gap = min((pu - po) % n, (po - pu) % n) - 1
        key = (gap, co, min(po, pu))
        if best is None or key < best[0]:
            best = (key, c)
    return None if best is None else best[1]


def _remove_self_chords(b: _Builder) -> None:
    while True:
        c = _closest_self_chord(b.d)
        if c is None:
            return
        _bring_next_to(b, (c, OVER), (c, UNDER))
        b.move("R1_delete", (c,))


# ---------------------------------------------------------------------------
# links


def reduce_to_model(d: GaussDiagram) -> tuple[CanonicalModel, MoveSequence]:
    """Reduce a link diagram to its model ``M(a_2, ..., a_n)`` by macros.

    Steps: shrink and delete every self-chord, reroute chords joining two
    components other than the first, make every remaining chord positive
    with its Over endpoint on the first component, cancel chords to the same
    component in pairs, and finally sort the first component.

    Returns:
        The model and a replayable sequence from ``d`` to its diagram.

    Raises:
        UnsupportedError: ``d`` is a knot diagram.
    """
    if d.n_components < 2:
        raise UnsupportedError("reduce_to_model needs a link; use unknot_sequence for knots")
    b = _Builder(d)
    _remove_self_chords(b)

    while True:
        far = [c for c in b.d.chord_ids if b.d.locate(c, OVER)[0] and b.d.locate(c, UNDER)[0]]
        if not far:
            break
        b.macro("Reroute", (far[0], 0))

    # orient every chord from the first component, with sign +1
    for c in b.d.chord_ids:
        if b.d.locate(c, OVER)[0] != 0:
            b.macro("OrientationReversal", (c,))
        if b.d.sign(c) < 0:
            b.macro("SignFlip", (c,))

    for comp in range(1, b.d.n_components):
        while True:
            mine = [c for c in b.d.chord_ids if b.d.locate(c, UNDER)[0] == comp]
            if len(mine) < 2:
                break
            x, y = mine[0], mine[1]
            b.macro("SignFlip", (y,))
            _bring_next_to(b, (y, OVER), (x, OVER))
            _bring_next_to(b, (y, UNDER), (x, UNDER))
            b.move("R2_delete", (x, y))

    # sort the first component by target component (bubble sort by Swaps)
    def target(tok):
        return b.d.locate(tok[0], UNDER)[0]

    n = len(b.d.components[0])
    for i in range(n):
        for p in range(n - 1 - i):
            comp0 = b.d.components[0]
            if target(comp0[p]) > target(comp0[p + 1]):
                b.macro("Swap", (0, p))

    model = CanonicalModel(tuple(parity_vector(b.d)[1:]))
    return model, MoveSequence(d, b.steps, canonical_model_diagram(model))


def decide_vdelta_equivalence(d1: GaussDiagram, d2: GaussDiagram, *, ordered: bool = True) -> bool:
    """Whether two diagrams are related by vDelta-moves.

    Args:
        d1, d2: diagrams with the same number of components.
        ordered: compare component by component.  With ``ordered=False`` the
            diagrams may be matched under any permutation of components; the
            full parity vectors are then compared as multisets.

    Raises:
        ValueError: the component counts differ.
    """
    if d1.n_components != d2.n_components:
        raise ValueError(
            f"component counts differ: {d1.n_components} vs {d2.n_components}"
        )
    if d1.n_components == 1:
        return True
    p1, p2 = parity_vector(d1), parity_vector(d2)
    if ordered:
        return p1 == p2
    return sorted(p1) == sorted(p2)


# ---------------------------------------------------------------------------
# knots


def _require_knot(d: GaussDiagram) -> None:
    if d.n_components != 1:
        raise UnsupportedError("expected a knot diagram (one component)")


def unknot_sequence(d: GaussDiagram) -> MoveSequence:
    """Macro sequence taking a knot diagram to the trivial diagram.

    The chord whose endpoints are closest is shrunk first (ties go to the
    lowest position): its Over endpoint is swapped towards its Under endpoint
    and the resulting kink is removed by R1.
    """
    _require_knot(d)
    b = _Builder(d)
    _remove_self_chords(b)
    return b.sequence()


def reidemeister_simplify(d: GaussDiagram, *, r3_depth: int = 2) -> MoveSequence:
    """Delete kinks and bigons greedily, using short runs of R3 moves to
    unlock further deletions.

    The result need not be minimal; the sequence costs nothing.
    """
    b = _Builder(d)
    while True:
        if _greedy_delete(b):
            continue
        path = _r3_unlock(b.d, r3_depth)
        if not path:
            return b.sequence()
        for step in path:
            b.d = apply(b.d, step)
            b.steps.append(step)


def _greedy_delete(b: _Builder) -> bool:
    for kind in ("R1_delete", "R2_delete"):
        sites = enumerate_sites(b.d, kind)
        if sites:
            b.d = apply(b.d, sites[0])
            b.steps.append(sites[0])
            return True
    return False


def _r3_unlock(d: GaussDiagram, depth: int) -> list[MoveInstance]:
    if depth <= 0 or d.num_chords < 3:
        return []
    seen = {canonical_code(d)}
    queue = deque([(d, [])])
    while queue:
        x, path = queue.popleft()
        if len(path) >= depth:
            continue
        for step in enumerate_sites(x, "R3"):
            y = apply(x, step)
            code = canonical_code(y)
            if code in seen:
                continue
            seen.add(code)
            if enumerate_sites(y, ("R1_delete", "R2_delete")):
                return path + [step]
            queue.append((y, path + [step]))
    return []


def descend_to_trivial(
    d: GaussDiagram, max_cost: int, *, r3_depth: int = 2, node_limit: int = 20000
) -> MoveSequence | None:
    """Search for a cheap sequence to the trivial knot.

    Each step is a crossing change or a vDelta triangle deletion (cost 1),
    followed by :func:`reidemeister_simplify`.  Depth-first with iterative
    deepening over the cost, so the first hit is cheapest among the
    sequences of this shape.

    Returns:
        A sequence of cost at most ``max_cost``, or None.
    """
    _require_knot(d)
    budget = [node_limit]

    def moves(x: GaussDiagram) -> Iterable[Step]:
        for kind in ("VD_rv", "VD_rv_prime"):
            yield from enumerate_sites(x, kind)
        for c in x.chord_ids:
            yield make_macro(x, "CrossingChange", (c,))

    failed: dict[str, int] = {}

    def dfs(x: GaussDiagram, left: int) -> list[Step] | None:
        if x.num_chords == 0:
            return []
        if left == 0 or abs(odd_writhe(x)) > 2 * left:
            return None
        code = canonical_code(x)
        if failed.get(code, -1) >= left:
            return None
        for step in moves(x):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            y = apply_step(x, step)
            tidy = reidemeister_simplify(y, r3_depth=r3_depth)
            rest = dfs(tidy.end, left - 1)
            if rest is not None:
                return [step] + tidy.steps + rest
        failed[code] = max(failed.get(code, -1), left)
        return None

    start = reidemeister_simplify(d, r3_depth=r3_depth)
    for cost in range(max_cost + 1):
        tail = dfs(start.end, cost)
        if tail is not None:
            steps = start.steps + tail
            end = d
            for s in steps:
                end = apply_step(end, s)
            return MoveSequence(d, steps, end)
        if budget[0] < 0:
            break
    return None


@dataclass
class BoundsReport:
    """Bounds on the vDelta-distance; ``upper`` is None when unbounded."""

    lower: int
    upper: int | None
    certificate: MoveSequence | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": "unbounded" if self.upper is None else self.upper,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


def _to_trivial(d: GaussDiagram, search_cost: int) -> MoveSequence:
    best = unknot_sequence(d)
    limit = min(best.vd_cost - 1, search_cost)
    if limit >= 0:
        found = descend_to_trivial(d, limit)
        if found is not None and found.vd_cost < best.vd_cost:
            best = found
    return best


def vdelta_bounds(d1: GaussDiagram, d2: GaussDiagram, *, search_cost: int = 4) -> BoundsReport:
    """Lower and upper bounds on the vDelta-distance between two knots.

    The lower bound is half the difference of odd writhes.  The upper bound
    is the cost of the cheapest certificate found: a descent through the
    trivial knot, built from crossing changes, triangle deletions and
    Reidemeister moves where a cheap one exists, and from the generic
    endpoint-swapping unknotting sequence otherwise.

    Args:
        search_cost: largest cost explored by the descent search per side.
    """
    _require_knot(d1)
    _require_knot(d2)
    lower = abs(odd_writhe(d1) - odd_writhe(d2)) // 2
    if canonical_code(d1) == canonical_code(d2):
        return BoundsReport(lower, 0, MoveSequence(d1, [], d2))
    there = _to_trivial(d1, search_cost)
    if d2.num_chords == 0:
        cert = MoveSequence(d1, there.steps, d2)
    else:
        back = invert_sequence(_to_trivial(d2, search_cost))
        trivial = new_diagram(1)
        cert = MoveSequence(d1, there.steps + back.steps, back.end)
        if there.end != trivial or back.start != trivial:  # pragma: no cover
            raise MoveError("descents do not meet at the trivial diagram")
    if not replay(cert):  # pragma: no cover
        raise MoveError("internal error: bounds certificate does not replay")
    return BoundsReport(lower, cert.vd_cost, cert)


def classical_unknotting_obstruction(d: GaussDiagram) -> bool:
    """True when ``J_1 != J_{-1}``, which rules out unknotting by crossing
    changes alone (so the classical unknotting number is infinite)."""
    table = n_writhe(d)
    return table.get(1, 0) != table.get(-1, 0)
