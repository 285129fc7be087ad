"""Bounded exploration of the move graph.

Reidemeister moves cost nothing and vDelta moves cost one, so the distance
between two diagrams is a shortest path in a 0/1-weighted graph.  Insertions
are only taken while the chord count stays within the budget, which makes
the graph finite.

States are popped in order of ``cost + bound`` where ``bound`` is half the
odd-writhe difference to the goal (zero for links).  One vDelta move changes
the odd writhe by at most 2, so the bound never overestimates and never drops
by more than the edge cost; the first time the goal is popped its cost is the
exact distance within the budget.  Ties go to diagrams with fewer chords.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterator

from .gauss import OVER, UNDER, GaussDiagram, canonical_code, new_diagram
from .invariants import odd_writhe, parity_vector
from .moves import (
    REIDEMEISTER_KINDS,
    VD_KINDS,
    MoveInstance,
    MoveSequence,
    apply,
    enumerate_sites,
)

__all__ = ["SearchBudget", "SearchResult", "bfs_distance", "enumerate_classes"]


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a search.

    Attributes:
        max_chords: no explored diagram has more chords than this.
        max_vd_moves: largest distance explored.
        max_states: number of distinct diagrams that may be expanded.
    """

    max_chords: int = 9
    max_vd_moves: int = 2
    max_states: int = 200_000

    def __post_init__(self):
        if self.max_chords < 0 or self.max_vd_moves < 0 or self.max_states < 1:
            raise ValueError("budget fields must be nonnegative (max_states positive)")


@dataclass
class SearchResult:
    found: bool
    distance: int | None
    certificate: MoveSequence | None
    frontier_exhausted: bool
    states: int = 0

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "distance": self.distance,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "frontier_exhausted": self.frontier_exhausted,
            "states": self.states,
        }


def _bound(d: GaussDiagram, goal_j: int | None) -> int:
    if goal_j is None:
        return 0
    return abs(odd_writhe(d) - goal_j) // 2


def _neighbours(d: GaussDiagram, budget: SearchBudget, vd_allowed: bool) -> Iterator[MoveInstance]:
    yield from enumerate_sites(d, REIDEMEISTER_KINDS, max_chords=budget.max_chords)
    if vd_allowed:
        yield from enumerate_sites(d, VD_KINDS, max_chords=budget.max_chords)


def bfs_distance(start: GaussDiagram, goal: GaussDiagram, budget: SearchBudget) -> SearchResult:
    """Shortest vDelta-distance from ``start`` to ``goal`` within ``budget``.

    Returns:
        A :class:`SearchResult`.  When found, the certificate replays from
        ``start`` to ``goal`` and costs exactly ``distance``.  When not found,
        ``frontier_exhausted`` tells whether the whole budgeted graph was
        explored (so the distance exceeds ``max_vd_moves`` or the diagrams
        are not connected under the chord cap).

    Raises:
        ValueError: the component counts differ.
    """
    if start.n_components != goal.n_components:
        raise ValueError("start and goal must have the same number of components")
    goal_code = canonical_code(goal)
    goal_j = odd_writhe(goal) if goal.n_components == 1 else None
    if start.num_chords > budget.max_chords:
        return SearchResult(False, None, None, True, 0)

    tie = itertools.count()
    # entry: (priority, chords, tie, cost, diagram, parent code, step)
    heap = [(_bound(start, goal_j), start.num_chords, next(tie), 0, start, None, None)]
    parents: dict[str, tuple[GaussDiagram, str | None, MoveInstance | None, int]] = {}
    expanded = 0
    while heap:
        prio, _, _, cost, d, parent, step = heapq.heappop(heap)
        if prio > budget.max_vd_moves:
            break
        code = canonical_code(d)
        if code in parents:
            continue
        parents[code] = (d, parent, step, cost)
        if code == goal_code:
            return SearchResult(True, cost, _certificate(parents, code, start, goal), False, expanded)
        if expanded >= budget.max_states:
            return SearchResult(False, None, None, False, expanded)
        expanded += 1
        for move in _neighbours(d, budget, cost < budget.max_vd_moves):
            nd = apply(d, move)
            nc = cost + move.vd_cost
            heapq.heappush(heap, (nc + _bound(nd, goal_j), nd.num_chords, next(tie), nc, nd, code, move))
    return SearchResult(False, None, None, True, expanded)


def _certificate(parents, code: str, start: GaussDiagram, goal: GaussDiagram) -> MoveSequence:
    steps = []
    while True:
        _, parent, step, _ = parents[code]
        if parent is None:
            break
        steps.append(step)
        code = parent
    steps.reverse()
    return MoveSequence(start, steps, goal)


def _add_chord(d: GaussDiagram) -> Iterator[GaussDiagram]:
    """Every way of adding one chord (any positions, either sign)."""
    c = d.next_id()
    slots = [(ci, g) for ci, comp in enumerate(d.components) for g in range(len(comp) + 1)]
    layouts = []
    for (co, go), (cu, gu) in itertools.product(slots, repeat=2):
        comps = [list(comp) for comp in d.components]
        if (co, go) == (cu, gu):
            comps[co][go:go] = [(c, OVER), (c, UNDER)]
        else:
            comps[cu].insert(gu, (c, UNDER))
            comps[co].insert(go + (co == cu and go > gu), (c, OVER))
        layouts.append(comps)
    # a shared slot also admits the Under-first order
    for ci, g in slots:
        comps = [list(comp) for comp in d.components]
        comps[ci][g:g] = [(c, UNDER), (c, OVER)]
        layouts.append(comps)
    for comps in layouts:
        for sign in (1, -1):
            signs = dict(d.signs)
            signs[c] = sign
            yield d.with_parts(comps, signs)


def enumerate_classes(n: int, budget: SearchBudget) -> list[tuple[tuple[int, ...], GaussDiagram]]:
    """One representative diagram per parity vector among all ``n``-component
    diagrams with at most ``budget.max_chords`` chords.

    Diagrams are generated by chord count, deduplicated by canonical code, and
    generation stops after ``budget.max_states`` distinct diagrams.  The
    first diagram met in each class is its representative.
    """
    if n < 2:
        raise ValueError("classes are enumerated for links with at least two components")
    first = new_diagram(n)
    classes: dict[tuple[int, ...], GaussDiagram] = {parity_vector(first): first}
    level = {canonical_code(first): first}
    seen = 1
    for _ in range(budget.max_chords):
        nxt: dict[str, GaussDiagram] = {}
        for d in level.values():
            for e in _add_chord(d):
                if seen >= budget.max_states:
                    break
                code = canonical_code(e)
                if code in nxt:
                    continue
                nxt[code] = e
                seen += 1
                classes.setdefault(parity_vector(e), e)
        level = nxt
        if not level or seen >= budget.max_states:
            break
    return sorted(classes.items())
