"""Primitive rewrites, macro moves and replayable move sequences.

Site encodings (all integers, component indices are 0-based):

``R1_delete``      ``(chord,)``
``R1_insert``      ``(comp, gap, over_first, sign)``
``R2_delete``      ``(chord_a, chord_b)``
``R2_insert``      ``(comp_o, gap_o, comp_u, gap_u, sign, crossed, unders_first)``
``R3``, ``VD_rv``, ``VD_rv_prime``
                   ``(comp, pos) * 3``: start of each adjacent endpoint pair,
                   the pair being ``pos`` and ``pos + 1`` (cyclically)
``VD_vr``, ``VD_vr_prime``
                   ``(s0, s1, s2)`` chord signs followed, for each of the three
                   segments, by ``(comp, gap, chord, role, chord, role)`` with
                   local chord labels 0..2 and role 0=Over, 1=Under

A *gap* ``g`` in a component of length ``L`` means "before position ``g``";
``g == L`` appends.  Segments or blocks landing in the same gap keep their
listed order.  Newly created chords take ids ``d.next_id()``, ``+1``, ``+2``.

Macros are single rewrites with a recorded vDelta cost:

``CrossingChange``, ``OrientationReversal``, ``SignFlip``, ``SignReversal``
                   ``(chord,)``
``Swap``, ``ForbiddenDetour``, ``ForbiddenOver``, ``ForbiddenUnder``
                   ``(comp, pos)``: transpose positions ``pos`` and ``pos+1``
``Reroute``        ``(chord, gap)``: replace a chord joining components
                   ``i, j >= 1`` by one chord to each of them from component 0,
                   with the new component-0 endpoints placed at ``gap``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from . import triangles
from .errors import MoveError
from .gauss import (
    OVER,
    UNDER,
    GaussDiagram,
    canonical_code,
    isomorphism,
    parse_gauss_code,
    serialize,
)

__all__ = [
    "PRIMITIVE_KINDS",
    "MACRO_KINDS",
    "MACRO_COST",
    "MoveInstance",
    "MacroInstance",
    "MoveSequence",
    "ReplayResult",
    "enumerate_sites",
    "apply",
    "apply_macro",
    "apply_step",
    "inverse",
    "make_macro",
    "replay",
    "site_chords",
    "expand_reroute",
]

PRIMITIVE_KINDS = (
    "R1_insert",
    "R1_delete",
    "R2_insert",
    "R2_delete",
    "R3",
    "VD_rv",
    "VD_vr",
    "VD_rv_prime",
    "VD_vr_prime",
)
DELETION_KINDS = ("R1_delete", "R2_delete", "R3", "VD_rv", "VD_rv_prime")
INSERTION_KINDS = ("R1_insert", "R2_insert", "VD_vr", "VD_vr_prime")
REIDEMEISTER_KINDS = ("R1_insert", "R1_delete", "R2_insert", "R2_delete", "R3")
VD_KINDS = ("VD_rv", "VD_vr", "VD_rv_prime", "VD_vr_prime")

MACRO_KINDS = (
    "CrossingChange",
    "ForbiddenDetour",
    "ForbiddenOver",
    "ForbiddenUnder",
    "SignReversal",
    "OrientationReversal",
    "SignFlip",
    "Swap",
    "Reroute",
)
# upper bounds read off the constructive proofs; Swap is resolved per site
MACRO_COST = {
    "CrossingChange": 1,
    "ForbiddenDetour": 2,
    "ForbiddenOver": 4,
    "ForbiddenUnder": 4,
    "OrientationReversal": 1,
    "SignFlip": 2,
    "SignReversal": 2,
    "Reroute": 1,
}

_PATTERN_KIND = {
    "VD_rv": "delta",
    "VD_vr": "delta",
    "VD_rv_prime": "delta_prime",
    "VD_vr_prime": "delta_prime",
    "R3": "r3",
}
_ROLE_CODE = {OVER: 0, UNDER: 1}
_CODE_ROLE = {0: OVER, 1: UNDER}


@dataclass(frozen=True)
class MoveInstance:
    kind: str
    site: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in PRIMITIVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "site", tuple(int(x) for x in self.site))

    @property
    def vd_cost(self) -> int:
        return 1 if self.kind in VD_KINDS else 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": list(self.site), "vd_cost": self.vd_cost}


@dataclass(frozen=True)
class MacroInstance:
    kind: str
    site: tuple[int, ...]
    vd_cost: int

    def __post_init__(self):
        if self.kind not in MACRO_KINDS:
            raise MoveError(f"unknown macro kind {self.kind!r}")
        object.__setattr__(self, "site", tuple(int(x) for x in self.site))

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": list(self.site), "vd_cost": self.vd_cost}


Step = Union[MoveInstance, MacroInstance]


def step_from_json(data: dict) -> Step:
    kind = data["kind"]
    site = tuple(data.get("site", ()))
    if kind in MACRO_KINDS:
        return MacroInstance(kind, site, int(data["vd_cost"]))
    step = MoveInstance(kind, site)
    if "vd_cost" in data and int(data["vd_cost"]) != step.vd_cost:
        raise MoveError(f"{kind} costs {step.vd_cost}, certificate says {data['vd_cost']}")
    return step


@dataclass
class MoveSequence:
    start: GaussDiagram
    steps: list[Step] = field(default_factory=list)
    end: GaussDiagram | None = None

    def __post_init__(self):
        if self.end is None:
            self.end = self.start

    @property
    def vd_cost(self) -> int:
        return sum(s.vd_cost for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, other: "MoveSequence") -> "MoveSequence":
        """Concatenate; ``other.start`` must be identical to ``self.end``."""
        if other.start != self.end:
            raise MoveError("sequences do not meet: end and start differ")
        return MoveSequence(self.start, self.steps + other.steps, other.end)

    def to_json(self) -> dict:
        return {
            "start": serialize(self.start),
            "steps": [s.to_json() for s in self.steps],
            "end": serialize(self.end),
        }

    @classmethod
    def from_json(cls, data: dict) -> "MoveSequence":
        return cls(
            parse_gauss_code(data["start"]),
            [step_from_json(s) for s in data["steps"]],
            parse_gauss_code(data["end"]),
        )


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# low-level helpers


def _adjacent(comp_len: int, p: int, q: int) -> bool:
    return comp_len >= 2 and (q - p) % comp_len == 1


def _next(comp_len: int, p: int) -> int:
    return (p + 1) % comp_len


def _gaps(d: GaussDiagram) -> list[tuple[int, int]]:
    out = []
    for ci, comp in enumerate(d.components):
        out.extend((ci, g) for g in range(max(len(comp), 1)))
    return out


def _check_gap(d: GaussDiagram, comp: int, gap: int) -> None:
    if not 0 <= comp < d.n_components:
        raise MoveError(f"no component {comp}")
    if not 0 <= gap <= len(d.components[comp]):
        raise MoveError(f"gap {gap} out of range on component {comp}")


def _insert_blocks(
    d: GaussDiagram, blocks: Sequence[tuple[int, int, Sequence[tuple[int, str]]]], signs: dict
) -> GaussDiagram:
    """Insert token blocks at gaps of the original diagram; same-gap blocks keep
    their listed order."""
    by_slot: dict[tuple[int, int], list] = {}
    for comp, gap, toks in blocks:
        _check_gap(d, comp, gap)
        by_slot.setdefault((comp, gap), []).extend(toks)
    comps = []
    for ci, comp in enumerate(d.components):
        new: list[tuple[int, str]] = []
        for pos in range(len(comp) + 1):
            new.extend(by_slot.get((ci, pos), ()))
            if pos < len(comp):
                new.append(comp[pos])
        comps.append(new)
    all_signs = dict(d.signs)
    all_signs.update(signs)
    return d.with_parts(comps, all_signs)


def _remove_chords(d: GaussDiagram, chords: Iterable[int]) -> GaussDiagram:
    gone = set(chords)
    comps = [[t for t in comp if t[0] not in gone] for comp in d.components]
    signs = {c: s for c, s in d.signs.items() if c not in gone}
    return d.with_parts(comps, signs)


def _segment_at(d: GaussDiagram, comp: int, pos: int) -> tuple[tuple[int, str], tuple[int, str]]:
    if not 0 <= comp < d.n_components:
        raise MoveError(f"no component {comp}")
    c = d.components[comp]
    if len(c) < 2 or not 0 <= pos < len(c):
        raise MoveError(f"no adjacent pair at component {comp} position {pos}")
    return c[pos], c[_next(len(c), pos)]


def _triangle_from_site(d: GaussDiagram, site: Sequence[int]):
    """Resolve a triangle site into (chords, labelled pattern).

    Chords are labelled so that segment k holds the two chords other than k.
    """
    if len(site) != 6:
        raise MoveError("triangle sites have six entries")
    starts = [(site[0], site[1]), (site[2], site[3]), (site[4], site[5])]
    if len(set(starts)) != 3:
        raise MoveError("triangle segments must be distinct")
    segs = [_segment_at(d, c, p) for c, p in starts]
    used = set()
    for (c, p) in starts:
        n = len(d.components[c])
        for q in (p, _next(n, p)):
            if (c, q) in used:
                raise MoveError("triangle segments overlap")
            used.add((c, q))
    chords = sorted({t[0] for seg in segs for t in seg})
    if len(chords) != 3:
        raise MoveError("a triangle needs three distinct chords")
    local = {}
    for k, seg in enumerate(segs):
        a, b = seg[0][0], seg[1][0]
        if a == b:
            raise MoveError("segment endpoints belong to one chord")
        (missing,) = set(chords) - {a, b}
        if missing in local:
            raise MoveError("two segments join the same pair of chords")
        local[missing] = k
    pattern_segs = tuple(tuple((local[c], r) for c, r in seg) for seg in segs)
    signs = tuple(d.sign(c) for c in sorted(local, key=local.get))
    pattern = (signs, pattern_segs)
    if not triangles._roles_consistent(pattern):
        raise MoveError("triangle roles inconsistent")
    ordered = sorted(local, key=local.get)
    return ordered, pattern


def _triangle_sites(d: GaussDiagram) -> Iterator[tuple[tuple[int, ...], str]]:
    """All triangle sites with their pattern kind (None kinds skipped)."""
    segs_by_chord: dict[int, list[tuple[int, int]]] = {}
    seg_tokens = {}
    for ci, comp in enumerate(d.components):
        n = len(comp)
        if n < 2:
            continue
        for p in range(n):
            a, b = comp[p], comp[_next(n, p)]
            if a[0] == b[0]:
                continue
            seg_tokens[(ci, p)] = (a, b)
            segs_by_chord.setdefault(a[0], []).append((ci, p))
            segs_by_chord.setdefault(b[0], []).append((ci, p))
    seen = set()
    for s1, (a, b) in seg_tokens.items():
        for s2 in segs_by_chord.get(b[0], ()):
            if s2 == s1:
                continue
            t2 = seg_tokens[s2]
            c = t2[0] if t2[1][0] == b[0] else t2[1]
            if c[0] == a[0] or c[0] == b[0]:
                continue
            for s3 in segs_by_chord.get(c[0], ()):
                if s3 in (s1, s2):
                    continue
                t3 = seg_tokens[s3]
                if {t3[0][0], t3[1][0]} != {a[0], c[0]}:
                    continue
                key = tuple(sorted((s1, s2, s3)))
                if key in seen:
                    continue
                seen.add(key)
                site = tuple(x for s in key for x in s)
                try:
                    _, pattern = _triangle_from_site(d, site)
                except MoveError:
                    continue
                kind = triangles.pattern_kind(pattern)
                if kind is not None:
                    yield site, kind


def site_chords(d: GaussDiagram, m: MoveInstance) -> list[int]:
    """Chord ids touched by a deletion-type move, for reporting."""
    if m.kind in ("R1_delete", "R2_delete"):
        return list(m.site)
    if m.kind in ("R3", "VD_rv", "VD_rv_prime"):
        return _triangle_from_site(d, m.site)[0]
    return []


# ---------------------------------------------------------------------------
# enumeration


def enumerate_sites(
    d: GaussDiagram, kind: str | Iterable[str], *, max_chords: int | None = None
) -> list[MoveInstance]:
    """Every applicable instance of the given kind(s), sorted by site.

    Insertion kinds are only produced when the result stays within
    ``max_chords`` (no cap when None).
    """
    kinds = (kind,) if isinstance(kind, str) else tuple(kind)
    out: list[MoveInstance] = []
    for k in kinds:
        if k not in PRIMITIVE_KINDS:
            raise MoveError(f"unknown move kind {k!r}")
        grow = {"R1_insert": 1, "R2_insert": 2, "VD_vr": 3, "VD_vr_prime": 3}.get(k, 0)
        if grow and max_chords is not None and d.num_chords + grow > max_chords:
            continue
        found = list(_SITE_ENUMERATORS[k](d))
        out.extend(MoveInstance(k, s) for s in sorted(set(found)))
    return out


def _enum_r1_delete(d):
    for c in d.chord_ids:
        co, po = d.locate(c, OVER)
        cu, pu = d.locate(c, UNDER)
        n = len(d.components[co])
        if co == cu and (_adjacent(n, po, pu) or _adjacent(n, pu, po)):
            yield (c,)


def _enum_r1_insert(d):
    for comp, gap in _gaps(d):
        for over_first in (1, 0):
            for sign in (1, -1):
                yield (comp, gap, over_first, sign)


def _r2_ok(d, a, b) -> bool:
    if a == b or d.sign(a) == d.sign(b):
        return False
    for role in (OVER, UNDER):
        ca, pa = d.locate(a, role)
        cb, pb = d.locate(b, role)
        n = len(d.components[ca])
        if ca != cb or not (_adjacent(n, pa, pb) or _adjacent(n, pb, pa)):
            return False
    return True


def _enum_r2_delete(d):
    ids = d.chord_ids
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if _r2_ok(d, a, b):
                yield (a, b)


def _enum_r2_insert(d):
    gaps = _gaps(d)
    for go in gaps:
        for gu in gaps:
            for sign in (1, -1):
                for crossed in (0, 1):
                    for unders_first in ((0, 1) if go == gu else (0,)):
                        yield (*go, *gu, sign, crossed, unders_first)


def _enum_triangle(kind):
    def enum(d):
        for site, k in _triangle_sites(d):
            if k == kind:
                yield site

    return enum


def _enum_vd_insert(kind):
    def enum(d):
        gaps = _gaps(d)
        pats = triangles.labelled_patterns(kind)
        for g0, g1, g2 in itertools.combinations_with_replacement(gaps, 3):
            for signs, segs in pats:
                site = list(signs)
                for (comp, gap), seg in zip((g0, g1, g2), segs):
                    site += [comp, gap]
                    for c, r in seg:
                        site += [c, _ROLE_CODE[r]]
                yield tuple(site)

    return enum


_SITE_ENUMERATORS = {
    "R1_delete": _enum_r1_delete,
    "R1_insert": _enum_r1_insert,
    "R2_delete": _enum_r2_delete,
    "R2_insert": _enum_r2_insert,
    "R3": _enum_triangle("r3"),
    "VD_rv": _enum_triangle("delta"),
    "VD_rv_prime": _enum_triangle("delta_prime"),
    "VD_vr": _enum_vd_insert("delta"),
    "VD_vr_prime": _enum_vd_insert("delta_prime"),
}


# ---------------------------------------------------------------------------
# application


def apply(d: GaussDiagram, m: MoveInstance) -> GaussDiagram:
    """Rewrite ``d`` by the primitive move ``m``; raises :class:`MoveError` if
    the site is not applicable."""
    if isinstance(m, MacroInstance):
        return apply_macro(d, m)
    try:
        return _APPLY[m.kind](d, m.site)
    except (KeyError, IndexError, ValueError) as exc:
        if isinstance(exc, MoveError):
            raise
        raise MoveError(f"{m.kind} not applicable at {m.site}: {exc}") from None


def _apply_r1_delete(d, site):
    (c,) = site
    if (c,) not in set(_enum_r1_delete(d)):
        raise MoveError(f"R1_delete: endpoints of chord {c} are not adjacent")
    return _remove_chords(d, [c])


def _apply_r1_insert(d, site):
    comp, gap, over_first, sign = site
    if sign not in (1, -1) or over_first not in (0, 1):
        raise MoveError("R1_insert: bad sign or order flag")
    c = d.next_id()
    toks = [(c, OVER), (c, UNDER)] if over_first else [(c, UNDER), (c, OVER)]
    return _insert_blocks(d, [(comp, gap, toks)], {c: sign})


def _apply_r2_delete(d, site):
    a, b = site
    if not _r2_ok(d, a, b):
        raise MoveError(f"R2_delete: chords {a}, {b} do not form a bigon")
    return _remove_chords(d, [a, b])


def _apply_r2_insert(d, site):
    comp_o, gap_o, comp_u, gap_u, sign, crossed, unders_first = site
    if sign not in (1, -1) or crossed not in (0, 1) or unders_first not in (0, 1):
        raise MoveError("R2_insert: bad flag")
    if unders_first and (comp_o, gap_o) != (comp_u, gap_u):
        raise MoveError("R2_insert: unders_first only applies to a shared gap")
    a = d.next_id()
    b = a + 1
    over_block = [(a, OVER), (b, OVER)]
    under_block = [(b, UNDER), (a, UNDER)] if crossed else [(a, UNDER), (b, UNDER)]
    blocks = [(comp_o, gap_o, over_block), (comp_u, gap_u, under_block)]
    if unders_first:
        blocks.reverse()
    return _insert_blocks(d, blocks, {a: sign, b: -sign})


def _apply_triangle(kind):
    def run(d, site):
        chords, pattern = _triangle_from_site(d, site)
        found = triangles.pattern_kind(pattern)
        if found != _PATTERN_KIND[kind]:
            raise MoveError(f"{kind}: triangle at {site} has pattern kind {found}")
        if kind != "R3":
            return _remove_chords(d, chords)
        comps = [list(c) for c in d.components]
        for i in range(0, 6, 2):
            ci, p = site[i], site[i + 1]
            q = _next(len(comps[ci]), p)
            comps[ci][p], comps[ci][q] = comps[ci][q], comps[ci][p]
        return d.with_parts(comps, dict(d.signs))

    return run


def _apply_vd_insert(kind):
    def run(d, site):
        if len(site) != 21:
            raise MoveError(f"{kind}: insertion sites have 21 entries")
        signs = tuple(site[:3])
        segs = []
        slots = []
        for k in range(3):
            comp, gap, c1, r1, c2, r2 = site[3 + 6 * k: 9 + 6 * k]
            if r1 not in (0, 1) or r2 not in (0, 1):
                raise MoveError(f"{kind}: bad role code")
            segs.append(((c1, _CODE_ROLE[r1]), (c2, _CODE_ROLE[r2])))
            slots.append((comp, gap))
        pattern = (signs, tuple(segs))
        if any(c not in (0, 1, 2) for seg in segs for c, _ in seg):
            raise MoveError(f"{kind}: local chord labels must be 0, 1, 2")
        if not triangles._roles_consistent(pattern) or any(
            {seg[0][0], seg[1][0]} != {0, 1, 2} - {k} for k, seg in enumerate(segs)
        ):
            raise MoveError(f"{kind}: malformed triangle")
        if triangles.pattern_kind(pattern) != _PATTERN_KIND[kind]:
            raise MoveError(f"{kind}: pattern is not an admissible triangle")
        base = d.next_id()
        blocks = [
            (comp, gap, [(base + c, r) for c, r in seg]) for (comp, gap), seg in zip(slots, segs)
        ]
        return _insert_blocks(d, blocks, {base + k: signs[k] for k in range(3)})

    return run


_APPLY = {
    "R1_delete": _apply_r1_delete,
    "R1_insert": _apply_r1_insert,
    "R2_delete": _apply_r2_delete,
    "R2_insert": _apply_r2_insert,
    "R3": _apply_triangle("R3"),
    "VD_rv": _apply_triangle("VD_rv"),
    "VD_rv_prime": _apply_triangle("VD_rv_prime"),
    "VD_vr": _apply_vd_insert("VD_vr"),
    "VD_vr_prime": _apply_vd_insert("VD_vr_prime"),
}


# ---------------------------------------------------------------------------
# inverses


def _post_gap(d: GaussDiagram, comp: int, pos: int, removed: set[tuple[int, int]]) -> int:
    return pos - sum(1 for (c, p) in removed if c == comp and p < pos)


def inverse(d: GaussDiagram, m: MoveInstance) -> MoveInstance:
    """The move undoing ``m`` on ``apply(d, m)`` (up to basepoint rotation)."""
    k = m.kind
    if k == "R3":
        return m
    if k == "R1_insert":
        return MoveInstance("R1_delete", (d.next_id(),))
    if k == "R2_insert":
        a = d.next_id()
        return MoveInstance("R2_delete", (a, a + 1))
    if k in ("VD_vr", "VD_vr_prime"):
        after = apply(d, m)
        new = {d.next_id() + i for i in range(3)}
        target = "VD_rv" if k == "VD_vr" else "VD_rv_prime"
        for site in enumerate_sites(after, target):
            if set(_triangle_from_site(after, site.site)[0]) == new:
                return site
        raise MoveError("inserted triangle not found")  # unreachable for valid inserts
    if k == "R1_delete":
        (c,) = m.site
        co, po = d.locate(c, OVER)
        _, pu = d.locate(c, UNDER)
        n = len(d.components[co])
        first = po if _adjacent(n, po, pu) else pu
        removed = {(co, po), (co, pu)}
        gap = _post_gap(d, co, first, removed)
        return MoveInstance("R1_insert", (co, gap, int(first == po), d.sign(c)))
    if k == "R2_delete":
        a, b = m.site
        removed = {d.locate(x, r) for x in (a, b) for r in (OVER, UNDER)}
        (co, pao), (_, pbo) = d.locate(a, OVER), d.locate(b, OVER)
        no = len(d.components[co])
        first_o, second_o = (a, b) if _adjacent(no, pao, pbo) else (b, a)
        start_o = d.locate(first_o, OVER)[1]
        (cu, pau), (_, pbu) = d.locate(a, UNDER), d.locate(b, UNDER)
        nu = len(d.components[cu])
        first_u = a if _adjacent(nu, pau, pbu) else b
        start_u = d.locate(first_u, UNDER)[1]
        gap_o = _post_gap(d, co, start_o, removed)
        gap_u = _post_gap(d, cu, start_u, removed)
        unders_first = 0
        if (co, gap_o) == (cu, gap_u):
            unders_first = int((start_o - start_u) % no == 2)
        crossed = int(first_u != first_o)
        return MoveInstance(
            "R2_insert", (co, gap_o, cu, gap_u, d.sign(first_o), crossed, unders_first)
        )
    if k in ("VD_rv", "VD_rv_prime"):
        chords, pattern = _triangle_from_site(d, m.site)
        starts = sorted([(m.site[i], m.site[i + 1]) for i in (0, 2, 4)])
        removed = {d.locate(c, r) for c in chords for r in (OVER, UNDER)}
        # relabel so that segment k (in positional order) misses local chord k
        segs = [_segment_at(d, c, p) for c, p in starts]
        local = {}
        for k_, seg in enumerate(segs):
            (missing,) = set(chords) - {seg[0][0], seg[1][0]}
            local[missing] = k_
        site = [d.sign(c) for c in sorted(local, key=local.get)]
        for (comp, pos), seg in zip(starts, segs):
            site += [comp, _post_gap(d, comp, pos, removed)]
            for c, r in seg:
                site += [local[c], _ROLE_CODE[r]]
        return MoveInstance("VD_vr" if k == "VD_rv" else "VD_vr_prime", tuple(site))
    raise MoveError(f"no inverse for {k}")


# ---------------------------------------------------------------------------
# macros


def _swap_kind(d: GaussDiagram, comp: int, pos: int) -> str:
    a, b = _segment_at(d, comp, pos)
    if a[0] == b[0]:
        raise MoveError("Swap needs endpoints of two distinct chords")
    if a[1] != b[1]:
        return "ForbiddenDetour"
    return "ForbiddenOver" if a[1] == OVER else "ForbiddenUnder"


def macro_cost(d: GaussDiagram, kind: str, site: Sequence[int]) -> int:
    if kind == "Swap":
        return MACRO_COST[_swap_kind(d, site[0], site[1])]
    return MACRO_COST[kind]


def make_macro(d: GaussDiagram, kind: str, site: Sequence[int]) -> MacroInstance:
    """Macro instance with its ledger cost resolved against ``d``."""
    return MacroInstance(kind, tuple(site), macro_cost(d, kind, site))


def apply_macro(d: GaussDiagram, m: MacroInstance) -> GaussDiagram:
    k, site = m.kind, m.site
    try:
        expected = macro_cost(d, k, site)
    except (ValueError, IndexError) as exc:
        raise MoveError(f"{k} not applicable at {site}: {exc}") from None
    if m.vd_cost != expected:
        raise MoveError(f"{k} costs {expected}, instance records {m.vd_cost}")

    if k in ("CrossingChange", "OrientationReversal", "SignFlip", "SignReversal"):
        (c,) = site
        sign = d.sign(c)
        flip_roles = k in ("CrossingChange", "OrientationReversal")
        new_sign = sign if k == "OrientationReversal" else -sign
        comps = d.components
        if flip_roles:
            swap = {OVER: UNDER, UNDER: OVER}
            comps = [[(x, swap[r]) if x == c else (x, r) for x, r in comp] for comp in comps]
        signs = dict(d.signs)
        signs[c] = new_sign
        return d.with_parts(comps, signs)

    if k in ("Swap", "ForbiddenDetour", "ForbiddenOver", "ForbiddenUnder"):
        comp, pos = site
        actual = _swap_kind(d, comp, pos)
        if k != "Swap" and actual != k:
            raise MoveError(f"{k}: endpoints at {site} call for {actual}")
        comps = [list(c) for c in d.components]
        q = _next(len(comps[comp]), pos)
        comps[comp][pos], comps[comp][q] = comps[comp][q], comps[comp][pos]
        return d.with_parts(comps, dict(d.signs))

    if k == "Reroute":
        return expand_reroute(d, *site).end
    raise MoveError(f"unknown macro {k}")


def expand_reroute(d: GaussDiagram, chord: int, gap: int) -> MoveSequence:
    """Primitive realization of ``Reroute``: two bigons pulled from component 0
    onto the chord's endpoints, then one ``VD_rv`` removing the chord.

    The first working choice in a fixed search order is taken, so the result
    is deterministic.
    """
    co, po = d.locate(chord, OVER)
    cu, pu = d.locate(chord, UNDER)
    if co == 0 or cu == 0 or co == cu:
        raise MoveError("Reroute needs a chord between two components other than the first")
    _check_gap(d, 0, gap)
    for first in _r2_candidates(d, 0, gap, co, po):
        d1 = apply(d, first)
        new1 = {d.next_id(), d.next_id() + 1}
        cu1, pu1 = d1.locate(chord, UNDER)
        for g in (gap, gap + 1, gap + 2):
            for second in _r2_candidates(d1, 0, g, cu1, pu1):
                d2 = apply(d1, second)
                new2 = {d1.next_id(), d1.next_id() + 1}
                for vd in enumerate_sites(d2, "VD_rv"):
                    touched = set(site_chords(d2, vd))
                    if chord in touched and len(touched & new1) == 1 and len(touched & new2) == 1:
                        d3 = apply(d2, vd)
                        return MoveSequence(d, [first, second, vd], d3)
    raise MoveError("Reroute: no realization found")  # pragma: no cover


def _r2_candidates(d: GaussDiagram, comp_a: int, gap_a: int, comp_b: int, pos_b: int):
    """Bigon insertions between ``comp_a`` at ``gap_a`` and a gap touching
    position ``pos_b`` of ``comp_b``."""
    for gap_b in (pos_b, pos_b + 1):
        for a_over in (1, 0):
            for sign in (1, -1):
                for crossed in (0, 1):
                    if a_over:
                        site = (comp_a, gap_a, comp_b, gap_b, sign, crossed, 0)
                    else:
                        site = (comp_b, gap_b, comp_a, gap_a, sign, crossed, 0)
                    yield MoveInstance("R2_insert", site)


def apply_step(d: GaussDiagram, step: Step) -> GaussDiagram:
    if isinstance(step, MacroInstance):
        return apply_macro(d, step)
    return apply(d, step)


def replay(seq: MoveSequence) -> ReplayResult:
    """Apply every step from ``seq.start`` and compare with ``seq.end`` up to
    rotation and relabeling."""
    d = seq.start
    for i, step in enumerate(seq.steps):
        try:
            d = apply_step(d, step)
        except (MoveError, KeyError, ValueError, IndexError) as exc:
            return ReplayResult(False, i, str(exc))
    if canonical_code(d) != canonical_code(seq.end):
        return ReplayResult(False, len(seq.steps), "final diagram differs from the recorded end")
    return ReplayResult(True)


_ID_SITES = ("R1_delete", "R2_delete", "CrossingChange", "OrientationReversal", "SignFlip",
             "SignReversal")
_POS_SITES = ("R3", "VD_rv", "VD_rv_prime", "Swap", "ForbiddenDetour", "ForbiddenOver",
              "ForbiddenUnder")


def transport(step: Step, src: GaussDiagram, dst: GaussDiagram) -> Step:
    """Re-express a step applicable to ``src`` for a diagram ``dst`` that equals
    ``src`` up to basepoint rotation and chord renumbering."""
    iso = isomorphism(src, dst)
    if iso is None:
        raise MoveError("diagrams are not isomorphic")
    shifts, ids = iso
    lens = [len(c) for c in src.components]
    k, site = step.kind, list(step.site)

    def pos(comp: int, p: int) -> int:
        return (p + shifts[comp]) % lens[comp] if lens[comp] else 0

    if k in _ID_SITES:
        site = [ids[c] for c in site]
    elif k in _POS_SITES:
        for i in range(0, len(site), 2):
            site[i + 1] = pos(site[i], site[i + 1])
    elif k == "Reroute":
        site = [ids[site[0]], pos(0, site[1])]
    elif k == "R1_insert":
        site[1] = pos(site[0], site[1])
    elif k == "R2_insert":
        co, go, cu, gu = site[:4]
        new_o, new_u = pos(co, go), pos(cu, gu)
        if (co, new_o) == (cu, new_u) and (co, go) != (cu, gu):
            # blocks at gap 0 and gap L meet; the appended one comes first
            site[6] = int(gu == lens[cu])
        site[1], site[3] = new_o, new_u
    elif k in ("VD_vr", "VD_vr_prime"):
        site = _transport_vd_insert(site, pos, lens)
    return MacroInstance(k, tuple(site), step.vd_cost) if isinstance(step, MacroInstance) \
        else MoveInstance(k, tuple(site))


def _transport_vd_insert(site, pos, lens):
    signs = site[:3]
    segs = [site[3 + 6 * k: 9 + 6 * k] for k in range(3)]
    # order: (component, new gap, appended-before-prefixed, original list order)
    keyed = []
    for k, (comp, gap, *rest) in enumerate(segs):
        at_end = int(gap == lens[comp] and lens[comp] > 0)
        keyed.append(((comp, pos(comp, gap), -at_end, k), k))
    order = [k for _, k in sorted(keyed)]
    relabel = {old: new for new, old in enumerate(order)}
    out = [signs[old] for old in order]
    for old in order:
        comp, gap, c1, r1, c2, r2 = segs[old]
        out += [comp, pos(comp, gap), relabel[c1], r1, relabel[c2], r2]
    return out


def invert_sequence(seq: MoveSequence) -> MoveSequence:
    """Sequence from ``seq.end`` back to ``seq.start`` (up to rotation)."""
    diagrams = [seq.start]
    for step in seq.steps:
        diagrams.append(apply_step(diagrams[-1], step))
    cur = diagrams[-1]
    steps: list[Step] = []
    for i in range(len(seq.steps) - 1, -1, -1):
        before, after, step = diagrams[i], diagrams[i + 1], seq.steps[i]
        if isinstance(step, MacroInstance):
            if step.kind == "Reroute":
                raise MoveError("Reroute has no inverse macro")
            inv: Step = make_macro(after, step.kind, step.site)
        else:
            inv = inverse(before, step)
        if cur != after:
            inv = transport(inv, after, cur)
        cur = apply_step(cur, inv)
        steps.append(inv)
    return MoveSequence(diagrams[-1], steps, cur)
