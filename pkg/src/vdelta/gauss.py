"""Multi-component Gauss diagrams.

A diagram is an ordered tuple of oriented circles.  Each circle is a cyclic
sequence of chord endpoints ``(chord_id, role)`` read in the direction of the
orientation, where ``role`` is :data:`OVER` or :data:`UNDER`.  Every chord
carries a sign in ``{+1, -1}``.

Chords are oriented from the Over endpoint (initial) to the Under endpoint
(terminal).  Virtual crossings leave no trace in this representation.

Text form::

    O1+,U2+,O3+,U1+,O2+,U3+        one component
    O1+|U1+                         two components, one nonself-chord
    O1+,O2+|U1+|0|U2+               empty components are written "0"

The empty knot serializes to the empty string.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ChordNotFoundError, GaussParseError, InvalidDiagramError

__all__ = [
    "OVER",
    "UNDER",
    "Endpoint",
    "Chord",
    "GaussDiagram",
    "new_diagram",
    "parse_gauss_code",
    "serialize",
    "canonical_code",
    "canonical_form",
    "isomorphism",
    "is_self_chord",
]

OVER = "O"
UNDER = "U"

@dataclass(frozen=True)
class Endpoint:
    chord: int
    role: str
    component: int  # 1-based
    position: int


@dataclass(frozen=True)
class Chord:
    id: int
    sign: int
    over: Endpoint
    under: Endpoint

    @property
    def is_self(self) -> bool:
        return self.over.component == self.under.component


class GaussDiagram:
    """Immutable Gauss diagram of an ordered virtual link.

    Args:
        components: one sequence of ``(chord_id, role)`` pairs per circle.
        signs: chord sign for every chord id appearing in ``components``.
    """

    __slots__ = ("_components", "_signs", "_locations", "_hash")

    def __init__(
        self,
        components: Iterable[Iterable[tuple[int, str]]],
        signs: Mapping[int, int],
        *,
        validate: bool = True,
    ):
        comps = tuple(tuple((int(c), r) for c, r in comp) for comp in components)
        self._components = comps
        self._signs = dict(signs)
        self._locations: dict[int, dict[str, tuple[int, int]]] | None = None
        self._hash: int | None = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        if not self._components:
            raise InvalidDiagramError("a diagram needs at least one component")
        seen: dict[int, set[str]] = {}
        for comp in self._components:
            for chord, role in comp:
                if role not in (OVER, UNDER):
                    raise InvalidDiagramError(f"bad role {role!r} for chord {chord}")
                if chord < 1:
                    raise InvalidDiagramError(f"chord ids must be positive, got {chord}")
                roles = seen.setdefault(chord, set())
                if role in roles:
                    raise InvalidDiagramError(f"chord {chord} has two {role} endpoints")
                roles.add(role)
        for chord, roles in seen.items():
            if len(roles) != 2:
                raise InvalidDiagramError(f"chord {chord} appears only once")
        if set(seen) != set(self._signs):
            raise InvalidDiagramError("signs must be given for exactly the chords present")
        for chord, sign in self._signs.items():
            if sign not in (1, -1):
                raise InvalidDiagramError(f"chord {chord} has sign {sign}, expected +1 or -1")

    # -- basic accessors -------------------------------------------------

    @property
    def components(self) -> tuple[tuple[tuple[int, str], ...], ...]:
        return self._components

    @property
    def signs(self) -> Mapping[int, int]:
        return MappingProxyType(self._signs)

    @property
    def n_components(self) -> int:
        return len(self._components)

    @property
    def is_knot(self) -> bool:
        return len(self._components) == 1

    @property
    def chord_ids(self) -> list[int]:
        return sorted(self._signs)

    @property
    def num_chords(self) -> int:
        return len(self._signs)

    def sign(self, chord: int) -> int:
        try:
            return self._signs[chord]
        except KeyError:
            raise ChordNotFoundError(f"no chord with id {chord}") from None

    def _locs(self) -> dict[int, dict[str, tuple[int, int]]]:
        if self._locations is None:
            locs: dict[int, dict[str, tuple[int, int]]] = {}
            for ci, comp in enumerate(self._components):
                for pos, (chord, role) in enumerate(comp):
                    locs.setdefault(chord, {})[role] = (ci, pos)
            self._locations = locs
        return self._locations

    def locate(self, chord: int, role: str) -> tuple[int, int]:
        """0-based ``(component, position)`` of one endpoint of ``chord``."""
        try:
            return self._locs()[chord][role]
        except KeyError:
            raise ChordNotFoundError(f"no chord with id {chord}") from None

    def chord(self, chord: int) -> Chord:
        o = self.locate(chord, OVER)
        u = self.locate(chord, UNDER)
        return Chord(
            chord,
            self._signs[chord],
            Endpoint(chord, OVER, o[0] + 1, o[1]),
            Endpoint(chord, UNDER, u[0] + 1, u[1]),
        )

    def chords(self) -> list[Chord]:
        return [self.chord(c) for c in self.chord_ids]

    def endpoints(self) -> Iterator[Endpoint]:
        for ci, comp in enumerate(self._components):
            for pos, (chord, role) in enumerate(comp):
                yield Endpoint(chord, role, ci + 1, pos)

    def next_id(self) -> int:
        return max(self._signs, default=0) + 1

    def with_parts(
        self, components: Sequence[Sequence[tuple[int, str]]], signs: Mapping[int, int]
    ) -> "GaussDiagram":
        # internal constructor for rewrites that keep validity by construction
        return GaussDiagram(components, signs, validate=False)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussDiagram):
            return NotImplemented
        return self._components == other._components and self._signs == other._signs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._components, frozenset(self._signs.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"GaussDiagram({serialize(self)!r})"

    def __str__(self) -> str:
        return serialize(self)


def new_diagram(n_components: int) -> GaussDiagram:
    """Chordless diagram with ``n_components`` empty circles."""
    if n_components < 1:
        raise ValueError("n_components must be at least 1")
    return GaussDiagram([()] * n_components, {})


_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse the text form described in the module docstring.

    Whitespace anywhere is ignored.  Raises :class:`GaussParseError` with the
    offending character offset.
    """
    # keep original offsets for error messages while skipping whitespace
    chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    stripped = "".join(ch for _, ch in chars)
    offsets = [i for i, _ in chars] + [len(text)]

    components: list[list[tuple[int, str]]] = []
    signs: dict[int, int] = {}
    roles: dict[int, str] = {}
    counts: dict[int, int] = {}
    first_seen: dict[int, int] = {}

    if stripped == "":
        return new_diagram(1)

    start = 0
    for comp_text in stripped.split("|"):
        comp: list[tuple[int, str]] = []
        if comp_text == "0":
            components.append(comp)
            start += len(comp_text) + 1
            continue
        if comp_text == "":
            raise GaussParseError("empty component (write '0')", offsets[start])
        pos = start
        for tok in comp_text.split(","):
            m = _TOKEN.fullmatch(tok)
            if m is None:
                raise GaussParseError(f"malformed token {tok!r}", offsets[pos])
            role, cid, sgn = m.group(1), int(m.group(2)), 1 if m.group(3) == "+" else -1
            if cid < 1:
                raise GaussParseError("chord ids must be positive", offsets[pos])
            counts[cid] = counts.get(cid, 0) + 1
            if counts[cid] > 2:
                raise GaussParseError(f"chord {cid} appears more than twice", offsets[pos])
            if cid in roles:
                if roles[cid] == role:
                    raise GaussParseError(f"chord {cid} has two {role} endpoints", offsets[pos])
                if signs[cid] != sgn:
                    raise GaussParseError(f"sign mismatch for chord {cid}", offsets[pos])
            else:
                roles[cid] = role
                signs[cid] = sgn
                first_seen[cid] = offsets[pos]
            comp.append((cid, role))
            pos += len(tok) + 1
        components.append(comp)
        start += len(comp_text) + 1

    for cid, n in counts.items():
        if n != 2:
            raise GaussParseError(f"chord {cid} appears {n} time(s), expected 2", first_seen[cid])
    return GaussDiagram(components, signs)


def _token(chord: int, role: str, sign: int) -> str:
    return f"{role}{chord}{'+' if sign > 0 else '-'}"


def serialize(d: GaussDiagram) -> str:
    """Deterministic text form, keeping the diagram's own ids and basepoints."""
    if d.n_components == 1 and not d.components[0]:
        return ""
    parts = []
    for comp in d.components:
        if not comp:
            parts.append("0")
        else:
            parts.append(",".join(_token(c, r, d.sign(c)) for c, r in comp))
    return "|".join(parts)


_SIGN_KEY = {1: 0, -1: 1}  # '+' sorts before '-'


def _relabelled(d: GaussDiagram, rotations: Sequence[int]) -> tuple:
    """Token key of the diagram read from the given basepoints with ids renumbered
    by first appearance."""
    mapping: dict[int, int] = {}
    key = []
    signs = d._signs
    for comp, r in zip(d.components, rotations):
        n = len(comp)
        ckey = []
        for k in range(n):
            chord, role = comp[(r + k) % n]
            new = mapping.get(chord)
            if new is None:
                new = mapping[chord] = len(mapping) + 1
            ckey.append((role, new, _SIGN_KEY[signs[chord]]))
        key.append(tuple(ckey))
    return tuple(key)


def _rotation_candidates(d: GaussDiagram, comp: tuple) -> list[int]:
    if not comp:
        return [0]
    # the first token of the best rotation minimizes (role, sign) since its id is forced
    best = min((role, _SIGN_KEY[d._signs[c]]) for c, role in comp)
    return [i for i, (c, role) in enumerate(comp) if (role, _SIGN_KEY[d._signs[c]]) == best]


def canonical_key(d: GaussDiagram) -> tuple:
    """Minimal token key over basepoint rotations and chord relabelings."""
    cands = [_rotation_candidates(d, comp) for comp in d.components]
    return min(_relabelled(d, rot) for rot in itertools.product(*cands))


def canonical_labelling(d: GaussDiagram) -> tuple[tuple, tuple[int, ...], dict[int, int]]:
    """``(key, rotations, id_map)`` for the first rotation tuple attaining the
    canonical key; ``id_map`` sends the diagram's ids to canonical ids."""
    cands = [_rotation_candidates(d, comp) for comp in d.components]
    best = None
    for rot in itertools.product(*cands):
        key = _relabelled(d, rot)
        if best is None or key < best[0]:
            best = (key, rot)
    key, rot = best
    id_map: dict[int, int] = {}
    for comp, r in zip(d.components, rot):
        n = len(comp)
        for k in range(n):
            chord = comp[(r + k) % n][0]
            if chord not in id_map:
                id_map[chord] = len(id_map) + 1
    return key, tuple(rot), id_map


def isomorphism(src: GaussDiagram, dst: GaussDiagram):
    """Rotation shifts and chord map carrying ``src`` onto ``dst``.

    Returns ``(shifts, id_map)`` where position ``p`` of component ``i`` in
    ``src`` corresponds to ``(p + shifts[i]) % len`` in ``dst``, or None if
    the diagrams differ beyond rotation/relabeling.
    """
    if src.n_components != dst.n_components:
        return None
    k1, r1, m1 = canonical_labelling(src)
    k2, r2, m2 = canonical_labelling(dst)
    if k1 != k2:
        return None
    inv2 = {v: k for k, v in m2.items()}
    shifts = tuple(
        (b - a) % len(comp) if comp else 0 for a, b, comp in zip(r1, r2, src.components)
    )
    return shifts, {c: inv2[m1[c]] for c in m1}


def _key_to_text(key: tuple) -> str:
    if len(key) == 1 and not key[0]:
        return ""
    parts = []
    for comp in key:
        if not comp:
            parts.append("0")
        else:
            parts.append(",".join(f"{role}{cid}{'+-'[s]}" for role, cid, s in comp))
    return "|".join(parts)


def canonical_code(d: GaussDiagram) -> str:
    """Serialization that is the same for diagrams equal up to basepoint
    rotation of each circle and renumbering of chords.

    Among all rotations/relabelings the token sequence ``(role, id, sign)`` is
    minimized lexicographically, with ids compared as integers and ``O < U``,
    ``+ < -``.  Component order is kept.
    """
    return _key_to_text(canonical_key(d))


def canonical_form(d: GaussDiagram) -> GaussDiagram:
    """The diagram spelled by :func:`canonical_code`."""
    return parse_gauss_code(canonical_code(d))


def is_self_chord(d: GaussDiagram, chord: int) -> bool:
    """True iff both endpoints of ``chord`` lie on one circle."""
    return d.locate(chord, OVER)[0] == d.locate(chord, UNDER)[0]
