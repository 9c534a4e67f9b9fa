"""Gauss diagrams of virtual knots and the extended Gauss code.

A Gauss diagram is stored as the cyclic sequence of chord endpoints read
along the oriented circle.  Each endpoint is ``(chord_id, is_tail)``; the
tail is the over-passage and the head the under-passage, so chords point
from over to under.  Every chord carries a sign (the writhe of its
crossing).

Chord ids are arbitrary positive integers and are *kept* by
:func:`virtualize`, :func:`crossing_change` and the Reidemeister moves, so
a set of chord ids chosen on an input diagram stays meaningful after the
diagram has been modified.  :func:`parse_gauss_code` is the only place that
renumbers (1..c in order of first appearance).

Virtual crossings are never stored: two codes present the same virtual
knot up to virtual moves iff they agree up to rotation and relabeling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    DuplicateOccurrence,
    InvalidPosition,
    MalformedToken,
    SignConflict,
    UnknownChord,
    UnmatchedLabel,
)

Endpoint = tuple[int, bool]

_TOKEN = re.compile(r"([OU])([0-9]+)([+-])")
_SEP = re.compile(r"(?:, ?| )?")


@dataclass(frozen=True)
class GaussDiagram:
    endpoints: tuple[Endpoint, ...] = ()
    signs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen: dict[int, list[bool]] = {}
        for cid, tail in self.endpoints:
            seen.setdefault(cid, []).append(bool(tail))
        for cid, roles in seen.items():
            if sorted(roles) != [False, True]:
                raise ValueError(f"chord {cid} must have exactly one tail and one head")
        sign_ids = [cid for cid, _ in self.signs]
        if sorted(sign_ids) != sorted(seen) or len(set(sign_ids)) != len(sign_ids):
            raise ValueError("signs must be given for exactly the chords present")
        if any(s not in (1, -1) for _, s in self.signs):
            raise ValueError("chord signs must be +1 or -1")

    @classmethod
    def build(cls, endpoints: Iterable[Endpoint], signs: Mapping[int, int]) -> "GaussDiagram":
        endpoints = tuple((int(c), bool(t)) for c, t in endpoints)
        present = {c for c, _ in endpoints}
        return cls(endpoints, tuple(sorted((c, int(s)) for c, s in signs.items() if c in present)))

    @classmethod
    def _unchecked(cls, endpoints, signs) -> "GaussDiagram":
        # hot path for move application; callers guarantee the invariants
        obj = object.__new__(cls)
        object.__setattr__(obj, "endpoints", endpoints)
        object.__setattr__(obj, "signs", signs)
        return obj

    @property
    def chord_count(self) -> int:
        return len(self.endpoints) // 2

    def __len__(self):
        return len(self.endpoints)

    @cached_property
    def sign(self) -> dict[int, int]:
        return dict(self.signs)

    @cached_property
    def chords(self) -> tuple[int, ...]:
        """Chord ids in order of first appearance."""
        out, seen = [], set()
        for cid, _ in self.endpoints:
            if cid not in seen:
                seen.add(cid)
                out.append(cid)
        return tuple(out)

    @cached_property
    def tail_pos(self) -> dict[int, int]:
        return {cid: i for i, (cid, tail) in enumerate(self.endpoints) if tail}

    @cached_property
    def head_pos(self) -> dict[int, int]:
        return {cid: i for i, (cid, tail) in enumerate(self.endpoints) if not tail}

    def positions(self, cid: int) -> tuple[int, int]:
        """``(tail position, head position)`` of a chord."""
        try:
            return self.tail_pos[cid], self.head_pos[cid]
        except KeyError:
            raise UnknownChord(cid) from None

    def interleaved(self, a: int, b: int) -> bool:
        """True when the chords a and b cross (their endpoints alternate)."""
        pa = sorted(self.positions(a))
        pb = self.positions(b)
        inside = [pa[0] < p < pa[1] for p in pb]
        return inside[0] != inside[1]

    def rotate(self, k: int) -> "GaussDiagram":
        n = len(self.endpoints)
        if n == 0:
            return self
        k %= n
        return GaussDiagram(self.endpoints[k:] + self.endpoints[:k], self.signs)

    def relabel(self, mapping: Mapping[int, int]) -> "GaussDiagram":
        return GaussDiagram.build(
            ((mapping[c], t) for c, t in self.endpoints),
            {mapping[c]: s for c, s in self.signs},
        )

    def normalized(self) -> "GaussDiagram":
        """Relabel chords 1..c in order of first appearance."""
        return self.relabel({cid: i + 1 for i, cid in enumerate(self.chords)})

    @property
    def code(self) -> str:
        return emit_gauss_code(self)

    def __str__(self):
        return emit_gauss_code(self) or "<empty>"


@dataclass(frozen=True)
class FlatDiagram:
    """Gauss diagram with over/under information forgotten.

    A flat crossing still remembers which branch crosses the other from
    right to left, so each chord keeps an arrow: from tail to head on a
    positive chord, from head to tail on a negative one.  A crossing change
    reverses both direction and sign and therefore leaves the arrow alone.
    Endpoints are ``(chord_id, is_source)``.
    """

    endpoints: tuple[Endpoint, ...] = ()

    def __post_init__(self):
        seen: dict[int, list[bool]] = {}
        for cid, src in self.endpoints:
            seen.setdefault(cid, []).append(bool(src))
        for cid, roles in seen.items():
            if sorted(roles) != [False, True]:
                raise ValueError(f"flat chord {cid} must have one source and one target")

    @classmethod
    def _unchecked(cls, endpoints) -> "FlatDiagram":
        obj = object.__new__(cls)
        object.__setattr__(obj, "endpoints", endpoints)
        return obj

    @property
    def chord_count(self) -> int:
        return len(self.endpoints) // 2

    @cached_property
    def chords(self) -> tuple[int, ...]:
        out, seen = [], set()
        for cid, _ in self.endpoints:
            if cid not in seen:
                seen.add(cid)
                out.append(cid)
        return tuple(out)

    @cached_property
    def source_pos(self) -> dict[int, int]:
        return {cid: i for i, (cid, src) in enumerate(self.endpoints) if src}

    @cached_property
    def target_pos(self) -> dict[int, int]:
        return {cid: i for i, (cid, src) in enumerate(self.endpoints) if not src}

    @property
    def code(self) -> str:
        return "".join(f"{'S' if s else 'T'}{c}" for c, s in self.endpoints)

    def __str__(self):
        return self.code or "<empty>"


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def parse_gauss_code(text: str) -> GaussDiagram:
    """Read an extended Gauss code such as ``"O1+U2+O3+U1+O2+U3+"``.

    ``O``/``U`` mark the over (tail) and under (head) passage, the trailing
    ``+``/``-`` is the crossing sign and must agree on both occurrences.
    Tokens may be separated by a single space or comma.  Labels are
    renumbered 1..c by first appearance.
    """
    text = text.strip()
    pos = 0
    raw: list[tuple[int, bool, int]] = []
    while pos < len(text):
        if raw:
            sep = _SEP.match(text, pos)
            pos = sep.end()
        m = _TOKEN.match(text, pos)
        if not m:
            raise MalformedToken(f"cannot read a token at offset {pos}: {text[pos:pos + 8]!r}")
        label = int(m.group(2))
        if label <= 0:
            raise MalformedToken(f"labels must be positive, got {label}")
        raw.append((label, m.group(1) == "O", 1 if m.group(3) == "+" else -1))
        pos = m.end()

    roles: dict[int, dict[bool, int]] = {}
    for label, tail, sign in raw:
        slot = roles.setdefault(label, {})
        if tail in slot:
            raise DuplicateOccurrence(f"label {label} has two {'O' if tail else 'U'} occurrences")
        slot[tail] = sign
    for label, slot in roles.items():
        if len(slot) != 2:
            missing = "O" if True not in slot else "U"
            raise UnmatchedLabel(f"label {label} lacks an {missing} occurrence")
        if slot[True] != slot[False]:
            raise SignConflict(f"label {label} carries both signs")

    order: dict[int, int] = {}
    for label, _, _ in raw:
        order.setdefault(label, len(order) + 1)
    return GaussDiagram.build(
        ((order[label], tail) for label, tail, _ in raw),
        {order[label]: slot[True] for label, slot in roles.items()},
    )


def emit_gauss_code(g: GaussDiagram) -> str:
    sign = g.sign
    return "".join(
        f"{'O' if tail else 'U'}{cid}{'+' if sign[cid] > 0 else '-'}" for cid, tail in g.endpoints
    )


def canonical_key(g: GaussDiagram) -> str:
    """Rotation- and relabeling-invariant key: the least normalized code over all rotations."""
    eps = g.endpoints
    n = len(eps)
    if n == 0:
        return ""
    sign = g.sign
    best = None
    for r in range(n):
        labels: dict[int, int] = {}
        parts = []
        for i in range(r, r + n):
            cid, tail = eps[i % n]
            lab = labels.get(cid)
            if lab is None:
                lab = labels[cid] = len(labels) + 1
            parts.append(f"{'O' if tail else 'U'}{lab}{'+' if sign[cid] > 0 else '-'}")
        s = "".join(parts)
        if best is None or s < best:
            best = s
    return best


def search_key(g: GaussDiagram) -> tuple[int, ...]:
    """Integer key with the same equivalence classes as :func:`canonical_key`.

    Each endpoint becomes (offset to its partner, role, sign) packed in one
    integer, which needs no relabeling; the key is the least rotation.
    """
    eps = g.endpoints
    n = len(eps)
    if n == 0:
        return ()
    tail_pos, head_pos, sign = g.tail_pos, g.head_pos, g.sign
    toks = []
    for i, (cid, tail) in enumerate(eps):
        other = head_pos[cid] if tail else tail_pos[cid]
        toks.append((((other - i) % n) << 2) | (tail << 1) | (sign[cid] > 0))
    doubled = toks + toks
    return min(tuple(doubled[r:r + n]) for r in range(n))


def flat_key(f: FlatDiagram) -> str:
    eps = f.endpoints
    n = len(eps)
    if n == 0:
        return ""
    best = None
    for r in range(n):
        labels: dict[int, int] = {}
        parts = []
        for i in range(r, r + n):
            cid, src = eps[i % n]
            lab = labels.get(cid)
            if lab is None:
                lab = labels[cid] = len(labels) + 1
            parts.append(f"{'S' if src else 'T'}{lab}")
        s = "".join(parts)
        if best is None or s < best:
            best = s
    return best


# ---------------------------------------------------------------------------
# unknotting operations and constructions
# ---------------------------------------------------------------------------

def _require(g: GaussDiagram, cid: int):
    if cid not in g.sign:
        raise UnknownChord(cid)


def virtualize(g: GaussDiagram, cid: int) -> GaussDiagram:
    """Turn the crossing of chord ``cid`` into a virtual crossing (delete the chord)."""
    _require(g, cid)
    return GaussDiagram(
        tuple(e for e in g.endpoints if e[0] != cid),
        tuple(s for s in g.signs if s[0] != cid),
    )


def crossing_change(g: GaussDiagram, cid: int) -> GaussDiagram:
    """Swap over and under at chord ``cid``: reverse its direction and negate its sign."""
    _require(g, cid)
    return GaussDiagram(
        tuple((c, not t) if c == cid else (c, t) for c, t in g.endpoints),
        tuple((c, -s) if c == cid else (c, s) for c, s in g.signs),
    )


def apply_operations(g: GaussDiagram, virtualized: Iterable[int] = (), changed: Iterable[int] = ()) -> GaussDiagram:
    virtualized, changed = set(virtualized), set(changed)
    if virtualized & changed:
        raise ValueError("virtualized and changed chord sets must be disjoint")
    for cid in virtualized | changed:
        _require(g, cid)
    # one pass; the result satisfies the invariants whenever g does
    return GaussDiagram._unchecked(
        tuple((c, t != (c in changed)) for c, t in g.endpoints if c not in virtualized),
        tuple((c, -s if c in changed else s) for c, s in g.signs if c not in virtualized),
    )


def connected_sum(g1: GaussDiagram, pos1: int | None, g2: GaussDiagram, pos2: int = 0) -> GaussDiagram:
    """Splice ``g2``, opened at its gap ``pos2``, into ``g1`` at gap ``pos1``.

    Gap ``i`` sits just before endpoint ``i``; gap ``len(g)`` (the default
    when ``pos1`` is None) is the gap after the last endpoint.  Chords of
    ``g1`` keep their ids, those of ``g2`` are shifted past them.
    """
    n1, n2 = len(g1.endpoints), len(g2.endpoints)
    if pos1 is None:
        pos1 = n1
    if not 0 <= pos1 <= n1:
        raise InvalidPosition(f"gap {pos1} outside 0..{n1}")
    if not 0 <= pos2 <= n2:
        raise InvalidPosition(f"gap {pos2} outside 0..{n2}")
    offset = max(g1.sign, default=0)
    opened = g2.rotate(pos2) if n2 else g2
    block = tuple((c + offset, t) for c, t in opened.endpoints)
    signs = dict(g1.sign)
    signs.update({c + offset: s for c, s in g2.signs})
    return GaussDiagram.build(g1.endpoints[:pos1] + block + g1.endpoints[pos1:], signs)


def flat_projection(g: GaussDiagram) -> FlatDiagram:
    sign = g.sign
    return FlatDiagram(tuple((c, t if sign[c] > 0 else not t) for c, t in g.endpoints))


def interleavement_counts(endpoints: tuple[Endpoint, ...]) -> dict[int, int]:
    """For each chord, the number of chords crossing it."""
    first: dict[int, int] = {}
    spans = {}
    for i, (cid, _) in enumerate(endpoints):
        if cid in first:
            spans[cid] = (first[cid], i)
        else:
            first[cid] = i
    counts = {}
    for c, (a, b) in spans.items():
        n = 0
        for d, (x, y) in spans.items():
            if d != c and ((a < x < b) != (a < y < b)):
                n += 1
        counts[c] = n
    return counts
