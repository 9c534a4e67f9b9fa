"""Deciding, certifying or bracketing triviality of diagrams.

:func:`is_trivial_bounded` first removes RI/RII pairs greedily, then checks
invariant witnesses, then runs a breadth-first search over Reidemeister
moves.  The flat counterpart works on diagrams without over/under data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alexander import e_lower_bound, module_nontrivial
from .gauss import FlatDiagram, GaussDiagram, search_key, flat_key
from .moves import (
    Move,
    apply_flat_move,
    apply_move,
    enumerate_flat_moves,
    enumerate_moves,
    first_flat_removal,
    first_removal,
)
from .writhe import odd_writhe, writhe_polynomial


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the move search; ``max_chords`` None means input size + 2."""

    max_chords: int | None = None
    max_nodes: int = 200_000
    max_depth: int = 24

    def __post_init__(self):
        for name in ("max_nodes", "max_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_chords is not None and self.max_chords < 1:
            raise ValueError("max_chords must be positive")

    def chord_cap(self, chord_count: int) -> int:
        return self.max_chords if self.max_chords is not None else chord_count + 2


@dataclass(frozen=True)
class Trivial:
    trace: tuple[Move, ...] = ()

    @property
    def kind(self):
        return "trivial"


@dataclass(frozen=True)
class NontrivialCertified:
    invariant: str
    value: str

    @property
    def kind(self):
        return "nontrivial"


@dataclass(frozen=True)
class Unknown:
    nodes: int = 0
    depth: int = 0
    frontier: int = 0

    @property
    def kind(self):
        return "unknown"


TrivialityVerdict = Trivial | NontrivialCertified | Unknown


# ---------------------------------------------------------------------------
# monotone simplification
# ---------------------------------------------------------------------------

def simplify_with_trace(g: GaussDiagram) -> tuple[GaussDiagram, tuple[Move, ...]]:
    trace = []
    while True:
        m = first_removal(g)
        if m is None:
            return g, tuple(trace)
        g = apply_move(g, m)
        trace.append(m)


def simplify_monotone(g: GaussDiagram) -> GaussDiagram:
    return simplify_with_trace(g)[0]


def replay(g: GaussDiagram, trace) -> GaussDiagram:
    for m in trace:
        g = apply_move(g, m)
    return g


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def witness(g: GaussDiagram) -> NontrivialCertified | None:
    """An invariant that vanishes on the trivial knot but not on ``g``."""
    j = odd_writhe(g)
    if j:
        return NontrivialCertified("odd_writhe", str(j))
    w = writhe_polynomial(g)
    if not w.is_zero():
        return NontrivialCertified("writhe_polynomial", str(w))
    if module_nontrivial(g):
        return NontrivialCertified("e_lower_bound", str(e_lower_bound(g)))
    return None


def check_witness(g: GaussDiagram, cert: NontrivialCertified) -> bool:
    """Recompute a witness; True if it still reads the stated value."""
    if cert.invariant == "odd_writhe":
        return str(odd_writhe(g)) == cert.value
    if cert.invariant == "writhe_polynomial":
        return str(writhe_polynomial(g)) == cert.value
    if cert.invariant == "e_lower_bound":
        return str(e_lower_bound(g)) == cert.value
    return False


# ---------------------------------------------------------------------------
# breadth-first search
# ---------------------------------------------------------------------------

def _bfs(start, key, expand, apply, simplify, budget_nodes, max_depth):
    """Level-synchronous BFS; returns (trace or None, nodes, depth, frontier).

    Greedy simplification is only the goal test: a child is kept unsimplified
    in the frontier, since simplifying it would undo every RI/RII addition.
    """
    parent = {key(start): None}
    level = [start]
    depth = 0
    while level and depth < max_depth:
        depth += 1
        nxt = []
        for node in level:
            nkey = key(node)
            for m in expand(node):
                child = apply(node, m)
                ckey = key(child)
                if ckey in parent:
                    continue
                reduced, tail = simplify(child)
                parent[ckey] = (nkey, (m,))
                if len(reduced.endpoints) == 0:
                    return _unwind(parent, ckey) + tail, len(parent), depth, len(nxt)
                if len(parent) >= budget_nodes:
                    return None, len(parent), depth, len(nxt)
                nxt.append(child)
        level = nxt
    return None, len(parent), depth, len(level)


def _unwind(parent, k):
    segs = []
    while parent[k] is not None:
        pk, moves = parent[k]
        segs.append(moves)
        k = pk
    return tuple(m for seg in reversed(segs) for m in seg)


def is_trivial_bounded(g: GaussDiagram, b: SearchBudget | None = None, use_witnesses: bool = True) -> TrivialityVerdict:
    """Trivial with a replayable trace, a certified invariant, or Unknown."""
    b = b or SearchBudget()
    reduced, trace = simplify_with_trace(g)
    if reduced.chord_count == 0:
        return Trivial(trace)
    if use_witnesses:
        cert = witness(reduced)
        if cert is not None:
            return cert
    cap = b.chord_cap(g.chord_count)
    found, nodes, depth, frontier = _bfs(
        reduced,
        search_key,
        lambda d: enumerate_moves(d, allow_additions=True, max_chords=cap),
        apply_move,
        simplify_with_trace,
        b.max_nodes,
        b.max_depth,
    )
    if found is not None:
        return Trivial(trace + found)
    return Unknown(nodes, depth, frontier)


# ---------------------------------------------------------------------------
# flat diagrams
# ---------------------------------------------------------------------------

def flat_parity(f: FlatDiagram) -> int:
    """Number of chords crossing an odd number of chords, mod 2."""
    counts: dict[int, int] = {}
    pos: dict[int, list[int]] = {}
    for i, (cid, _) in enumerate(f.endpoints):
        pos.setdefault(cid, []).append(i)
    ids = list(pos)
    for cid in ids:
        counts[cid] = 0
    for i, a in enumerate(ids):
        a0, a1 = pos[a]
        for c in ids[i + 1:]:
            c0, c1 = pos[c]
            if (a0 < c0 < a1) != (a0 < c1 < a1):
                counts[a] += 1
                counts[c] += 1
    return sum(1 for v in counts.values() if v % 2) % 2


def flat_simplify_with_trace(f: FlatDiagram) -> tuple[FlatDiagram, tuple[Move, ...]]:
    trace = []
    while True:
        m = first_flat_removal(f)
        if m is None:
            return f, tuple(trace)
        f = apply_flat_move(f, m)
        trace.append(m)


def flat_simplify(f: FlatDiagram) -> FlatDiagram:
    return flat_simplify_with_trace(f)[0]


def _flat_search_key(f: FlatDiagram) -> str:
    return flat_key(f)


def flat_trivial_bounded(f: FlatDiagram, b: SearchBudget | None = None) -> TrivialityVerdict:
    b = b or SearchBudget()
    reduced, trace = flat_simplify_with_trace(f)
    if reduced.chord_count == 0:
        return Trivial(trace)
    if flat_parity(reduced):
        return NontrivialCertified("flat_parity", "1")
    cap = b.chord_cap(f.chord_count)
    found, nodes, depth, frontier = _bfs(
        reduced,
        _flat_search_key,
        lambda d: enumerate_flat_moves(d, allow_additions=True, max_chords=cap),
        apply_flat_move,
        flat_simplify_with_trace,
        b.max_nodes,
        b.max_depth,
    )
    if found is not None:
        return Trivial(trace + found)
    return Unknown(nodes, depth, frontier)


def replay_flat(f: FlatDiagram, trace) -> FlatDiagram:
    for m in trace:
        f = apply_flat_move(f, m)
    return f
