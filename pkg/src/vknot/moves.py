"""Reidemeister moves on Gauss diagrams and on flat Gauss diagrams.

RI and RII are described by simple local rules.  RIII is table driven: the
admissible configurations are generated once from geometry (three oriented
straight lines with every height order, orientation and handedness), so the
table contains exactly the triangles that occur in real diagrams.  Applying
an RIII move swaps the two endpoints on each of the three strands.

Virtual moves have no representation at all; see :mod:`vknot.gauss`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

from .errors import InapplicableMove
from .gauss import FlatDiagram, GaussDiagram

R1_REMOVE = "R1_remove"
R2_REMOVE = "R2_remove"
R3 = "R3"
R1_ADD = "R1_add"
R2_ADD = "R2_add"

_KIND_RANK = {R1_REMOVE: 0, R2_REMOVE: 1, R3: 2, R1_ADD: 3, R2_ADD: 4}


@dataclass(frozen=True, order=False)
class Move:
    """A Reidemeister move at a concrete site of a concrete diagram.

    ``args`` depends on ``kind``:

    * ``R1_remove``: ``(chord,)``
    * ``R2_remove``: ``(chord_a, chord_b)``
    * ``R3``: the three strand start positions; strand ``p`` is ``(p, p+1)``
    * ``R1_add``: ``(gap, first_role, sign)``; ``first_role`` is the role
      (tail / source) of the endpoint inserted first
    * ``R2_add``: ``(gap_1, gap_2, sign_or_role, parallel, first_block_first)``
      where gap_1 receives the over strand (flat: the strand whose first
      endpoint has role ``sign_or_role``) and the last flag orders the two
      blocks when both gaps coincide

    Gap ``i`` is the slot just before endpoint ``i``.
    """

    kind: str
    args: tuple

    def __str__(self):
        return f"{self.kind} " + " ".join(_fmt(a) for a in self.args)

    @classmethod
    def parse(cls, text: str) -> "Move":
        kind, *rest = text.split()
        if kind not in _KIND_RANK:
            raise ValueError(f"unknown move kind {kind!r}")
        return cls(kind, tuple(_unfmt(a) for a in rest))


def _fmt(a):
    if isinstance(a, bool):
        return "T" if a else "F"
    return str(a)


def _unfmt(s):
    if s in ("T", "F"):
        return s == "T"
    return int(s)


# ---------------------------------------------------------------------------
# RIII table from geometry
# ---------------------------------------------------------------------------

def _canonical(strands, signs=None):
    """Canonical form of a three-strand pattern under relabeling of its chords.

    ``strands`` is a sequence of three 2-tuples of ``(chord, role)``;
    ``signs`` maps chord -> sign (omitted for flat patterns).
    """
    chords = sorted({c for s in strands for c, _ in s})
    best = None
    for perm in permutations(range(3)):
        ren = dict(zip(chords, perm))
        body = tuple(sorted(tuple((ren[c], r) for c, r in s) for s in strands))
        if signs is not None:
            inv = {v: k for k, v in ren.items()}
            body = (body, tuple(signs[inv[i]] for i in range(3)))
        if best is None or body < best:
            best = body
    return best


def _line_configurations():
    """Yield (pattern, swapped_pattern) pairs realized by three oriented lines.

    Each line is a strand; each pairwise intersection a crossing whose tail
    lies on the higher line.  Sliding one line across the intersection of
    the other two is an RIII move and reverses the crossing order on every
    line while keeping all signs.
    """
    angles = (0.0, math.pi / 3, 2 * math.pi / 3)
    pairs = ((0, 1), (0, 2), (1, 2))
    for offset_line, mirror in product(range(3), (1, -1)):
        for flips in product((1, -1), repeat=3):
            for heights in permutations(range(3)):
                states = []
                for side in (1, -1):
                    pts, dirs = [], []
                    for i, a in enumerate(angles):
                        d = (math.cos(a) * flips[i], math.sin(a) * flips[i])
                        p = (0.0, 0.0)
                        if i == offset_line:
                            p = (-math.sin(a) * 0.3 * side, math.cos(a) * 0.3 * side)
                        pts.append((p[0] * mirror, p[1]))
                        dirs.append((d[0] * mirror, d[1]))
                    params = {i: [] for i in range(3)}
                    signs = {}
                    for chord, (i, j) in enumerate(pairs):
                        (px, py), (dx, dy) = pts[i], dirs[i]
                        (qx, qy), (ex, ey) = pts[j], dirs[j]
                        det = dx * (-ey) - dy * (-ex)
                        ti = ((qx - px) * (-ey) - (qy - py) * (-ex)) / det
                        tj = (dx * (qy - py) - dy * (qx - px)) / det
                        over, under = (i, j) if heights[i] > heights[j] else (j, i)
                        do, du = dirs[over], dirs[under]
                        signs[chord] = 1 if do[0] * du[1] - do[1] * du[0] > 0 else -1
                        params[i].append((ti, chord, over == i))
                        params[j].append((tj, chord, over == j))
                    strands = [tuple((c, r) for _, c, r in sorted(params[i])) for i in range(3)]
                    states.append((strands, signs))
                yield states[0], states[1]


def _build_tables():
    real, flat = set(), set()
    for (s1, sg1), (s2, sg2) in _line_configurations():
        swapped = [tuple(reversed(s)) for s in s1]
        if _canonical(swapped, sg1) != _canonical(s2, sg2) or sg1 != sg2:
            raise AssertionError("RIII geometry does not reverse strand orders")
        for strands, signs in ((s1, sg1), (s2, sg2)):
            real.add(_canonical(strands, signs))
            fstr = [tuple((c, r if signs[c] > 0 else not r) for c, r in s) for s in strands]
            flat.add(_canonical(fstr))
    return frozenset(real), frozenset(flat)


R3_TABLE, FLAT_R3_TABLE = _build_tables()


# ---------------------------------------------------------------------------
# real moves
# ---------------------------------------------------------------------------

def _other_end(g: GaussDiagram, pos: int) -> int:
    cid, tail = g.endpoints[pos]
    return g.head_pos[cid] if tail else g.tail_pos[cid]


def _adjacent(i: int, j: int, n: int) -> bool:
    return (i - j) % n in (1, n - 1)


def r2_removable(g: GaussDiagram, a: int, b: int) -> bool:
    n = len(g.endpoints)
    if a == b or g.sign[a] == g.sign[b]:
        return False
    return _adjacent(g.tail_pos[a], g.tail_pos[b], n) and _adjacent(g.head_pos[a], g.head_pos[b], n)


def _r1_removals(g: GaussDiagram):
    n = len(g.endpoints)
    out = []
    for cid in g.chords:
        t, h = g.tail_pos[cid], g.head_pos[cid]
        if _adjacent(t, h, n):
            out.append((min(t, h) if abs(t - h) == 1 else n - 1, Move(R1_REMOVE, (cid,))))
    return out


def _r2_removals(g: GaussDiagram):
    n = len(g.endpoints)
    eps = g.endpoints
    out = []
    if n < 4:
        return out
    for p in range(n):
        q = (p + 1) % n
        (a, ta), (b, tb) = eps[p], eps[q]
        if ta and tb and a != b and r2_removable(g, a, b):
            out.append((p, Move(R2_REMOVE, (a, b))))
    return out


def _triangle_sites(eps):
    """Sets of three disjoint adjacent position pairs forming a triangle of chords."""
    n = len(eps)
    if n < 6:
        return []
    where: dict[int, list[int]] = {}
    for i, (c, _) in enumerate(eps):
        where.setdefault(c, []).append(i)

    def other(pos):
        a, b = where[eps[pos][0]]
        return b if pos == a else a

    sites = set()
    for p in range(n):
        p1 = (p + 1) % n
        x, y = eps[p][0], eps[p1][0]
        if x == y:
            continue
        px, py = other(p), other(p1)
        for s2 in ((px - 1) % n, px):
            s2b = (s2 + 1) % n
            z = eps[s2b][0] if s2 == px else eps[s2][0]
            if z in (x, y):
                continue
            pz = other(s2b if s2 == px else s2)
            for s3 in ((py - 1) % n, py):
                pair = {s3, (s3 + 1) % n}
                if pair == {py, pz}:
                    starts = tuple(sorted((p, s2, s3)))
                    covered = {i for s in starts for i in (s, (s + 1) % n)}
                    if len(covered) == 6:
                        sites.add(starts)
    return sorted(sites)


def _strands_at(eps, starts):
    n = len(eps)
    return [(eps[s], eps[(s + 1) % n]) for s in starts]


def r3_valid(g: GaussDiagram, starts) -> bool:
    strands = _strands_at(g.endpoints, starts)
    chords = {c for s in strands for c, _ in s}
    if len(chords) != 3:
        return False
    return _canonical(strands, g.sign) in R3_TABLE


def _r3_moves(g: GaussDiagram):
    out = []
    for starts in _triangle_sites(g.endpoints):
        if r3_valid(g, starts):
            out.append((starts[0], Move(R3, starts)))
    return out


def _gaps(n: int):
    return range(n) if n else range(1)


def _r1_additions(g: GaussDiagram):
    out = []
    for gap in _gaps(len(g.endpoints)):
        for first_tail in (True, False):
            for sign in (1, -1):
                out.append((gap, Move(R1_ADD, (gap, first_tail, sign))))
    return out


def _r2_additions(g: GaussDiagram):
    out = []
    gaps = list(_gaps(len(g.endpoints)))
    for g1 in gaps:
        for g2 in gaps:
            orders = (True, False) if g1 == g2 else (True,)
            for sign in (1, -1):
                for parallel in (True, False):
                    for first in orders:
                        out.append((min(g1, g2), Move(R2_ADD, (g1, g2, sign, parallel, first))))
    return out


def enumerate_moves(g: GaussDiagram, allow_additions: bool = False, max_chords: int | None = None) -> list[Move]:
    """All applicable moves, ordered by position and then kind."""
    found = _r1_removals(g) + _r2_removals(g) + _r3_moves(g)
    if allow_additions:
        cap = max_chords if max_chords is not None else g.chord_count + 2
        if g.chord_count + 1 <= cap:
            found += _r1_additions(g)
        if g.chord_count + 2 <= cap:
            found += _r2_additions(g)
    found.sort(key=lambda pm: (pm[0], _KIND_RANK[pm[1].kind], pm[1].args))
    return [m for _, m in found]


def first_removal(g: GaussDiagram) -> Move | None:
    """The first RI/RII removal in :func:`enumerate_moves` order, if any.

    At most one removal starts at each position, so a forward scan that
    stops at the first site agrees with sorting all candidates.
    """
    eps = g.endpoints
    n = len(eps)
    heads = None
    for p in range(n):
        a, ta = eps[p]
        b, tb = eps[(p + 1) % n]
        if a == b:
            return Move(R1_REMOVE, (a,))
        if ta and tb and n >= 4:
            if heads is None:
                heads = {c: i for i, (c, t) in enumerate(eps) if not t}
            sign = g.sign
            if sign[a] != sign[b] and _adjacent(heads[a], heads[b], n):
                return Move(R2_REMOVE, (a, b))
    return None


def _next_id(g) -> int:
    return max((c for c, _ in g.endpoints), default=0) + 1


def _insert_blocks(eps, g1, block1, g2, block2, first_block_first):
    eps = list(eps)
    if g1 == g2:
        combined = block1 + block2 if first_block_first else block2 + block1
        eps[g1:g1] = combined
    elif g1 > g2:
        eps[g1:g1] = block1
        eps[g2:g2] = block2
    else:
        eps[g2:g2] = block2
        eps[g1:g1] = block1
    return tuple(eps)


def apply_move(g: GaussDiagram, m: Move) -> GaussDiagram:
    """Apply a move, checking its preconditions."""
    n = len(g.endpoints)
    if m.kind == R1_REMOVE:
        (c,) = m.args
        if c not in g.sign or not _adjacent(g.tail_pos[c], g.head_pos[c], n):
            raise InapplicableMove(str(m))
        return GaussDiagram._unchecked(
            tuple(e for e in g.endpoints if e[0] != c), tuple(s for s in g.signs if s[0] != c)
        )
    if m.kind == R2_REMOVE:
        a, b = m.args
        if a not in g.sign or b not in g.sign or not r2_removable(g, a, b):
            raise InapplicableMove(str(m))
        drop = (a, b)
        return GaussDiagram._unchecked(
            tuple(e for e in g.endpoints if e[0] not in drop),
            tuple(s for s in g.signs if s[0] not in drop),
        )
    if m.kind == R3:
        starts = tuple(m.args)
        if len(starts) != 3 or any(not 0 <= s < n for s in starts):
            raise InapplicableMove(str(m))
        covered = {i for s in starts for i in (s, (s + 1) % n)}
        if len(covered) != 6 or not r3_valid(g, starts):
            raise InapplicableMove(str(m))
        eps = list(g.endpoints)
        for s in starts:
            t = (s + 1) % n
            eps[s], eps[t] = eps[t], eps[s]
        return GaussDiagram._unchecked(tuple(eps), g.signs)
    if m.kind == R1_ADD:
        gap, first_tail, sign = m.args
        if gap not in _gaps(n) or sign not in (1, -1):
            raise InapplicableMove(str(m))
        c = _next_id(g)
        eps = list(g.endpoints)
        eps[gap:gap] = [(c, bool(first_tail)), (c, not first_tail)]
        return GaussDiagram._unchecked(tuple(eps), g.signs + ((c, sign),))
    if m.kind == R2_ADD:
        g1, g2, sign, parallel, first = m.args
        if g1 not in _gaps(n) or g2 not in _gaps(n) or sign not in (1, -1):
            raise InapplicableMove(str(m))
        a = _next_id(g)
        b = a + 1
        tails = [(a, True), (b, True)]
        heads = [(a, False), (b, False)] if parallel else [(b, False), (a, False)]
        eps = _insert_blocks(g.endpoints, g1, tails, g2, heads, first)
        return GaussDiagram._unchecked(eps, g.signs + ((a, sign), (b, -sign)))
    raise InapplicableMove(f"unknown move kind {m.kind}")


# ---------------------------------------------------------------------------
# flat moves
# ---------------------------------------------------------------------------

def flat_r2_removable(f: FlatDiagram, a: int, b: int) -> bool:
    """Two chords bounding a bigon whose arrows run in opposite directions."""
    if a == b:
        return False
    n = len(f.endpoints)
    sa, ta = f.source_pos[a], f.target_pos[a]
    sb, tb = f.source_pos[b], f.target_pos[b]
    return _adjacent(sa, tb, n) and _adjacent(ta, sb, n)


def _flat_removals(f: FlatDiagram):
    n = len(f.endpoints)
    eps = f.endpoints
    out = []
    for cid in f.chords:
        s, t = f.source_pos[cid], f.target_pos[cid]
        if _adjacent(s, t, n):
            out.append((min(s, t) if abs(s - t) == 1 else n - 1, Move(R1_REMOVE, (cid,))))
    if n >= 4:
        seen = set()
        for p in range(n):
            (a, ra), (b, rb) = eps[p], eps[(p + 1) % n]
            if a != b and ra != rb and frozenset((a, b)) not in seen and flat_r2_removable(f, a, b):
                seen.add(frozenset((a, b)))
                out.append((p, Move(R2_REMOVE, (a, b))))
    return out


def flat_r3_valid(f: FlatDiagram, starts) -> bool:
    strands = _strands_at(f.endpoints, starts)
    if len({c for s in strands for c, _ in s}) != 3:
        return False
    return _canonical(strands) in FLAT_R3_TABLE


def enumerate_flat_moves(f: FlatDiagram, allow_additions: bool = False, max_chords: int | None = None) -> list[Move]:
    found = _flat_removals(f)
    for starts in _triangle_sites(f.endpoints):
        if flat_r3_valid(f, starts):
            found.append((starts[0], Move(R3, starts)))
    if allow_additions:
        cap = max_chords if max_chords is not None else f.chord_count + 2
        gaps = list(_gaps(len(f.endpoints)))
        if f.chord_count + 1 <= cap:
            for gap in gaps:
                for first_src in (True, False):
                    found.append((gap, Move(R1_ADD, (gap, first_src, 1))))
        if f.chord_count + 2 <= cap:
            for g1 in gaps:
                for g2 in gaps:
                    orders = (True, False) if g1 == g2 else (True,)
                    for first_src in (True, False):
                        for parallel in (True, False):
                            for first in orders:
                                found.append((min(g1, g2), Move(R2_ADD, (g1, g2, first_src, parallel, first))))
    found.sort(key=lambda pm: (pm[0], _KIND_RANK[pm[1].kind], pm[1].args))
    return [m for _, m in found]


def first_flat_removal(f: FlatDiagram) -> Move | None:
    cands = _flat_removals(f)
    if not cands:
        return None
    cands.sort(key=lambda pm: (pm[0], _KIND_RANK[pm[1].kind], pm[1].args))
    return cands[0][1]


def apply_flat_move(f: FlatDiagram, m: Move) -> FlatDiagram:
    n = len(f.endpoints)
    if m.kind == R1_REMOVE:
        (c,) = m.args
        if c not in f.source_pos or not _adjacent(f.source_pos[c], f.target_pos[c], n):
            raise InapplicableMove(str(m))
        return FlatDiagram._unchecked(tuple(e for e in f.endpoints if e[0] != c))
    if m.kind == R2_REMOVE:
        a, b = m.args
        if a not in f.source_pos or b not in f.source_pos or not flat_r2_removable(f, a, b):
            raise InapplicableMove(str(m))
        return FlatDiagram._unchecked(tuple(e for e in f.endpoints if e[0] not in (a, b)))
    if m.kind == R3:
        starts = tuple(m.args)
        if len(starts) != 3 or any(not 0 <= s < n for s in starts):
            raise InapplicableMove(str(m))
        covered = {i for s in starts for i in (s, (s + 1) % n)}
        if len(covered) != 6 or not flat_r3_valid(f, starts):
            raise InapplicableMove(str(m))
        eps = list(f.endpoints)
        for s in starts:
            t = (s + 1) % n
            eps[s], eps[t] = eps[t], eps[s]
        return FlatDiagram._unchecked(tuple(eps))
    if m.kind == R1_ADD:
        gap, first_src, _ = m.args
        if gap not in _gaps(n):
            raise InapplicableMove(str(m))
        c = _next_id(f)
        eps = list(f.endpoints)
        eps[gap:gap] = [(c, bool(first_src)), (c, not first_src)]
        return FlatDiagram._unchecked(tuple(eps))
    if m.kind == R2_ADD:
        g1, g2, first_src, parallel, first = m.args
        if g1 not in _gaps(n) or g2 not in _gaps(n):
            raise InapplicableMove(str(m))
        a = _next_id(f)
        b = a + 1
        # strand 1 meets a then b; a runs strand 1 -> strand 2 when first_src,
        # b the other way, so the two arrows are opposite as an RII requires
        block1 = [(a, bool(first_src)), (b, not first_src)]
        block2 = [(a, not first_src), (b, bool(first_src))]
        if not parallel:
            block2.reverse()
        eps = _insert_blocks(f.endpoints, g1, block1, g2, block2, first)
        return FlatDiagram._unchecked(eps)
    raise InapplicableMove(f"unknown move kind {m.kind}")
