"""Shared fixtures, generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from collections import deque
from itertools import product

from hypothesis import strategies as st

from vknot.families import (
    FIGURE_EIGHT_CODE,
    KISHINO_CODE,
    TREFOIL_CODE,
    VIRTUAL_TREFOIL_CODE,
    generate_from_text,
)
from vknot.gauss import GaussDiagram, apply_operations, canonical_key, parse_gauss_code
from vknot.laurent import LaurentPolynomial
from vknot.moves import R1_REMOVE, R2_REMOVE, apply_move, enumerate_moves
from vknot.writhe import PairBound

T = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.one()


def diagram_from(order: list[int], tail_first: list[bool], signs: list[int]) -> GaussDiagram:
    seen = set()
    eps = []
    for cid in order:
        first = cid not in seen
        seen.add(cid)
        eps.append((cid, tail_first[cid - 1] == first))
    return GaussDiagram.build(eps, {i + 1: s for i, s in enumerate(signs)})


def random_diagram(rng: random.Random, chords: int) -> GaussDiagram:
    order = [i for i in range(1, chords + 1) for _ in (0, 1)]
    rng.shuffle(order)
    return diagram_from(
        order,
        [rng.random() < 0.5 for _ in range(chords)],
        [rng.choice((1, -1)) for _ in range(chords)],
    )


@st.composite
def diagrams(draw, min_chords=0, max_chords=5):
    c = draw(st.integers(min_chords, max_chords))
    order = draw(st.permutations([i for i in range(1, c + 1) for _ in (0, 1)]))
    tails = draw(st.lists(st.booleans(), min_size=c, max_size=c))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=c, max_size=c))
    return diagram_from(list(order), tails, signs)


# ten diagrams used for the invariance walks
WALK_FIXTURES = {
    "trefoil": TREFOIL_CODE,
    "virtual trefoil": VIRTUAL_TREFOIL_CODE,
    "figure eight": FIGURE_EIGHT_CODE,
    "kishino": KISHINO_CODE,
    "kishino changed": "kishino-changed",
    "torus 5 with one virtual": "torus2braid:p=5,virtualized=1",
    "twisted 1 1 negative": "twisted:l=1,r=1,c_sign=-1",
    "twisted 3 0": "twisted:l=3,r=0",
    "two virtual trefoils": "virtual-trefoil-sum:n=2",
    "two trefoils": "trefoil-sum:n=2",
}


def fixture_diagram(text: str) -> GaussDiagram:
    if text[:1] in ("O", "U"):
        return parse_gauss_code(text)
    return generate_from_text(text)


# fixtures with at most six chords for the exhaustive comparison
SMALL_FIXTURES = {
    "trefoil": TREFOIL_CODE,
    "virtual trefoil": VIRTUAL_TREFOIL_CODE,
    "figure eight": FIGURE_EIGHT_CODE,
    "kishino": KISHINO_CODE,
    "kishino changed": "kishino-changed",
    "torus 5 with one virtual": "torus2braid:p=5,virtualized=1",
    "twisted 1 1 negative": "twisted:l=1,r=1,c_sign=-1",
    "twisted 3 0": "twisted:l=3,r=0",
    "two virtual trefoils": "virtual-trefoil-sum:n=2",
    "torus 5": "torus2braid:p=5",
    "three virtual trefoils": "virtual-trefoil-sum:n=3",
    "two trefoils": "trefoil-sum:n=2",
}


# ---------------------------------------------------------------------------
# Fox calculus by hand
# ---------------------------------------------------------------------------
#
# Trefoil O1+U2+O3+U1+O2+U3+, endpoints at positions 0..5, heads at 1, 3, 5.
# Arcs end at heads: a0 = (5,1], a1 = (1,3], a2 = (3,5].  Over arcs: chord 1
# tail at 0 -> a0, chord 2 tail at 4 -> a2, chord 3 tail at 2 -> a1.  For a
# positive crossing with over arc o, under arcs in -> out the relator is
# out^-1 o^-1 in o, so
#   r1 = a2^-1 a0^-1 a1 a0,  r2 = a1^-1 a2^-1 a0 a2,  r3 = a0^-1 a1^-1 a2 a1.
# Fox rules with every generator sent to t: a letter x^+1 read after a
# prefix of exponent sum p contributes +t^p to column x, a letter x^-1
# contributes -t^(p-1).  For r1 the prefixes are 0, -1, -2, -1:
#   col a2: -t^-1, col a0: -t^-2 + t^-1, col a1: +t^-2.
# Multiplying each row by t^2:
#   r1 = [t-1, 1, -t],  r2 = [1, -t, t-1],  r3 = [-t, t-1, 1].
# Each row sums to 0.  Dropping the last column, the 2x2 minor on rows 1, 2
# is (t-1)(-t) - 1 = -(t^2 - t + 1).
TREFOIL_HAND_ROWS = [
    [T - 1, ONE, -T],
    [ONE, -T, T - 1],
    [-T, T - 1, ONE],
]
TREFOIL_HAND_SHIFTS = [2, 2, 2]
TREFOIL_GCD = T * T - T + 1

# Figure eight O1+U2+O3-U4-O2+U1+O4-U3-, heads at 1, 3, 5, 7, arcs
# a0 = (7,1], a1 = (1,3], a2 = (3,5], a3 = (5,7].
#   chord 1 (+): over a0 (tail 0), under a2 -> a3 (head 5): a3^-1 a0^-1 a2 a0
#   chord 2 (+): over a2 (tail 4), under a0 -> a1 (head 1): a1^-1 a2^-1 a0 a2
#   chord 3 (-): over a1 (tail 2), under a3 -> a0 (head 7): a0^-1 a1 a3 a1^-1
#   chord 4 (-): over a3 (tail 6), under a1 -> a2 (head 3): a2^-1 a3 a1 a3^-1
# For chord 3 the prefixes are 0, -1, 0, 1, giving
#   col a0: -t^-1, col a1: t^-1 - 1, col a3: 1; times t: [-1, 1-t, 0, t].
# Rows (chords 1, 2 times t^2, chords 3, 4 times t):
#   [t-1, 0, 1, -t], [1, -t, t-1, 0], [-1, 1-t, 0, t], [0, t, -1, 1-t].
# Dropping the last column, rows 1-3 give
#   (t-1)((t-1)^2) + (1 - t - t) = t^3 - 3t^2 + t = t (t^2 - 3t + 1).
FIGURE_EIGHT_HAND_ROWS = [
    [T - 1, 0 * ONE, ONE, -T],
    [ONE, -T, T - 1, 0 * ONE],
    [-ONE, 1 - T, 0 * ONE, T],
    [0 * ONE, T, -ONE, 1 - T],
]
FIGURE_EIGHT_HAND_SHIFTS = [2, 2, 1, 1]
FIGURE_EIGHT_GCD = T * T - 3 * T + 1


# ---------------------------------------------------------------------------
# brute-force unknotting oracle
# ---------------------------------------------------------------------------

def _greedy(g: GaussDiagram) -> GaussDiagram:
    while True:
        removal = next((m for m in enumerate_moves(g) if m.kind in (R1_REMOVE, R2_REMOVE)), None)
        if removal is None:
            return g
        g = apply_move(g, removal)


def oracle_trivial(g: GaussDiagram, max_nodes: int, cap: int, max_depth: int = 24) -> bool:
    """Greedy removals, then BFS over all moves; True once some node greedily empties."""
    start = _greedy(g)
    if start.chord_count == 0:
        return True
    seen = {canonical_key(start)}
    queue = deque([(start, 0)])
    while queue:
        node, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for m in enumerate_moves(node, allow_additions=True, max_chords=cap):
            child = apply_move(node, m)
            key = canonical_key(child)
            if key in seen:
                continue
            seen.add(key)
            if _greedy(child).chord_count == 0:
                return True
            if len(seen) >= max_nodes:
                return False
            queue.append((child, depth + 1))
    return False


def oracle_pairs(g: GaussDiagram, max_nodes: int) -> set[PairBound]:
    """Pairs realized by some keep/virtualize/change assignment, found without invariants."""
    chords = g.chords
    found: set[PairBound] = set()
    cache: dict[str, bool] = {}
    for choice in product("kvc", repeat=len(chords)):
        v = [c for c, x in zip(chords, choice) if x == "v"]
        ch = [c for c, x in zip(chords, choice) if x == "c"]
        p = PairBound(len(v), len(ch))
        if p in found:
            continue
        d = apply_operations(g, v, ch)
        key = canonical_key(d)
        if key not in cache:
            # same chord cap as the default search budget: modified size + 2
            cache[key] = oracle_trivial(d, max_nodes, d.chord_count + 2)
        if cache[key]:
            found.add(p)
    return found
