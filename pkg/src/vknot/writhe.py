"""Chord indices, the writhe polynomial, k-th writhes and the odd writhe.

Side convention: look along a chord from its tail to its head.  Because the
circle runs counterclockwise, the endpoints met after the tail and before
the head lie on the *right*.  A chord whose tail is on the right and head on
the left crosses from right to left.  With this convention the positive
virtual trefoil ``O1+O2+U1+U2+`` has indices +1 and -1 and writhe
polynomial t + t^-1; the mirror convention would only swap t and t^-1,
which none of the bounds below can see.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import UnknownChord, ZeroK
from .gauss import GaussDiagram
from .laurent import LaurentPolynomial


@total_ordering
@dataclass(frozen=True)
class PairBound:
    """A pair (m, n) = (virtualizations, crossing changes) in dictionary order."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("pair entries must be non-negative")

    def __lt__(self, other: "PairBound") -> bool:
        return (self.m, self.n) < (other.m, other.n)

    def __str__(self):
        return f"({self.m},{self.n})"

    def as_list(self) -> list[int]:
        return [self.m, self.n]


def _index_from(g: GaussDiagram, cid: int) -> int:
    n = len(g.endpoints)
    t, h = g.tail_pos[cid], g.head_pos[cid]
    right = set()
    i = (t + 1) % n
    while i != h:
        right.add(i)
        i = (i + 1) % n
    sign = g.sign
    total = 0
    for d in g.chords:
        if d == cid:
            continue
        dt, dh = g.tail_pos[d], g.head_pos[d]
        tail_right, head_right = dt in right, dh in right
        if tail_right and not head_right:
            total += sign[d]
        elif head_right and not tail_right:
            total -= sign[d]
    return total


def chord_index(g: GaussDiagram, cid: int) -> int:
    """Ind(c) = r+ - r- - l+ + l-."""
    if cid not in g.sign:
        raise UnknownChord(cid)
    return _index_from(g, cid)


def all_indices(g: GaussDiagram) -> dict[int, int]:
    return {cid: _index_from(g, cid) for cid in g.chords}


def writhe_polynomial(g: GaussDiagram) -> LaurentPolynomial:
    terms: dict[int, int] = {}
    for cid, k in all_indices(g).items():
        if k:
            terms[k] = terms.get(k, 0) + g.sign[cid]
    return LaurentPolynomial(terms)


def kth_writhe(g: GaussDiagram, k: int) -> int:
    if k == 0:
        raise ZeroK("the k-th writhe needs k != 0")
    return sum(g.sign[c] for c, i in all_indices(g).items() if i == k)


def odd_writhe(g: GaussDiagram) -> int:
    return sum(g.sign[c] for c, i in all_indices(g).items() if i % 2)


def writhe_sums(w: LaurentPolynomial) -> tuple[bool, int, int]:
    """(asymmetric, sum_k |J_k|, |J|) read off a writhe polynomial."""
    terms = w.terms
    asym = any(terms.get(k, 0) != terms.get(-k, 0) for k in terms)
    total = sum(abs(v) for v in terms.values())
    odd = abs(sum(v for k, v in terms.items() if k % 2))
    return asym, total, odd


def writhe_lower_bound(g: GaussDiagram) -> PairBound:
    """Knot-level lower bound for the unknotting index from writhe invariants.

    The maximum of (1,0) when J_k != J_-k for some k, (0, ceil(sum|J_k| / 2))
    and (0, ceil(|J| / 2)).  When W is reciprocal, sum|J_k|/2 equals
    sum over k>0 of |J_k|, so no separate branch is needed for that form.
    """
    asym, total, odd = writhe_sums(writhe_polynomial(g))
    if asym:
        return PairBound(1, 0)
    return PairBound(0, max(-(-total // 2), -(-odd // 2)))
