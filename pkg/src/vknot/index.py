"""The unknotting index: the set of (m, n) pairs of a diagram, U(D) and U(K).

A pair (m, n) is realized on a diagram by a virtualized chord set V and a
disjoint changed chord set C with |V| = m and |C| = n; the modified diagram
must then be trivial.  Pairs are compared in dictionary order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .alexander import e_lower_bound
from .gauss import GaussDiagram, apply_operations, emit_gauss_code, flat_projection, search_key
from .moves import Move, apply_move, enumerate_moves
from .triviality import (
    NontrivialCertified,
    SearchBudget,
    Trivial,
    Unknown,
    flat_parity,
    is_trivial_bounded,
    replay,
    simplify_with_trace,
    witness,
)
from .writhe import PairBound, all_indices, writhe_polynomial, writhe_sums

MEMBER, NONMEMBER, UNRESOLVED = "member", "nonmember", "unknown"


@dataclass(frozen=True)
class Certificate:
    """Replayable evidence that a diagram of the knot is (m, n)-unknottable.

    ``path`` leads from the input diagram to ``diagram``; V and C are then
    applied to ``diagram`` and ``trace`` reduces the result to nothing.
    """

    diagram: str
    virtualized: tuple[int, ...]
    changed: tuple[int, ...]
    trace: tuple[Move, ...]
    path: tuple[Move, ...] = ()

    @property
    def pair(self) -> PairBound:
        return PairBound(len(self.virtualized), len(self.changed))

    def as_dict(self) -> dict:
        return {
            "pair": self.pair.as_list(),
            "diagram": self.diagram,
            "virtualized": list(self.virtualized),
            "changed": list(self.changed),
            "trace": [str(m) for m in self.trace],
            "path": [str(m) for m in self.path],
        }


@dataclass(frozen=True)
class PairResult:
    pair: PairBound
    status: str
    reason: str = ""
    certificate: Certificate | None = None
    unknown: int = 0


@dataclass
class UnknottingReport:
    lower: PairBound
    upper: PairBound | None
    certificate: Certificate | None = None
    provenance: list[str] = field(default_factory=list)
    unresolved: list[PairBound] = field(default_factory=list)
    flat_assertion: bool = False
    explored: int = 0

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def status(self) -> str:
        return "exact" if self.exact else "bracket"

    def as_dict(self) -> dict:
        out = {"status": self.status}
        if self.exact:
            out["pair"] = self.upper.as_list()
        out["lower"] = self.lower.as_list()
        out["upper"] = self.upper.as_list() if self.upper is not None else None
        out["certificate"] = self.certificate.as_dict() if self.certificate else None
        out["lower_bound_provenance"] = list(self.provenance)
        out["unresolved"] = [p.as_list() for p in self.unresolved]
        out["flat_assertion"] = self.flat_assertion
        out["explored_diagrams"] = self.explored
        return out


# ---------------------------------------------------------------------------
# knot-level lower bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnotBounds:
    """Knot invariants that constrain every realizable pair."""

    asymmetric: bool
    writhe_total: int
    odd: int
    module: int
    flat: bool

    def admits(self, p: PairBound) -> str | None:
        """None if p may be realizable, else the name of the rule excluding it."""
        if self.flat and p.m == 0:
            return "flat lemma"
        if p.m + p.n < self.module:
            return "module constraint"
        if p.m == 0:
            if self.asymmetric:
                return "writhe asymmetry"
            if 2 * p.n < self.writhe_total:
                return "sum |J_k|/2"
            if 2 * p.n < self.odd:
                return "|J|/2"
        return None

    def minimum(self) -> tuple[PairBound, list[str]]:
        """Least admitted pair in dictionary order, with the rules that fired."""
        fired = []
        if self.flat:
            fired.append("flat lemma")
        if self.asymmetric:
            fired.append("writhe asymmetry")
        if not (self.flat or self.asymmetric):
            need = max(-(-self.writhe_total // 2), -(-self.odd // 2), self.module)
            if self.writhe_total and -(-self.writhe_total // 2) == need:
                fired.append("sum |J_k|/2")
            if self.odd and -(-self.odd // 2) == need:
                fired.append("|J|/2")
            if self.module and self.module == need:
                fired.append("module constraint")
            return PairBound(0, need), fired
        n = max(self.module - 1, 0)
        if self.module > 1:
            fired.append("module constraint")
        return PairBound(1, n), fired


def knot_bounds(g: GaussDiagram, flat_assertion: bool = False) -> KnotBounds:
    asym, total, odd = writhe_sums(writhe_polynomial(g))
    # flat parity is 0 for every flat diagram, so it never fires; it is kept
    # so that a stronger flat invariant can be dropped in here
    flat = flat_assertion or flat_parity(flat_projection(g)) == 1
    return KnotBounds(asym, total, odd, e_lower_bound(g), flat)


def combined_lower_bound(g: GaussDiagram, flat_assertion: bool = False) -> PairBound:
    return knot_bounds(g, flat_assertion).minimum()[0]


# ---------------------------------------------------------------------------
# per-diagram pair search
# ---------------------------------------------------------------------------

def all_pairs(c: int) -> list[PairBound]:
    return [PairBound(m, n) for m in range(c + 1) for n in range(c + 1 - m)]


def assignments(chords, m: int, n: int):
    """All disjoint (V, C) with |V| = m, |C| = n, in a fixed order."""
    for v in combinations(chords, m):
        rest = [c for c in chords if c not in v]
        for ch in combinations(rest, n):
            yield v, ch


class PairSearch:
    """Evaluates pairs on one diagram, caching verdicts of modified diagrams."""

    def __init__(self, g: GaussDiagram, budget: SearchBudget | None = None, bounds: KnotBounds | None = None):
        self.g = g
        self.budget = budget or SearchBudget()
        self.bounds = bounds
        self._cache: dict = {}

    def _verdict(self, d: GaussDiagram):
        key = search_key(d)
        hit = self._cache.get(key)
        if hit is None:
            hit = is_trivial_bounded(d, self.budget)
            self._cache[key] = hit
        return hit

    def evaluate(self, p: PairBound) -> PairResult:
        if self.bounds is not None:
            rule = self.bounds.admits(p)
            if rule is not None:
                return PairResult(p, NONMEMBER, f"pruned: {rule}")
        chords = self.g.chords
        if p.m + p.n > len(chords):
            return PairResult(p, NONMEMBER, "more operations than crossings")
        code = emit_gauss_code(self.g)
        pending = []
        # cheap pass: greedy simplification and invariant witnesses
        for v, ch in assignments(chords, p.m, p.n):
            d = apply_operations(self.g, v, ch)
            reduced, trace = simplify_with_trace(d)
            if reduced.chord_count == 0:
                return PairResult(p, MEMBER, "simplification", Certificate(code, v, ch, trace))
            key = search_key(reduced)
            hit = self._cache.get(key)
            if isinstance(hit, NontrivialCertified):
                continue
            if hit is None:
                cert = witness(reduced)
                if cert is not None:
                    self._cache[key] = cert
                    continue
            pending.append((v, ch, d))
        unknown = 0
        for v, ch, d in pending:
            verdict = self._verdict(d)
            if isinstance(verdict, Trivial):
                return PairResult(p, MEMBER, "search", Certificate(code, v, ch, verdict.trace))
            if isinstance(verdict, Unknown):
                unknown += 1
        if unknown:
            return PairResult(p, UNRESOLVED, f"{unknown} assignment(s) undecided", unknown=unknown)
        return PairResult(p, NONMEMBER, "all assignments certified nontrivial")


def enumerate_unknottable_pairs(
    g: GaussDiagram,
    b: SearchBudget | None = None,
    use_bounds: bool = True,
    flat_assertion: bool = False,
) -> dict[PairBound, PairResult]:
    """Verdict for every pair (m, n) with m + n <= c(D)."""
    bounds = knot_bounds(g, flat_assertion) if use_bounds else None
    search = PairSearch(g, b, bounds)
    return {p: search.evaluate(p) for p in all_pairs(g.chord_count)}


def unknotting_index_diagram(
    g: GaussDiagram,
    b: SearchBudget | None = None,
    flat_assertion: bool = False,
) -> UnknottingReport:
    """U(D): the least pair realized on this very diagram.

    Exact when every smaller pair is certified out; otherwise the lower end
    is the least undecided pair.
    """
    bounds = knot_bounds(g, flat_assertion)
    search = PairSearch(g, b, bounds)
    unresolved = []
    for p in all_pairs(g.chord_count):
        res = search.evaluate(p)
        if res.status == MEMBER:
            lower = unresolved[0] if unresolved else p
            prov = ["diagram search"] if not unresolved else ["least undecided pair"]
            return UnknottingReport(lower, p, res.certificate, prov, unresolved, flat_assertion)
        if res.status == UNRESOLVED:
            unresolved.append(p)
    # unreachable for a finite diagram: virtualizing everything gives the empty diagram
    lower = unresolved[0] if unresolved else PairBound(g.chord_count, 0)
    return UnknottingReport(lower, None, None, [], unresolved, flat_assertion)


# ---------------------------------------------------------------------------
# knot-level index
# ---------------------------------------------------------------------------

def _cheap_member(g: GaussDiagram, p: PairBound):
    """A (V, C) of size p on which greedy simplification reaches nothing.

    A crossing change at c negates Ind(c) and leaves every other index
    alone, so W moves by -w(c)(t^k + t^-k).  Only change sets that cancel
    the writhe polynomial of the virtualized diagram are simplified.
    """
    for v in combinations(g.chords, p.m):
        base = apply_operations(g, v)
        ind = all_indices(base)
        sign = base.sign
        w = writhe_polynomial(base).terms
        for ch in combinations(base.chords, p.n):
            left = dict(w)
            for c in ch:
                k = ind[c]
                if k:
                    left[k] = left.get(k, 0) - sign[c]
                    left[-k] = left.get(-k, 0) - sign[c]
            if any(left.values()):
                continue
            reduced, trace = simplify_with_trace(apply_operations(base, (), ch))
            if reduced.chord_count == 0:
                return v, ch, trace
    return None


PAIR_BUDGET = SearchBudget(max_nodes=2_000)
EXPLORE_BUDGET = SearchBudget(max_nodes=2_000)


def unknotting_index_knot(
    g: GaussDiagram,
    explore: SearchBudget | None = None,
    b: SearchBudget | None = None,
    flat_assertion: bool = False,
) -> UnknottingReport:
    """Bracket U(K): invariants from below, certified diagrams from above.

    Upper values come from, in order: greedy checks on the input diagram,
    greedy checks on equivalent diagrams reached by Reidemeister moves, and
    finally move search on the input for the pairs still below the upper
    value.
    """
    explore = explore or EXPLORE_BUDGET
    bounds = knot_bounds(g, flat_assertion)
    lower, provenance = bounds.minimum()
    code = emit_gauss_code(g)

    upper, cert = None, None
    for p in all_pairs(g.chord_count):
        if p < lower or bounds.admits(p) is not None:
            continue
        hit = _cheap_member(g, p)
        if hit is not None:
            upper, cert = p, Certificate(code, *hit)
            break
    if upper is None:
        upper = PairBound(g.chord_count, 0)
        cert = Certificate(code, tuple(g.chords), (), ())

    explored = 1
    if upper != lower:
        upper, cert, explored = _explore(g, lower, upper, cert, bounds, explore)

    unresolved = []
    if upper != lower:
        search = PairSearch(g, b or PAIR_BUDGET, bounds)
        for p in all_pairs(g.chord_count):
            if not (lower <= p < upper):
                continue
            res = search.evaluate(p)
            if res.status == MEMBER:
                upper, cert = p, res.certificate
                break
            if res.status == UNRESOLVED:
                unresolved.append(p)
    return UnknottingReport(lower, upper, cert, provenance, unresolved, flat_assertion, explored)


def _explore(g, lower, upper, cert, bounds, budget: SearchBudget):
    cap = budget.chord_cap(g.chord_count)
    start_key = search_key(g)
    seen = {start_key: ()}
    level = [(g, ())]
    explored = 1
    depth = 0
    while level and depth < budget.max_depth and explored < budget.max_nodes:
        depth += 1
        nxt = []
        for d, path in level:
            for m in enumerate_moves(d, allow_additions=True, max_chords=cap):
                child = apply_move(d, m)
                key = search_key(child)
                if key in seen:
                    continue
                cpath = path + (m,)
                seen[key] = cpath
                explored += 1
                for p in all_pairs(child.chord_count):
                    if not (lower <= p < upper) or bounds.admits(p) is not None:
                        continue
                    hit = _cheap_member(child, p)
                    if hit is not None:
                        v, ch, trace = hit
                        upper = p
                        cert = Certificate(emit_gauss_code(child), v, ch, trace, cpath)
                        break
                if upper == lower or explored >= budget.max_nodes:
                    return upper, cert, explored
                nxt.append((child, cpath))
        level = nxt
    return upper, cert, explored


def replay_certificate(g: GaussDiagram, cert: Certificate) -> bool:
    """True if the certificate reduces the input diagram's knot to nothing."""
    d = g
    for m in cert.path:
        d = apply_move(d, m)
    if emit_gauss_code(d) != cert.diagram:
        return False
    if set(cert.virtualized) & set(cert.changed):
        return False
    d = apply_operations(d, cert.virtualized, cert.changed)
    return replay(d, cert.trace).chord_count == 0
