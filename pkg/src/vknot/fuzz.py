"""Seeded random Reidemeister walks that check invariance.

The walk uses :class:`random.Random` (Mersenne Twister) seeded with the
given integer, so a failure is reproduced by rerunning with the same code,
step count, seed and chord cap.  After every move the writhe polynomial,
every k-th writhe, the odd writhe and the module bound are compared with
their starting values.  Off the walk, a random chord of the current
diagram is changed and the writhe polynomial must move by exactly
-w(c)(t^k + t^-k) with k = Ind(c), or not at all when k = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .alexander import e_lower_bound
from .gauss import GaussDiagram, crossing_change, emit_gauss_code
from .laurent import LaurentPolynomial
from .moves import apply_move, enumerate_moves
from .writhe import all_indices, kth_writhe, odd_writhe, writhe_polynomial


@dataclass(frozen=True)
class Violation:
    step: int
    invariant: str
    expected: str
    actual: str
    move: str
    diagram: str

    def as_dict(self) -> dict:
        return {
            "step": self.step,
            "invariant": self.invariant,
            "expected": self.expected,
            "actual": self.actual,
            "move": self.move,
            "diagram": self.diagram,
        }


@dataclass
class FuzzReport:
    seed: int
    steps: int
    moves_applied: int = 0
    changes_checked: int = 0
    max_chords_seen: int = 0
    violation: Violation | None = None
    kinds: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violation is None

    def as_dict(self) -> dict:
        return {
            "result": "pass" if self.ok else "fail",
            "seed": self.seed,
            "steps": self.steps,
            "moves_applied": self.moves_applied,
            "crossing_changes_checked": self.changes_checked,
            "max_chords_seen": self.max_chords_seen,
            "move_kinds": dict(sorted(self.kinds.items())),
            "violation": self.violation.as_dict() if self.violation else None,
        }


def invariant_snapshot(g: GaussDiagram, module: bool = True) -> dict[str, str]:
    """String forms of the checked invariants; J_k keyed by k."""
    w = writhe_polynomial(g)
    out = {"W": str(w), "odd_writhe": str(odd_writhe(g))}
    span = max((abs(k) for k in w.terms), default=0)
    for k in range(-span, span + 1):
        if k:
            out[f"J_{k}"] = str(kth_writhe(g, k))
    if module:
        out["e_lower_bound"] = str(e_lower_bound(g))
    return out


def expected_change(g: GaussDiagram, cid: int) -> LaurentPolynomial:
    """W(G') - W(G) for the crossing change at ``cid``."""
    k = all_indices(g)[cid]
    if k == 0:
        return LaurentPolynomial.zero()
    eps = g.sign[cid]
    return LaurentPolynomial({k: -eps, -k: -eps})


def _compare(before: dict, after: dict) -> tuple[str, str, str] | None:
    for key in sorted(set(before) | set(after)):
        # J_k missing from a snapshot means 0
        b, a = before.get(key, "0"), after.get(key, "0")
        if a != b:
            return key, b, a
    return None


def fuzz_walk(
    g: GaussDiagram,
    steps: int,
    seed: int = 1,
    chord_cap: int | None = None,
    check_module: bool = True,
    check_changes: bool = True,
) -> FuzzReport:
    """Random walk of ``steps`` moves; stops at the first violation."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = random.Random(seed)
    cap = chord_cap if chord_cap is not None else g.chord_count + 2
    report = FuzzReport(seed, steps, max_chords_seen=g.chord_count)
    start = invariant_snapshot(g, check_module)
    for step in range(1, steps + 1):
        moves = enumerate_moves(g, allow_additions=True, max_chords=cap)
        m = rng.choice(moves)
        g = apply_move(g, m)
        report.moves_applied += 1
        report.kinds[m.kind] = report.kinds.get(m.kind, 0) + 1
        report.max_chords_seen = max(report.max_chords_seen, g.chord_count)
        diff = _compare(start, invariant_snapshot(g, check_module))
        if diff is not None:
            report.violation = Violation(step, *diff, str(m), emit_gauss_code(g))
            return report
        if check_changes and g.chord_count:
            cid = rng.choice(g.chords)
            want = expected_change(g, cid)
            got = writhe_polynomial(crossing_change(g, cid)) - writhe_polynomial(g)
            report.changes_checked += 1
            if got != want:
                report.violation = Violation(
                    step, "crossing_change_delta", str(want), str(got), f"change {cid}", emit_gauss_code(g)
                )
                return report
    return report
