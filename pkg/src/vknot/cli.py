"""Command line interface.

    vknot invariants "O1+O2+U1+U2+"
    vknot alexander --family trefoil-sum:n=2 --json
    vknot simplify "O1+U1+O2-U2-" --decide
    vknot unknot-index "O1+U2+O3+U1+O2+U3+" --diagram-only
    vknot family "twisted:l=3,r=0"
    vknot fuzz "O1+U2+O3+U1+O2+U3+" --moves 1000 --seed 1

Every subcommand takes its input as a positional Gauss code, ``--file`` or
``--family``.  ``--json`` prints one JSON object; the default text mode
prints the same fields one per line.

Exit codes: 0 success, 1 usage or parse error, 2 unknotting index only
bracketed, 3 fuzz violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .alexander import alexander_gcd, alexander_matrix_of, e_lower_bound, wirtinger_presentation
from .errors import VKnotError
from .families import generate_from_text
from .fuzz import fuzz_walk
from .gauss import GaussDiagram, emit_gauss_code, parse_gauss_code
from .index import (
    EXPLORE_BUDGET,
    MEMBER,
    PAIR_BUDGET,
    enumerate_unknottable_pairs,
    unknotting_index_diagram,
    unknotting_index_knot,
)
from .triviality import NontrivialCertified, SearchBudget, Trivial, is_trivial_bounded, simplify_with_trace
from .writhe import all_indices, writhe_lower_bound, writhe_polynomial

EXIT_OK, EXIT_USAGE, EXIT_BRACKET, EXIT_FUZZ = 0, 1, 2, 3
DEFAULT_SEED = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for brackets here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input and output
# ---------------------------------------------------------------------------

def read_input(args) -> tuple[GaussDiagram, str]:
    """The diagram named by exactly one of code, --file, --family."""
    given = [x for x in (args.code, args.file, args.family) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one input: a Gauss code, --file or --family")
    if args.family is not None:
        return generate_from_text(args.family), args.family
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read().strip()
        return parse_gauss_code(text), text
    return parse_gauss_code(args.code), args.code


def _scalar(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, list):
        return "(" + ",".join(_scalar(v) for v in x) + ")"
    return str(x)


_PAIR_KEYS = {"pair", "lower", "upper", "writhe_lower_bound"}


def text_lines(obj: dict, prefix: str = "") -> list[str]:
    """Flatten a report: nested keys joined by dots, string lists one per line."""
    out = []
    for key, val in obj.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            if val:
                out.extend(text_lines(val, name + "."))
            else:
                out.append(f"{name}:")
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            for i, v in enumerate(val):
                out.append(f"{name}[{i}]: " + " ".join(f"{k}={_scalar(x)}" for k, x in v.items()))
        elif isinstance(val, list) and val and all(isinstance(v, str) for v in val):
            out.extend(f"{name}: {v}" for v in val)
        elif isinstance(val, list) and key in _PAIR_KEYS:
            out.append(f"{name}: {_scalar(val)}")
        elif isinstance(val, list):
            out.append(f"{name}: " + " ".join(_scalar(v) for v in val))
        else:
            out.append(f"{name}: {_scalar(val)}")
    return out


def emit(data: dict, as_json: bool):
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text_lines(data)))


def _budget(args, default: SearchBudget) -> SearchBudget:
    return SearchBudget(
        max_chords=args.chord_cap if args.chord_cap is not None else default.max_chords,
        max_nodes=args.max_nodes if args.max_nodes is not None else default.max_nodes,
        max_depth=args.max_depth if args.max_depth is not None else default.max_depth,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_invariants(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    ind = all_indices(g)
    w = writhe_polynomial(g)
    return {
        "input": source,
        "code": emit_gauss_code(g),
        "chord_count": g.chord_count,
        "chords": [{"chord": c, "sign": g.sign[c], "index": ind[c]} for c in sorted(g.chords)],
        "writhe_polynomial": str(w),
        "kth_writhes": {str(k): v for k, v in sorted(w.terms.items())},
        "odd_writhe": sum(g.sign[c] for c, k in ind.items() if k % 2),
        "writhe_lower_bound": writhe_lower_bound(g).as_list(),
    }, EXIT_OK


def cmd_alexander(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    pres = wirtinger_presentation(g)
    a = alexander_matrix_of(g)
    return {
        "input": source,
        "code": emit_gauss_code(g),
        "generators": pres.generator_count,
        "relators": len(pres.relators),
        "reduced_matrix": {
            "rows": a.nrows,
            "cols": a.ncols,
            "entries": [" | ".join(str(x) for x in row) for row in a.rows],
        },
        "alexander_gcds": [str(alexander_gcd(a, d)) for d in range(a.ncols + 1)],
        "e_lower_bound": e_lower_bound(g),
    }, EXIT_OK


def cmd_simplify(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    reduced, trace = simplify_with_trace(g)
    data = {
        "input": source,
        "reduced": emit_gauss_code(reduced),
        "chord_count": reduced.chord_count,
        "trace": [str(m) for m in trace],
    }
    if args.decide:
        verdict = is_trivial_bounded(g, _budget(args, SearchBudget()))
        out = {"kind": verdict.kind}
        if isinstance(verdict, Trivial):
            out["trace"] = [str(m) for m in verdict.trace]
        elif isinstance(verdict, NontrivialCertified):
            out["invariant"] = verdict.invariant
            out["value"] = verdict.value
        else:
            out["nodes"] = verdict.nodes
            out["depth"] = verdict.depth
            out["frontier"] = verdict.frontier
        data["verdict"] = out
    return data, EXIT_OK


def cmd_unknot_index(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    flat = args.assert_flat_nontrivial
    if args.diagram_only:
        b = _budget(args, SearchBudget())
        report = unknotting_index_diagram(g, b, flat_assertion=flat)
        verdicts = enumerate_unknottable_pairs(g, b, flat_assertion=flat)
        data = {"input": source, "scope": "diagram"}
        data.update(report.as_dict())
        data["membership"] = [p.as_list() for p, r in verdicts.items() if r.status == MEMBER]
        data["verdicts"] = [
            {"pair": p.as_list(), "status": r.status, "reason": r.reason} for p, r in verdicts.items()
        ]
    else:
        explore = SearchBudget(
            max_chords=args.chord_cap,
            max_nodes=args.explore_nodes or EXPLORE_BUDGET.max_nodes,
            max_depth=args.max_depth or EXPLORE_BUDGET.max_depth,
        )
        report = unknotting_index_knot(g, explore, _budget(args, PAIR_BUDGET), flat_assertion=flat)
        data = {"input": source, "scope": "knot"}
        data.update(report.as_dict())
    return data, EXIT_OK if report.exact else EXIT_BRACKET


def cmd_family(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    return {"spec": source, "code": emit_gauss_code(g), "chord_count": g.chord_count}, EXIT_OK


def cmd_fuzz(g: GaussDiagram, source: str, args) -> tuple[dict, int]:
    if args.moves < 1:
        raise UsageError("--moves must be at least 1")
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    report = fuzz_walk(g, args.moves, seed, chord_cap=args.chord_cap, check_module=not args.skip_module)
    data = {"input": source}
    data.update(report.as_dict())
    if not report.ok:
        data["replay"] = f"vknot fuzz '{emit_gauss_code(g)}' --moves {args.moves} --seed {seed}" + (
            f" --chord-cap {args.chord_cap}" if args.chord_cap is not None else ""
        )
    return data, EXIT_OK if report.ok else EXIT_FUZZ


COMMANDS = {
    "invariants": cmd_invariants,
    "alexander": cmd_alexander,
    "simplify": cmd_simplify,
    "unknot-index": cmd_unknot_index,
    "family": cmd_family,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("code", nargs="?", help="Gauss code such as O1+U2+O3+U1+O2+U3+ (empty string: trivial diagram)")
    common.add_argument("--file", help="read the Gauss code from a file")
    common.add_argument("--family", help="generate the input, e.g. torus2braid:p=5,virtualized=1")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (fuzz; default {DEFAULT_SEED})")

    budget = _Parser(add_help=False)
    budget.add_argument("--max-nodes", type=int, default=None, help="node budget per triviality search")
    budget.add_argument("--max-depth", type=int, default=None, help="depth budget per triviality search")
    budget.add_argument("--chord-cap", type=int, default=None, help="largest diagram a search may visit")

    ap = _Parser(prog="vknot", description="Virtual knot invariants and unknotting index from Gauss codes.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="indices, writhe polynomial, J_k, odd writhe")
    sub.add_parser("alexander", parents=[common], help="reduced Alexander matrix, minor gcds, module bound")
    p = sub.add_parser("simplify", parents=[common, budget], help="greedy RI/RII simplification")
    p.add_argument("--decide", action="store_true", help="also run the bounded triviality check")
    p = sub.add_parser("unknot-index", parents=[common, budget], help="U(D) or a bracket for U(K)")
    p.add_argument("--diagram-only", action="store_true", help="compute U(D) and the pair set of this diagram")
    p.add_argument("--assert-flat-nontrivial", action="store_true", help="assume the flat knot is nontrivial")
    p.add_argument("--explore-nodes", type=int, default=None, help="equivalent diagrams to explore (knot level)")
    sub.add_parser("family", parents=[common], help="print the Gauss code of a family member")
    p = sub.add_parser("fuzz", parents=[common, budget], help="random Reidemeister walk checking invariants")
    p.add_argument("--moves", type=int, default=1000, help="walk length (default 1000)")
    p.add_argument("--skip-module", action="store_true", help="do not recompute the module bound each step")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "family" and args.family is None and args.code is not None:
        # `vknot family SPEC` reads the positional argument as the spec
        args.family, args.code = args.code, None
    try:
        g, source = read_input(args)
        data, code = COMMANDS[args.command](g, source, args)
    except (UsageError, VKnotError, ValueError, OSError) as exc:
        print(f"vknot {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(data, args.json)
    return code
