"""Diagram families and stored fixtures.

Family specs can also be written as text, e.g. ``torus2braid:p=5,virtualized=1``,
``twisted:l=1,r=1,c_sign=-1``, ``trefoil-sum:n=2``, ``virtual-trefoil-sum:n=3``,
``kishino`` and ``kishino-changed``.  Several specs joined by ``#`` give a
connected sum, spliced after the last endpoint of the running diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSpec
from .gauss import GaussDiagram, apply_operations, connected_sum, parse_gauss_code, virtualize

TREFOIL_CODE = "O1+U2+O3+U1+O2+U3+"
VIRTUAL_TREFOIL_CODE = "O1+O2+U1+U2+"
# the virtual trefoil opened between its two heads; concatenating copies of
# this block keeps every copy (0,1)-unknottable inside the sum
VIRTUAL_TREFOIL_BLOCK = "U1+O2+O1+U2+"
FIGURE_EIGHT_CODE = "O1+U2+O3-U4-O2+U1+O4-U3-"
# connected sum of two RII-trivial blocks {1,2} and {3,4}
KISHINO_CODE = "O1+O2-U1+O3+U4-U3+O4-U2-"
KISHINO_LEFT_BLOCK = (1, 2)


@dataclass(frozen=True)
class Torus2Braid:
    p: int
    virtualized: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class Twisted:
    l: int
    r: int
    c_sign: int = 1
    c_direction: str = "up"


@dataclass(frozen=True)
class ClassicalTrefoilSum:
    n: int


@dataclass(frozen=True)
class VirtualTrefoilSum:
    n: int


@dataclass(frozen=True)
class Kishino:
    pass


@dataclass(frozen=True)
class KishinoChanged:
    pass


FamilySpec = Torus2Braid | Twisted | ClassicalTrefoilSum | VirtualTrefoilSum | Kishino | KishinoChanged


def _repeat(block: GaussDiagram, n: int) -> GaussDiagram:
    out = GaussDiagram.build((), {})
    for _ in range(n):
        out = connected_sum(out, None, block)
    return out


def _torus(spec: Torus2Braid) -> GaussDiagram:
    p = spec.p
    if not isinstance(p, int) or p < 1 or p % 2 == 0:
        raise InvalidSpec(f"p must be an odd positive integer, got {p!r}")
    bad = [k for k in spec.virtualized if not (isinstance(k, int) and 1 <= k <= p)]
    if bad:
        raise InvalidSpec(f"virtualized crossings out of range 1..{p}: {sorted(bad)}")
    eps = [None] * (2 * p)
    for k in range(1, p + 1):
        for pos in (k - 1, k - 1 + p):
            eps[pos] = (k, pos % 2 == 0)
    g = GaussDiagram.build(eps, {k: 1 for k in range(1, p + 1)})
    for k in sorted(spec.virtualized):
        g = virtualize(g, k)
    return g


def _twisted(spec: Twisted) -> GaussDiagram:
    """Chord 1 is c, running from position 0 (A) to position k+1 (B).

    Positions 1..k hold R_1..R_k and positions k+2..2k+1 hold L_k..L_1.
    Horizontal chord i+1 joins L_i and R_i; the first l run from L to R,
    the remaining r from R to L; all horizontals are positive.  With c
    pointing up (tail at A), Ind(c) = r - l.
    """
    l, r = spec.l, spec.r
    if not (isinstance(l, int) and isinstance(r, int)) or l < 0 or r < 0:
        raise InvalidSpec("l and r must be non-negative integers")
    if spec.c_sign not in (1, -1):
        raise InvalidSpec("c_sign must be +1 or -1")
    if spec.c_direction not in ("up", "down"):
        raise InvalidSpec("c_direction must be 'up' or 'down'")
    k = l + r
    up = spec.c_direction == "up"
    eps = [None] * (2 * k + 2)
    eps[0] = (1, up)
    eps[k + 1] = (1, not up)
    for i in range(1, k + 1):
        left_to_right = i <= l
        eps[i] = (i + 1, not left_to_right)
        eps[2 * k + 2 - i] = (i + 1, left_to_right)
    signs = {1: spec.c_sign}
    signs.update({i + 1: 1 for i in range(1, k + 1)})
    return GaussDiagram.build(eps, signs)


def kishino() -> GaussDiagram:
    return parse_gauss_code(KISHINO_CODE)


def kishino_changed() -> GaussDiagram:
    return apply_operations(kishino(), (), KISHINO_LEFT_BLOCK)


def generate(spec) -> GaussDiagram:
    if isinstance(spec, Torus2Braid):
        return _torus(spec)
    if isinstance(spec, Twisted):
        return _twisted(spec)
    if isinstance(spec, (ClassicalTrefoilSum, VirtualTrefoilSum)):
        if not isinstance(spec.n, int) or spec.n < 0:
            raise InvalidSpec(f"n must be a non-negative integer, got {spec.n!r}")
        block = TREFOIL_CODE if isinstance(spec, ClassicalTrefoilSum) else VIRTUAL_TREFOIL_BLOCK
        return _repeat(parse_gauss_code(block), spec.n)
    if isinstance(spec, Kishino):
        return kishino()
    if isinstance(spec, KishinoChanged):
        return kishino_changed()
    raise InvalidSpec(f"unknown family spec {spec!r}")


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise InvalidSpec(f"{name} must be an integer, got {value!r}") from None


def _kwargs(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, value = part.partition("=")
        if not sep:
            raise InvalidSpec(f"expected key=value, got {part!r}")
        out[key.strip()] = value.strip()
    return out


def _only(kw: dict, allowed: set, name: str):
    extra = set(kw) - allowed
    if extra:
        raise InvalidSpec(f"unknown parameter(s) for {name}: {', '.join(sorted(extra))}")


def parse_family_spec(text: str):
    """Parse one spec such as ``twisted:l=3,r=0``."""
    name, _, rest = text.strip().partition(":")
    name = name.strip().lower()
    kw = _kwargs(rest)
    if name == "torus2braid":
        _only(kw, {"p", "virtualized"}, name)
        if "p" not in kw:
            raise InvalidSpec("torus2braid needs p")
        virt = kw.get("virtualized", "")
        ids = frozenset(_int(v, "virtualized") for v in virt.split("/") if v)
        return Torus2Braid(_int(kw["p"], "p"), ids)
    if name == "twisted":
        _only(kw, {"l", "r", "c_sign", "c_direction"}, name)
        if "l" not in kw or "r" not in kw:
            raise InvalidSpec("twisted needs l and r")
        return Twisted(
            _int(kw["l"], "l"),
            _int(kw["r"], "r"),
            _int(kw.get("c_sign", "1"), "c_sign"),
            kw.get("c_direction", "up"),
        )
    if name in ("trefoil-sum", "virtual-trefoil-sum"):
        _only(kw, {"n"}, name)
        n = _int(kw.get("n", "1"), "n")
        return ClassicalTrefoilSum(n) if name == "trefoil-sum" else VirtualTrefoilSum(n)
    if name in ("kishino", "kishino-changed"):
        _only(kw, set(), name)
        return Kishino() if name == "kishino" else KishinoChanged()
    raise InvalidSpec(f"unknown family {name!r}")


def generate_from_text(text: str) -> GaussDiagram:
    """Generate a diagram from specs joined by ``#`` (connected sum)."""
    parts = [p for p in text.split("#")]
    if not parts or any(not p.strip() for p in parts):
        raise InvalidSpec(f"empty family spec in {text!r}")
    g = generate(parse_family_spec(parts[0]))
    for p in parts[1:]:
        g = connected_sum(g, None, generate(parse_family_spec(p)))
    return g
