"""Wirtinger presentations, Fox calculus and elementary-ideal bounds.

The pipeline is diagram -> Wirtinger presentation -> Alexander matrix (Fox
derivatives with every generator sent to t) -> reduced matrix (last column
dropped) -> ideals of minors.  If the (g-d)-minors of a g-column
presentation span a proper ideal (for instance because their gcd is not a
unit) the module cannot be generated by d elements; :func:`e_lower_bound`
returns the resulting bound on the minimal number of generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from sympy import factorint

from .errors import EmptyMatrix
from .gauss import GaussDiagram, canonical_key
from .laurent import (
    LaurentPolynomial,
    poly_add,
    poly_divmod_exact,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_strip_t,
    poly_sub,
    poly_trim,
)

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class WirtingerPresentation:
    generator_count: int
    relators: tuple[Word, ...]
    crossings: tuple[int, ...] = ()  # chord id behind each relator

    def __str__(self):
        def word(w):
            return " ".join(f"x{g + 1}" + ("^-1" if e < 0 else "") for g, e in w)

        rels = ", ".join(word(r) for r in self.relators)
        gens = ", ".join(f"x{i + 1}" for i in range(self.generator_count))
        return f"< {gens} | {rels} >"


@dataclass(frozen=True)
class PresentationMatrix:
    rows: tuple[tuple[LaurentPolynomial, ...], ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_text(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]


def wirtinger_presentation(g: GaussDiagram) -> WirtingerPresentation:
    """One generator per arc (arcs end at under-passages), one relator per chord.

    At a chord of sign e with over arc o, incoming under arc i and outgoing
    under arc j the relator is x_j^-1 x_o^-e x_i x_o^e.
    """
    eps = g.endpoints
    heads = [p for p, (_, tail) in enumerate(eps) if not tail]
    k = len(heads)
    if k == 0:
        return WirtingerPresentation(1, (), ())

    arc_of = []
    seen = 0
    for p in range(len(eps)):
        arc_of.append(seen % k)
        if not eps[p][1]:
            seen += 1
    # arc_of[p] counts heads strictly before p, so a head at p ends arc arc_of[p]
    relators, crossings = [], []
    for cid in g.chords:
        t, h = g.tail_pos[cid], g.head_pos[cid]
        e = g.sign[cid]
        over = arc_of[t]
        arc_in = arc_of[h]
        arc_out = (arc_in + 1) % k
        relators.append(((arc_out, -1), (over, -e), (arc_in, 1), (over, e)))
        crossings.append(cid)
    return WirtingerPresentation(k, tuple(relators), tuple(crossings))


def fox_row(word: Word, ngens: int) -> tuple[LaurentPolynomial, ...]:
    """Abelianized Fox derivatives of one word, every generator mapped to t.

    d(uv)/dx = du/dx + u dv/dx, dx/dx = 1, d(x^-1)/dx = -x^-1.
    """
    acc: list[dict[int, int]] = [{} for _ in range(ngens)]
    prefix = 0
    for gen, exp in word:
        if exp > 0:
            acc[gen][prefix] = acc[gen].get(prefix, 0) + 1
            prefix += 1
        else:
            prefix -= 1
            acc[gen][prefix] = acc[gen].get(prefix, 0) - 1
    return tuple(LaurentPolynomial(a) for a in acc)


def fox_alexander_matrix(p: WirtingerPresentation) -> PresentationMatrix:
    return PresentationMatrix(tuple(fox_row(r, p.generator_count) for r in p.relators), p.generator_count)


def reduced_matrix(a: PresentationMatrix) -> PresentationMatrix:
    if a.ncols < 1:
        raise EmptyMatrix("cannot drop a column from a matrix without columns")
    return PresentationMatrix(tuple(row[:-1] for row in a.rows), a.ncols - 1)


def alexander_matrix_of(g: GaussDiagram) -> PresentationMatrix:
    return reduced_matrix(fox_alexander_matrix(wirtinger_presentation(g)))


# ---------------------------------------------------------------------------
# minors
# ---------------------------------------------------------------------------

def _dense_rows(a: PresentationMatrix) -> list[list[list[int]]]:
    # multiply each row by a power of t so all entries are polynomials;
    # this changes every minor by a unit only
    out = []
    for row in a.rows:
        nonzero = [x for x in row if not x.is_zero()]
        low = min((x.min_exponent() for x in nonzero), default=0)
        dense = []
        for x in row:
            if x.is_zero():
                dense.append([])
            else:
                shift, coeffs = x.to_dense()
                dense.append([0] * (shift - low) + coeffs)
        out.append(dense)
    return out


def poly_det(m: list[list[list[int]]]) -> list[int]:
    """Determinant over Z[t] by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return [1]
    if n == 1:
        return list(m[0][0])
    if n == 2:
        return poly_sub(poly_mul(m[0][0], m[1][1]), poly_mul(m[0][1], m[1][0]))
    m = [list(r) for r in m]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if m[i][k] and (piv is None or len(m[i][k]) < len(m[piv][k])):
                piv = i
        if piv is None:
            return []
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        mkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                val = poly_mul(m[i][j], mkk)
                if mik and m[k][j]:
                    val = poly_sub(val, poly_mul(mik, m[k][j]))
                m[i][j] = poly_divmod_exact(val, prev) if val else []
        prev = mkk
    det = m[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else det


def _is_unit_dense(p: list[int]) -> bool:
    q = poly_strip_t(p)
    return len(q) == 1 and abs(q[0]) == 1


def _minor_gcd(rows: list[list[list[int]]], ncols: int, size: int) -> list[int]:
    running: list[int] = []
    for rsel in combinations(range(len(rows)), size):
        sub_rows = [rows[r] for r in rsel]
        for csel in combinations(range(ncols), size):
            det = poly_det([[row[c] for c in csel] for row in sub_rows])
            if not det:
                continue
            running = poly_gcd(running, det)
            if _is_unit_dense(running):
                return [1]
    return poly_strip_t(running)


def alexander_gcd(a: PresentationMatrix, d: int) -> LaurentPolynomial:
    """gcd of the (g-d)x(g-d) minors of a g-column matrix, normalized.

    1 when d >= g; 0 when there are fewer than g-d rows.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    size = a.ncols - d
    if size <= 0:
        return LaurentPolynomial.one()
    if size > a.nrows:
        return LaurentPolynomial.zero()
    return LaurentPolynomial.from_coefficients(_minor_gcd(_dense_rows(a), a.ncols, size)).normalized()


def alexander_gcds(g: GaussDiagram) -> list[LaurentPolynomial]:
    """The gcds for d = 0 .. g, where g is the column count of the reduced matrix."""
    a = alexander_matrix_of(g)
    return [alexander_gcd(a, d) for d in range(a.ncols + 1)]


def _mod_p_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd in F_p[t] with powers of t divided out."""
    a = poly_strip_t(poly_trim([c % p for c in a]))
    b = poly_strip_t(poly_trim([c % p for c in b]))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            if a[-1]:
                f = a[-1] * inv % p
                off = len(a) - len(b)
                for i, c in enumerate(b):
                    a[off + i] = (a[off + i] - f * c) % p
            a.pop()
        a, b = b, poly_strip_t(poly_trim(a))
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _resultant(f: list[int], g: list[int]) -> int:
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    det = poly_det([[[x] if x else [] for x in row] for row in rows])
    return det[0] if det else 0


def _integer_in_ideal(gens: list[list[int]]) -> int:
    """A nonzero integer in the ideal spanned by gens, whose gcd over Q is 1.

    Every resultant Res(f, q) lies in the ideal, and so does the gcd of any
    integers in it, which keeps the number to factor small.
    """
    f = min(gens, key=len)
    if len(f) == 1:
        return abs(f[0])
    n = 0
    for q in gens:
        if q is not f and len(poly_gcd(f, q)) == 1:
            n = gcd(n, abs(_resultant(f, q)))
            if n == 1:
                return 1
    if n:
        return n
    lam = 1
    while True:
        h: list[int] = []
        for i, q in enumerate(gens):
            h = poly_add(h, poly_scale(q, lam ** i))
        h = poly_trim(h)
        if h and len(poly_gcd(f, h)) == 1:
            return abs(_resultant(f, h))
        lam += 1


def _ideal_is_proper(minors) -> bool:
    """Whether the ideal of Z[t, t^-1] spanned by the given polynomials is proper.

    A Laurent ideal is the whole ring iff it contains no common root over Q
    and, for every prime p dividing an integer it contains, its image in
    F_p[t, t^-1] is the whole ring.
    """
    zgcd: list[int] = []
    gens: list[list[int]] = []
    pending: dict[int, list[int]] | None = None
    for m in minors:
        m = poly_strip_t(m)
        if not m:
            continue
        if pending is None:
            gens.append(m)
            zgcd = poly_gcd(zgcd, m)
            if len(m) == 1 and abs(m[0]) == 1:
                return False
            if len(zgcd) == 1:
                pending = {}
                for p in factorint(_integer_in_ideal(gens)):
                    acc: list[int] = []
                    for q in gens:
                        acc = _mod_p_gcd(acc, q, p)
                    if len(acc) != 1:
                        pending[p] = acc
                if not pending:
                    return False
        else:
            if len(m) == 1 and abs(m[0]) == 1:
                return False
            for p in list(pending):
                acc = _mod_p_gcd(pending[p], m, p)
                if len(acc) == 1:
                    del pending[p]
                else:
                    pending[p] = acc
            if not pending:
                return False
    return True


def _minors(rows, ncols, size):
    for rsel in combinations(range(len(rows)), size):
        sub_rows = [rows[r] for r in rsel]
        for csel in combinations(range(ncols), size):
            yield poly_det([[row[c] for c in csel] for row in sub_rows])


def elementary_ideal_proper(a: PresentationMatrix, d: int) -> bool:
    """Whether the ideal of (g-d)-minors is proper (so d generators do not suffice)."""
    size = a.ncols - d
    if size <= 0:
        return False
    if size > a.nrows:
        return True
    return _ideal_is_proper(_minors(_dense_rows(a), a.ncols, size))


def eliminate_units(a: PresentationMatrix) -> PresentationMatrix:
    """Repeatedly clear a unit entry's column and drop its row and column.

    Row operations and the deletion of a unit pivot leave every elementary
    ideal unchanged while lowering the column count by one, so E_d of the
    result (with its own column count) equals E_d of ``a``.
    """
    rows = [list(r) for r in a.rows]
    ncols = a.ncols
    while True:
        pivot = next(
            ((i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x.is_unit()),
            None,
        )
        if pivot is None:
            break
        i, j = pivot
        u = rows[i][j]
        inv = LaurentPolynomial.monomial(-u.min_exponent(), u.coefficient(u.min_exponent()))
        prow = rows.pop(i)
        for r in rows:
            if not r[j].is_zero():
                f = r[j] * inv
                for k in range(ncols):
                    r[k] = r[k] - f * prow[k]
        for r in rows:
            del r[j]
        ncols -= 1
        rows = [r for r in rows if any(not x.is_zero() for x in r)]
    return PresentationMatrix(tuple(tuple(r) for r in rows), ncols)


_E_CACHE: dict[str, int] = {}


def e_lower_bound(g: GaussDiagram) -> int:
    """Lower bound for the minimal number of generators of the knot module.

    Returns d+1 for the largest d whose elementary ideal is proper, 0 if
    none is.  A non-unit minor gcd settles a level at once; otherwise the
    level is decided by :func:`_ideal_is_proper`.
    """
    key = canonical_key(g)
    hit = _E_CACHE.get(key)
    if hit is not None:
        return hit
    a = eliminate_units(alexander_matrix_of(g))
    rows = _dense_rows(a)
    ncols = a.ncols
    result = 0
    # E_d is contained in E_{d+1}: scan from the largest minors down and stop
    # at the first level that is the whole ring
    for size in range(ncols, 0, -1):
        if size > len(rows) or _ideal_is_proper(_minors(rows, ncols, size)):
            result = ncols - size + 1
        else:
            break
    if len(_E_CACHE) > 500_000:
        _E_CACHE.clear()
    _E_CACHE[key] = result
    return result


def module_nontrivial(g: GaussDiagram) -> bool:
    """Whether E_0 is proper, i.e. whether e_lower_bound(g) >= 1."""
    a = eliminate_units(alexander_matrix_of(g))
    return elementary_ideal_proper(a, 0) if a.ncols else False


def module_constraint(g: GaussDiagram) -> int:
    """Lower bound on m + n for every (m, n) making a diagram of this knot trivial."""
    return e_lower_bound(g)
