import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import (
    FIGURE_EIGHT_GCD,
    FIGURE_EIGHT_HAND_ROWS,
    FIGURE_EIGHT_HAND_SHIFTS,
    SMALL_FIXTURES,
    TREFOIL_GCD,
    TREFOIL_HAND_ROWS,
    TREFOIL_HAND_SHIFTS,
    diagrams,
    fixture_diagram,
    random_diagram,
)
from vknot.alexander import (
    PresentationMatrix,
    alexander_gcd,
    alexander_gcds,
    alexander_matrix_of,
    e_lower_bound,
    elementary_ideal_proper,
    eliminate_units,
    fox_alexander_matrix,
    fox_row,
    module_constraint,
    module_nontrivial,
    reduced_matrix,
    wirtinger_presentation,
)
from vknot.errors import EmptyMatrix
from vknot.families import FIGURE_EIGHT_CODE, KISHINO_CODE, TREFOIL_CODE
from vknot.gauss import connected_sum, crossing_change, parse_gauss_code, virtualize
from vknot.laurent import LaurentPolynomial

t = sympy.Symbol("t")
ONE = LaurentPolynomial.one()


def to_sympy(p: LaurentPolynomial):
    return sum((c * t**e for e, c in p.terms.items()), sympy.Integer(0))


def normalize_sympy(expr):
    """Primitive-sign-normalized polynomial with powers of t divided out."""
    expr = sympy.factor_terms(sympy.together(expr))
    num, _ = sympy.fraction(expr)
    if num == 0:
        return sympy.Integer(0)
    poly = sympy.Poly(num, t, domain="ZZ")
    while poly.eval(0) == 0:
        poly = sympy.Poly(sympy.quo(poly.as_expr(), t), t, domain="ZZ")
    if poly.LC() < 0:
        poly = -poly
    return poly.as_expr()


# ---------------------------------------------------------------------------
# Fox calculus against hand derivations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "code, hand, shifts",
    [
        (TREFOIL_CODE, TREFOIL_HAND_ROWS, TREFOIL_HAND_SHIFTS),
        (FIGURE_EIGHT_CODE, FIGURE_EIGHT_HAND_ROWS, FIGURE_EIGHT_HAND_SHIFTS),
    ],
)
def test_fox_matrix_matches_hand_derivation(code, hand, shifts):
    a = fox_alexander_matrix(wirtinger_presentation(parse_gauss_code(code)))
    assert a.nrows == len(hand) and a.ncols == len(hand[0])
    for row, hand_row, s in zip(a.rows, hand, shifts):
        assert [x * LaurentPolynomial.monomial(s) for x in row] == hand_row


def test_trefoil_and_figure_eight_gcds():
    assert alexander_gcd(alexander_matrix_of(parse_gauss_code(TREFOIL_CODE)), 0) == TREFOIL_GCD
    assert alexander_gcd(alexander_matrix_of(parse_gauss_code(TREFOIL_CODE)), 1) == ONE
    assert alexander_gcd(alexander_matrix_of(parse_gauss_code(FIGURE_EIGHT_CODE)), 0) == FIGURE_EIGHT_GCD


def test_fox_row_of_textbook_relator_up_to_inversion():
    # x2^-1 x1^-1 x3 x1; the textbook row (t on x3, 1-t on x1, -1 on x2) is
    # this row with t -> t^-1, times a unit
    row = fox_row(((1, -1), (0, -1), (2, 1), (0, 1)), 3)
    inverted = [x.substitute_inverse() * LaurentPolynomial.monomial(-1) for x in row]
    assert inverted == [1 - LaurentPolynomial.monomial(1), -ONE, LaurentPolynomial.monomial(1)]
    assert sum(row, LaurentPolynomial.zero()) == LaurentPolynomial.zero()


def test_empty_diagram_presentation():
    p = wirtinger_presentation(parse_gauss_code(""))
    assert p.generator_count == 1 and p.relators == ()
    a = fox_alexander_matrix(p)
    assert (a.nrows, a.ncols) == (0, 1)
    r = reduced_matrix(a)
    assert (r.nrows, r.ncols) == (0, 0)
    assert e_lower_bound(parse_gauss_code("")) == 0
    with pytest.raises(EmptyMatrix):
        reduced_matrix(r)


def test_one_crossing_unknot():
    p = wirtinger_presentation(parse_gauss_code("O1+U1+"))
    assert p.generator_count == 1 and len(p.relators) == 1
    assert all(x.is_zero() for x in fox_alexander_matrix(p).rows[0])


def test_trefoil_presentation_shape():
    g = parse_gauss_code(TREFOIL_CODE)
    p = wirtinger_presentation(g)
    assert p.generator_count == 3 and len(p.relators) == 3
    r = alexander_matrix_of(g)
    assert (r.nrows, r.ncols) == (3, 2)
    assert e_lower_bound(g) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trefoil_sums(n):
    g = fixture_diagram(f"trefoil-sum:n={n}")
    gcds = alexander_gcds(g)
    assert gcds[n - 1] == TREFOIL_GCD
    assert e_lower_bound(g) == n
    assert module_constraint(g) == n


def test_module_examples():
    assert module_constraint(parse_gauss_code(KISHINO_CODE)) == 0
    assert not module_nontrivial(parse_gauss_code(KISHINO_CODE))
    assert module_nontrivial(parse_gauss_code(TREFOIL_CODE))


def test_connected_sum_multiplies_gcds():
    codes = [TREFOIL_CODE, FIGURE_EIGHT_CODE, KISHINO_CODE, "O1+O2+U1+U2+", "kishino-changed"]
    for x, y in combinations(codes, 2):
        g, h = fixture_diagram(x), fixture_diagram(y)
        s = connected_sum(g, None, h)
        got = alexander_gcd(alexander_matrix_of(s), 0)
        want = (alexander_gcd(alexander_matrix_of(g), 0) * alexander_gcd(alexander_matrix_of(h), 0)).normalized()
        assert got == want, (x, y)


# ---------------------------------------------------------------------------
# cross-checks against sympy
# ---------------------------------------------------------------------------

def sympy_minor_gcd(a: PresentationMatrix, d: int):
    size = a.ncols - d
    if size <= 0:
        return sympy.Integer(1)
    if size > a.nrows:
        return sympy.Integer(0)
    m = sympy.Matrix([[to_sympy(x) for x in row] for row in a.rows])
    g = sympy.Integer(0)
    for rs in combinations(range(a.nrows), size):
        for cs in combinations(range(a.ncols), size):
            det = sympy.expand(m.extract(list(rs), list(cs)).det(method="berkowitz"))
            g = sympy.gcd(g, normalize_sympy(det)) if det != 0 else g
    return normalize_sympy(g) if g != 0 else g


@settings(max_examples=40, deadline=None)
@given(diagrams(max_chords=4))
def test_minor_gcds_match_sympy(g):
    a = alexander_matrix_of(g)
    for d in range(a.ncols + 1):
        ours = to_sympy(alexander_gcd(a, d))
        assert sympy.expand(ours - sympy_minor_gcd(a, d)) == 0, d


@given(diagrams())
def test_rows_sum_to_zero(g):
    a = fox_alexander_matrix(wirtinger_presentation(g))
    assert a.nrows == g.chord_count
    for row in a.rows:
        assert sum(row, LaurentPolynomial.zero()).is_zero()


@settings(max_examples=60, deadline=None)
@given(diagrams(max_chords=5))
def test_gcds_are_nested(g):
    gcds = [to_sympy(x) for x in alexander_gcds(g)]
    for lo, hi in zip(gcds, gcds[1:]):
        if lo != 0:
            assert sympy.rem(lo, hi, t) == 0


# ---------------------------------------------------------------------------
# the module bound
# ---------------------------------------------------------------------------

def _all_minors(a: PresentationMatrix, size: int):
    m = sympy.Matrix([[to_sympy(x) for x in row] for row in a.rows])
    out = []
    for rs in combinations(range(a.nrows), size):
        for cs in combinations(range(a.ncols), size):
            det = sympy.expand(m.extract(list(rs), list(cs)).det(method="berkowitz"))
            if det != 0:
                out.append(normalize_sympy(det))
    return out


def _mod_p_core(expr, p):
    """The polynomial over F_p with powers of t divided out, or None if it vanishes."""
    poly = sympy.Poly(expr, t, modulus=p)
    if poly.is_zero:
        return None
    low = min(e for (e,) in poly.monoms())
    return sympy.Poly(sympy.expand(poly.as_expr() / t**low), t, modulus=p)


def small_prime_oracle(a: PresentationMatrix, primes=tuple(sympy.primerange(2, 200))) -> int:
    """Largest d+1 with E_d shown proper by a gcd over Z or over F_p, p < 200."""
    result = 0
    for d in range(a.ncols):
        size = a.ncols - d
        dets = _all_minors(a, size) if size <= a.nrows else []
        proper = not dets
        if not proper:
            g = dets[0]
            for x in dets[1:]:
                g = sympy.gcd(g, x)
            g = sympy.Poly(g, t)
            proper = g.degree() > 0 or abs(g.LC()) != 1
        for p in primes:
            if proper:
                break
            cores = [c for c in (_mod_p_core(x, p) for x in dets) if c is not None]
            if not cores:
                proper = True
                break
            g = cores[0]
            for c in cores[1:]:
                g = sympy.gcd(g, c)
            proper = g.degree() > 0
        if proper:
            result = d + 1
    return result


def test_module_bound_matches_small_prime_oracle():
    rng = random.Random(2024)
    corpus = [fixture_diagram(x) for x in SMALL_FIXTURES.values() if fixture_diagram(x).chord_count <= 5]
    corpus += [random_diagram(rng, rng.randint(1, 4)) for _ in range(60)]
    for g in corpus:
        assert e_lower_bound(g) == small_prime_oracle(alexander_matrix_of(g))


def test_module_bound_of_changed_kishino_sum_matches_oracle():
    g = fixture_diagram("kishino-changed#trefoil-sum:n=1")
    assert e_lower_bound(g) == 2
    # 7 chords: oracle on the unit-reduced matrix, whose ideals are the same
    assert small_prime_oracle(eliminate_units(alexander_matrix_of(g))) == 2


@settings(max_examples=60, deadline=None)
@given(diagrams(max_chords=5))
def test_unit_elimination_keeps_every_ideal(g):
    a = alexander_matrix_of(g)
    b = eliminate_units(a)
    for d in range(a.ncols):
        assert elementary_ideal_proper(b, d) == elementary_ideal_proper(a, d), d


@settings(max_examples=60, deadline=None)
@given(diagrams(max_chords=5))
def test_module_bound_agrees_with_raw_ideal_route(g):
    a = alexander_matrix_of(g)
    raw = max((d + 1 for d in range(a.ncols) if elementary_ideal_proper(a, d)), default=0)
    assert e_lower_bound(g) == raw


@settings(max_examples=80, deadline=None)
@given(diagrams(min_chords=1, max_chords=5), st.data())
def test_one_operation_moves_module_bound_by_at_most_one(g, data):
    c = data.draw(st.sampled_from(g.chords))
    e = e_lower_bound(g)
    assert abs(e - e_lower_bound(virtualize(g, c))) <= 1
    assert abs(e - e_lower_bound(crossing_change(g, c))) <= 1


@pytest.mark.parametrize("name", list(SMALL_FIXTURES))
def test_one_operation_law_on_fixtures(name):
    g = fixture_diagram(SMALL_FIXTURES[name])
    e = e_lower_bound(g)
    for c in g.chords:
        assert abs(e - e_lower_bound(virtualize(g, c))) <= 1
        assert abs(e - e_lower_bound(crossing_change(g, c))) <= 1
