"""Exact Laurent polynomials over the integers.

Two representations live here.  :class:`LaurentPolynomial` is the public,
immutable exponent -> coefficient map used for invariants and matrix
entries.  The ``poly_*`` helpers work on plain coefficient lists (index =
exponent, lowest first) and are what the determinant and gcd code uses in
its inner loops.
"""

from __future__ import annotations

from math import gcd as _igcd
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Element of Z[t, t^-1], stored as a sparse exponent -> coefficient map."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if v:
                    clean[int(k)] = int(v)
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPolynomial":
        """Build from a dense list, ``coeffs[i]`` being the coefficient of t^(i+shift)."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    # access -------------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def to_dense(self) -> tuple[int, list[int]]:
        """Return ``(shift, coeffs)`` with lowest exponent ``shift`` and coeffs[0] != 0."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exponent(), self.max_exponent()
        return lo, [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def is_unit(self) -> bool:
        """Units of Z[t, t^-1] are exactly +-t^k."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def normalized(self) -> "LaurentPolynomial":
        """Shift to lowest exponent 0 and make the leading coefficient positive."""
        if not self._terms:
            return self
        lo = self.min_exponent()
        sign = -1 if self._terms[self.max_exponent()] < 0 else 1
        return LaurentPolynomial({e - lo: sign * c for e, c in self._terms.items()})

    def substitute_inverse(self) -> "LaurentPolynomial":
        """The image under t -> t^-1."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, value):
        return sum(c * value**e for e, c in self._terms.items())

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units can be raised to negative powers")
            (e, c), = self._terms.items()
            return LaurentPolynomial({e * n: c**n})
        result = LaurentPolynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        """Text form: ``c*t^k`` terms joined by `` + ``, exponents descending."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            parts.append(f"{self._terms[e]}*t^{e}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        """Inverse of :meth:`__str__`."""
        text = text.strip()
        if text == "0":
            return cls()
        terms: dict[int, int] = {}
        for part in text.split(" + "):
            coeff, _, exp = part.partition("*t^")
            if not exp:
                raise ValueError(f"bad term {part!r}")
            terms[int(exp)] = terms.get(int(exp), 0) + int(coeff)
        return cls(terms)


def _coerce(value):
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial({0: value})
    return NotImplemented


T = LaurentPolynomial.monomial(1)


# ---------------------------------------------------------------------------
# dense integer polynomials: list[int], index = exponent, no trailing zeros
# ---------------------------------------------------------------------------

def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return poly_trim(out)


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a: list[int], k: int) -> list[int]:
    return poly_trim([k * c for c in a])


def poly_divmod_exact(a: list[int], b: list[int]) -> list[int]:
    """Quotient a / b in Z[t]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) - 1 < db:
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return []
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = q
        for i, bc in enumerate(b):
            rem[k + i] -= q * bc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return poly_trim(quot)


def poly_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = _igcd(g, c)
    return g


def poly_primitive(a: list[int]) -> list[int]:
    if not a:
        return []
    g = poly_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def poly_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    while rem and len(rem) - 1 >= db:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lead * x for x in rem]
        for i, bc in enumerate(b):
            rem[shift + i] -= c * bc
        poly_trim(rem)
    return rem


def poly_strip_t(a: list[int]) -> list[int]:
    """Divide out the largest power of t (a unit in the Laurent ring)."""
    i = 0
    while i < len(a) and a[i] == 0:
        i += 1
    return a[i:]


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd in Z[t] via content times primitive-part Euclid; positive leading coefficient."""
    a, b = poly_trim(list(a)), poly_trim(list(b))
    if not a or not b:
        rest = a or b
        return [-c for c in rest] if rest and rest[-1] < 0 else rest
    content = _igcd(poly_content(a), poly_content(b))
    a, b = poly_primitive(a), poly_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = poly_pseudo_rem(a, b)
        a, b = b, (poly_primitive(r) if r else [])
    return [content * c for c in poly_primitive(a)]


def laurent_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """gcd up to units, normalized to lowest exponent 0 and positive leading coefficient."""
    _, da = a.to_dense()
    _, db = b.to_dense()
    return LaurentPolynomial.from_coefficients(poly_strip_t(poly_gcd(da, db)))
