"""Exact Laurent-polynomial matrices with exponents in Z^2.

Coefficients are Fractions (any exact field with +, *, /, == would do; the
code never calls anything float-specific).  Polynomials are kept in
canonical form: sorted exponent keys, no zero coefficients.  Matrices are
tuples of tuples of polynomials; products, determinants (cofactor
expansion) and adjugates are exact.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotRegular, SizeMismatch


class LaurentPoly:
    """A Laurent polynomial sum of c * z^(e) with e in Z^2."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: mapping (ex, ey) -> coefficient; zeros dropped here.
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    e = (int(e[0]), int(e[1]))
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if clean[e] == 0:
                        del clean[e]
        self.terms = {e: clean[e] for e in sorted(clean)}

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({(0, 0): Fraction(1)})

    @staticmethod
    def monomial(coeff, exponent):
        return LaurentPoly({(int(exponent[0]), int(exponent[1])): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def monomial_parts(self):
        """(coeff, exponent) of a single-term polynomial."""
        if not self.is_monomial():
            raise ValueError("not a monomial")
        ((e, c),) = self.terms.items()
        return c, e

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1])
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return LaurentPoly(out)
        return LaurentPoly({e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms.items():
            bits.append(f"{c}*z^{e}")
        return " + ".join(bits)


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly({(0, 0): Fraction(x)})


class LaurentMatrix:
    """Square matrix of Laurent polynomials."""

    __slots__ = ("size", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_as_poly(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SizeMismatch("matrix must be square")
        self.size = n
        self.rows = rows

    @staticmethod
    def identity(n):
        return LaurentMatrix(
            [[LaurentPoly.one() if i == j else LaurentPoly.zero()
              for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n):
        return LaurentMatrix([[LaurentPoly.zero()] * n for _ in range(n)])

    def entry(self, i, j):
        return self.rows[i][j]

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i][j] = _as_poly(value)
        return LaurentMatrix(rows)

    def __eq__(self, other):
        return (isinstance(other, LaurentMatrix)
                and self.size == other.size and self.rows == other.rows)

    def __repr__(self):
        return "LaurentMatrix(" + ", ".join(
            "[" + ", ".join(repr(x) for x in row) + "]" for row in self.rows) + ")"

    def __mul__(self, other):
        return mat_mul(self, other)

    def transpose(self):
        return LaurentMatrix(list(zip(*self.rows)))

    def det(self):
        """Determinant by cofactor expansion (desk-scale sizes)."""
        n = self.size
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            a, b = self.rows[0]
            c, d = self.rows[1]
            return a * d - b * c
        total = LaurentPoly.zero()
        for j in range(n):
            if self.rows[0][j].is_zero():
                continue
            minor = LaurentMatrix(
                [[self.rows[i][k] for k in range(n) if k != j]
                 for i in range(1, n)])
            term = self.rows[0][j] * minor.det()
            total = total + (term if j % 2 == 0 else -term)
        return total

    def adjugate(self):
        n = self.size
        if n == 1:
            return LaurentMatrix([[LaurentPoly.one()]])
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = LaurentMatrix(
                    [[self.rows[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i])
                m = minor.det()
                cof[i][j] = m if (i + j) % 2 == 0 else -m
        return LaurentMatrix(cof).transpose()


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    if a.size != b.size:
        raise SizeMismatch(f"sizes {a.size} and {b.size} differ")
    n = a.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = LaurentPoly.zero()
            for k in range(n):
                if a.rows[i][k].is_zero() or b.rows[k][j].is_zero():
                    continue
                s = s + a.rows[i][k] * b.rows[k][j]
            row.append(s)
        out.append(row)
    return LaurentMatrix(out)


def prod(matrices, size=None):
    """Ordered product M_k ... M_2 M_1 of a crossing-ordered factor list.

    The first factor in the list is applied first, i.e. sits rightmost.
    """
    matrices = list(matrices)
    if not matrices:
        if size is None:
            raise SizeMismatch("empty product needs an explicit size")
        return LaurentMatrix.identity(size)
    acc = matrices[0]
    for m in matrices[1:]:
        acc = mat_mul(m, acc)
    return acc


def poly_regular_on(p: LaurentPoly, generators) -> bool:
    """True iff every exponent pairs >= 0 with every cone generator."""
    for e in p.terms:
        for v in generators:
            if e[0] * v[0] + e[1] * v[1] < 0:
                return False
    return True


def regular_on(a: LaurentMatrix, fan, cone) -> bool:
    """True iff every entry is regular on the affine chart of the cone."""
    gens = fan.cone_generators(cone)
    return all(poly_regular_on(a.rows[i][j], gens)
               for i in range(a.size) for j in range(a.size))


def is_invertible_on(a: LaurentMatrix, fan, cone) -> bool:
    """True iff a is a unit of GL_r over the chart's coordinate ring.

    Requires regularity; the determinant must be a single term c*z^m with
    both m and -m in the dual cone, i.e. <m, v> == 0 for every generator.
    """
    if not regular_on(a, fan, cone):
        raise NotRegular("matrix is not regular on the given cone")
    d = a.det()
    if not d.is_monomial():
        return False
    c, e = d.monomial_parts()
    if c == 0:
        return False
    for v in fan.cone_generators(cone):
        if e[0] * v[0] + e[1] * v[1] != 0:
            return False
    return True


def monomial_inverse(a: LaurentMatrix) -> LaurentMatrix:
    """Exact inverse of a matrix with monomial determinant."""
    d = a.det()
    c, e = d.monomial_parts()
    inv_det = LaurentPoly.monomial(Fraction(1) / c, (-e[0], -e[1]))
    adj = a.adjugate()
    return LaurentMatrix([[inv_det * adj.rows[i][j] for j in range(a.size)]
                          for i in range(a.size)])


def cocycle_check(g31: LaurentMatrix, g23: LaurentMatrix,
                  g12: LaurentMatrix) -> bool:
    """True iff g31 * g23 * g12 is exactly the identity."""
    if not (g31.size == g23.size == g12.size):
        raise SizeMismatch("cocycle factors must share a size")
    return mat_mul(mat_mul(g31, g23), g12) == LaurentMatrix.identity(g12.size)
