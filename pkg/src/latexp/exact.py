"""Exact arithmetic in a real number field and exact rational linear algebra.

Elements of ``K = Q(alpha)`` are stored as rational coordinate vectors in the
power basis ``1, alpha, ..., alpha^(n-1)``.  The real embedding is fixed by a
rational interval isolating one real root of the minimal polynomial, and all
numeric output goes through certified interval evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import mpmath

from .reals import CReal, frac_iv, iv_bounds, ivctx

MAX_DEGREE = 12


class FieldError(ValueError):
    """Invalid field data or an operation mixing incompatible fields."""


# --------------------------------------------------------------------------
# rational polynomials (coefficient lists, low degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] -= c * y
        r = _trim(r)
    return _trim(q), r


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _sturm(p):
    seq = [_trim(p), _pderiv(p)]
    while seq[-1] and len(seq[-1]) > 1:
        _, r = _pdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x):
    signs = []
    for p in seq:
        v = _peval(p, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _count_roots(seq, lo, hi):
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def _cauchy_bound(p):
    lead = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) / lead for c in p[:-1]) if len(p) > 1 else Fraction(1)


def _is_irreducible(coeffs) -> bool:
    from sympy import Poly, Symbol

    x = Symbol("x")
    poly = Poly(list(reversed(coeffs)), x)
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == poly.degree()


# --------------------------------------------------------------------------
# number fields

class NumberField:
    """A real number field ``Q[x]/(f)`` with a designated real embedding.

    ``minpoly`` is an integer coefficient list, constant term first.  The
    designated embedding sends ``x`` to the unique real root of ``f`` inside
    ``root_interval``.
    """

    def __init__(self, minpoly: Sequence[int], root_interval):
        coeffs = [int(c) for c in minpoly]
        if any(Fraction(c) != c for c in minpoly):
            raise FieldError("minimal polynomial must have integer coefficients")
        coeffs = _trim(coeffs)
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must be nonconstant")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise FieldError(f"degree {len(coeffs) - 1} exceeds the supported maximum {MAX_DEGREE}")
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        g = reduce(gcd, coeffs)
        coeffs = [c // g for c in coeffs]
        lo, hi = (Fraction(v) for v in root_interval)
        if not lo < hi:
            raise FieldError("root interval must satisfy lo < hi")
        if len(coeffs) > 2 and not _is_irreducible(coeffs):
            raise FieldError(f"polynomial {coeffs} is reducible over Q")

        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self._monic = [Fraction(c, coeffs[-1]) for c in coeffs]
        self._sturm = _sturm(self._monic)
        n_roots = _count_roots(self._sturm, lo, hi) + (1 if _peval(self._monic, lo) == 0 else 0)
        if n_roots == 0:
            raise FieldError(f"no root of {coeffs} in [{lo}, {hi}]")
        if n_roots > 1:
            raise FieldError(f"[{lo}, {hi}] contains {n_roots} roots of {coeffs}")
        self.root_interval = (lo, hi)
        bound = _cauchy_bound(self._monic)
        # roots strictly below the designated one (only a linear f can vanish at lo)
        self.root_index = _count_roots(self._sturm, -bound - 1, lo) - (
            1 if _peval(self._monic, lo) == 0 else 0)
        self.real_root_count = _count_roots(self._sturm, -bound - 1, bound + 1)
        # alpha^k for k = n .. 2n-2, as power-basis coordinates
        n = self.degree
        table = []
        cur_poly = [-c for c in self._monic[:-1]]  # alpha^n
        for _ in range(max(n - 1, 1)):
            table.append(tuple(cur_poly))
            shifted = [Fraction(0)] + list(cur_poly[:-1])
            top = cur_poly[-1]
            cur_poly = [s + top * t for s, t in zip(shifted, table[0])]
        self._reduction = table
        self._isolating = {}
        self._root_ivs = {}

    # identity --------------------------------------------------------------
    def _key(self):
        return (self.minpoly, self.root_index)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"NumberField(minpoly={list(self.minpoly)}, root_interval=({self.root_interval[0]}, {self.root_interval[1]}))"

    # elements --------------------------------------------------------------
    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise FieldError(f"expected at most {self.degree} coordinates, got {len(coords)}")
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return self.element(value)
        return self.element([Fraction(value)])

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        if self.degree == 1:
            return self.element([-self._monic[0]])
        return self.element([0, 1])

    def _reduce(self, poly):
        n = self.degree
        out = list(poly[:n]) + [Fraction(0)] * max(0, n - len(poly))
        for k in range(n, len(poly)):
            c = poly[k]
            if c:
                row = self._reduction[k - n]
                for i in range(n):
                    out[i] += c * row[i]
        return tuple(out)

    # embedding -------------------------------------------------------------
    def isolating_interval(self, bits: int):
        """Rational interval of width <= 2**-bits containing the designated root."""
        lo, hi = self._isolating.get("best", self.root_interval)
        if self.degree == 1:
            r = -self._monic[0]
            return r, r
        width = Fraction(1, 1 << bits)
        f = self._monic
        flo = _peval(f, lo)
        if flo == 0:
            return lo, lo
        while hi - lo > width:
            mid = _dyadic_between(lo, hi)
            fm = _peval(f, mid)
            if fm == 0:
                return mid, mid
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        self._isolating["best"] = (lo, hi)
        return lo, hi

    def root_iv(self, prec: int):
        cached = self._root_ivs.get(prec)
        if cached is not None:
            return cached
        lo, hi = self.isolating_interval(prec + 8)
        ctx = ivctx(prec)
        a, b = frac_iv(lo, ctx), frac_iv(hi, ctx)
        out = ctx.mpf([a.a, b.b])
        self._root_ivs[prec] = out
        return out

    def real_roots(self, bits: int = 60):
        """Isolating rational intervals for all real roots, in increasing order."""
        if self.degree == 1:
            r = -self._monic[0]
            return [(r, r)]
        # irreducible of degree > 1: no rational roots, so no root sits on a split point
        bound = _cauchy_bound(self._monic) + 1
        out = []

        def split(lo, hi):
            n = _count_roots(self._sturm, lo, hi)
            if n == 0:
                return
            if n == 1:
                out.append((lo, hi))
                return
            mid = (lo + hi) / 2
            split(lo, mid)
            split(mid, hi)

        split(-bound, bound)
        refined = []
        for lo, hi in out:
            f = self._monic
            flo = _peval(f, lo)
            while hi - lo > Fraction(1, 1 << bits):
                mid = (lo + hi) / 2
                fm = _peval(f, mid)
                if fm == 0:
                    lo = hi = mid
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            refined.append((lo, hi))
        return refined

    def is_totally_real(self) -> bool:
        return self.real_root_count == self.degree

    def to_json(self):
        lo, hi = self.root_interval
        return {"minpoly": list(self.minpoly), "root_interval": [str(lo), str(hi)]}

    @classmethod
    def from_json(cls, data) -> "NumberField":
        try:
            minpoly = data["minpoly"]
            lo, hi = data["root_interval"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FieldError(f"malformed field description: {exc}") from None
        return cls(minpoly, (Fraction(lo), Fraction(hi)))


def _dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational in (lo, hi) near the midpoint, keeping denominators small."""
    mid = (lo + hi) / 2
    span = hi - lo
    # smallest k with 2^-k <= span/4, i.e. 2^k >= 4 q / p for span = p/q
    k = max(0, (4 * span.denominator // span.numerator).bit_length() - 1)
    while Fraction(1, 1 << k) > span / 4:
        k += 1
    return Fraction(round(mid * (1 << k)), 1 << k)


RATIONALS = None  # set below


def rationals() -> NumberField:
    return RATIONALS


def nf_create(minpoly: Sequence[int], root_interval) -> NumberField:
    return NumberField(minpoly, root_interval)


# --------------------------------------------------------------------------
# field elements

class FieldElement:
    """Exact element of a :class:`NumberField` in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("arithmetic between elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return FieldElement(self.field, (self.coords[0] * other.coords[0],))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coords[0],))
        # extended Euclid: s*a + t*f = 1
        f = list(self.field._monic)
        a = _trim(self.coords)
        r0, r1 = f, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        return FieldElement(self.field, self.field._reduce(inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*a^{i}" if i > 1 else f"{c}*a")
        return " + ".join(terms) if terms else "0"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("element is not rational")
        return self.coords[0]

    def embed(self, precision: int = 128):
        return embed(self, precision)

    def as_creal(self) -> CReal:
        if self.is_rational():
            return CReal.rational(self.coords[0])
        return CReal(lambda p: embed(self, p))

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        p = 64
        while True:
            x = embed(self, p)
            if x.a > 0:
                return 1
            if x.b < 0:
                return -1
            p *= 2

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def norm(self) -> Fraction:
        """Field norm, as the resultant of the minimal polynomial and the element's polynomial."""
        f = list(self.field._monic)
        g = _trim(self.coords)
        if not g:
            return Fraction(0)
        return _resultant(f, g)

    def to_json(self):
        return [str(c) for c in self.coords]


def _resultant(f, g) -> Fraction:
    """Res(f, g) for monic f, by the Euclidean recursion Res(f,g) = lc(g)^deg(f)... ."""
    f, g = _trim(f), _trim(g)
    res = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return res * g[0] ** df
        _, r = _pdivmod(f, g)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        # Res(f, g) = (-1)^(df*dg) * lc(g)^(df - dr) * Res(g, r)
        if (df * dg) % 2:
            res = -res
        res *= g[-1] ** (df - dr)
        f, g = g, r


def embed(a: FieldElement, precision: int = 128):
    """Certified interval enclosure of ``a`` under the designated embedding.

    The width is at most ``2**(2 - precision) * max(1, |a|)``.
    """
    if precision < 16:
        raise ValueError("precision must be at least 16 bits")
    ctx = ivctx(precision)
    if a.is_rational():
        return frac_iv(a.coords[0], ctx)
    guard = 16 + max(c.numerator.bit_length() + c.denominator.bit_length() for c in a.coords)
    while True:
        wctx = ivctx(precision + guard)
        r = a.field.root_iv(precision + guard)
        acc = wctx.mpf(0)
        for c in reversed(a.coords):
            acc = acc * r + frac_iv(c, wctx)
        out = ctx.convert(acc)
        lo, hi = iv_bounds(out)
        mag = max(1, abs(lo), abs(hi))
        if hi - lo <= mpmath.ldexp(mag, 2 - precision):
            return out
        guard *= 2


def field_arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if a.field != b.field:
        raise FieldError("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


RATIONALS = NumberField([-1, 1], (Fraction(0), Fraction(2)))


# --------------------------------------------------------------------------
# rational linear algebra

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def kernel(rows, ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of the right kernel {z : rows . z = 0} over Q."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Iterable) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    vec = [Fraction(x) for x in vec]
    den = reduce(lcm, (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class RationalSubspace:
    """Subspace of R^d spanned by rational vectors (stored primitive integral)."""

    basis: tuple[tuple[int, ...], ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def spanned_by(cls, vectors, ambient_dim: int) -> "RationalSubspace":
        red, _ = rref(vectors) if vectors else ([], [])
        return cls(tuple(primitive(r) for r in red), ambient_dim)

    def contains(self, vec) -> bool:
        return rank(list(self.basis) + [list(vec)]) == self.dim


@dataclass(frozen=True)
class IndependenceReport:
    independent: bool
    relation: Optional[tuple[int, ...]] = None
    rank: int = 0

    def to_json(self):
        return {"independent": self.independent, "rank": self.rank,
                "relation": list(self.relation) if self.relation else None}


def _same_field(elems):
    fields = {e.field for e in elems}
    if len(fields) > 1:
        raise FieldError("elements from different fields")


def q_linear_independence(elems: Sequence[FieldElement]) -> IndependenceReport:
    """Exact Q-linear independence of field elements.

    A dependency is returned as a primitive integer relation ``r`` with
    ``sum(r_i * elems_i) == 0``.
    """
    if not elems:
        raise ValueError("empty element list")
    _same_field(elems)
    # columns = elements, rows = power-basis coordinates
    n = elems[0].field.degree
    mat = [[e.coords[m] for e in elems] for m in range(n)]
    ker = kernel(mat)
    r = len(elems) - len(ker)
    if not ker:
        return IndependenceReport(True, None, r)
    return IndependenceReport(False, primitive(ker[0]), r)


def coordinate_matrix(vec: Sequence[FieldElement]) -> list[list[Fraction]]:
    """(degree x d) matrix whose row m holds the alpha^m coordinates of each entry."""
    _same_field(vec)
    n = vec[0].field.degree
    return [[e.coords[m] for e in vec] for m in range(n)]


def rational_kernel(form: Sequence[FieldElement]) -> RationalSubspace:
    """All rational z with sum(form_i * z_i) == 0 exactly."""
    if all(e.is_zero() for e in form):
        raise ValueError("zero form has no proper kernel")
    d = len(form)
    ker = kernel(coordinate_matrix(form))
    return RationalSubspace(tuple(primitive(v) for v in ker), d)


def minimal_rational_subspace(vectors: Sequence[Sequence[FieldElement]]) -> RationalSubspace:
    """Smallest rational subspace containing every given field vector."""
    if not vectors:
        raise ValueError("no vectors given")
    d = len(vectors[0])
    slices = []
    for v in vectors:
        if len(v) != d:
            raise ValueError("vectors of different lengths")
        slices.extend(coordinate_matrix(v))
    return RationalSubspace.spanned_by(slices, d)


# --------------------------------------------------------------------------
# linear algebra over a number field

def field_det(mat: Sequence[Sequence[FieldElement]]) -> FieldElement:
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    if n <= 4:
        return _laplace_det(mat)
    m = [list(r) for r in mat]
    field = m[0][0].field
    det = field.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            return field.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _laplace_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _laplace_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].field.zero()


def field_inverse(mat: Sequence[Sequence[FieldElement]]) -> list[list[FieldElement]]:
    n = len(mat)
    field = mat[0][0].field
    m = [list(r) + [field.one() if i == j else field.zero() for j in range(n)]
         for i, r in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def field_kernel(rows: Sequence[Sequence[FieldElement]]) -> list[list[FieldElement]]:
    """Basis of {z in K^d : rows . z = 0}."""
    field = rows[0][0].field
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [field.zero()] * ncols
        v[f] = field.one()
        for row, p in zip(m[:r], pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
