"""Lattices given by linear forms with coefficients in a real number field.

A lattice is ``t * s * {A z : z in Z^d}`` where ``A`` is an invertible forms
matrix over a number field (row ``i`` holds the coefficients of the ``i``-th
form), ``s`` is a positive rational scale and ``t = |b|^(1/n)`` an optional
irrational homothety used for determinant normalisation.  All the defining
data is exact; embedded coordinates are certified intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .exact import (
    FieldElement,
    FieldError,
    NumberField,
    RATIONALS,
    field_det,
    field_inverse,
)
from .reals import CReal, cmax, cprod, compare, default_precision


class SingularFormsError(ValueError):
    """The forms matrix is not invertible."""


class DomainError(ValueError):
    """An exponent was requested for a point with sup-norm at most one."""


def _coerce_row(row, fld: NumberField):
    out = []
    for v in row:
        if isinstance(v, FieldElement):
            if v.field != fld:
                raise FieldError("forms matrix mixes number fields")
            out.append(v)
        else:
            out.append(fld(v))
    return tuple(out)


@dataclass(frozen=True)
class FormsMatrix:
    """``d`` linear forms in ``d`` variables; ``rows[i][j]`` is the j-th coefficient of form i."""

    rows: tuple

    @classmethod
    def from_rows(cls, rows, fld: Optional[NumberField] = None) -> "FormsMatrix":
        rows = [list(r) for r in rows]
        if fld is None:
            fld = next((v.field for r in rows for v in r if isinstance(v, FieldElement)), RATIONALS)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("forms matrix must be square and nonempty")
        return cls(tuple(_coerce_row(r, fld) for r in rows))

    @classmethod
    def identity(cls, d: int) -> "FormsMatrix":
        return cls.from_rows([[int(i == j) for j in range(d)] for i in range(d)])

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> NumberField:
        return self.rows[0][0].field

    @cached_property
    def det(self) -> FieldElement:
        return field_det([list(r) for r in self.rows])

    @cached_property
    def inverse(self) -> tuple:
        if self.det.is_zero():
            raise SingularFormsError("forms matrix is singular")
        return tuple(tuple(r) for r in field_inverse([list(r) for r in self.rows]))

    def inverse_transpose(self) -> "FormsMatrix":
        inv = self.inverse
        d = self.d
        return FormsMatrix(tuple(tuple(inv[j][i] for j in range(d)) for i in range(d)))

    def transpose(self) -> "FormsMatrix":
        d = self.d
        return FormsMatrix(tuple(tuple(self.rows[j][i] for j in range(d)) for i in range(d)))

    def evaluate(self, i: int, z: Sequence[int]) -> FieldElement:
        acc = self.field.zero()
        for c, zj in zip(self.rows[i], z):
            if zj:
                acc = acc + c * int(zj)
        return acc

    def to_json(self):
        return [[e.to_json() for e in r] for r in self.rows]


@dataclass(frozen=True)
class Lattice:
    """``factor * scale * {forms . z : z in Z^d}`` with ``factor = |homothety[0]|^(1/homothety[1])``."""

    forms: FormsMatrix
    scale: Fraction = Fraction(1)
    homothety: Optional[tuple] = None

    @property
    def d(self) -> int:
        return self.forms.d

    @property
    def field(self) -> NumberField:
        return self.forms.field

    @cached_property
    def factor(self) -> CReal:
        if self.homothety is None:
            return CReal.rational(1)
        base, n = self.homothety
        return abs(base.as_creal()) ** Fraction(1, n)

    @cached_property
    def multiplier(self) -> CReal:
        return self.factor * self.scale

    @cached_property
    def det_exact(self) -> FieldElement:
        """Determinant of ``scale * forms`` (the homothety factor excluded)."""
        return self.forms.det * self.scale ** self.d

    @cached_property
    def det_abs(self) -> CReal:
        return abs(self.det_exact.as_creal()) * self.factor ** self.d

    def entry(self, i: int, j: int) -> CReal:
        return self.multiplier * self.forms.rows[i][j].as_creal()

    @cached_property
    def basis_float(self) -> np.ndarray:
        d = self.d
        return np.array([[float(self.entry(i, j)) for j in range(d)] for i in range(d)])

    @cached_property
    def inverse_float(self) -> np.ndarray:
        d = self.d
        inv = self.forms.inverse
        m = 1 / self.multiplier
        return np.array([[float(m * inv[i][j].as_creal()) for j in range(d)] for i in range(d)])

    @cached_property
    def _coordinate_matrices(self):
        # integer matrices C_i (degree x d) with l_i(z) == 0 iff C_i z == 0
        out = []
        for row in self.forms.rows:
            n = row[0].field.degree
            mat = []
            for m in range(n):
                vals = [e.coords[m] for e in row]
                den = math.lcm(*(v.denominator for v in vals))
                mat.append([int(v * den) for v in vals])
            out.append(mat)
        return out

    def value(self, z: Sequence[int], i: int) -> CReal:
        """Certified i-th coordinate of the lattice point with preimage z."""
        return self.multiplier * self.forms.evaluate(i, z).as_creal()

    def is_zero_coordinate(self, z: Sequence[int], i: int) -> bool:
        return all(sum(c * int(zj) for c, zj in zip(row, z)) == 0
                   for row in self._coordinate_matrices[i])

    def zero_coords(self, z: Sequence[int]) -> frozenset:
        return frozenset(i for i in range(self.d) if self.is_zero_coordinate(z, i))

    def point(self, z: Sequence[int], prec: Optional[int] = None) -> "LatticePoint":
        z = tuple(int(v) for v in z)
        coords = [self.value(z, i) for i in range(self.d)]
        xs = tuple(float(c) for c in coords)
        zeros = self.zero_coords(z)
        sup = max(abs(v) for v in xs)
        pi = 0.0 if zeros else math.prod(abs(v) for v in xs) ** (1.0 / self.d)
        return LatticePoint(z=z, x=xs, sup_norm=sup, pi=pi,
                            exact_zero_coords=zeros, lattice=self)

    def to_json(self):
        data = {"dim": self.d, "field": self.field.to_json(),
                "rows": self.forms.to_json(), "scale": str(self.scale)}
        if self.homothety is not None:
            data["homothety"] = {"base": self.homothety[0].to_json(), "root": self.homothety[1]}
        return data

    @classmethod
    def from_json(cls, data) -> "Lattice":
        return lattice_from_json(data)


@dataclass(frozen=True)
class LatticePoint:
    """A lattice point with its integer preimage and certified coordinates."""

    z: tuple
    x: tuple
    sup_norm: float
    pi: float
    exact_zero_coords: frozenset
    lattice: Lattice = field(compare=False, repr=False)

    @property
    def d(self) -> int:
        return len(self.z)

    def coord(self, i: int) -> CReal:
        return self.lattice.value(self.z, i)

    def coords(self) -> list:
        return [self.coord(i) for i in range(self.d)]

    def sup_creal(self) -> CReal:
        return cmax(*(abs(c) for c in self.coords()))

    def product_creal(self) -> CReal:
        if self.exact_zero_coords:
            return CReal.rational(0)
        exact = self._exact_product()
        if exact is not None:
            return CReal.rational(abs(exact))
        return abs(cprod(self.coords()))

    def _exact_product(self) -> Optional[Fraction]:
        # the product of the forms is often rational (a norm), e.g. 1 at a unit
        L = self.lattice
        acc = L.field.one() * (L.scale ** self.d)
        for i in range(self.d):
            acc = acc * L.forms.evaluate(i, self.z)
        if L.homothety is not None:
            base, n = L.homothety
            if self.d % n:
                return None
            acc = acc * base ** (self.d // n)
        return acc.as_fraction() if acc.is_rational() else None

    def pi_creal(self) -> CReal:
        if self.exact_zero_coords:
            return CReal.rational(0)
        return self.product_creal() ** Fraction(1, self.d)

    def is_zero(self) -> bool:
        return not any(self.z)


# --------------------------------------------------------------------------
# operations

def lattice_from_forms(forms: FormsMatrix, scale=Fraction(1)) -> Lattice:
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if forms.det.is_zero():
        raise SingularFormsError("forms matrix is singular")
    return Lattice(forms, scale)


def dual(L: Lattice) -> Lattice:
    """Dual lattice: inverse-transpose forms, reciprocal scale and homothety."""
    hom = None
    if L.homothety is not None:
        base, n = L.homothety
        hom = (base.inverse(), n)
    return Lattice(L.forms.inverse_transpose(), 1 / L.scale, hom)


def normalize_det(L: Lattice) -> Lattice:
    """Homothetic copy with |det| = 1; exact forms and scale are kept."""
    D = L.det_exact
    if D == 1 or D == -1:
        return Lattice(L.forms, L.scale, None)
    return Lattice(L.forms, L.scale, (D.inverse(), L.d))


def pi_value(x: Sequence) -> CReal:
    """Geometric mean of |x_i|, as a certified real."""
    vals = [CReal.coerce(v) for v in x]
    if not vals:
        raise ValueError("empty vector")
    return abs(cprod(vals)) ** Fraction(1, len(vals))


def gamma(p: LatticePoint, prec: Optional[int] = None) -> float:
    """Exponent with Pi(x) = |x|^(-gamma); ``math.inf`` for an exact zero coordinate."""
    prec = prec or default_precision()
    sup = p.sup_creal()
    if compare(sup, 1, prec) in (-1, 0, None):
        raise DomainError(f"sup-norm of {p.z} is not certifiably > 1")
    if p.exact_zero_coords:
        return math.inf
    g = gamma_creal(p)
    return float(g)


def gamma_creal(p: LatticePoint) -> CReal:
    pi = p.pi_creal()
    if pi.exact == 1:
        return CReal.rational(0)
    return -pi.log() / p.sup_creal().log()


# --------------------------------------------------------------------------
# Grassmann coordinates

@dataclass(frozen=True)
class GrassmannCoords:
    """Coordinates of a wedge of forms, indexed by lexicographic column subsets."""

    k: int
    row_indices: tuple
    subsets: tuple
    coords: tuple

    def __getitem__(self, subset) -> FieldElement:
        return self.coords[self.subsets.index(tuple(subset))]

    def first(self) -> FieldElement:
        return self.coords[0]

    def to_json(self):
        return {"k": self.k, "rows": list(self.row_indices),
                "subsets": [list(s) for s in self.subsets],
                "coords": [c.to_json() for c in self.coords]}


def _minor(forms: FormsMatrix, rows, cols) -> FieldElement:
    return field_det([[forms.rows[i][j] for j in cols] for i in rows])


def wedge_coeffs(forms: FormsMatrix, rows: Sequence[int]) -> GrassmannCoords:
    """All k x k minors of the selected rows (0-based), columns in lexicographic order."""
    rows = tuple(rows)
    d = forms.d
    k = len(rows)
    if not 1 <= k <= d or list(rows) != sorted(set(rows)) or rows[0] < 0 or rows[-1] >= d:
        raise ValueError(f"bad row index tuple {rows} for d={d}")
    subsets = tuple(combinations(range(d), k))
    return GrassmannCoords(k, rows, subsets, tuple(_minor(forms, rows, s) for s in subsets))


def _complement(idx, d):
    return tuple(i for i in range(d) if i not in idx)


@dataclass(frozen=True)
class WedgeDuality:
    """Primal wedge, dual complementary wedge and the identity linking them.

    For every column subset ``S``: ``primal[S] == sign[S] * det * dual[complement(S)]``.
    """

    primal: GrassmannCoords
    dual: GrassmannCoords
    det: FieldElement
    signs: dict

    def holds(self) -> bool:
        d = len(self.primal.row_indices) + len(self.dual.row_indices)
        for s in self.primal.subsets:
            rhs_core = self.dual[_complement(s, d)] if self.dual.k else self.det.field.one()
            if self.primal[s] != self.det * rhs_core * self.signs[s]:
                return False
        return True


def complementary_dual_wedge(forms: FormsMatrix, rows: Sequence[int]) -> WedgeDuality:
    rows = tuple(rows)
    d = forms.d
    if forms.det.is_zero():
        raise SingularFormsError("forms matrix is singular")
    primal = wedge_coeffs(forms, rows)
    comp = _complement(rows, d)
    dual_forms = forms.inverse_transpose()
    if comp:
        dw = wedge_coeffs(dual_forms, comp)
    else:
        dw = GrassmannCoords(0, (), ((),), (forms.field.one(),))
    signs = {}
    for s in primal.subsets:
        parity = (sum(rows) + sum(s)) % 2
        signs[s] = -1 if parity else 1
    return WedgeDuality(primal, dw, forms.det, signs)


def equivalence_constants(L: Lattice) -> tuple:
    """(m, M) with m*max|l_i(z)| <= |z| <= M*max|l_i(z)| for every integer z.

    m = 1/||B||_inf and M = ||B^-1||_inf for the embedded basis B.
    """
    d = L.d
    row_sums = [sum((abs(L.entry(i, j)) for j in range(d)), CReal.rational(0)) for i in range(d)]
    inv = L.forms.inverse
    minv = 1 / L.multiplier
    inv_sums = [sum((abs(minv * inv[i][j].as_creal()) for j in range(d)), CReal.rational(0))
                for i in range(d)]
    return 1 / cmax(*row_sums), cmax(*inv_sums)


# --------------------------------------------------------------------------
# JSON

class LatticeFormatError(ValueError):
    """Malformed lattice file."""


def lattice_from_json(data) -> Lattice:
    from .exact import NumberField

    try:
        d = int(data["dim"])
        fld = NumberField.from_json(data["field"])
        rows = data["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeFormatError(f"missing or invalid field: {exc}") from None
    if len(rows) != d:
        raise LatticeFormatError(f"'rows' has {len(rows)} entries, expected dim={d}")
    parsed = []
    for i, r in enumerate(rows):
        if len(r) != d:
            raise LatticeFormatError(f"rows[{i}] has {len(r)} entries, expected {d}")
        prow = []
        for j, e in enumerate(r):
            try:
                coords = [Fraction(c) for c in (e if isinstance(e, list) else [e])]
                prow.append(fld.element(coords))
            except (ValueError, ZeroDivisionError, FieldError) as exc:
                raise LatticeFormatError(f"rows[{i}][{j}]: {exc}") from None
        parsed.append(prow)
    try:
        scale = Fraction(data.get("scale", "1"))
    except (ValueError, ZeroDivisionError) as exc:
        raise LatticeFormatError(f"scale: {exc}") from None
    forms = FormsMatrix(tuple(tuple(r) for r in parsed))
    try:
        L = lattice_from_forms(forms, scale)
    except (SingularFormsError, ValueError) as exc:
        raise LatticeFormatError(str(exc)) from None
    hom = data.get("homothety")
    if hom is not None:
        base = fld.element([Fraction(c) for c in hom["base"]])
        L = Lattice(L.forms, L.scale, (base, int(hom["root"])))
    return L
