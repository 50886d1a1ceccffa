"""Example lattices and exact checks of their defining hypotheses.

* lattices of the order ``Z[alpha]`` in a totally real normal field, whose
  norm form takes nonzero integer values;
* generic forms whose wedge coefficients are all linearly independent over Q;
* forms where the first coefficient of ``l_1 ^ ... ^ l_{d-1}`` vanishes and
  every other wedge is generic, so the dual lattice meets the plane
  ``x_d = 0``;
* forms whose common zero set ``l_1 = ... = l_{d-k} = 0`` spans a rational
  subspace of dimension exactly ``k + l``.

Every verdict is decided in exact arithmetic and failing clauses carry a
certificate (a rational relation, a vanishing minor, or a rank).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import mpmath

from .exact import (
    FieldElement,
    FieldError,
    NumberField,
    field_kernel,
    minimal_rational_subspace,
    nf_create,
    q_linear_independence,
)
from .exponents import spectrum_value
from .lattice import FormsMatrix, Lattice, lattice_from_forms, wedge_coeffs
from .reals import iv_bounds


class ConstructionError(ValueError):
    """No configuration satisfying the requested hypothesis was found."""

    def __init__(self, message: str, report: Optional["HypothesisReport"] = None):
        super().__init__(message)
        self.report = report


@dataclass
class Clause:
    description: str
    passed: bool
    certificate: object = None

    def to_json(self):
        return {"description": self.description, "passed": self.passed,
                "certificate": self.certificate}


@dataclass
class HypothesisReport:
    hypothesis: str
    clauses: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failed(self) -> list:
        return [c for c in self.clauses if not c.passed]

    def to_json(self):
        return {"hypothesis": self.hypothesis, "passed": self.passed,
                "clauses": [c.to_json() for c in self.clauses], "metadata": self.metadata}


def _fmt_rows(rows):
    return "(" + ",".join(str(i + 1) for i in rows) + ")"


def _independence_clause(desc: str, coeffs: Sequence[FieldElement]) -> Clause:
    rep = q_linear_independence(list(coeffs))
    if rep.independent:
        return Clause(desc, True, {"rank": rep.rank})
    return Clause(desc, False, {"relation": list(rep.relation), "rank": rep.rank})


# --------------------------------------------------------------------------
# totally real fields

def conjugates(fld: NumberField) -> list:
    """All real conjugates of the generator as elements of the field, in increasing order.

    Each conjugate is found by an integer relation search and then verified
    exactly (it is a root of the minimal polynomial and its embedding lies in
    the isolating interval of the corresponding root).  Raises FieldError when
    some real root is not a polynomial in the generator.
    """
    n = fld.degree
    roots = fld.real_roots(bits=400)
    out = []
    for lo, hi in roots:
        found = None
        for dps in (60, 120, 240):
            with mpmath.workdps(dps):
                r = (mpmath.mpf(lo.numerator) / lo.denominator
                     + mpmath.mpf(hi.numerator) / hi.denominator) / 2
                a = _designated_mp(fld, dps)
                vec = [r] + [a ** j for j in range(n)]
                rel = mpmath.pslq(vec, maxcoeff=10 ** (dps // 4), maxsteps=10 ** 5)
            if rel is None or rel[0] == 0:
                continue
            cand = fld.element([Fraction(-c, rel[0]) for c in rel[1:]])
            if _is_root(fld, cand) and _embeds_into(cand, lo, hi):
                found = cand
                break
        if found is None:
            raise FieldError("a real conjugate of the generator is not in the field "
                             "(the field is not normal)")
        out.append(found)
    if len({c.coords for c in out}) != len(out):
        raise FieldError("conjugate search produced duplicates")
    return out


def _designated_mp(fld: NumberField, dps: int):
    lo, hi = fld.isolating_interval(int(dps * 3.4) + 16)
    return (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2


def _is_root(fld: NumberField, x: FieldElement) -> bool:
    acc = fld.zero()
    for c in reversed(fld.minpoly):
        acc = acc * x + c
    return acc.is_zero()


def _embeds_into(x: FieldElement, lo: Fraction, hi: Fraction) -> bool:
    """The enclosure of x meets [lo, hi] (the roots are isolated, so this identifies the root)."""
    a, b = iv_bounds(x.embed(256))
    with mpmath.workprec(300):
        return b >= mpmath.mpf(lo.numerator) / lo.denominator and \
            a <= mpmath.mpf(hi.numerator) / hi.denominator


def totally_real_lattice(fld: NumberField) -> Lattice:
    """Lattice of Z[alpha]: row i is (s_i(1), s_i(alpha), ..., s_i(alpha^(d-1)))."""
    if fld.degree < 3:
        raise FieldError("degree must be at least 3")
    if not fld.is_totally_real():
        raise FieldError(f"{list(fld.minpoly)} has {fld.real_root_count} real roots "
                         f"out of {fld.degree}; the field is not totally real")
    rows = []
    for s in conjugates(fld):
        rows.append([s ** j for j in range(fld.degree)])
    return lattice_from_forms(FormsMatrix.from_rows(rows, fld))


def norm_form(forms: FormsMatrix) -> dict:
    """Coefficients of prod_i l_i(z) as a polynomial in z: {exponent tuple: field element}."""
    d = forms.d
    poly = {tuple([0] * d): forms.field.one()}
    for row in forms.rows:
        nxt = {}
        for mono, c in poly.items():
            for j, a in enumerate(row):
                if a.is_zero():
                    continue
                m = list(mono)
                m[j] += 1
                m = tuple(m)
                nxt[m] = nxt.get(m, forms.field.zero()) + c * a
        poly = {m: c for m, c in nxt.items() if not c.is_zero()}
    return poly


def integer_norm_form(forms: FormsMatrix) -> dict:
    """The norm form with integer coefficients, or FieldError if a coefficient is not an integer."""
    out = {}
    for m, c in norm_form(forms).items():
        if not c.is_rational() or c.as_fraction().denominator != 1:
            raise FieldError(f"norm form coefficient of {m} is {c}, not a rational integer")
        out[m] = int(c.as_fraction())
    return out


# --------------------------------------------------------------------------
# wedge hypotheses

def _all_tuples(d: int):
    for k in range(1, d + 1):
        yield from combinations(range(d), k)


def verify_corollary1_hypothesis(forms: FormsMatrix) -> HypothesisReport:
    """Every wedge l_{i1} ^ ... ^ l_{ik} has Q-linearly independent coefficients."""
    rep = HypothesisReport("all wedge coefficients independent over Q")
    for rows in _all_tuples(forms.d):
        g = wedge_coeffs(forms, rows)
        rep.clauses.append(_independence_clause(
            f"coefficients of wedge {_fmt_rows(rows)} independent over Q", g.coords))
    return rep


def verify_theorem4_hypothesis(forms: FormsMatrix) -> HypothesisReport:
    """First coefficient of l_1 ^ ... ^ l_{d-1} zero, all other wedge data generic."""
    d = forms.d
    rep = HypothesisReport("first coefficient of l_1^...^l_{d-1} zero, the rest generic")
    special = tuple(range(d - 1))
    g = wedge_coeffs(forms, special)
    first = g.first()
    rep.clauses.append(Clause(
        f"first coefficient of wedge {_fmt_rows(special)} is zero", first.is_zero(),
        {"minor": first.to_json(), "columns": [c + 1 for c in g.subsets[0]]}))
    rep.clauses.append(_independence_clause(
        f"remaining coefficients of wedge {_fmt_rows(special)} independent over Q", g.coords[1:]))
    for rows in _all_tuples(d):
        if rows == special:
            continue
        gw = wedge_coeffs(forms, rows)
        rep.clauses.append(_independence_clause(
            f"coefficients of wedge {_fmt_rows(rows)} independent over Q", gw.coords))
    return rep


def verify_spectrum_hypothesis(forms: FormsMatrix, k: int, l: int) -> HypothesisReport:
    """{l_1 = ... = l_{d-k} = 0} is k-dimensional with rational closure of dimension k + l."""
    d = forms.d
    value = spectrum_value(d, k, l)
    rep = HypothesisReport(f"zero set of the first {d - k} forms has rational closure of "
                           f"dimension {k + l}",
                           metadata={"d": d, "k": k, "l": l,
                                     "expected_omega": f"{value.numerator}/{value.denominator}",
                                     "expected_omega_certified": False})
    S = field_kernel([list(r) for r in forms.rows[: d - k]])
    rep.clauses.append(Clause(f"the first {d - k} forms cut out a {k}-dimensional subspace",
                              len(S) == k, {"dimension": len(S)}))
    if not S:
        return rep
    W = minimal_rational_subspace(S)
    rep.clauses.append(Clause(
        f"smallest rational subspace containing it has dimension {k + l}",
        W.dim == k + l, {"dimension": W.dim, "basis": [list(b) for b in W.basis]}))
    return rep


# --------------------------------------------------------------------------
# shipped configurations

def _pow_field(n: int) -> NumberField:
    """Q(2^(1/n)) with the real positive root designated."""
    return nf_create([-2] + [0] * (n - 1) + [1], (Fraction(1), Fraction(2)))


THEOREM4_DEGREE = {3: 5, 4: 7, 5: 11}

# d = 3: alpha = 2^(1/5); l_1 = (1, a, a^2), l_2 = (a, a^2, a^4 + a), l_3 = (a^3, 1, a).
# Entries are exponent lists: [e1, e2] means a^e1 + a^e2.
THEOREM4_RECIPE_3 = [[[0], [1], [2]], [[1], [2], [4, 1]], [[3], [0], [1]]]

# replacement third rows tried in order if the recipe is rejected
THEOREM4_CATALOG_3 = [
    [[3], [0], [1]], [[3], [0], [2]], [[4], [0], [1]], [[3], [1], [0]],
    [[2, 3], [0], [4]], [[3], [4], [0]], [[4], [3], [0, 2]],
]

# generic d = 3 forms over Q(2^(1/5)) whose every wedge is generic
COROLLARY1_RECIPE_3 = [[[0], [1], [2]], [[1], [4], [0, 2]], [[4], [1], [2, 3]]]


def _entry(fld: NumberField, exps) -> FieldElement:
    a = fld.gen()
    out = fld.zero()
    for e in exps:
        out = out + a ** e
    return out


def forms_from_recipe(fld: NumberField, recipe) -> FormsMatrix:
    return FormsMatrix.from_rows([[_entry(fld, e) for e in row] for row in recipe], fld)


def corollary1_forms() -> FormsMatrix:
    return forms_from_recipe(_pow_field(5), COROLLARY1_RECIPE_3)


def _generic_rows(fld: NumberField, d: int, count: int, seed: int):
    """Deterministic pseudo-random rows of power sums of the generator."""
    import numpy as np

    rng = np.random.default_rng(seed)
    n = fld.degree
    rows = []
    for _ in range(count):
        row = []
        for _ in range(d):
            k = int(rng.integers(1, 3))
            exps = [int(v) for v in rng.choice(n, size=k, replace=False)]
            coef = [int(v) for v in rng.integers(1, 4, size=k)]
            row.append(sum((c * fld.gen() ** e for c, e in zip(coef, exps)), fld.zero()))
        rows.append(row)
    return rows


def _force_first_minor_zero(fld: NumberField, rows: list, d: int) -> Optional[list]:
    """Adjust entry (d-2, d-2) so the minor on rows and columns 0..d-2 vanishes."""
    from .exact import field_det

    top = [list(r[: d - 1]) for r in rows[: d - 1]]
    zero_entry = [r[:] for r in top]
    zero_entry[d - 2][d - 2] = fld.zero()
    b = field_det(zero_entry)
    # the minor is affine in the adjusted entry with slope equal to its cofactor
    cof = field_det([r[: d - 2] for r in top[: d - 2]])
    if cof.is_zero():
        return None
    rows = [r[:] for r in rows]
    rows[d - 2][d - 2] = -b / cof
    return rows


def theorem4_lattice(d: int = 3, config: Optional[FormsMatrix] = None,
                     max_tries: int = 200) -> tuple:
    """(lattice, report) for forms meeting the hypothesis with the vanishing first coefficient."""
    if d < 3:
        raise ValueError("d must be at least 3")
    if config is not None:
        rep = verify_theorem4_hypothesis(config)
        if not rep.passed:
            raise ConstructionError(_failure_text(rep), rep)
        return lattice_from_forms(config), rep
    tried = []
    if d == 3:
        fld = _pow_field(THEOREM4_DEGREE[3])
        base = THEOREM4_RECIPE_3
        for third in THEOREM4_CATALOG_3:
            forms = forms_from_recipe(fld, base[:2] + [third])
            if forms.det.is_zero():
                continue
            rep = verify_theorem4_hypothesis(forms)
            rep.metadata["recipe"] = base[:2] + [third]
            if rep.passed:
                return lattice_from_forms(forms), rep
            tried.append(rep)
    else:
        fld = _pow_field(THEOREM4_DEGREE.get(d, 11))
        for seed in range(max_tries):
            rows = _generic_rows(fld, d, d, seed)
            rows = _force_first_minor_zero(fld, rows, d)
            if rows is None:
                continue
            forms = FormsMatrix.from_rows(rows, fld)
            if forms.det.is_zero():
                continue
            rep = verify_theorem4_hypothesis(forms)
            rep.metadata["generator_seed"] = seed
            if rep.passed:
                return lattice_from_forms(forms), rep
            tried.append(rep)
    last = tried[-1] if tried else HypothesisReport("no candidate configurations")
    raise ConstructionError(f"no passing configuration among {len(tried)} candidates", last)


def _failure_text(rep: HypothesisReport) -> str:
    return "; ".join(f"{c.description}: {c.certificate}" for c in rep.failed())


def spectrum_forms(d: int, k: int, l: int, seed: int = 0) -> FormsMatrix:
    """Forms whose first d-k rows vanish on span(s_1..s_k), s_j = e_j + sum_m a^((j-1)l+m) e_{k+m}."""
    spectrum_value(d, k, l)   # range check
    n = max(THEOREM4_DEGREE.get(d, 5), k * l + 1)
    if n > 12:
        raise ConstructionError(f"degree {n} exceeds the supported maximum")
    fld = _pow_field(n)
    a = fld.gen()
    S = []
    for j in range(k):
        s = [fld.zero() for _ in range(d)]
        s[j] = fld.one()
        for m in range(1, l + 1):
            s[k + m - 1] = s[k + m - 1] + a ** ((j * l) + m)
        S.append(s)
    ann = field_kernel(S)                       # d-k vectors y with <y, s_j> = 0
    extra = _generic_rows(fld, d, 64, seed)
    rows = [list(y) for y in ann]
    for r in extra:
        if len(rows) == d:
            break
        if _rank(rows + [r]) == len(rows) + 1:
            rows.append(r)
    if len(rows) != d:
        raise ConstructionError("could not complete the forms to an invertible matrix")
    return FormsMatrix.from_rows(rows, fld)


def _rank(rows) -> int:
    return len(rows[0]) - len(field_kernel(rows))


def spectrum_lattice(d: int, k: int, l: int, config: Optional[FormsMatrix] = None) -> tuple:
    """(lattice, report) whose first d-k forms cut out a subspace of rational closure k+l."""
    forms = config if config is not None else spectrum_forms(d, k, l)
    rep = verify_spectrum_hypothesis(forms, k, l)
    if not rep.passed:
        raise ConstructionError(_failure_text(rep), rep)
    return lattice_from_forms(forms), rep


def shipped_examples() -> dict:
    """Name -> lattice for the example lattices built by this module."""
    cubic = nf_create([-1, -3, 0, 1], (Fraction(1), Fraction(2)))
    L4, _ = theorem4_lattice(3)
    return {
        "totally_real_cubic": totally_real_lattice(cubic),
        "corollary1_d3": lattice_from_forms(corollary1_forms()),
        "theorem4_d3": L4,
        "spectrum_3_1_1": spectrum_lattice(3, 1, 1)[0],
        "spectrum_4_1_2": spectrum_lattice(4, 1, 2)[0],
    }
