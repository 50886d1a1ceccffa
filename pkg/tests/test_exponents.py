import csv
import io
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from latexp.enumeration import EnumerationBudget, RecordSearch, record_points
from latexp.exact import nf_create
from latexp.exponents import (
    classical_exponent,
    estimate_omega,
    spectrum_table,
    spectrum_table_csv,
    spectrum_value,
    transference_lower_bound,
)
from latexp.lattice import FormsMatrix, lattice_from_forms

SQRT2 = nf_create([-2, 0, 1], (1, 2)).gen()


@given(st.integers(3, 12),
       st.fractions(min_value=0, max_value=1000, max_denominator=50),
       st.fractions(min_value=0, max_value=1000, max_denominator=50))
def test_transference_monotone_and_bounded(d, a, b):
    lo, hi = sorted((a, b))
    f_lo, f_hi = transference_lower_bound(lo, d), transference_lower_bound(hi, d)
    assert f_lo <= f_hi < Fraction(1, d * (d - 2))
    if lo < hi:
        assert f_lo < f_hi


def test_transference_values():
    assert transference_lower_bound(0, 3) == 0
    assert transference_lower_bound(Fraction(1, 3), 4) == Fraction(1, 3) / (9 + Fraction(8, 3))
    assert transference_lower_bound(math.inf, 5) == Fraction(1, 15)
    assert transference_lower_bound(2.0, 3) == pytest.approx(2 / 10)
    with pytest.raises(ValueError):
        transference_lower_bound(-1, 3)
    with pytest.raises(ValueError):
        transference_lower_bound(1, 2)


def test_spectrum_table():
    rows = list(csv.reader(io.StringIO(spectrum_table_csv(5))))
    assert rows[0] == ["d", "k", "l", "value_num", "value_den"]
    assert rows[1] == ["3", "1", "1", "1", "3"]
    # d=4: (k,l) in {(1,1),(1,2),(2,1)}; d=5 adds six more
    assert len(rows) - 1 == 1 + 3 + 6
    for d, k, l, v in spectrum_table(7):
        assert v == Fraction(k * (d - k - l), d * l)
    assert spectrum_value(4, 2, 1) == Fraction(1, 2)
    with pytest.raises(ValueError):
        spectrum_value(4, 3, 1)
    with pytest.raises(ValueError):
        spectrum_value(5, 2, 3)


def _brute_records(theta, x_max, multiplicative=False):
    """Record z_1 values from a high-precision scan of every q."""
    mpmath.mp.dps = 50
    th = [mpmath.sqrt(2) if t is SQRT2 else mpmath.mpf(t) for t in theta]
    best = mpmath.inf
    out = []
    for q in range(1, int(x_max) + 1):
        dist = [abs(q * t - mpmath.nint(q * t)) for t in th]
        val = (mpmath.fprod(dist) ** (mpmath.mpf(1) / len(th)) if multiplicative
               else max(dist))
        if val < best:
            best = val
            out.append(q)
    return out


def test_classical_sqrt2_matches_oracle():
    est = classical_exponent([SQRT2], 5000)
    oracle = _brute_records([SQRT2], 5000)
    # records with |z| = 1 are dropped since ln|z| = 0
    sizes = [float(max(q, round(q * math.sqrt(2)))) for q in oracle]
    assert [s for s, _ in est.trajectory] == [s for s in sizes if s > 1]
    # the denominators are the Pell convergents 1, 2, 5, 12, 29, ...
    assert oracle[:6] == [1, 2, 5, 12, 29, 70]
    assert est.gamma_max >= 1


def test_classical_rational_certificate():
    est = classical_exponent([Fraction(1, 2), Fraction(2, 3)], 100)
    assert math.isinf(est.gamma_max)
    assert est.certificate.z == (6, -3, -4)
    with pytest.raises(ValueError, match="no approximations"):
        classical_exponent([Fraction(1, 7)], 5)     # solution q=7 lies beyond range


def test_classical_multiplicative():
    est = classical_exponent([SQRT2, Fraction(1, 3)], 50, multiplicative=True)
    assert math.isinf(est.gamma_max) and est.certificate.z[0] == 3
    sqrt3 = nf_create([-3, 0, 1], (1, 2)).gen()
    est = classical_exponent([SQRT2, sqrt3], 300, multiplicative=True)
    assert est.records_used >= 1 and est.gamma_max > 0


def test_estimate_omega_tail_and_certificate():
    fld = nf_create([-2, 0, 0, 1], (1, 2))
    a = fld.gen()
    L = lattice_from_forms(FormsMatrix.from_rows([[1, a, a * a], [a, 1, 0], [0, a, 1]], fld))
    rs = record_points(L, EnumerationBudget(2000))
    full = estimate_omega(rs)
    half = estimate_omega(rs, tail_fraction=0.5)
    assert full.gamma_max == max(r.gamma for r in rs.records)
    assert half.gamma_max <= full.gamma_max
    assert half.records_used <= full.records_used
    assert estimate_omega(rs.records).gamma_max == full.gamma_max
    with pytest.raises(ValueError):
        estimate_omega(rs, tail_fraction=0)
    with pytest.raises(ValueError):
        estimate_omega(RecordSearch([], True, 10.0, None, 0))
    Z3 = lattice_from_forms(FormsMatrix.identity(3))
    est = estimate_omega(record_points(Z3, EnumerationBudget(10)))
    assert math.isinf(est.gamma_max) and est.to_json()["gamma_max"] == "inf"


def test_estimate_is_monotone_in_range():
    fld = nf_create([-2, 0, 0, 1], (1, 2))
    a = fld.gen()
    L = lattice_from_forms(FormsMatrix.from_rows([[1, a, a * a], [a, 1, 0], [0, a, 1]], fld))
    vals = [estimate_omega(record_points(L, EnumerationBudget(x))).gamma_max
            for x in (10, 100, 1000)]
    assert vals == sorted(vals)
