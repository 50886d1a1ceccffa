from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from latexp.exact import (
    FieldError,
    NumberField,
    field_det,
    field_inverse,
    field_kernel,
    minimal_rational_subspace,
    nf_create,
    q_linear_independence,
    rational_kernel,
)
from latexp.reals import iv_bounds

X = sympy.Symbol("x")
CUBIC = nf_create([-2, 0, 0, 1], (1, 2))          # Q(2^(1/3))
TR_CUBIC = nf_create([-1, -3, 0, 1], (1, 2))       # totally real, largest root of x^3 - 3x - 1

coords3 = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12),
                   min_size=3, max_size=3)


def to_sympy(a):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in enumerate(a.coords))


def reduce_mod(expr, fld: NumberField):
    f = sum(int(c) * X ** i for i, c in enumerate(fld.minpoly))
    return sympy.Poly(sympy.rem(sympy.expand(expr), f, X), X)


def same(a, expr) -> bool:
    return sympy.Poly(to_sympy(a), X) == reduce_mod(expr, a.field)


@settings(max_examples=60)
@given(coords3, coords3)
def test_field_arithmetic_matches_sympy(u, v):
    a, b = CUBIC.element(u), CUBIC.element(v)
    assert same(a + b, to_sympy(a) + to_sympy(b))
    assert same(a * b, to_sympy(a) * to_sympy(b))
    if not b.is_zero():
        assert (a / b) * b == a
        assert b * b.inverse() == CUBIC.one()


@settings(max_examples=40)
@given(coords3)
def test_norm_is_resultant(u):
    a = CUBIC.element(u)
    f = sympy.Poly(X ** 3 - 2, X)
    g = sympy.Poly(to_sympy(a), X)
    assert a.norm() == Fraction(str(sympy.resultant(f, g)))


@settings(max_examples=40)
@given(coords3)
def test_embedding_encloses_numeric_value(u):
    a = CUBIC.element(u)
    ref = sum(float(c) * 2 ** (i / 3) for i, c in enumerate(u))
    lo, hi = iv_bounds(a.embed(128))
    assert float(lo) - 1e-12 <= ref <= float(hi) + 1e-12
    if not a.is_zero():
        assert a.sign() == (1 if ref > 0 else -1)


def test_field_construction_errors():
    with pytest.raises(FieldError):
        nf_create([-4, 0, 1], (1, 3))            # x^2 - 4 is reducible
    with pytest.raises(FieldError):
        nf_create([-2, 0, 1], (-2, 2))           # interval holds two roots
    with pytest.raises(FieldError):
        nf_create([-2, 0, 1], (2, 3))            # and here none


def test_totally_real_and_root_intervals():
    assert TR_CUBIC.is_totally_real()
    assert not CUBIC.is_totally_real()
    roots = sorted(float(r) for r in sympy.real_roots(X ** 3 - 3 * X - 1))
    assert float(TR_CUBIC.gen().as_creal()) == pytest.approx(roots[-1], rel=1e-15)
    lo, hi = TR_CUBIC.isolating_interval(200)
    assert hi - lo <= Fraction(1, 2 ** 200)


def test_json_round_trip():
    assert NumberField.from_json(CUBIC.to_json()) == CUBIC


def test_independence_and_relations():
    a = CUBIC.gen()
    rep = q_linear_independence([CUBIC.one(), a, a * a])
    assert rep.independent and rep.rank == 3
    rep = q_linear_independence([CUBIC.one(), a, 3 * a - 2])
    assert not rep.independent
    r = rep.relation
    assert r[0] * CUBIC.one() + r[1] * a + r[2] * (3 * a - 2) == CUBIC.zero()


def test_rational_kernel_and_minimal_subspace():
    a = CUBIC.gen()
    ker = rational_kernel([CUBIC.one(), a, -CUBIC.one()])
    assert ker.basis == ((1, 0, 1),)
    # (1, a, a^2) spans all of Q^3, (1, 1+a, a) only a plane
    assert minimal_rational_subspace([[CUBIC.one(), a, a * a]]).dim == 3
    assert minimal_rational_subspace([[CUBIC.one(), 1 + a, a]]).dim == 2


def _random_matrix(seed: int, n: int):
    import random

    rnd = random.Random(seed)
    return [[CUBIC.element([Fraction(rnd.randint(-3, 3), rnd.randint(1, 3)) for _ in range(3)])
             for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("seed", range(5))
def test_det_and_inverse_against_sympy(seed):
    m = _random_matrix(seed, 3)
    det = field_det(m)
    ref = sympy.Matrix([[to_sympy(e) for e in row] for row in m]).det()
    assert same(det, ref)
    if not det.is_zero():
        inv = field_inverse(m)
        for i in range(3):
            for j in range(3):
                s = sum((m[i][k] * inv[k][j] for k in range(3)), CUBIC.zero())
                assert s == (CUBIC.one() if i == j else CUBIC.zero())


def test_field_kernel():
    a = CUBIC.gen()
    rows = [[CUBIC.one(), a, a * a]]
    ker = field_kernel(rows)
    assert len(ker) == 2
    for v in ker:
        assert sum((x * y for x, y in zip(rows[0], v)), CUBIC.zero()) == CUBIC.zero()
