import json
import random
from fractions import Fraction

import pytest
import sympy

from latexp.constructions import (
    THEOREM4_RECIPE_3,
    ConstructionError,
    _pow_field,
    conjugates,
    corollary1_forms,
    forms_from_recipe,
    integer_norm_form,
    norm_form,
    shipped_examples,
    spectrum_forms,
    spectrum_lattice,
    theorem4_lattice,
    totally_real_lattice,
    verify_corollary1_hypothesis,
    verify_spectrum_hypothesis,
    verify_theorem4_hypothesis,
)
from latexp.exact import FieldError, nf_create
from latexp.lattice import FormsMatrix, dual

X = sympy.Symbol("x")
TR_CUBIC = nf_create([-1, -3, 0, 1], (1, 2))


def test_conjugates_of_cyclic_cubic():
    conj = conjugates(TR_CUBIC)
    roots = sorted(float(r) for r in sympy.real_roots(X ** 3 - 3 * X - 1))
    assert [float(c.as_creal()) for c in conj] == pytest.approx(roots, rel=1e-14)
    a = TR_CUBIC.gen()
    assert conj == [2 - a * a, a * a - a - 2, a]


def test_non_normal_and_complex_fields_rejected():
    with pytest.raises(FieldError, match="not totally real"):
        totally_real_lattice(nf_create([-2, 0, 0, 1], (1, 2)))
    # x^3 - 4x + 1 is totally real, but its discriminant 229 is not a square
    with pytest.raises(FieldError, match="not normal"):
        totally_real_lattice(nf_create([1, -4, 0, 1], (1, 3)))
    with pytest.raises(FieldError):
        totally_real_lattice(nf_create([-2, 0, 1], (1, 2)))


def test_integer_norm_form_matches_field_norm():
    L = totally_real_lattice(TR_CUBIC)
    poly = integer_norm_form(L.forms)
    rnd = random.Random(4)
    a = TR_CUBIC.gen()
    for _ in range(50):
        z = [rnd.randint(-30, 30) for _ in range(3)]
        val = sum(c * z[0] ** m[0] * z[1] ** m[1] * z[2] ** m[2] for m, c in poly.items())
        elt = z[0] + z[1] * a + z[2] * a * a
        assert val == elt.norm()
        f, g = sympy.Poly(X ** 3 - 3 * X - 1, X), sympy.Poly(z[0] + z[1] * X + z[2] * X ** 2, X)
        assert val == sympy.resultant(f, g)


def test_norm_form_of_irrational_forms():
    forms = corollary1_forms()
    poly = norm_form(forms)
    assert any(not c.is_rational() for c in poly.values())
    with pytest.raises(FieldError, match="not a rational integer"):
        integer_norm_form(forms)


def test_corollary1_verifier():
    rep = verify_corollary1_hypothesis(corollary1_forms())
    assert rep.passed and len(rep.clauses) == 7
    rep = verify_corollary1_hypothesis(FormsMatrix.identity(3))
    assert not rep.passed
    # every failed clause carries a rational relation among the coefficients
    assert all(c.certificate for c in rep.failed())
    json.dumps(rep.to_json())


def test_theorem4_construction_and_rejected_recipe():
    L, rep = theorem4_lattice(3)
    assert rep.passed
    assert rep.metadata["recipe"][2] == [[3], [0], [2]]
    bad = forms_from_recipe(_pow_field(5), THEOREM4_RECIPE_3)
    brep = verify_theorem4_hypothesis(bad)
    assert not brep.passed
    with pytest.raises(ConstructionError) as exc:
        theorem4_lattice(3, config=bad)
    assert exc.value.report is not None and exc.value.report.failed()
    assert theorem4_lattice(3, config=L.forms)[1].passed


def test_theorem4_first_coefficient_clause():
    L, rep = theorem4_lattice(3)
    first = rep.clauses[0]
    assert "zero" in first.description and first.passed
    assert not verify_theorem4_hypothesis(corollary1_forms()).passed


def test_theorem4_d4():
    L, rep = theorem4_lattice(4)
    assert rep.passed and L.d == 4


@pytest.mark.parametrize("d,k,l", [(3, 1, 1), (4, 1, 2), (4, 2, 1), (4, 1, 1)])
def test_spectrum_constructions(d, k, l):
    L, rep = spectrum_lattice(d, k, l)
    assert rep.passed and L.d == d
    assert rep.metadata["expected_omega_certified"] is False
    assert Fraction(rep.metadata["expected_omega"]) == Fraction(k * (d - k - l), d * l)


def test_spectrum_verifier_rejects_wrong_closure():
    forms = spectrum_forms(4, 1, 2)
    rep = verify_spectrum_hypothesis(forms, 1, 1)
    assert not rep.passed
    assert rep.failed()[0].certificate["dimension"] == 3
    with pytest.raises(ConstructionError):
        spectrum_lattice(4, 1, 1, config=forms)
    with pytest.raises(ValueError):
        spectrum_forms(4, 3, 1)


def test_shipped_examples_are_consistent():
    ex = shipped_examples()
    assert set(ex) == {"totally_real_cubic", "corollary1_d3", "theorem4_d3",
                       "spectrum_3_1_1", "spectrum_4_1_2"}
    for L in ex.values():
        assert dual(dual(L)) == L
