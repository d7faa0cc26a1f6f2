"""Buchberger bases, normal forms, staircases and ideal equality."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcblowup import (
    BudgetError,
    Ideal,
    LEX,
    MonomialOrder,
    Polynomial,
    StructuralError,
    UsageError,
    VariableSet,
    buchberger,
    bundle_variables,
    ideal_equal,
    normal_form,
    spolynomial,
    staircase_basis,
)

BV = bundle_variables(2, 3)


def poly(text, vs=BV):
    return Polynomial.parse(vs, text)


def bundle_classical_ideal(order=None):
    gens = (poly("h^4"), poly("xi^2 - 3*h*xi + 2*h^2"))
    if order is None:
        return Ideal(BV, gens)
    return Ideal(BV, gens, order)


def bundle_deformed_ideal():
    return Ideal(BV, (poly("h^4 - xi*q2 + 2*h*q2"), poly("xi^2 - 3*h*xi + 2*h^2 - q1")))


# -- buchberger ----------------------------------------------------------------


def test_coprime_leading_terms_already_a_basis():
    gb = buchberger(bundle_classical_ideal(MonomialOrder(LEX)))
    assert set(gb.polys) == {poly("h^4"), poly("xi^2 - 3*h*xi + 2*h^2")}


def test_principal_ideal_gives_monic_generator():
    f = 3 * poly("h^2") - 6 * poly("xi*q1")
    gb = buchberger(Ideal(BV, (f,)))
    # leading term under graded-lex is -6*xi*q1
    assert gb.polys == (f * Fraction(-1, 6),)
    assert gb.polys[0].leading_term(gb.order)[1] == 1


def test_deformed_ideal_leading_terms():
    gb = buchberger(bundle_deformed_ideal())
    lts = {Polynomial.monomial(BV, m).render() for m in gb.leading_monomials()}
    assert lts == {"xi^2", "h^4"}


def test_spolynomials_of_basis_reduce_to_zero():
    for ideal in (bundle_classical_ideal(), bundle_deformed_ideal()):
        gb = buchberger(ideal)
        for i in range(len(gb.polys)):
            for j in range(i + 1, len(gb.polys)):
                s = spolynomial(gb.polys[i], gb.polys[j], gb.order)
                assert normal_form(s, gb).is_zero


def test_basis_is_reduced_and_monic():
    gb = buchberger(bundle_deformed_ideal())
    for i, g in enumerate(gb.polys):
        assert g.leading_term(gb.order)[1] == 1
        for j, other in enumerate(gb.polys):
            if i == j:
                continue
            lt = other.leading_monomial(gb.order)
            for mono in g.terms:
                assert not all(x <= y for x, y in zip(lt, mono))


def test_buchberger_idempotent():
    gb = buchberger(bundle_deformed_ideal())
    again = buchberger(Ideal(BV, gb.polys, gb.order))
    assert again.polys == gb.polys


def test_degree_budget_raises():
    # the blow-up classical basis at (4,0) needs a degree-5 element
    from qcblowup import blowup_variables

    kv = blowup_variables(2, 3)
    k = Polynomial.variable(kv, "k")
    eta = Polynomial.variable(kv, "eta")
    ideal = Ideal(kv, ((k - eta) ** 4, k * eta))
    assert buchberger(ideal).polys  # fine without a budget
    with pytest.raises(BudgetError):
        buchberger(ideal, max_degree=4)


def test_pair_budget_raises():
    with pytest.raises(BudgetError):
        buchberger(bundle_classical_ideal(), max_pairs=0)


def test_empty_ideal_rejected():
    with pytest.raises(UsageError):
        Ideal(BV, ())


# -- normal form ---------------------------------------------------------------


def test_generators_reduce_to_zero():
    ideal = bundle_classical_ideal()
    gb = buchberger(ideal)
    for g in ideal.generators:
        assert normal_form(g, gb).is_zero


def test_classical_rewrite_step():
    gb = buchberger(bundle_classical_ideal())
    assert normal_form(poly("xi^2"), gb) == poly("3*h*xi - 2*h^2")


def test_deformed_rewrite_step():
    gb = buchberger(bundle_deformed_ideal())
    assert normal_form(poly("xi^2"), gb) == poly("3*h*xi - 2*h^2 + q1")
    assert normal_form(poly("h^4"), gb) == poly("xi*q2 - 2*h*q2")


def test_normal_form_idempotent_and_linear():
    gb = buchberger(bundle_deformed_ideal())
    f = poly("xi^3 + h^5 - 2*xi*h^2")
    g = poly("h^4*xi - q1*q2")
    nf = normal_form(f, gb)
    assert normal_form(nf, gb) == nf
    assert normal_form(f + g, gb) == normal_form(f, gb) + normal_form(g, gb)
    assert normal_form(3 * f, gb) == 3 * normal_form(f, gb)


def test_quotient_multiplication_is_sound():
    gb = buchberger(bundle_deformed_ideal())
    fs = [poly("xi^2 - h^2"), poly("h^3 + xi"), poly("xi*h")]
    for f in fs:
        for g in fs:
            lhs = normal_form(f * g, gb)
            rhs = normal_form(normal_form(f, gb) * normal_form(g, gb), gb)
            assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.tuples(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-5, 5)),
        max_size=4,
    )
)
def test_integral_inputs_have_integral_normal_forms(terms):
    f = Polynomial(BV, terms)
    gb = buchberger(bundle_deformed_ideal())
    assert normal_form(f, gb).is_integral()


# -- staircases ----------------------------------------------------------------


def test_classical_staircase_rank_8():
    ring = staircase_basis(buchberger(bundle_classical_ideal()))
    assert ring.rank == 8
    assert set(ring.staircase_strings()) == {
        "1", "h", "h^2", "h^3", "xi", "h*xi", "h^2*xi", "h^3*xi",
    }
    # listed in ascending graded-lex order
    keys = [sum(m) for m in ring.staircase]
    assert keys == sorted(keys)


def test_staircase_rank_21_for_m8_p1():
    vs = bundle_variables(3, 6)
    f1 = Polynomial.variable(vs, "h") ** 7
    xi = Polynomial.variable(vs, "xi")
    h = Polynomial.variable(vs, "h")
    f2 = (xi - h) ** 2 * (xi - 2 * h)
    ring = staircase_basis(buchberger(Ideal(vs, (f1, f2))))
    assert ring.rank == 21


def test_principal_staircase_single_variable():
    vs = VariableSet(("h",), (1,))
    h = Polynomial.variable(vs, "h")
    ring = staircase_basis(buchberger(Ideal(vs, (h,))))
    assert ring.rank == 1
    assert ring.staircase_strings() == ("1",)


def test_infinite_staircase_detected():
    xi = Polynomial.variable(BV, "xi")
    with pytest.raises(StructuralError):
        staircase_basis(buchberger(Ideal(BV, (xi**2,))))


def test_staircase_monomials_are_normal_forms():
    ring = staircase_basis(buchberger(bundle_deformed_ideal()))
    for b in ring.staircase_polynomials():
        assert ring.normal_form(b) == b


# -- ideal equality ------------------------------------------------------------


def test_ideal_equal_under_permutation():
    a = bundle_classical_ideal()
    b = Ideal(BV, tuple(reversed(a.generators)))
    assert ideal_equal(a, b)


def test_ideal_equal_under_elementary_combination():
    f1, f2 = bundle_classical_ideal().generators
    h = Polynomial.variable(BV, "h")
    assert ideal_equal(bundle_classical_ideal(), Ideal(BV, (f1, f2 + h * f1)))


def test_ideal_inequality_detected():
    a = bundle_classical_ideal()
    b = Ideal(BV, (a.generators[0],))
    assert not ideal_equal(a, b)


def test_ideal_equal_requires_same_setting():
    from qcblowup import blowup_variables

    kv = blowup_variables(2, 3)
    k = Polynomial.variable(kv, "k")
    with pytest.raises(UsageError):
        ideal_equal(bundle_classical_ideal(), Ideal(kv, (k,)))
