"""Parameters, Chern data, presentations, integration, pairings."""

import pytest

from qcblowup import (
    BLOWUP_TO_BUNDLE,
    BUNDLE_TO_BLOWUP,
    CurveClass,
    EXCEPTIONAL_LINE,
    FIBER_LINE,
    Polynomial,
    UsageError,
    anticanonical_class,
    blowup_variables,
    bundle_variables,
    change_vars,
    chern_coefficients,
    classical_presentation,
    curve_dual,
    derive_params,
    fano_positivity_check,
    integrate,
    moduli_dimension_identities,
    oracle_integrate,
    pair_divisor_curve,
    pairing_matrix,
    segre_integral_oracle,
    verify_classical_geometry,
    virtual_dimension,
)
from qcblowup.geometry import _determinant


def bp(text, params):
    return Polynomial.parse(bundle_variables(params.r, params.n), text)


# -- parameters ----------------------------------------------------------------


def test_derive_params_examples():
    p40 = derive_params(4, 0)
    assert (p40.n, p40.r, p40.in_range) == (3, 2, True)
    p81 = derive_params(8, 1)
    assert (p81.n, p81.r, p81.in_range) == (6, 3, True)
    p51 = derive_params(5, 1)
    assert (p51.n, p51.r, p51.in_range) == (3, 3, False)


def test_derive_params_domain_errors():
    for m, p in ((1, 0), (4, -1), (4, 3), (3, 2)):
        with pytest.raises(UsageError):
            derive_params(m, p)


def test_in_range_matches_r_less_than_n():
    for m in range(2, 15):
        for p in range(0, m - 1):
            params = derive_params(m, p)
            assert params.in_range == (params.r < params.n)
            assert params.n == m - p - 1 and params.r == p + 2


# -- Chern coefficients ----------------------------------------------------------


def test_chern_vectors():
    assert chern_coefficients(derive_params(4, 0)).coefficients == (1, 3, 2)
    assert chern_coefficients(derive_params(5, 1)).coefficients == (1, 4, 5, 2)


def test_chern_endpoints_for_all_ranks():
    for r in range(2, 13):
        params = derive_params(2 * (r - 2) + 4, r - 2)
        vec = chern_coefficients(params)
        assert vec[0] == 1 and vec[1] == r + 1 and vec[r] == 2


def test_fiber_relation_forms_agree_up_to_rank_12():
    # factored (xi-h)^(r-1) (xi-2h) versus the Chern expansion, exact
    for r in range(2, 13):
        params = derive_params(2 * (r - 2) + 4, r - 2)
        pres = classical_presentation(params, "bundle")
        vs = pres.variables
        xi = Polynomial.variable(vs, "xi")
        h = Polynomial.variable(vs, "h")
        chern = chern_coefficients(params)
        expanded = Polynomial.zero(vs)
        for k in range(r + 1):
            expanded = expanded + (-1) ** k * chern[k] * h**k * xi ** (r - k)
        assert pres.relations[1] == (xi - h) ** (r - 1) * (xi - 2 * h) == expanded


# -- presentations ---------------------------------------------------------------


def test_classical_presentation_40():
    params = derive_params(4, 0)
    bundle = classical_presentation(params, "bundle")
    assert [str(g) for g in bundle.relations] == ["h^4", "xi^2 - 3*h*xi + 2*h^2"]
    blowup = classical_presentation(params, "blowup")
    kv = blowup.variables
    k = Polynomial.variable(kv, "k")
    eta = Polynomial.variable(kv, "eta")
    assert blowup.relations == ((k - eta) ** 4, k * eta)


def test_classical_presentation_81_blowup():
    params = derive_params(8, 1)
    blowup = classical_presentation(params, "blowup")
    kv = blowup.variables
    k = Polynomial.variable(kv, "k")
    eta = Polynomial.variable(kv, "eta")
    assert blowup.relations == ((k - eta) ** 7, k**2 * eta)


def test_quotient_rank_both_coordinate_systems(grid_params):
    for coords in ("bundle", "blowup"):
        pres = classical_presentation(grid_params, coords)
        assert pres.quotient.rank == grid_params.rank


# -- change of variables ---------------------------------------------------------


def test_change_vars_basic_identities():
    params = derive_params(4, 0)
    kv = blowup_variables(params.r, params.n)
    k = Polynomial.variable(kv, "k")
    eta = Polynomial.variable(kv, "eta")
    assert str(change_vars(k - eta, BLOWUP_TO_BUNDLE)) == "h"
    # the center relation maps onto the fiber relation
    image = change_vars(k ** (params.p + 1) * eta, BLOWUP_TO_BUNDLE)
    assert image == classical_presentation(params, "bundle").relations[1]


def test_change_vars_round_trip():
    params = derive_params(8, 1)
    kv = blowup_variables(params.r, params.n)
    f = Polynomial.parse(kv, "k^2*eta - 3*k*q1 + eta^3*q2 - 7")
    assert change_vars(change_vars(f, BLOWUP_TO_BUNDLE), BUNDLE_TO_BLOWUP) == f
    bv = bundle_variables(params.r, params.n)
    g = Polynomial.parse(bv, "xi^2*h - 5*h^3 + q1*q2")
    assert change_vars(change_vars(g, BUNDLE_TO_BLOWUP), BLOWUP_TO_BUNDLE) == g


def test_change_vars_direction_validation():
    params = derive_params(4, 0)
    bv = bundle_variables(params.r, params.n)
    with pytest.raises(UsageError):
        change_vars(Polynomial.variable(bv, "h"), BLOWUP_TO_BUNDLE)
    with pytest.raises(UsageError):
        change_vars(Polynomial.variable(bv, "h"), "sideways")


def test_ideal_correspondence_on_grid(grid_params):
    from qcblowup import Ideal, ideal_equal

    bundle = classical_presentation(grid_params, "bundle")
    blowup = classical_presentation(grid_params, "blowup")
    mapped = tuple(change_vars(g, BLOWUP_TO_BUNDLE) for g in blowup.relations)
    assert ideal_equal(Ideal(bundle.variables, mapped), Ideal(bundle.variables, bundle.relations))
    mapped_back = tuple(change_vars(g, BUNDLE_TO_BLOWUP) for g in bundle.relations)
    assert ideal_equal(Ideal(blowup.variables, mapped_back), Ideal(blowup.variables, blowup.relations))


# -- integration -----------------------------------------------------------------


def test_integration_normalization_and_examples():
    params = derive_params(4, 0)
    pres = classical_presentation(params, "bundle")
    assert integrate(bp("h^3*xi", params), pres) == 1
    assert integrate(bp("xi^4", params), pres) == 15
    assert integrate(bp("h^2*xi^2", params), pres) == 3
    # off-degree classes integrate to zero
    assert integrate(bp("h^2", params), pres) == 0


def test_one_step_reduction_value(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    n, r = grid_params.n, grid_params.r
    f = bp(f"h^{n - 1}*xi^{r}" if n > 1 else f"xi^{r}", grid_params)
    assert integrate(f, pres) == r + 1


def test_integrate_rejects_parameters():
    params = derive_params(4, 0)
    pres = classical_presentation(params, "bundle")
    with pytest.raises(UsageError):
        integrate(bp("h*q2", params), pres)


def test_segre_oracle_examples():
    assert segre_integral_oracle(derive_params(4, 0), 3, 1) == 1
    assert segre_integral_oracle(derive_params(4, 0), 0, 4) == 15
    assert segre_integral_oracle(derive_params(8, 1), 5, 3) == 4


def test_segre_oracle_domain_errors():
    params = derive_params(4, 0)
    with pytest.raises(UsageError):
        segre_integral_oracle(params, 1, 1)
    with pytest.raises(UsageError):
        segre_integral_oracle(params, 4, 0)


def test_groebner_integration_matches_oracle(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    top = grid_params.top_degree
    for a in range(grid_params.n + 1):
        mono = bp(f"h^{a}*xi^{top - a}" if a else f"xi^{top}", grid_params)
        assert integrate(mono, pres) == segre_integral_oracle(grid_params, a, top - a)


def test_oracle_integrate_linear_extension():
    params = derive_params(4, 0)
    pres = classical_presentation(params, "bundle")
    f = bp("xi^4 - 2*h^3*xi + 5*h^4 + h^2", params)
    assert oracle_integrate(f, params) == integrate(f, pres) == 13


# -- pairings --------------------------------------------------------------------


def test_duality_pairing_table(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    vs = pres.variables
    xi = Polynomial.variable(vs, "xi")
    h = Polynomial.variable(vs, "h")
    table = [
        [pair_divisor_curve(d, c, pres) for c in (FIBER_LINE, EXCEPTIONAL_LINE)]
        for d in (xi - h, h)
    ]
    assert table == [[1, 0], [0, 1]]


def test_blowup_pairing_table(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    kv = blowup_variables(grid_params.r, grid_params.n)
    k = Polynomial.variable(kv, "k")
    eta = Polynomial.variable(kv, "eta")
    table = [
        [pair_divisor_curve(d, c, pres) for c in (FIBER_LINE, EXCEPTIONAL_LINE)]
        for d in (k, eta)
    ]
    assert table == [[1, 0], [1, -1]]


def test_pair_divisor_curve_requires_degree_one():
    params = derive_params(4, 0)
    pres = classical_presentation(params, "bundle")
    with pytest.raises(UsageError):
        pair_divisor_curve(bp("h^2", params), FIBER_LINE, pres)


def test_pairing_matrix_unimodular_in_bundle_coordinates(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    matrix = pairing_matrix(pres)
    assert _determinant(matrix) in (1, -1)


def test_blowup_pairing_matrix_nondegenerate(params40):
    pres = classical_presentation(params40, "blowup")
    assert _determinant(pairing_matrix(pres)) in (1, -1)


# -- anticanonical, dimensions, positivity ----------------------------------------


def test_anticanonical_examples():
    assert str(anticanonical_class(derive_params(4, 0))) == "2*xi + h"
    assert str(anticanonical_class(derive_params(8, 1))) == "3*xi + 3*h"


def test_anticanonical_degrees(grid_params):
    pres = classical_presentation(grid_params, "bundle")
    anti = anticanonical_class(grid_params)
    assert pair_divisor_curve(anti, FIBER_LINE, pres) == grid_params.r
    assert pair_divisor_curve(anti, EXCEPTIONAL_LINE, pres) == grid_params.n


def test_virtual_dimension_examples():
    p40 = derive_params(4, 0)
    assert virtual_dimension(p40, FIBER_LINE) == 6
    assert virtual_dimension(p40, EXCEPTIONAL_LINE) == 7
    assert virtual_dimension(p40, CurveClass(0, 0)) == p40.top_degree


def test_moduli_dimension_identities(grid_params):
    assert moduli_dimension_identities(grid_params).ok


def test_fano_positivity_grid():
    report = fano_positivity_check(derive_params(4, 0), 5)
    assert report.ok
    assert "35" in report.entries[0].detail
    assert fano_positivity_check(derive_params(8, 1), 5).ok
    with pytest.raises(UsageError):
        fano_positivity_check(derive_params(4, 0), 0)


def test_curve_dual_pairs_to_identity():
    params = derive_params(8, 1)
    pres = classical_presentation(params, "bundle")
    assert integrate((bp("xi", params) - bp("h", params)) * curve_dual(FIBER_LINE, params), pres) == 1
    assert integrate(bp("h", params) * curve_dual(FIBER_LINE, params), pres) == 0


def test_full_classical_suite(grid_params):
    report = verify_classical_geometry(grid_params)
    assert report.ok, [e.name for e in report.failures()]


def test_classical_suite_out_of_range_params():
    # classical geometry needs no range hypothesis
    report = verify_classical_geometry(derive_params(5, 1))
    assert report.ok, [e.name for e in report.failures()]
