import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from moreau.calcerror import InfeasibleError, \
                             ValidationError
from moreau.envinv import CASE_INDICATOR, \
                          CASE_NONE, \
                          CASE_QUADRATIC, \
                          REASON_LIPSCHITZ, \
                          REASON_OK, \
                          invert_envelope, \
                          invert_envelope_1d, \
                          invert_envelope_strict, \
                          nonexpansive_report, \
                          sum_of_envelopes
from moreau.glq import GlqFunction, \
                       QuadraticFunction
from moreau.linrel import LinearRelation
from moreau.tolerances import Tolerances

from tests.generators import random_glq

LOOSE = Tolerances(value_tol=1e-8)


def test_three_identity_is_not_an_envelope_with_r_one():
    report = invert_envelope(QuadraticFunction(3.0 * np.eye(2)), 1.0)
    assert not report.feasible
    assert report.reason == REASON_LIPSCHITZ
    assert report.lipschitz_bound == pytest.approx(3.0)
    assert report.g is None
    with pytest.raises(InfeasibleError):
        invert_envelope_strict(QuadraticFunction(3.0 * np.eye(2)), 1.0)


def test_three_identity_at_r_three_is_envelope_of_indicator():
    f = QuadraticFunction(3.0 * np.eye(2))
    report = invert_envelope(f, 3.0)
    assert report.feasible
    assert report.reason == REASON_OK
    g = report.g
    assert g.equals(GlqFunction.indicator([0.0, 0.0]))
    assert g.envelope(3.0).equals(f)
    # e_3 q has Hessian 3/4 Id, so q itself is not the answer
    assert not GlqFunction.half_squared_norm(2).envelope(3.0).equals(f)


def test_unit_quadratic_is_envelope_of_indicator():
    g = invert_envelope_strict(QuadraticFunction([[1.0]]), 1.0)
    assert g.relation.dom().dim == 0
    assert g.evaluate([0.0]).value == pytest.approx(0.0)
    assert not g.evaluate([0.1]).is_finite


def test_quarter_square_is_envelope_of_half_square():
    # f = x^2 / 4 has Q = 1/2
    g = invert_envelope_strict(QuadraticFunction([[0.5]]), 1.0)
    assert g.equals(GlqFunction.half_squared_norm(1))


def test_one_dimensional_cases():
    report = invert_envelope_1d(0.4, 0.6, 1.1, 1.0)
    assert report.case == CASE_QUADRATIC
    assert_allclose(report.coefficients, (2.0, 3.0, 2.0))
    assert report.g.equals(GlqFunction.from_matrix([[4.0]], None, [3.0], 2.0))

    report = invert_envelope_1d(0.5, 0.0, 0.0, 1.0)
    assert report.case == CASE_INDICATOR
    assert_allclose(report.coefficients, (0.0, 0.0), atol=1e-15)

    report = invert_envelope_1d(1.0, 0.0, 0.0, 1.0)
    assert not report.feasible
    assert report.case == CASE_NONE
    assert report.reason == REASON_LIPSCHITZ


def test_one_dimensional_indicator_with_linear_term():
    # e_2 of i_{1} + 3 is (x - 1)^2 + 3 = x^2 - 2x + 4
    report = invert_envelope_1d(1.0, -2.0, 4.0, 2.0)
    assert report.case == CASE_INDICATOR
    assert_allclose(report.coefficients, (1.0, 3.0))


def test_one_dimensional_rejects_negative_alpha():
    with pytest.raises(ValidationError):
        invert_envelope_1d(-0.1, 0.0, 0.0, 1.0)
    with pytest.raises(ValidationError):
        invert_envelope_1d(0.1, 0.0, 0.0, 0.0)


def test_nonexpansive_report():
    report = nonexpansive_report(np.eye(2))
    assert report.nonexpansive and report.firmly
    assert report.relation_P.equals(LinearRelation.zero_map(2))

    M = np.diag([1.0, 0.5])
    report = nonexpansive_report(M)
    assert report.firmly
    assert_allclose(report.relation_P.resolvent(), M, atol=1e-12)
    assert report.relation_P.equals(LinearRelation.from_matrix(np.diag([0.0, 1.0])))

    report = nonexpansive_report(3.0 * np.eye(2))
    assert not report.nonexpansive
    assert report.relation_P is None


def test_nonexpansive_report_with_zero_eigenvalue():
    report = nonexpansive_report(np.diag([0.0, 1.0]))
    assert report.firmly
    assert report.relation_P.dom().dim == 1
    assert_allclose(report.relation_P.resolvent(), np.diag([0.0, 1.0]), atol=1e-12)


def test_nonexpansive_report_rejects_non_symmetric():
    with pytest.raises(ValidationError):
        nonexpansive_report([[0.5, 0.2], [0.0, 0.5]])


def test_sum_of_envelopes():
    g = GlqFunction.from_matrix(np.diag([1.0, 2.0]), None, [1.0, 0.0])
    h = GlqFunction.indicator([0.5, -1.0])
    f = sum_of_envelopes(g, 1.0, h, 2.0)
    expected = g.envelope(1.0).add(h.envelope(2.0))
    assert f.envelope(3.0).equals(expected, LOOSE)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_inversion_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    g = random_glq(rng, n)
    r = float(rng.choice([0.5, 1.0, 2.0]))
    report = invert_envelope(g.envelope(r), r)
    assert report.feasible
    assert report.g.equals(g, LOOSE)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_envelope_hessian_of_relation_is_nonexpansive(seed, n):
    rng = np.random.default_rng(seed)
    g = random_glq(rng, n, shifted=False)
    r = float(rng.choice([0.5, 1.0, 2.0]))
    report = nonexpansive_report(g.envelope(r).Q / r)
    assert report.nonexpansive and report.firmly


@pytest.mark.parametrize('r', [1.0, 3.0])
def test_eigenvalue_just_above_r_is_an_indicator_direction(r):
    alpha = 0.5 * r * (1.0 + 5e-10)
    one_d = invert_envelope_1d(alpha, 0.0, 0.0, r)
    assert one_d.case == CASE_INDICATOR
    assert not one_d.g.evaluate([1.0]).is_finite

    report = invert_envelope(QuadraticFunction([[2.0 * alpha]]), r)
    assert report.feasible
    assert not report.g.evaluate([1.0]).is_finite
    assert report.g.equals(one_d.g)

    report = invert_envelope(QuadraticFunction(2.0 * alpha * np.eye(2)), r)
    assert report.feasible
    assert report.g.equals(GlqFunction.indicator([0.0, 0.0]))


def test_near_boundary_eigenvalue_in_a_mixed_hessian():
    r = 2.0
    Q = np.diag([r * (1.0 - 2e-10), 0.5 * r])
    g = invert_envelope_strict(QuadraticFunction(Q), r)
    # the first axis is an indicator direction, the second a half square
    assert g.relation.dom().equals(LinearRelation.from_matrix(np.diag([0.0, 1.0])).ran())
    assert g.evaluate([0.0, 1.0]).value == pytest.approx(0.5 * r)
    assert not g.evaluate([1e-3, 0.0]).is_finite


def test_nonexpansive_report_near_unit_eigenvalue():
    report = nonexpansive_report(np.diag([1.0 + 5e-10, 0.5]))
    assert report.nonexpansive and report.firmly
    assert report.relation_P.is_maximal_monotone()
    assert report.relation_P.equals(LinearRelation.from_matrix(np.diag([0.0, 1.0])))
