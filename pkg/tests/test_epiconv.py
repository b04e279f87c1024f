import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from moreau.calcerror import ValidationError
from moreau.epiconv import AFFINE, \
                           IMPROPER_MINUS_INFINITY, \
                           IMPROPER_PLUS_INFINITY, \
                           INDICATOR, \
                           QUADRATIC, \
                           UNDETERMINED, \
                           QuadSeq1D, \
                           aw_distance, \
                           aw_distance_envelopes, \
                           classify_1d, \
                           classify_sequence, \
                           envelope_coeffs_1d, \
                           envelope_gradients_1d, \
                           builtin_family, \
                           trust_region_extremes
from moreau.glq import GlqFunction, \
                       QuadraticFunction
from moreau.tolerances import Tolerances

from tests.generators import random_glq

PROBES = [1000, 2000, 5000, 10000]


def test_envelope_coefficients():
    assert_allclose(envelope_coeffs_1d(2.0, 3.0, 2.0, 1.0), (0.4, 0.6, 1.1))
    assert_allclose(envelope_coeffs_1d(0.0, 1.0, 0.0, 1.0), (0.0, 1.0, -0.5))
    assert_allclose(envelope_coeffs_1d(5.0, 0.0, 0.0, 3.0), (15.0 / 13.0, 0.0, 0.0))
    with pytest.raises(ValidationError):
        envelope_coeffs_1d(-1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValidationError):
        envelope_coeffs_1d(1.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize('name', ['fk', 'gk', 'hk'])
@pytest.mark.parametrize('k', [1, 10, 100])
def test_family_closed_forms(name, k):
    term, closed_form = builtin_family(name, k)
    assert_allclose(envelope_coeffs_1d(*term, 1.0), closed_form, rtol=0, atol=1e-12)


def test_family_lookup():
    assert QuadSeq1D.family('hk').term(10) == (10.0, 0.1, 0.1)
    with pytest.raises(ValidationError):
        builtin_family('zk', 1)
    with pytest.raises(ValidationError):
        builtin_family('fk', 0)


def test_explicit_sequence():
    seq = QuadSeq1D(terms=[(2, 3, 2), (1.5, 2.5, 1.5)])
    assert seq.length == 2
    assert seq.term(2) == (1.5, 2.5, 1.5)
    with pytest.raises(ValidationError):
        seq.term(3)
    with pytest.raises(ValidationError):
        QuadSeq1D(terms=[(-1, 0, 0)])
    with pytest.raises(ValidationError):
        QuadSeq1D()


def test_first_family_has_quadratic_limit():
    verdict = classify_1d(QuadSeq1D.family('fk'), PROBES)
    assert verdict.kind == QUADRATIC
    assert verdict.params['a'] == pytest.approx(1.0, abs=1e-6)
    assert verdict.params['b'] == pytest.approx(2.0, abs=1e-6)
    assert verdict.params['c'] == pytest.approx(1.0, abs=1e-6)
    assert_allclose(verdict.envelope, (1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0), atol=1e-6)
    assert verdict.limit_function().equals(
        GlqFunction.from_matrix([[2.0]], None, [2.0], 1.0), Tolerances(value_tol=1e-5))


def test_second_family_has_affine_limit():
    verdict = classify_1d(QuadSeq1D.family('gk'), PROBES)
    assert verdict.kind == AFFINE
    assert verdict.params['b'] == pytest.approx(1.0, abs=1e-6)
    assert verdict.params['c'] == pytest.approx(0.0, abs=1e-6)
    assert_allclose(verdict.envelope, (0.0, 1.0, -0.5), atol=1e-6)


def test_third_family_has_indicator_limit():
    verdict = classify_1d(QuadSeq1D.family('hk'), PROBES)
    assert verdict.kind == INDICATOR
    assert verdict.params['point'] == pytest.approx(0.0, abs=1e-6)
    assert verdict.params['c'] == pytest.approx(0.0, abs=1e-6)
    assert_allclose(verdict.envelope, (0.5, 0.0, 0.0), atol=1e-6)
    limit = verdict.limit_function()
    assert limit.relation.dom().dim == 0


def test_improper_limits():
    up = QuadSeq1D(terms=[(1.0, 0.0, float(k)) for k in range(1, 6)])
    assert classify_1d(up, [1, 2, 3, 4, 5]).kind == IMPROPER_PLUS_INFINITY
    down = QuadSeq1D(generator=lambda k: (0.0, 0.0, -float(k) ** 2))
    verdict = classify_1d(down, [1, 2, 3, 4])
    assert verdict.kind == IMPROPER_MINUS_INFINITY
    assert verdict.limit_function() is None
    assert verdict.envelope is None


def test_slow_sequence_is_undetermined():
    slow = QuadSeq1D(generator=lambda k: (1.0, 0.0, 1.0 / np.sqrt(k)))
    verdict = classify_1d(slow, [10, 100, 1000])
    assert verdict.kind == UNDETERMINED
    assert max(verdict.evidence) > 1e-6


def test_classify_needs_three_increasing_probes():
    with pytest.raises(ValidationError):
        classify_1d(QuadSeq1D.family('fk'), [10, 100])
    with pytest.raises(ValidationError):
        classify_1d(QuadSeq1D.family('fk'), [10, 10, 100])


def test_envelope_gradients_converge():
    grads = envelope_gradients_1d(QuadSeq1D.family('fk'), PROBES)
    assert grads.shape == (4, 2)
    # derivative of (x + 1)^2 / 3 at 0 and 1
    assert_allclose(grads[-1], [2.0 / 3.0, 4.0 / 3.0], atol=1e-3)


def test_trust_region_extremes_examples():
    assert_allclose(trust_region_extremes(np.eye(2), np.zeros(2), 2.0),
                    (0.0, 2.0), atol=1e-12)
    # linear function: extremes at the boundary along g
    assert_allclose(trust_region_extremes(np.zeros((2, 2)), [3.0, 4.0], 1.0),
                    (-5.0, 5.0), atol=1e-9)
    # indefinite, hard case: g orthogonal to the lowest eigenvector
    low, high = trust_region_extremes(np.diag([-2.0, 1.0]), [0.0, 0.0], 1.0)
    assert low == pytest.approx(-1.0)
    assert high == pytest.approx(0.5)
    with pytest.raises(ValidationError):
        trust_region_extremes(np.eye(1), [0.0], 0.0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_trust_region_extremes_bound_samples(seed, n):
    rng = np.random.default_rng(seed)
    H = rng.standard_normal((n, n))
    H = H + H.T
    g = rng.standard_normal(n)
    radius = float(rng.uniform(0.5, 3.0))
    low, high = trust_region_extremes(H, g, radius)
    directions = rng.standard_normal((500, n))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    points = directions * radius * rng.uniform(0.0, 1.0, (500, 1)) ** (1.0 / n)
    values = 0.5 * np.einsum('ij,jk,ik->i', points, H, points) + points @ g
    assert values.min() >= low - 1e-9
    assert values.max() <= high + 1e-9


def test_distance_of_function_to_itself_is_zero():
    q = GlqFunction.half_squared_norm(2)
    result = aw_distance(q, q, 1.0, 20)
    assert result.value == 0.0
    assert result.truncation_index == 20
    assert result.tail_bound == 2.0 ** -20
    assert len(result.per_ball_sup) == 20


def test_distance_between_constants():
    # the envelopes differ by 1 everywhere
    zero = GlqFunction.from_matrix([[0.0]])
    one = GlqFunction.from_matrix([[0.0]], c=1.0)
    result = aw_distance(zero, one, i_max=10)
    assert result.value == pytest.approx(0.5 * (1.0 - 2.0 ** -10))
    assert all(s == pytest.approx(1.0) for _, s in result.per_ball_sup)


def test_distance_accepts_envelopes_directly():
    e = QuadraticFunction([[1.0]])
    result = aw_distance_envelopes(e, QuadraticFunction([[0.0]]), 3)
    # s_i = i^2 / 2
    expected = sum(2.0 ** -i * (0.5 * i * i) / (1.0 + 0.5 * i * i) for i in (1, 2, 3))
    assert result.value == pytest.approx(expected)
    with pytest.raises(ValidationError):
        aw_distance_envelopes(e, e, 0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_distance_is_symmetric(seed, n):
    rng = np.random.default_rng(seed)
    f, g = random_glq(rng, n), random_glq(rng, n)
    assert aw_distance(f, g).value == aw_distance(g, f).value


def test_sequence_tending_to_zero_map():
    terms = [GlqFunction.from_matrix(np.eye(2) / 10.0 ** j) for j in range(1, 8)]
    verdict = classify_sequence(terms)
    assert verdict.converged
    assert verdict.residual <= 1e-6
    assert verdict.limit.equals(GlqFunction.from_matrix(np.zeros((2, 2))))


def test_sequence_tending_to_normal_cone_of_zero():
    terms = [GlqFunction.from_matrix(np.eye(2) * 10.0 ** j) for j in range(1, 8)]
    verdict = classify_sequence(terms)
    assert verdict.converged
    assert verdict.limit.relation.dom().dim == 0
    assert verdict.limit.equals(GlqFunction.indicator([0.0, 0.0]))


def test_constant_sequence():
    f = GlqFunction.from_matrix(np.diag([1.0, 2.0]), None, [1.0, -1.0], 3.0)
    verdict = classify_sequence([f, f, f])
    assert verdict.converged
    assert verdict.residual == 0.0
    assert verdict.limit.equals(f)


def test_oscillating_sequence_does_not_converge():
    q = GlqFunction.half_squared_norm(1)
    verdict = classify_sequence([q, q.scale(2.0), q, q.scale(2.0)])
    assert not verdict.converged
    assert verdict.limit is None


def test_sequence_with_small_gaps_but_no_rate_is_cauchy():
    q = GlqFunction.half_squared_norm(1)
    nudged = q.scale(1.0 + 1e-8)
    verdict = classify_sequence([q, nudged, q, nudged])
    assert verdict.converged
    assert 0.0 < verdict.residual <= 1e-6
    assert verdict.limit.equals(q, Tolerances(value_tol=1e-8))


def test_classify_sequence_preconditions():
    q = GlqFunction.half_squared_norm(1)
    with pytest.raises(ValidationError):
        classify_sequence([q])
    with pytest.raises(ValidationError):
        classify_sequence([q, GlqFunction.half_squared_norm(2)])
