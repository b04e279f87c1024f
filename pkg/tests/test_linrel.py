import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from moreau.calcerror import ValidationError
from moreau.glq import GlqFunction
from moreau.linrel import AffineSet, \
                          LinearRelation, \
                          firm_nonexpansiveness_defect
from moreau.subspace import Subspace

from tests.generators import random_maximal_relation, \
                             random_orthonormal

ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])


def normal_cone_of_zero(n):
    return LinearRelation.normal_cone_of(Subspace.zero(n))


def test_affine_set_membership_and_minimum_norm():
    s = AffineSet(2, point=[1.0, 3.0], directions=Subspace.span([[0.0, 1.0]]))
    assert s.contains([1.0, 7.0])
    assert not s.contains([2.0, 7.0])
    assert_allclose(s.minimum_norm_element(), [1.0, 0.0], atol=1e-12)
    assert_allclose(s.sample([2.0]), [1.0, 5.0])
    assert s.dim == 1


def test_empty_affine_set():
    s = AffineSet.empty(2)
    assert s.is_empty
    assert s.dim == -1
    assert not s.contains([0.0, 0.0])
    assert s.minimum_norm_element() is None
    assert s.translate([1.0, 1.0]).is_empty
    assert s.residual([0.0, 0.0]) == float('inf')


def test_identity_relation():
    A = LinearRelation.from_matrix(np.eye(2))
    assert A.graph.dim == 2
    image = A.apply([3.0, 4.0])
    assert image.dim == 0
    assert_allclose(image.point, [3.0, 4.0], atol=1e-12)


def test_zero_matrix_has_graph_r_times_zero():
    A = LinearRelation.from_matrix([[0.0]])
    assert A.graph.equals(Subspace.span([[1.0, 0.0]]))
    assert A.equals(LinearRelation.zero_map(1))


def test_from_matrix_rejects_rectangular_input():
    with pytest.raises(ValidationError):
        LinearRelation.from_matrix(np.ones((2, 3)))


def test_normal_cone_of_zero():
    N = normal_cone_of_zero(1)
    assert N.graph.equals(Subspace.span([[0.0, 1.0]]))
    whole_line = N.apply([0.0])
    assert whole_line.dim == 1
    assert whole_line.contains([123.0])
    assert N.apply([1.0]).is_empty
    assert N.dom().dim == 0
    assert N.multivalued_part().dim == 1


def test_normal_cone_of_everything_is_the_zero_map():
    assert LinearRelation.normal_cone_of(Subspace.full(2)).equals(
        LinearRelation.zero_map(2))


def test_inverse_of_singular_matrix_is_multivalued():
    A = LinearRelation.from_matrix(np.diag([1.0, 0.0]))
    inverse_image = A.inverse().apply([1.0, 0.0])
    assert_allclose(inverse_image.point, [1.0, 0.0], atol=1e-12)
    assert inverse_image.directions.equals(Subspace.span([[0.0, 1.0]]))
    assert A.inverse().apply([0.0, 1.0]).is_empty
    assert A.kernel().equals(Subspace.span([[0.0, 1.0]]))


def test_non_monotone_graph():
    # R^2 x span{(1, 1)} in R^4
    graph = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    A = LinearRelation(2, graph)
    assert not A.is_monotone()
    assert not A.is_maximal_monotone()


def test_line_with_positive_slope_is_maximal_monotone_and_symmetric():
    A = LinearRelation.from_matrix([[1.0]])
    assert A.is_monotone()
    assert A.is_symmetric()
    assert A.is_maximal_monotone()


def test_trivial_relation_is_monotone_but_not_maximal():
    A = LinearRelation(1, Subspace.zero(2))
    assert A.is_monotone()
    assert not A.is_maximal_monotone()


def test_rotation_is_maximal_monotone_but_not_symmetric():
    R = LinearRelation.from_matrix(ROTATION)
    assert R.is_maximal_monotone()
    assert not R.is_symmetric()
    assert R.symmetric_part().equals(LinearRelation.zero_map(2))


def test_adjoint_of_matrix_is_transpose(rng):
    M = rng.standard_normal((3, 3))
    adjoint = LinearRelation.from_matrix(M).adjoint()
    assert adjoint.equals(LinearRelation.from_matrix(M.T))


def test_adjoint_of_normal_cone_is_itself():
    N = LinearRelation.normal_cone_of(Subspace.span([[1.0, 0.0]]))
    assert N.adjoint().equals(N)


def test_add_matrices_and_cones():
    I = LinearRelation.from_matrix(np.eye(2))
    assert I.add(I).equals(LinearRelation.from_matrix(2.0 * np.eye(2)))
    total = I.add(normal_cone_of_zero(2))
    assert total.equals(normal_cone_of_zero(2))
    x_axis = LinearRelation.normal_cone_of(Subspace.span([[1.0, 0.0]]))
    # Id + N_L maps (t, 0) to (t, R)
    image = I.add(x_axis).apply([2.0, 0.0])
    assert image.contains([2.0, -5.0])
    assert I.add(x_axis).apply([0.0, 1.0]).is_empty


def test_add_rejects_mixed_dimensions():
    with pytest.raises(ValidationError):
        LinearRelation.zero_map(2).add(LinearRelation.zero_map(3))


def test_scale_and_negative():
    A = LinearRelation.from_matrix(np.diag([1.0, 2.0]))
    assert A.scale(3.0).equals(LinearRelation.from_matrix(np.diag([3.0, 6.0])))
    assert A.negative().equals(LinearRelation.from_matrix(np.diag([-1.0, -2.0])))
    assert not A.negative().is_monotone()
    with pytest.raises(ValidationError):
        A.scale(0.0)


def test_resolvent_of_scaled_identity():
    assert_allclose(LinearRelation.scaled_identity(2, 3.0).resolvent(),
                    0.25 * np.eye(2), atol=1e-12)
    assert_allclose(normal_cone_of_zero(2).resolvent(), np.zeros((2, 2)),
                    atol=1e-15)
    assert_allclose(LinearRelation.zero_map(2).resolvent(), np.eye(2), atol=1e-12)


def test_resolvent_needs_maximal_monotone():
    with pytest.raises(ValidationError):
        LinearRelation.from_matrix(-np.eye(2)).resolvent()


def test_moore_penrose_examples():
    A = LinearRelation.from_matrix(np.diag([2.0, 0.0]))
    assert_allclose(A.moore_penrose(), np.diag([0.5, 0.0]), atol=1e-12)
    assert_allclose(normal_cone_of_zero(3).moore_penrose(), np.zeros((3, 3)),
                    atol=1e-12)


def test_firm_nonexpansiveness_defect():
    xs = np.array([[1.0, 0.0], [0.0, 2.0]])
    ys = np.array([[0.0, 1.0], [3.0, 1.0]])
    assert firm_nonexpansiveness_defect(0.5 * np.eye(2), xs, ys) <= 0.0
    assert firm_nonexpansiveness_defect(lambda x: 0.5 * x, xs, ys) <= 0.0
    assert firm_nonexpansiveness_defect(2.0 * np.eye(2), xs, ys) > 0.0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_random_maximal_relations(seed, n):
    rng = np.random.default_rng(seed)
    A = random_maximal_relation(rng, n)
    assert A.is_maximal_monotone()
    assert A.is_symmetric()
    assert A.inverse().is_maximal_monotone()
    assert A.inverse().inverse().equals(A)
    assert A.adjoint().equals(A)
    # A0 is the orthogonal complement of dom A
    assert A.multivalued_part().equals(A.dom().complement())
    J = A.resolvent()
    assert np.linalg.norm(J, 2) <= 1.0 + 1e-12
    # Id - J_A = J_(A^-1)
    assert_allclose(np.eye(n) - J, A.inverse().resolvent(), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_sum_of_maximal_relations_is_maximal(seed, n):
    rng = np.random.default_rng(seed)
    total = random_maximal_relation(rng, n).add(random_maximal_relation(rng, n))
    assert total.is_maximal_monotone()
    assert total.is_symmetric()


def random_graph_relation(rng, n):
    # a generic linear relation: any subspace of R^(2n)
    k = int(rng.integers(0, 2 * n + 1))
    return LinearRelation.from_graph_basis(n, rng.standard_normal((2 * n, k)))


def cone_type_relation(rng, n, M):
    # x -> Mx + L^perp on L, empty off L
    L = random_orthonormal(rng, n, int(rng.integers(0, n + 1)))
    perp = Subspace.from_columns(L).complement().basis
    graph = np.vstack([
        np.hstack([L, np.zeros((n, perp.shape[1]))]),
        np.hstack([M @ L, perp])
    ])
    return LinearRelation.from_graph_basis(n, graph), L


@pytest.mark.parametrize('k', [1e3, 1e6, 2e9])
def test_steep_negative_multiples_of_identity_are_not_monotone(k):
    for n in (1, 2):
        A = LinearRelation.from_matrix(-k * np.eye(n))
        assert not A.is_monotone()
        assert not A.is_maximal_monotone()
        with pytest.raises(ValidationError):
            GlqFunction.from_matrix(-k * np.eye(n))


@pytest.mark.parametrize('k', [1e3, 1e6, 2e9])
def test_steep_positive_multiples_of_identity_stay_monotone(k):
    A = LinearRelation.from_matrix(k * np.eye(2))
    assert A.is_maximal_monotone()
    assert A.is_symmetric()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_adjoint_and_inverse_involutions_on_generic_relations(seed, n):
    rng = np.random.default_rng(seed)
    A = random_graph_relation(rng, n)
    assert A.inverse().inverse().equals(A)
    assert A.adjoint().adjoint().equals(A)
    assert A.inverse().adjoint().equals(A.adjoint().inverse())
    B, _ = cone_type_relation(rng, n, rng.standard_normal((n, n)))
    assert B.adjoint().adjoint().equals(B)
    assert B.inverse().inverse().equals(B)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 3))
def test_adjoint_of_sum_is_sum_of_adjoints(seed, n):
    rng = np.random.default_rng(seed)
    M = LinearRelation.from_matrix(rng.standard_normal((n, n)))
    B, _ = cone_type_relation(rng, n, rng.standard_normal((n, n)))
    assert M.add(B).adjoint().equals(M.adjoint().add(B.adjoint()))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(2, 4))
def test_pairing_is_constant_on_images_of_monotone_relations(seed, n):
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((n, n))
    skew = rng.standard_normal((n, n))
    M = P @ P.T + skew - skew.T
    A, L = cone_type_relation(rng, n, M)
    assert A.is_maximal_monotone()
    x = L @ rng.standard_normal(L.shape[1])
    image = A.apply(x)
    assert not image.is_empty
    pairings = [x @ image.sample(rng.standard_normal(image.dim)) for _ in range(5)]
    assert_allclose(pairings, x @ image.point, atol=1e-9 * max(1.0, x @ x))
    assert x @ image.point >= -1e-9
