import logging

import numpy as np

from moreau.calcerror import ValidationError
from moreau.subspace import Subspace, \
                            as_matrix, \
                            as_vector, \
                            pinv
from moreau.tolerances import resolve

MODULE = 'linrel.py'

# error messages
DIMENSION_MISMATCH = 'Relations or vectors live in different spaces'
NOT_SQUARE = 'A linear relation on R^n needs an n x n matrix'
BAD_GRAPH = 'Graph must be a subspace of R^(2n)'
NOT_MAXIMAL_MONOTONE = 'Relation is not maximally monotone'
ILLEGAL_SCALE = 'Scale factor must be strictly positive'

MAXIMAL_MONOTONE_RESOLUTION = \
    'Resolvents and Moore-Penrose inverses need a maximally monotone relation; check is_maximal_monotone() first'

logger = logging.getLogger(__name__)


class AffineSet(object):
    """
    Class AffineSet is the value type of set-valued evaluation: a
    particular point plus a direction subspace, or the empty set.  Relations
    return one from apply(), GLQ functions from subdifferential().

    Attributes:
        n: dimension of the ambient space.
            type: int
            scope: protected
        is_empty: True for the empty set.
            type: bool
            scope: protected
        point: The particular point; None when empty.
            type: numpy.ndarray
            scope: protected
        directions: The direction subspace; None when empty.
            type: Subspace
            scope: protected

    Usage:
        s = AffineSet(2, point=[1.0, 0.0], directions=Subspace.span([[0, 1]]))
        s.contains([1.0, 7.0])   # True
    """

    def __init__(self, n, point=None, directions=None):
        """
        __init__ builds the set point + directions.  Leave point as None to
        build the empty set.  directions defaults to the zero subspace,
        i.e. a singleton.
        """
        self.__n = int(n)
        if point is None:
            self.__point = None
            self.__directions = None
            return
        point = np.array(as_vector(point, self.__n, '__init__'))
        point.setflags(write=False)
        if directions is None:
            directions = Subspace.zero(self.__n)
        elif directions.ambient_dim != self.__n:
            raise ValidationError(
                MODULE, 'AffineSet', DIMENSION_MISMATCH,
                'R^%i' % self.__n, 'R^%i' % directions.ambient_dim, ''
                                 )
        self.__point = point
        self.__directions = directions

    @classmethod
    def empty(cls, n):
        return cls(n)

    def __str__(self):
        if self.is_empty:
            return 'AffineSet(empty)'
        return 'AffineSet(point=%s, dim=%i)' % (self.__point, self.dim)

    __repr__ = __str__

    @property
    def n(self):
        return self.__n

    @property
    def is_empty(self):
        return self.__point is None

    @property
    def point(self):
        return self.__point

    @property
    def directions(self):
        return self.__directions

    @property
    def dim(self):
        """
        Get method dim returns the dimension of the set, -1 when empty.
        """
        if self.is_empty:
            return -1
        return self.__directions.dim

    def residual(self, x):
        """
        residual returns the distance from x to the set, +inf when empty.
        """
        x = as_vector(x, self.__n, 'residual')
        if self.is_empty:
            return float('inf')
        return self.__directions.residual(x - self.__point)

    def contains(self, x, tol=None):
        """
        contains tests membership: |(x - p) - P_D(x - p)| <= value_tol,
        scaled by max(1, |x|).
        """
        tol = resolve(tol)
        x = as_vector(x, self.__n, 'contains')
        if self.is_empty:
            return False
        return self.residual(x) <= tol.value_tol * max(1.0, np.linalg.norm(x))

    def minimum_norm_element(self):
        """
        Returns the element of least Euclidean norm, None when empty.
        """
        if self.is_empty:
            return None
        return self.__point - self.__directions.project(self.__point)

    def translate(self, v):
        """
        Returns the set v + self; the empty set stays empty.
        """
        v = as_vector(v, self.__n, 'translate')
        if self.is_empty:
            return self
        return AffineSet(self.__n, self.__point + v, self.__directions)

    def sample(self, coefficients):
        """
        Returns point + D c for a coefficient vector c of length dim.
        """
        c = as_vector(coefficients, self.dim, 'sample')
        return self.__point + self.__directions.basis @ c

# end class AffineSet()


class LinearRelation(object):
    """
    The LinearRelation class represents a set-valued linear map
    A: R^n => R^n by its graph, a subspace of R^(2n).  The first n
    coordinates of a graph vector are the input block and the last n the
    output block, so (x, y) is in gra A exactly when y is in Ax.

    Matrices, normal cones of subspaces and the inverse of a singular
    matrix are all linear relations.  The class offers application,
    inverse, adjoint, sums, positive multiples, the symmetric part,
    resolvents and the Moore-Penrose reconciliation, together with the
    monotone / symmetric / maximal monotone predicates that the rest of
    the package relies on.

    Attributes:
        n: dimension of the underlying space.
            type: int
            scope: protected
        graph: gra A as a subspace of R^(2n).
            type: Subspace
            scope: protected

    Usage:
        A = LinearRelation.from_matrix(np.diag([1.0, 0.0]))
        A.apply([3.0, 4.0])                 # {(3, 0)}
        A.inverse().apply([1.0, 0.0])       # (1, 0) + {0} x R
    """

    def __init__(self, n, graph):
        """
        __init__ wraps a graph subspace.  Use from_matrix(),
        from_graph_basis() or normal_cone_of() for the common cases.

        Parameters:
            n: dimension of the space the relation acts on
                type: int
                default: none
                required: yes
            graph: the graph, a subspace of R^(2n)
                type: Subspace
                default: none
                required: yes

        Return Values:
            LinearRelation object: the new relation
        """
        n = int(n)
        if n < 1 or graph.ambient_dim != 2 * n:
            raise ValidationError(
                MODULE, '__init__', BAD_GRAPH,
                'subspace of R^%i' % (2 * n), str(graph), ''
                                 )
        self.__n = n
        self.__graph = graph

# end __init__()

    @classmethod
    def from_matrix(cls, M, tol=None):
        """
        from_matrix returns the single-valued relation x -> Mx with
        gra = span{(e_i, M e_i)} and full domain.

        Usage:
            LinearRelation.from_matrix(np.eye(2)).apply([3, 4])   # {(3, 4)}
        """
        M = as_matrix(M, 'from_matrix')
        if M.shape[0] != M.shape[1] or M.shape[0] == 0:
            raise ValidationError(
                MODULE, 'from_matrix', NOT_SQUARE,
                'n x n matrix', 'shape %s' % (M.shape,), ''
                                 )
        n = M.shape[0]
        return cls(n, Subspace.from_columns(np.vstack([np.eye(n), M]), tol))

    @classmethod
    def from_graph_basis(cls, n, columns, tol=None):
        """
        from_graph_basis returns the relation whose graph is spanned by the
        given columns of R^(2n).  The columns need not be independent.
        """
        G = as_matrix(columns, 'from_graph_basis')
        if G.shape[0] != 2 * int(n):
            raise ValidationError(
                MODULE, 'from_graph_basis', BAD_GRAPH,
                '%i rows' % (2 * int(n)), '%i rows' % G.shape[0], ''
                                 )
        return cls(n, Subspace.from_columns(G, tol))

    @classmethod
    def normal_cone_of(cls, L, tol=None):
        """
        normal_cone_of returns N_L with gra N_L = L x L^perp, a maximally
        monotone symmetric relation.  N_{0} maps 0 to all of R^n and every
        other point to the empty set; N_{R^n} is the zero map.
        """
        n = L.ambient_dim
        perp = L.complement(tol)
        basis = np.vstack([
            np.hstack([L.basis, np.zeros((n, perp.dim))]),
            np.hstack([np.zeros((n, L.dim)), perp.basis])
        ])
        return cls(n, Subspace(basis, check=False))

    @classmethod
    def scaled_identity(cls, n, lam, tol=None):
        return cls.from_matrix(float(lam) * np.eye(int(n)), tol)

    @classmethod
    def zero_map(cls, n, tol=None):
        return cls.from_matrix(np.zeros((int(n), int(n))), tol)

    def __str__(self):
        return 'LinearRelation(n=%i, graph_dim=%i)' % (self.__n, self.__graph.dim)

    __repr__ = __str__

    @property
    def n(self):
        return self.__n

    @property
    def graph(self):
        """
        Get method graph returns gra A as a Subspace of R^(2n).
        """
        return self.__graph

    @property
    def input_block(self):
        return self.__graph.basis[:self.__n]

    @property
    def output_block(self):
        return self.__graph.basis[self.__n:]

    def _check_n(self, other, function):
        if self.__n != other.n:
            raise ValidationError(
                MODULE, function, DIMENSION_MISMATCH,
                'n = %i' % self.__n, 'n = %i' % other.n, ''
                                 )

    def _input_selector(self):
        return np.hstack([np.eye(self.__n), np.zeros((self.__n, self.__n))])

    def _output_selector(self):
        return np.hstack([np.zeros((self.__n, self.__n)), np.eye(self.__n)])

    def dom(self, tol=None):
        """
        dom returns dom A, the projection of the graph on the input block.
        """
        return self.__graph.image(self._input_selector(), tol)

    def ran(self, tol=None):
        """
        ran returns ran A, the projection of the graph on the output block.
        """
        return self.__graph.image(self._output_selector(), tol)

    def multivalued_part(self, tol=None):
        """
        multivalued_part returns A0 = {y : (0, y) in gra A}.  Every
        nonempty Ax is a translate of A0.
        """
        vertical = Subspace(
            np.vstack([np.zeros((self.__n, self.__n)), np.eye(self.__n)]),
            check=False
                           )
        return self.__graph.intersect(vertical, tol).image(
            self._output_selector(), tol
                                                          )

    def kernel(self, tol=None):
        """
        kernel returns A^-1 0 = {x : 0 in Ax}.
        """
        return self.inverse().multivalued_part(tol)

    def apply(self, x, tol=None):
        """
        apply returns Ax = {y : (x, y) in gra A} as an AffineSet.  The set
        is empty when x is outside dom A; otherwise its point is the
        minimum-norm element and its directions are A0.

        Parameters:
            x: a point of R^n
                type: array_like
                default: none
                required: yes
            tol: thresholds to use
                type: Tolerances
                default: package defaults
                required: no

        Return Values:
            AffineSet: the image set

        Usage:
            N0 = LinearRelation.normal_cone_of(Subspace.zero(1))
            N0.apply([0.0])   # all of R
            N0.apply([1.0])   # empty
        """
        tol = resolve(tol)
        x = as_vector(x, self.__n, 'apply')
        Gx = self.input_block
        Gy = self.output_block
        # the basis is orthonormal, so |Gx| <= 1 is the natural scale
        coeffs = pinv(Gx, tol, reference=1.0) @ x
        miss = np.linalg.norm(Gx @ coeffs - x)
        if miss > tol.value_tol * max(1.0, np.linalg.norm(x)):
            logger.debug('apply: x outside dom A (residual %g)', miss)
            return AffineSet.empty(self.__n)
        y = Gy @ coeffs
        A0 = self.multivalued_part(tol)
        return AffineSet(self.__n, y - A0.project(y), A0)

# end apply()

    def inverse(self):
        """
        inverse returns A^-1 by swapping the graph blocks.
        """
        swapped = np.vstack([self.output_block, self.input_block])
        return LinearRelation(self.__n, Subspace(swapped, check=False))

    def adjoint(self, tol=None):
        """
        adjoint returns A* with gra A* = {(u, v) : (v, -u) in (gra A)^perp},
        i.e. the image of (gra A)^perp under (p, q) -> (-q, p).
        """
        perp = self.__graph.complement(tol).basis
        rotated = np.vstack([-perp[self.__n:], perp[:self.__n]])
        return LinearRelation(self.__n, Subspace(rotated, check=False))

    def _pairing(self):
        # K[i, j] = <x_i, y_j> over the graph basis pairs (x_i, y_i)
        return self.input_block.T @ self.output_block

    def _selection(self, tol):
        # matrix of a linear selection x -> y in Ax on dom A
        return self.output_block @ pinv(self.input_block, tol, reference=1.0)

    def is_monotone(self, tol=None):
        """
        is_monotone tests <x, y> >= 0 on the graph in two ways.  The
        symmetric part of the pairing over the orthonormal graph basis must
        be positive semidefinite, A0 must be orthogonal to dom A so that
        <x, Ax> is single valued, and the symmetric part of a selection of
        A restricted to dom A must be positive semidefinite relative to its
        norm.  The last test catches steep directions such as x -> -kx for
        large k, whose unit graph vectors pair to about -1/k.

        Usage:
            LinearRelation.from_matrix([[-2e9]]).is_monotone()   # False
        """
        tol = resolve(tol)
        if self.__graph.dim == 0:
            return True
        K = self._pairing()
        lowest = np.linalg.eigvalsh(0.5 * (K + K.T))[0]
        if lowest < -tol.psd_tol:
            logger.debug('is_monotone: lowest eigenvalue %g', lowest)
            return False
        D = self.dom(tol).basis
        if D.shape[1] == 0:
            return True
        A0 = self.multivalued_part(tol)
        if A0.dim > 0 and np.max(np.abs(D.T @ A0.basis)) > tol.psd_tol:
            return False
        restricted = D.T @ self._selection(tol) @ D
        lowest = np.linalg.eigvalsh(0.5 * (restricted + restricted.T))[0]
        scale = max(1.0, np.linalg.norm(restricted, 2))
        if lowest < -tol.psd_tol * scale:
            logger.debug('is_monotone: selection eigenvalue %g at scale %g',
                         lowest, scale)
            return False
        return True

    def is_symmetric(self, tol=None):
        """
        is_symmetric tests <x, y'> = <y, x'> for every pair of graph
        elements (x, x'), (y, y').
        """
        tol = resolve(tol)
        if self.__graph.dim == 0:
            return True
        K = self._pairing()
        return np.max(np.abs(K - K.T)) <= tol.psd_tol

    def is_maximal_monotone(self, tol=None):
        """
        is_maximal_monotone tests monotonicity plus ran(Id + A) = R^n.  For
        a linear relation one positive multiple suffices.
        """
        if not self.is_monotone(tol):
            return False
        summed = Subspace.from_columns(self.input_block + self.output_block, tol)
        return summed.dim == self.__n

    def add(self, other, tol=None):
        """
        add returns A1 + A2 with gra = {(x, y1 + y2) : y1 in A1x, y2 in A2x}.
        The graphs are lifted to R^(3n) as {(x, y1, y2)}, intersected, and
        mapped back by (x, y1, y2) -> (x, y1 + y2), so that empty and
        degenerate domains need no special cases.

        Usage:
            I = LinearRelation.from_matrix(np.eye(2))
            I.add(I).equals(LinearRelation.from_matrix(2 * np.eye(2)))
        """
        self._check_n(other, 'add')
        n = self.__n
        Z = np.zeros((n, n))
        I = np.eye(n)
        G1, G2 = self.__graph.basis, other.graph.basis
        k1, k2 = G1.shape[1], G2.shape[1]
        lifted1 = np.vstack([
            np.hstack([G1[:n], Z]),
            np.hstack([G1[n:], Z]),
            np.hstack([np.zeros((n, k1)), I])
        ])
        lifted2 = np.vstack([
            np.hstack([G2[:n], Z]),
            np.hstack([np.zeros((n, k2)), I]),
            np.hstack([G2[n:], Z])
        ])
        common = Subspace(lifted1, check=False).intersect(
            Subspace(lifted2, check=False), tol
                                                        )
        collapse = np.vstack([np.hstack([I, Z, Z]), np.hstack([Z, I, I])])
        return LinearRelation(n, common.image(collapse, tol))

# end add()

    def _scaled(self, lam, tol=None):
        G = np.vstack([self.input_block, lam * self.output_block])
        return LinearRelation(self.__n, Subspace.from_columns(G, tol))

    def scale(self, lam, tol=None):
        """
        scale returns lam A for lam > 0, multiplying the output block.
        """
        if not lam > 0.0:
            raise ValidationError(
                MODULE, 'scale', ILLEGAL_SCALE, 'lam > 0', str(lam), ''
                                 )
        return self._scaled(float(lam), tol)

    def negative(self, tol=None):
        """
        negative returns -A, the output block times -1.  Used for
        differences A1 - A2 = A1 + (-A2).
        """
        return self._scaled(-1.0, tol)

    def subtract(self, other, tol=None):
        return self.add(other.negative(tol), tol)

    def symmetric_part(self, tol=None):
        """
        symmetric_part returns A_+ = (A + A*) / 2.
        """
        return self.add(self.adjoint(tol), tol).scale(0.5, tol)

    def _require_maximal(self, function, tol):
        if not self.is_maximal_monotone(tol):
            raise ValidationError(
                MODULE, function, NOT_MAXIMAL_MONOTONE,
                'maximally monotone relation', str(self),
                MAXIMAL_MONOTONE_RESOLUTION
                                 )

    def resolvent(self, tol=None):
        """
        resolvent returns J_A = (Id + A)^-1 as an n x n matrix.  Its graph
        is {(x + y, x) : (x, y) in gra A}; for a maximally monotone A the
        map is single valued with full domain and firmly nonexpansive.

        Return Values:
            numpy.ndarray: the matrix of J_A

        Usage:
            LinearRelation.scaled_identity(2, 3.0).resolvent()   # I / 4
        """
        tol = resolve(tol)
        self._require_maximal('resolvent', tol)
        U = self.input_block + self.output_block
        J = self.input_block @ pinv(U, tol)
        logger.debug('resolvent: |J| = %g', np.linalg.norm(J, 2))
        return J

# end resolvent()

    def moore_penrose(self, tol=None):
        """
        moore_penrose returns A^dagger = P_ran A A^-1 P_ran A, the matrix
        taking x to the projection onto ran A of the minimum-norm element
        of A^-1(P_ran A x).  On ran A, A^-1 x = A^dagger x + (ran A)^perp.

        Usage:
            A = LinearRelation.from_matrix(np.diag([2.0, 0.0]))
            A.moore_penrose()   # diag(0.5, 0)
        """
        tol = resolve(tol)
        self._require_maximal('moore_penrose', tol)
        ran = self.ran(tol)
        inv = self.inverse()
        columns = []
        for e in np.eye(self.__n):
            image = inv.apply(ran.project(e), tol)
            columns.append(ran.project(image.point))
        return np.column_stack(columns)

# end moore_penrose()

    def equals(self, other, tol=None):
        """
        equals compares graphs as subspaces.
        """
        return self.__n == other.n and self.__graph.equals(other.graph, tol)

# end class LinearRelation()


def firm_nonexpansiveness_defect(J, xs, ys):
    """
    Returns max over the sample pairs of |Jx - Jy|^2 - <x - y, Jx - Jy>.
    A firmly nonexpansive J gives a value <= 0 up to rounding.

    Parameters:
        J: n x n matrix, or any callable taking R^n to R^n
        xs, ys: m x n arrays of sample points, paired by row
    """
    if callable(J):
        images_x = np.array([J(x) for x in xs])
        images_y = np.array([J(y) for y in ys])
    else:
        J = np.asarray(J, dtype=float)
        images_x = np.asarray(xs) @ J.T
        images_y = np.asarray(ys) @ J.T
    step = images_x - images_y
    gap = np.sum(step * step, axis=1) - \
        np.sum((np.asarray(xs) - np.asarray(ys)) * step, axis=1)
    return float(np.max(gap))
