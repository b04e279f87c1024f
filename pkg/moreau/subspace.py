import logging

import numpy as np
import scipy.linalg

from moreau.calcerror import ValidationError
from moreau.tolerances import resolve

MODULE = 'subspace.py'

# bases must satisfy |B^T B - I|_max <= ORTHONORMAL_TOL
ORTHONORMAL_TOL = 1e-10

# error messages
DIMENSION_MISMATCH = 'Ambient dimensions do not match'
NOT_ORTHONORMAL = 'Basis columns are not orthonormal'
EMPTY_SPAN_NEEDS_DIM = 'An empty span needs its ambient dimension'
NOT_A_MATRIX = 'Expected a two dimensional array'

logger = logging.getLogger(__name__)


def as_vector(x, n=None, function='as_vector'):
    """
    Converts x into a 1-D float array and, when n is given, checks its
    length.  Shared by every module that accepts points of R^n.
    """
    v = np.asarray(x, dtype=float).reshape(-1)
    if n is not None and v.shape[0] != n:
        raise ValidationError(
            MODULE, function, DIMENSION_MISMATCH,
            'vector of length %i' % n, 'length %i' % v.shape[0], ''
                             )
    return v


def as_matrix(M, function='as_matrix'):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValidationError(
            MODULE, function, NOT_A_MATRIX, '2-D array',
            'array with %i dimensions' % M.ndim, ''
                             )
    return M


class Subspace(object):
    """
    The Subspace class represents a linear subspace of R^d by a d x k matrix
    with orthonormal columns.  The zero subspace has k = 0 and an empty
    basis, never a zero column.  Subspaces are immutable: the basis array
    is read-only and every operation returns a new object.

    Two Subspace objects describe the same subspace when each basis
    projects onto the other with a small residual; use equals() rather
    than comparing bases, which are not unique.

    Attributes:
        ambient_dim: d, the dimension of the surrounding space.
            type: int
            scope: protected
        basis: Orthonormal basis columns.
            type: numpy.ndarray, shape (d, k)
            scope: protected
        dim: k, the dimension of the subspace.
            type: int
            scope: protected

    Usage:
        x_axis = Subspace.span([[1.0, 0.0]])
        y_axis = x_axis.complement()
        plane = x_axis.sum(y_axis)
    """

    def __init__(self, basis, check=True):
        """
        __init__ wraps an orthonormal basis.  Most callers should build
        subspaces with span(), from_columns(), zero() or full() instead,
        which orthonormalize for you.

        Parameters:
            basis: a d x k array with orthonormal columns
                type: array_like
                default: none
                required: yes
            check: verify orthonormality of the columns
                type: bool
                default: True
                required: no

        Return Values:
            Subspace object: the new subspace

        Usage:
            s = Subspace(np.eye(3)[:, :2])
        """
        basis = np.array(as_matrix(basis, '__init__'), dtype=float)
        if check and basis.shape[1] > 0:
            defect = np.max(np.abs(basis.T @ basis - np.eye(basis.shape[1])))
            if defect > ORTHONORMAL_TOL:
                raise ValidationError(
                    MODULE, '__init__', NOT_ORTHONORMAL,
                    '|B^T B - I| <= %g' % ORTHONORMAL_TOL, '%g' % defect, ''
                                     )
        basis.setflags(write=False)
        self.__basis = basis

# end __init__()

    @classmethod
    def zero(cls, ambient_dim):
        return cls(np.zeros((int(ambient_dim), 0)), check=False)

    @classmethod
    def full(cls, ambient_dim):
        return cls(np.eye(int(ambient_dim)), check=False)

    @classmethod
    def from_columns(cls, M, tol=None, reference=None):
        """
        from_columns returns the span of the columns of M.  The dimension is
        decided by the singular values of M: those at least
        rank_rel_tol * reference count, where reference defaults to
        sigma_max.  Pass reference when M is a known map applied to an
        orthonormal basis, so that columns which are all rounding noise
        are dropped instead of rescaled.

        Parameters:
            M: a d x m matrix, m may be zero
                type: array_like
                default: none
                required: yes
            tol: thresholds to use
                type: Tolerances
                default: package defaults
                required: no
            reference: scale the singular values are measured against
                type: float
                default: sigma_max of M
                required: no

        Return Values:
            Subspace object: span of the columns

        Usage:
            s = Subspace.from_columns(np.array([[1.0, 2.0], [0.0, 0.0]]))
            s.dim   # 1
        """
        tol = resolve(tol)
        M = as_matrix(M, 'from_columns')
        d, m = M.shape
        if m == 0 or d == 0:
            return cls.zero(d)
        U, s, _ = np.linalg.svd(M, full_matrices=False)
        if s[0] == 0.0:
            return cls.zero(d)
        if reference is None:
            reference = s[0]
        rank = int(np.sum(s >= tol.rank_rel_tol * reference))
        logger.debug('span of %i vectors in R^%i has rank %i (sigma = %s)',
                     m, d, rank, s)
        return cls(U[:, :rank], check=False)

# end from_columns()

    @classmethod
    def span(cls, vectors, tol=None, ambient_dim=None):
        """
        span returns the subspace spanned by a list of vectors sharing one
        ambient dimension.  The empty list needs ambient_dim.

        Parameters:
            vectors: the spanning vectors
                type: list of array_like
                default: none
                required: yes
            tol: thresholds to use
                type: Tolerances
                default: package defaults
                required: no
            ambient_dim: dimension of the space, required for an empty list
                type: int
                default: None
                required: only for an empty list

        Return Values:
            Subspace object: the span

        Usage:
            Subspace.span([[1, 0], [2, 0]]).dim    # 1
            Subspace.span([], ambient_dim=2).dim   # 0
        """
        vectors = [as_vector(v, function='span') for v in vectors]
        if not vectors:
            if ambient_dim is None:
                raise ValidationError(
                    MODULE, 'span', EMPTY_SPAN_NEEDS_DIM,
                    'ambient_dim', 'None', 'pass ambient_dim=d'
                                     )
            return cls.zero(ambient_dim)
        d = vectors[0].shape[0]
        for v in vectors:
            if v.shape[0] != d:
                raise ValidationError(
                    MODULE, 'span', DIMENSION_MISMATCH,
                    'vectors of length %i' % d, 'length %i' % v.shape[0], ''
                                     )
        if ambient_dim is not None and ambient_dim != d:
            raise ValidationError(
                MODULE, 'span', DIMENSION_MISMATCH,
                'ambient_dim %i' % d, 'ambient_dim %i' % ambient_dim, ''
                                 )
        return cls.from_columns(np.column_stack(vectors), tol)

# end span()

    def __str__(self):
        return 'Subspace(dim=%i, ambient_dim=%i)' % (self.dim, self.ambient_dim)

    __repr__ = __str__

    @property
    def basis(self):
        """
        Get method basis returns the read-only orthonormal basis.

        Return Values:
            numpy.ndarray: d x k basis matrix
        """
        return self.__basis

    @property
    def ambient_dim(self):
        return self.__basis.shape[0]

    @property
    def dim(self):
        return self.__basis.shape[1]

    def _check_same_space(self, other, function):
        if self.ambient_dim != other.ambient_dim:
            raise ValidationError(
                MODULE, function, DIMENSION_MISMATCH,
                'R^%i' % self.ambient_dim, 'R^%i' % other.ambient_dim, ''
                                 )

    def complement(self, tol=None):
        """
        complement returns the orthogonal complement S^perp, so that
        dim S + dim S^perp = ambient_dim.

        Usage:
            Subspace.span([[1, 0]]).complement()   # the y-axis
        """
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        if self.dim == self.ambient_dim:
            return Subspace.zero(self.ambient_dim)
        # the columns of the basis are orthonormal so every singular value
        # of B^T is one and the null space has dimension d - k exactly
        perp = scipy.linalg.null_space(self.__basis.T)
        return Subspace(perp, check=False)

# end complement()

    def sum(self, other, tol=None):
        """
        sum returns S1 + S2, the span of both bases together.
        """
        self._check_same_space(other, 'sum')
        return Subspace.from_columns(
            np.hstack([self.__basis, other.basis]), tol
                                    )

    def intersect(self, other, tol=None):
        """
        intersect returns S1 n S2 computed as (S1^perp + S2^perp)^perp.
        """
        self._check_same_space(other, 'intersect')
        joined = self.complement(tol).sum(other.complement(tol), tol)
        return joined.complement(tol)

    def project(self, x):
        """
        project returns P_S x = B (B^T x), the nearest point of S to x.

        Usage:
            Subspace.span([[1, 0]]).project([3, 4])   # array([3., 0.])
        """
        x = as_vector(x, self.ambient_dim, 'project')
        return self.__basis @ (self.__basis.T @ x)

    def projector(self):
        """
        projector returns the d x d orthogonal projector B B^T.
        """
        return self.__basis @ self.__basis.T

    def residual(self, x):
        """
        residual returns |x - P_S x|, the distance from x to S.
        """
        x = as_vector(x, self.ambient_dim, 'residual')
        return float(np.linalg.norm(x - self.project(x)))

    def contains(self, x, tol=None):
        """
        contains tests x in S by residual <= value_tol * max(1, |x|).
        """
        tol = resolve(tol)
        x = as_vector(x, self.ambient_dim, 'contains')
        return self.residual(x) <= tol.value_tol * max(1.0, np.linalg.norm(x))

    def contains_subspace(self, other, tol=None):
        """
        contains_subspace tests other <= self column by column.
        """
        self._check_same_space(other, 'contains_subspace')
        return all(self.contains(col, tol) for col in other.basis.T)

    def equals(self, other, tol=None):
        """
        equals decides subspace equality by mutual projection residuals,
        which does not depend on the choice of bases.
        """
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return self.contains_subspace(other, tol) and \
            other.contains_subspace(self, tol)

    def image(self, M, tol=None):
        """
        image returns M(S), the span of M applied to the basis.  M may be
        rectangular; the result lives in R^(rows of M).

        Usage:
            # domain of a relation: first block of its graph
            dom = graph.image(np.hstack([np.eye(n), np.zeros((n, n))]))
        """
        M = as_matrix(M, 'image')
        if M.shape[1] != self.ambient_dim:
            raise ValidationError(
                MODULE, 'image', DIMENSION_MISMATCH,
                '%i columns' % self.ambient_dim, '%i columns' % M.shape[1], ''
                                 )
        if self.dim == 0:
            return Subspace.zero(M.shape[0])
        return Subspace.from_columns(M @ self.__basis, tol,
                                     reference=np.linalg.norm(M, 2))

# end class Subspace()


def pinv(M, tol=None, reference=None):
    """
    pinv returns the Moore-Penrose inverse of M from its singular value
    decomposition.  Singular values below rank_rel_tol * reference are
    treated as zero, reference defaulting to sigma_max, so the four Penrose
    equations
        M M+ M = M,  M+ M M+ = M+,  (M M+)^T = M M+,  (M+ M)^T = M+ M
    hold to rounding error.

    Parameters:
        M: an m x n matrix
            type: array_like
            default: none
            required: yes
        tol: thresholds to use
            type: Tolerances
            default: package defaults
            required: no

    Return Values:
        numpy.ndarray: the n x m pseudoinverse

    Usage:
        pinv(np.diag([2.0, 0.0]))   # diag(0.5, 0)
    """
    tol = resolve(tol)
    M = as_matrix(np.atleast_2d(M), 'pinv')
    if M.size == 0:
        return np.zeros(M.T.shape)
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros(M.T.shape)
    if reference is None:
        reference = s[0]
    keep = s >= tol.rank_rel_tol * reference
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    return (Vt.T * s_inv) @ U.T

# end pinv()

# begin unit test


if __name__ == '__main__':

    x_axis = Subspace.span([[1.0, 0.0], [2.0, 0.0]])
    y_axis = x_axis.complement()

    print('Subspace:')
    print()
    print('  x_axis              = ' + str(x_axis))
    print('  x_axis.basis        = ' + str(x_axis.basis.T))
    print('  complement          = ' + str(y_axis.basis.T))
    print('  sum                 = ' + str(x_axis.sum(y_axis)))
    print('  intersect           = ' + str(x_axis.intersect(y_axis)))
    print('  project((3, 4))     = ' + str(x_axis.project([3.0, 4.0])))
    print('  pinv(diag(2, 0))    = ' + str(pinv(np.diag([2.0, 0.0]))))
    print()
    print('Subspace: unit test complete.')
