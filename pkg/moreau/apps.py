import logging
import math

import numpy as np

from moreau.calcerror import ValidationError
from moreau.extreal import ExtReal
from moreau.glq import GlqFunction
from moreau.linrel import LinearRelation
from moreau.subspace import Subspace, \
                            as_matrix, \
                            as_vector, \
                            pinv
from moreau.tolerances import resolve

MODULE = 'apps.py'

# slack of the Cauchy-Schwarz probe, relative to the size of both sides
CAUCHY_SCHWARZ_SLACK = 1e-12

# error messages
OUT_OF_DOMAIN = 'Argument outside the required subspace'
SHAPE_MISMATCH = 'M and b have incompatible shapes'

logger = logging.getLogger(__name__)


def _root(value):
    # sqrt(2 q) on (-inf, +inf]; rounding may leave q a hair below zero
    if not value.is_finite:
        return ExtReal.infinity()
    return ExtReal(math.sqrt(max(0.0, 2.0 * value.value)))


class ExtendedSeminorm(object):
    """
    Class ExtendedSeminorm is k = (2 q_A)^(1/2) for a maximally monotone
    symmetric relation A: a seminorm on dom A, +inf outside it, with zero
    set A^-1 0.  Its polar is k° = (2 q_A^-1)^(1/2) and the two satisfy
    the Cauchy-Schwarz inequality <x, y> <= k(x) k°(y).

    Every value goes through GlqFunction.evaluate, so the domain handling
    is that of q_A.

    Attributes:
        relation: A.
            type: LinearRelation
            scope: protected

    Usage:
        k = ExtendedSeminorm(LinearRelation.from_matrix(np.diag([1.0, 0.0])))
        k.seminorm_eval([3.0, 5.0])    # 3.0
        k.seminorm_polar_eval([1.0, 1.0])   # inf
    """

    def __init__(self, relation, tol=None):
        self.__tol = resolve(tol)
        self.__q = GlqFunction(relation, tol=self.__tol)
        self.__q_polar = self.__q.conjugate(self.__tol)

    @property
    def relation(self):
        return self.__q.relation

    @property
    def n(self):
        return self.__q.n

    def seminorm_eval(self, x):
        """
        seminorm_eval returns k(x) = sqrt(2 q_A(x)), +inf outside dom A.
        """
        return _root(self.__q.evaluate(x, self.__tol))

    def seminorm_polar_eval(self, y):
        """
        seminorm_polar_eval returns k°(y) = sqrt(2 q_A^-1(y)), +inf outside ran A.
        """
        return _root(self.__q_polar.evaluate(y, self.__tol))

    def zero_set(self):
        """
        zero_set returns k^-1(0) = A^-1 0.
        """
        return self.__q.relation.kernel(self.__tol)

    def seminorm_cauchy_schwarz_check(self, x, y):
        """
        seminorm_cauchy_schwarz_check returns whether
        <x, y> <= sqrt(<x, Ax>) sqrt(<y, A^-1 y>) holds for x in dom A and
        y in ran A, within CAUCHY_SCHWARZ_SLACK.
        """
        x = as_vector(x, self.n, 'seminorm_cauchy_schwarz_check')
        y = as_vector(y, self.n, 'seminorm_cauchy_schwarz_check')
        relation = self.__q.relation
        for name, point, space in (('x', x, relation.dom(self.__tol)),
                                   ('y', y, relation.ran(self.__tol))):
            if not space.contains(point, self.__tol):
                raise ValidationError(
                    MODULE, 'seminorm_cauchy_schwarz_check', OUT_OF_DOMAIN,
                    '%s in %s' % (name, 'dom A' if name == 'x' else 'ran A'),
                    str(point.tolist()), ''
                                     )
        lhs = float(x @ y)
        rhs = self.seminorm_eval(x).value * self.seminorm_polar_eval(y).value
        return lhs <= rhs + CAUCHY_SCHWARZ_SLACK * max(1.0, abs(lhs), rhs)

    def polar_set_membership(self, x, dual=False):
        """
        polar_set_membership tests x in C = {q_A <= 1}, or with dual set
        x in C* = {q_A^-1 <= 1}.  The two sets are polar to each other.
        """
        q = self.__q_polar if dual else self.__q
        return q.evaluate(x, self.__tol) <= ExtReal(1.0)

# end class ExtendedSeminorm()


class LeastSquaresProblem(object):
    """
    Class LeastSquaresProblem is the objective l(x) = 1/2 |Mx - b|^2 for a
    possibly rectangular and rank-deficient M.  As a GLQ function
    l = (M^T M, 0, -M^T b, 1/2 |b|^2), so its conjugate is

        l*(y) = q_(M^T M)^-1 (y + M^T b) - 1/2 |b|^2,

    finite exactly on ran M^T.

    Attributes:
        M: the m x n design matrix.
            type: numpy.ndarray
            scope: protected
        b: the right hand side in R^m.
            type: numpy.ndarray
            scope: protected

    Usage:
        p = LeastSquaresProblem([[1.0, 0.0], [0.0, 0.0]], [1.0, 1.0])
        p.lstsq_min_norm_solution()   # [1, 0]
        p.lstsq_domain().dim          # 1
    """

    def __init__(self, M, b, tol=None):
        M = np.array(as_matrix(M, 'LeastSquaresProblem'))
        b = np.array(as_vector(b, function='LeastSquaresProblem'))
        if M.shape[0] != b.shape[0]:
            raise ValidationError(
                MODULE, 'LeastSquaresProblem', SHAPE_MISMATCH,
                'b of length %i' % M.shape[0], 'length %i' % b.shape[0], ''
                                 )
        M.setflags(write=False)
        b.setflags(write=False)
        self.__M = M
        self.__b = b
        self.__tol = resolve(tol)

    @property
    def M(self):
        return self.__M

    @property
    def b(self):
        return self.__b

    @property
    def n(self):
        return self.__M.shape[1]

    def as_glq(self):
        """
        Returns l as a GlqFunction.
        """
        M, b = self.__M, self.__b
        return GlqFunction(LinearRelation.from_matrix(M.T @ M, self.__tol),
                           None, -M.T @ b, 0.5 * float(b @ b), self.__tol)

    def lstsq_conjugate(self):
        return self.as_glq().conjugate(self.__tol)

    def lstsq_domain(self):
        """
        Returns dom l* = ran M^T.
        """
        domain = Subspace.from_columns(self.__M.T, self.__tol)
        logger.debug('lstsq_domain: rank M = %i of %i', domain.dim, self.n)
        return domain

    def lstsq_min_norm_solution(self):
        """
        Returns x = M^+ b, the least squares solution of least norm.  It
        solves M^T M x = M^T b and is orthogonal to ker M.
        """
        return pinv(self.__M, self.__tol) @ self.__b

    def conjugate_closed_form(self, y):
        """
        Evaluates l*(y) = 1/2 <z, (M^T M)^+ z> - 1/2 |b|^2, z = y + M^T b,
        directly from the pseudoinverse; +inf off ran M^T.
        """
        y = as_vector(y, self.n, 'conjugate_closed_form')
        M, b = self.__M, self.__b
        z = y + M.T @ b
        if not self.lstsq_domain().contains(y, self.__tol):
            return ExtReal.infinity()
        gram = pinv(M.T @ M, self.__tol)
        return ExtReal(0.5 * z @ gram @ z - 0.5 * float(b @ b))

# end class LeastSquaresProblem()
