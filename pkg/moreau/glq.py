import logging

import numpy as np

from moreau import ILLEGAL_PROX_PARAMETER
from moreau.calcerror import InfeasibleError, \
                             ValidationError
from moreau.extreal import ExtReal
from moreau.linrel import LinearRelation
from moreau.subspace import Subspace, \
                            as_matrix, \
                            as_vector
from moreau.tolerances import resolve

MODULE = 'glq.py'

# a quadratic's Q may be off symmetric by this much, relative to its size
SYMMETRY_TOL = 1e-10

# error messages
DIMENSION_MISMATCH = 'Functions or vectors live in different spaces'
NOT_SQUARE = 'Q must be an n x n matrix'
NOT_SYMMETRIC = 'Q is not symmetric'
NOT_PSD = 'Q is not positive semidefinite'
NOT_POSITIVE_DEFINITE = 'Second argument must be a positive definite quadratic'
BAD_RELATION = 'Relation must be maximally monotone and symmetric'
SHIFT_MISMATCH = 'Shifts of the two functions differ'
NONZERO_SHIFT = 'Operation needs shift-free functions (a = 0)'
NONZERO_LINEAR_TERM = 'Operation needs a zero linear term (b = 0)'
LINEAR_TERM_MISMATCH = 'Linear terms of the two functions differ'
DOMAIN_NOT_NESTED = 'dom A1 is not contained in dom A2'
NOT_MONOTONE_DIFFERENCE = 'Difference of the relations is not monotone'
ILLEGAL_SCALE = 'Scale factor must be strictly positive'

# q_Id - q_{N_{R x {0}}} at (0, 1) is 1/2 - inf: the standard counterexample
DIFFERENCE_RESOLUTION = \
    'q_A1 - q_A2 is only a GLQ function when dom A1 <= dom A2 and A1 - A2 is monotone; compare q_Id - q_N(R x {0}) at (0, 1)'

logger = logging.getLogger(__name__)


def _check_prox_parameter(r, function):
    if not r > 0.0:
        raise ValidationError(
            MODULE, function, ILLEGAL_PROX_PARAMETER, 'r > 0', str(r), ''
                             )
    return float(r)


def _scale_of(*arrays):
    return max([1.0] + [float(np.max(np.abs(v))) for v in arrays if np.size(v)])


class QuadraticFunction(object):
    """
    Class QuadraticFunction is a finite convex quadratic
    x -> 1/2 <x, Qx> + <b, x> + c with Q symmetric positive semidefinite.
    Moreau envelopes of GLQ functions come back as QuadraticFunctions and
    envelope inversion takes one as input.

    Attributes:
        Q: symmetric PSD Hessian.
            type: numpy.ndarray
            scope: protected
        b: linear term.
            type: numpy.ndarray
            scope: protected
        c: constant.
            type: float
            scope: protected

    Usage:
        f = QuadraticFunction(np.diag([0.8]), [0.6], 1.1)
        f.evaluate([0.0])    # 1.1
    """

    def __init__(self, Q, b=None, c=0.0, tol=None):
        tol = resolve(tol)
        Q = as_matrix(Q, '__init__')
        if Q.shape[0] != Q.shape[1] or Q.shape[0] == 0:
            raise ValidationError(
                MODULE, 'QuadraticFunction', NOT_SQUARE,
                'n x n', 'shape %s' % (Q.shape,), ''
                                 )
        n = Q.shape[0]
        defect = float(np.max(np.abs(Q - Q.T)))
        if defect > SYMMETRY_TOL * _scale_of(Q):
            raise ValidationError(
                MODULE, 'QuadraticFunction', NOT_SYMMETRIC,
                '|Q - Q^T| <= %g' % SYMMETRY_TOL, '%g' % defect, ''
                                 )
        Q = 0.5 * (Q + Q.T)
        lowest = float(np.linalg.eigvalsh(Q)[0])
        if lowest < -tol.psd_tol:
            raise ValidationError(
                MODULE, 'QuadraticFunction', NOT_PSD,
                'eigenvalues >= 0', 'lowest eigenvalue %g' % lowest, ''
                                 )
        b = np.zeros(n) if b is None else as_vector(b, n, 'QuadraticFunction')
        Q.setflags(write=False)
        b = np.array(b)
        b.setflags(write=False)
        self.__Q = Q
        self.__b = b
        self.__c = float(c)

    def __str__(self):
        return 'QuadraticFunction(Q=%s, b=%s, c=%s)' % \
            (self.__Q.tolist(), self.__b.tolist(), self.__c)

    __repr__ = __str__

    @property
    def n(self):
        return self.__b.shape[0]

    @property
    def Q(self):
        return self.__Q

    @property
    def b(self):
        return self.__b

    @property
    def c(self):
        return self.__c

    def evaluate(self, x):
        x = as_vector(x, self.n, 'evaluate')
        return float(0.5 * x @ self.__Q @ x + self.__b @ x + self.__c)

    def gradient(self, x):
        x = as_vector(x, self.n, 'gradient')
        return self.__Q @ x + self.__b

    def lipschitz_constant(self):
        """
        Returns lambda_max(Q), the Lipschitz constant of the gradient.
        """
        return float(np.linalg.eigvalsh(self.__Q)[-1])

    def translate(self, v):
        """
        translate returns x -> f(x - v).
        """
        v = as_vector(v, self.n, 'translate')
        Qv = self.__Q @ v
        return QuadraticFunction(self.__Q, self.__b - Qv,
                                 self.__c + 0.5 * v @ Qv - self.__b @ v)

    def add(self, other):
        if other.n != self.n:
            raise ValidationError(
                MODULE, 'add', DIMENSION_MISMATCH,
                'n = %i' % self.n, 'n = %i' % other.n, ''
                                 )
        return QuadraticFunction(self.__Q + other.Q, self.__b + other.b,
                                 self.__c + other.c)

    def equals(self, other, tol=None):
        """
        equals compares (Q, b, c) entrywise within value_tol, scaled by the
        largest coefficient involved.
        """
        tol = resolve(tol)
        if other.n != self.n:
            return False
        scale = _scale_of(self.__Q, other.Q, self.__b, other.b,
                          self.__c, other.c)
        gap = max(float(np.max(np.abs(self.__Q - other.Q))),
                  float(np.max(np.abs(self.__b - other.b))),
                  abs(self.__c - other.c))
        return gap <= tol.value_tol * scale

    def to_glq(self, tol=None):
        """
        to_glq returns the same function as a GlqFunction over the
        single-valued relation x -> Qx.
        """
        return GlqFunction(LinearRelation.from_matrix(self.__Q, tol),
                           None, self.__b, self.__c, tol)

# end class QuadraticFunction()


class GlqFunction(object):
    """
    The GlqFunction class represents a generalized linear-quadratic function

        f(x) = 1/2 <x - a, A(x - a)> + <b, x> + c,

    +inf outside a + dom A, where A is a maximally monotone symmetric
    linear relation.  Finite convex quadratics are the single-valued case;
    indicators of points, f = i_{t} + s, use A = N_{0} and a = t.

    Each GlqFunction is immutable.  The closed form calculus of the class
    (conjugate, sums, differences, infimal convolution, star-difference,
    Moreau envelope and proximal map) returns new objects.

    Attributes:
        relation: the maximally monotone symmetric relation A.
            type: LinearRelation
            scope: protected
        a: shift.
            type: numpy.ndarray
            default: zero
            scope: protected
        b: linear term.
            type: numpy.ndarray
            default: zero
            scope: protected
        c: constant.
            type: float
            default: 0.0
            scope: protected

    Usage:
        f = GlqFunction(LinearRelation.from_matrix([[4.0]]), b=[3.0], c=2.0)
        f.evaluate([1.0])          # 2 + 3 + 2 = 7
        f.envelope(1.0).Q          # [[0.8]]
        f.prox(1.0, [2.0])         # [-0.2]
    """

    def __init__(self, relation, a=None, b=None, c=0.0, tol=None):
        """
        The GlqFunction's __init__ method validates the relation and stores
        the affine data.

        Parameters:
            relation: A, maximally monotone and symmetric
                type: LinearRelation
                default: none
                required: yes
            a: shift
                type: array_like
                default: zero vector
                required: no
            b: linear term
                type: array_like
                default: zero vector
                required: no
            c: constant
                type: float
                default: 0.0
                required: no
            tol: thresholds for the relation checks
                type: Tolerances
                default: package defaults
                required: no

        Return Values:
            GlqFunction object: the new function

        Usage:
            q = GlqFunction(LinearRelation.from_matrix(np.eye(2)))
        """
        n = relation.n
        if not (relation.is_maximal_monotone(tol) and
                relation.is_symmetric(tol)):
            raise ValidationError(
                MODULE, 'GlqFunction', BAD_RELATION,
                'maximally monotone symmetric relation', str(relation),
                'check is_maximal_monotone() and is_symmetric()'
                                 )
        a = np.zeros(n) if a is None else np.array(as_vector(a, n, 'GlqFunction'))
        b = np.zeros(n) if b is None else np.array(as_vector(b, n, 'GlqFunction'))
        a.setflags(write=False)
        b.setflags(write=False)
        self.__relation = relation
        self.__a = a
        self.__b = b
        self.__c = float(c)

# end __init__()

    @classmethod
    def from_matrix(cls, M, a=None, b=None, c=0.0, tol=None):
        return cls(LinearRelation.from_matrix(M, tol), a, b, c, tol)

    @classmethod
    def indicator(cls, point, c=0.0, tol=None):
        """
        indicator returns i_{point} + c, built on A = N_{0} with a = point.
        """
        point = as_vector(point, function='indicator')
        n = point.shape[0]
        relation = LinearRelation.normal_cone_of(Subspace.zero(n), tol)
        return cls(relation, point, None, c, tol)

    @classmethod
    def half_squared_norm(cls, n):
        return cls(LinearRelation.scaled_identity(n, 1.0))

    def __str__(self):
        return 'GlqFunction(%s, a=%s, b=%s, c=%s)' % \
            (self.__relation, self.__a.tolist(), self.__b.tolist(), self.__c)

    __repr__ = __str__

    @property
    def n(self):
        return self.__relation.n

    @property
    def relation(self):
        return self.__relation

    @property
    def a(self):
        return self.__a

    @property
    def b(self):
        return self.__b

    @property
    def c(self):
        return self.__c

    def _check_n(self, other, function):
        if other.n != self.n:
            raise ValidationError(
                MODULE, function, DIMENSION_MISMATCH,
                'n = %i' % self.n, 'n = %i' % other.n, ''
                                 )

    def _is_zero(self, v, tol):
        return float(np.max(np.abs(v))) <= resolve(tol).value_tol

    def is_shift_free(self, tol=None):
        return self._is_zero(self.__a, tol)

    def is_pure_quadratic(self, tol=None):
        return self.is_shift_free(tol) and self._is_zero(self.__b, tol)

    def evaluate(self, x, tol=None):
        """
        evaluate returns f(x) as an ExtReal: +inf when x - a is outside
        dom A, otherwise 1/2 <x - a, y> + <b, x> + c with y the minimum-norm
        element of A(x - a).  Every element of A(x - a) gives the same
        value since A0 is orthogonal to dom A.

        Usage:
            GlqFunction.indicator([1.0, 2.0], c=5.0).evaluate([1.0, 2.0])  # 5.0
            GlqFunction.indicator([1.0, 2.0], c=5.0).evaluate([0.0, 2.0])  # inf
        """
        x = as_vector(x, self.n, 'evaluate')
        u = x - self.__a
        image = self.__relation.apply(u, tol)
        if image.is_empty:
            return ExtReal.infinity()
        return ExtReal(0.5 * u @ image.point + self.__b @ x + self.__c)

# end evaluate()

    def subdifferential(self, x, tol=None):
        """
        subdifferential returns A(x - a) + b, empty exactly when x is
        outside dom f.
        """
        x = as_vector(x, self.n, 'subdifferential')
        return self.__relation.apply(x - self.__a, tol).translate(self.__b)

    def conjugate(self, tol=None):
        """
        conjugate returns the Fenchel conjugate

            f*(y) = q_{A^-1}(y - b) + <a, y> - <a, b> - c,

        a GLQ function with relation A^-1, shift b, linear term a and
        constant -<a, b> - c.  Applying it twice returns f.

        Return Values:
            GlqFunction: f*

        Usage:
            GlqFunction.indicator([0.0]).conjugate()   # the zero function
        """
        return GlqFunction(self.__relation.inverse(), self.__b, self.__a,
                           -float(self.__a @ self.__b) - self.__c, tol)

# end conjugate()

    def conjugate_via_pinv(self, y, tol=None):
        """
        conjugate_via_pinv evaluates f*(y) for a shift-free f through the
        Moore-Penrose inverse: 1/2 <y - b, A^dagger (y - b)> - c when y - b
        lies in ran A, +inf otherwise.
        """
        tol = resolve(tol)
        if not self.is_shift_free(tol):
            raise ValidationError(
                MODULE, 'conjugate_via_pinv', NONZERO_SHIFT,
                'a = 0', str(self.__a.tolist()), 'use conjugate().evaluate()'
                                 )
        z = as_vector(y, self.n, 'conjugate_via_pinv') - self.__b
        if not self.__relation.ran(tol).contains(z, tol):
            return ExtReal.infinity()
        dagger = self.__relation.moore_penrose(tol)
        return ExtReal(0.5 * z @ dagger @ z - self.__c)

    def envelope_hessian(self, r, tol=None):
        """
        Returns Q = r (Id + r A^-1)^-1, the Hessian of the envelope with
        parameter r, computed as r times the resolvent of (A / r)^-1.
        """
        r = _check_prox_parameter(r, 'envelope_hessian')
        M = self.__relation.scale(1.0 / r, tol).inverse().resolvent(tol)
        Q = r * M
        return 0.5 * (Q + Q.T)

    def envelope(self, r, tol=None):
        """
        envelope returns the Moreau envelope

            e_r f(x) = min_y f(y) + (r/2) |y - x|^2

        in closed form.  With p = a + b/r and Q = r (Id + r A^-1)^-1,

            e_r f(x) = 1/2 <x - p, Q(x - p)> + <b, x> + c - |b|^2 / (2r).

        The Hessian satisfies lambda_max(Q) <= r.

        Parameters:
            r: prox-parameter
                type: float
                default: none
                required: yes
            tol: thresholds for the resolvent solve
                type: Tolerances
                default: package defaults
                required: no

        Return Values:
            QuadraticFunction: the envelope, expanded about the origin

        Usage:
            f = GlqFunction.from_matrix([[4.0]], b=[3.0], c=2.0)
            e = f.envelope(1.0)   # Q = [[0.8]], b = [0.6], c = 1.1
        """
        r = _check_prox_parameter(r, 'envelope')
        Q = self.envelope_hessian(r, tol)
        p = self.__a + self.__b / r
        Qp = Q @ p
        linear = self.__b - Qp
        constant = 0.5 * p @ Qp + self.__c - (self.__b @ self.__b) / (2.0 * r)
        logger.debug('envelope: r = %g, lambda_max = %g', r,
                     np.linalg.eigvalsh(Q)[-1])
        return QuadraticFunction(Q, linear, constant, tol)

# end envelope()

    def prox(self, r, x, tol=None):
        """
        prox returns the proximal point p = a + J(x - a - b/r) where
        J = (Id + A/r)^-1.  p is the unique minimizer in the envelope and
        satisfies 0 in A(p - a) + b + r(p - x).

        Usage:
            GlqFunction.half_squared_norm(2).prox(1.0, [2.0, 4.0])   # [1, 2]
        """
        r = _check_prox_parameter(r, 'prox')
        x = as_vector(x, self.n, 'prox')
        J = self.__relation.scale(1.0 / r, tol).resolvent(tol)
        return self.__a + J @ (x - self.__a - self.__b / r)

    def envelope_gradient(self, r, x, tol=None):
        """
        envelope_gradient returns r (x - prox(r, x)), the gradient of the
        envelope at x.
        """
        r = _check_prox_parameter(r, 'envelope_gradient')
        x = as_vector(x, self.n, 'envelope_gradient')
        return r * (x - self.prox(r, x, tol))

    def _common_shift(self, other, function, tol):
        tol = resolve(tol)
        gap = float(np.max(np.abs(self.__a - other.a)))
        if gap > tol.value_tol * _scale_of(self.__a, other.a):
            raise ValidationError(
                MODULE, function, SHIFT_MISMATCH,
                str(self.__a.tolist()), str(other.a.tolist()),
                'sums are only closed for equal shifts'
                                 )
        return self.__a

    def add(self, other, tol=None):
        """
        add returns f1 + f2 = (A1 + A2, a, b1 + b2, c1 + c2).  Both
        functions must carry the same shift a.

        Usage:
            q = GlqFunction.from_matrix(np.eye(2), c=1.0)
            q.add(GlqFunction.from_matrix(np.eye(2), c=2.0))   # (2 Id, 0, 0, 3)
        """
        self._check_n(other, 'add')
        a = self._common_shift(other, 'add', tol)
        return GlqFunction(self.__relation.add(other.relation, tol), a,
                           self.__b + other.b, self.__c + other.c, tol)

    def subtract(self, other, tol=None):
        """
        subtract returns f1 - f2 = (A1 - A2, a, b1 - b2, c1 - c2).  The
        difference is only a GLQ function when dom A1 is contained in
        dom A2 and A1 - A2 is monotone; otherwise InfeasibleError is raised.
        """
        self._check_n(other, 'subtract')
        a = self._common_shift(other, 'subtract', tol)
        dom1 = self.__relation.dom(tol)
        dom2 = other.relation.dom(tol)
        if not dom2.contains_subspace(dom1, tol):
            raise InfeasibleError(
                MODULE, 'subtract', DOMAIN_NOT_NESTED,
                'dom A1 <= dom A2',
                'dim dom A1 = %i, dim dom A2 = %i' % (dom1.dim, dom2.dim),
                DIFFERENCE_RESOLUTION
                                 )
        difference = self.__relation.subtract(other.relation, tol)
        if not difference.is_maximal_monotone(tol):
            raise InfeasibleError(
                MODULE, 'subtract', NOT_MONOTONE_DIFFERENCE,
                'A1 - A2 monotone', str(difference), DIFFERENCE_RESOLUTION
                                 )
        return GlqFunction(difference, a, self.__b - other.b,
                           self.__c - other.c, tol)

# end subtract()

    def scale(self, lam, tol=None):
        """
        scale returns lam f = (lam A, a, lam b, lam c) for lam > 0.
        """
        if not lam > 0.0:
            raise ValidationError(
                MODULE, 'scale', ILLEGAL_SCALE, 'lam > 0', str(lam), ''
                                 )
        lam = float(lam)
        return GlqFunction(self.__relation.scale(lam, tol), self.__a,
                           lam * self.__b, lam * self.__c, tol)

    def translate(self, v, tol=None):
        """
        translate returns x -> f(x - v) = (A, a + v, b, c - <b, v>).
        """
        v = as_vector(v, self.n, 'translate')
        return GlqFunction(self.__relation, self.__a + v, self.__b,
                           self.__c - float(self.__b @ v), tol)

    def tilt(self, v, tol=None):
        """
        tilt returns f + <v, .>.
        """
        v = as_vector(v, self.n, 'tilt')
        return GlqFunction(self.__relation, self.__a, self.__b + v,
                           self.__c, tol)

    def inf_convolve(self, other, tol=None):
        """
        inf_convolve returns the infimal convolution
        (f1 box f2)(x) = inf_y f1(y) + f2(x - y).  Both functions must be
        shift-free and share the linear term b; the relation of the result
        is the parallel sum (A1^-1 + A2^-1)^-1.

        Usage:
            q = GlqFunction.half_squared_norm(2)
            q.inf_convolve(q)    # q / 2
        """
        tol = resolve(tol)
        self._check_n(other, 'inf_convolve')
        for f in (self, other):
            if not f.is_shift_free(tol):
                raise ValidationError(
                    MODULE, 'inf_convolve', NONZERO_SHIFT,
                    'a = 0', str(f.a.tolist()), ''
                                     )
        if float(np.max(np.abs(self.__b - other.b))) > \
                tol.value_tol * _scale_of(self.__b, other.b):
            raise ValidationError(
                MODULE, 'inf_convolve', LINEAR_TERM_MISMATCH,
                str(self.__b.tolist()), str(other.b.tolist()), ''
                                 )
        parallel = self.__relation.inverse().add(
            other.relation.inverse(), tol
                                                ).inverse()
        return GlqFunction(parallel, None, self.__b, self.__c + other.c, tol)

# end inf_convolve()

    def star_difference(self, other, tol=None):
        """
        star_difference returns the deconvolution h with f2 box h = f1, for
        f1 = q_A1 + c1 and f2 = q_A2 + c2 with A2 positive definite.  The
        relation of h is (A1^-1 - A2^-1)^-1 and its constant c1 - c2.

        Parameters:
            other: f2, a positive definite quadratic
                type: QuadraticFunction or GlqFunction
                default: none
                required: yes
            tol: thresholds to use
                type: Tolerances
                default: package defaults
                required: no

        Return Values:
            GlqFunction: h

        Usage:
            half = GlqFunction.from_matrix(0.5 * np.eye(2))
            half.star_difference(QuadraticFunction(np.eye(2)))   # q_Id
        """
        tol = resolve(tol)
        self._check_n(other, 'star_difference')
        if not self.is_pure_quadratic(tol):
            raise ValidationError(
                MODULE, 'star_difference', NONZERO_LINEAR_TERM,
                'f1 with a = 0, b = 0', str(self), ''
                                 )
        if isinstance(other, GlqFunction):
            if not other.is_shift_free(tol):
                raise ValidationError(
                    MODULE, 'star_difference', NONZERO_SHIFT,
                    'a = 0', str(other.a.tolist()), ''
                                     )
            if other.relation.multivalued_part(tol).dim > 0:
                raise ValidationError(
                    MODULE, 'star_difference', NOT_POSITIVE_DEFINITE,
                    'single-valued A2', str(other.relation), ''
                                     )
            Q2 = np.column_stack([other.relation.apply(e, tol).point
                                  for e in np.eye(self.n)])
        else:
            Q2 = other.Q
        if not self._is_zero(other.b, tol):
            raise ValidationError(
                MODULE, 'star_difference', NONZERO_LINEAR_TERM,
                'b2 = 0', str(other.b.tolist()), ''
                                 )
        lowest = float(np.linalg.eigvalsh(0.5 * (Q2 + Q2.T))[0])
        if lowest <= tol.psd_tol:
            raise ValidationError(
                MODULE, 'star_difference', NOT_POSITIVE_DEFINITE,
                'lambda_min(A2) > 0', '%g' % lowest, ''
                                 )
        A2_inv = LinearRelation.from_matrix(np.linalg.inv(Q2), tol)
        difference = self.__relation.inverse().subtract(A2_inv, tol)
        if not difference.is_maximal_monotone(tol):
            raise InfeasibleError(
                MODULE, 'star_difference', NOT_MONOTONE_DIFFERENCE,
                'A1^-1 - A2^-1 monotone', str(difference),
                'A2 must dominate A1, i.e. A2^-1 <= A1^-1'
                                 )
        return GlqFunction(difference.inverse(), None, None,
                           self.__c - other.c, tol)

# end star_difference()

    def equals(self, other, tol=None):
        """
        equals is semantic: two GLQ functions are equal when their envelopes
        with r = 1 agree as quadratics.  The (A, a, b, c) description is not
        unique, e.g. a can be absorbed into b and c when A is a matrix.
        """
        if other.n != self.n:
            return False
        return self.envelope(1.0, tol).equals(other.envelope(1.0, tol), tol)

# end class GlqFunction()
