import logging

import numpy as np

from moreau import ILLEGAL_PROX_PARAMETER
from moreau.calcerror import InfeasibleError, \
                             ValidationError
from moreau.glq import GlqFunction
from moreau.linrel import LinearRelation
from moreau.subspace import as_matrix
from moreau.tolerances import resolve

MODULE = 'envinv.py'

# report reasons
REASON_OK = 'ok'
REASON_LIPSCHITZ = 'gradient_lipschitz_exceeds_r'

# 1-D objective kinds
CASE_QUADRATIC = 'quadratic'
CASE_INDICATOR = 'indicator'
CASE_NONE = 'none'

# error messages
NEGATIVE_LEADING_COEFFICIENT = 'Leading coefficient alpha must be >= 0'
NOT_SYMMETRIC_PSD = 'Matrix must be symmetric positive semidefinite'
LIPSCHITZ_EXCEEDS_R = 'Gradient is not r-Lipschitz, so f is no Moreau envelope with parameter r'

logger = logging.getLogger(__name__)


def _check_prox_parameter(r, function):
    if not r > 0.0:
        raise ValidationError(
            MODULE, function, ILLEGAL_PROX_PARAMETER, 'r > 0', str(r), ''
                             )
    return float(r)


def _boundary_slack(r, tol):
    return resolve(tol).psd_tol * max(1.0, r)


def _spectral_relation(V, inputs, outputs, tol):
    """
    Returns the relation with graph span{(d_i v_i, p_i v_i)} for the
    orthonormal eigenvectors v_i in the columns of V.  A zero input weight
    d_i puts v_i in the multivalued part.
    """
    weights = np.hypot(inputs, outputs)
    columns = np.vstack([V * (inputs / weights), V * (outputs / weights)])
    return LinearRelation.from_graph_basis(V.shape[0], columns, tol)


class EnvelopeInverseReport(object):
    """
    Class EnvelopeInverseReport is the answer to "is f = e_r g for some g,
    and which g".  feasible is True exactly when lambda_max of the Hessian
    of f is at most r; g is present exactly when feasible.

    Attributes:
        feasible: whether an objective exists.
            type: bool
            scope: protected
        reason: REASON_OK or REASON_LIPSCHITZ.
            type: str
            scope: protected
        lipschitz_bound: lambda_max of the Hessian of f.
            type: float
            scope: protected
        g: the recovered objective, None when infeasible.
            type: GlqFunction
            scope: protected
        case: for 1-D inversion, CASE_QUADRATIC, CASE_INDICATOR or
              CASE_NONE; None for the general inversion.
            type: str
            scope: protected
        coefficients: for 1-D inversion, (a, b, c) of g(x) = ax^2 + bx + c
                      or (b, c) of g = i_{b} + c.
            type: tuple
            scope: protected
    """

    def __init__(self, feasible, reason, lipschitz_bound, g=None,
                 case=None, coefficients=None):
        self.__feasible = bool(feasible)
        self.__reason = reason
        self.__lipschitz_bound = float(lipschitz_bound)
        self.__g = g
        self.__case = case
        self.__coefficients = coefficients

    def __str__(self):
        return 'EnvelopeInverseReport(feasible=%s, reason=%s, lipschitz_bound=%g)' % \
            (self.__feasible, self.__reason, self.__lipschitz_bound)

    @property
    def feasible(self):
        return self.__feasible

    @property
    def reason(self):
        return self.__reason

    @property
    def lipschitz_bound(self):
        return self.__lipschitz_bound

    @property
    def g(self):
        return self.__g

    @property
    def case(self):
        return self.__case

    @property
    def coefficients(self):
        return self.__coefficients

# end class EnvelopeInverseReport()


def invert_envelope(f, r, tol=None):
    """
    invert_envelope decides whether the convex quadratic f is the Moreau
    envelope e_r g of a GLQ function g and recovers g.  That happens
    exactly when grad f is r-Lipschitz, i.e. lambda_max(Q) <= r, and then

        g(x) = q_P(x + b/r) + <b, x> + c + |b|^2 / (2r),
        P = (Q^-1 - Id/r)^-1,

    P is built from the eigenpairs (mu, v) of Q: the graph of P contains
    ((r - mu) v, r mu v).  Eigenvalues within psd_tol * max(1, r) of r
    are snapped to r, so those v land in the multivalued part of P
    (indicator directions) instead of giving a huge curvature of either
    sign.  Zero eigenvalues give affine directions.

    Parameters:
        f: the candidate envelope
            type: QuadraticFunction
            default: none
            required: yes
        r: prox-parameter
            type: float
            default: none
            required: yes
        tol: thresholds to use
            type: Tolerances
            default: package defaults
            required: no

    Return Values:
        EnvelopeInverseReport: feasibility, Lipschitz bound and g

    Usage:
        f = QuadraticFunction(3.0 * np.eye(2))
        invert_envelope(f, 1.0).feasible    # False
        invert_envelope(f, 3.0).g           # i_{0}
    """
    r = _check_prox_parameter(r, 'invert_envelope')
    bound = f.lipschitz_constant()
    if bound > r + _boundary_slack(r, tol):
        logger.debug('invert_envelope: lambda_max %g exceeds r = %g', bound, r)
        return EnvelopeInverseReport(False, REASON_LIPSCHITZ, bound)
    mu, V = np.linalg.eigh(0.5 * (f.Q + f.Q.T))
    mu = np.clip(mu, 0.0, r)
    mu[r - mu <= _boundary_slack(r, tol)] = r
    P = _spectral_relation(V, r - mu, r * mu, tol)
    b = f.b
    g = GlqFunction(P, -b / r, b, f.c + float(b @ b) / (2.0 * r), tol)
    logger.debug('invert_envelope: dim dom P = %i', P.dom(tol).dim)
    return EnvelopeInverseReport(True, REASON_OK, bound, g)

# end invert_envelope()


def invert_envelope_strict(f, r, tol=None):
    """
    Like invert_envelope, but returns g directly and raises InfeasibleError
    when there is none.
    """
    report = invert_envelope(f, r, tol)
    if not report.feasible:
        raise InfeasibleError(
            MODULE, 'invert_envelope_strict', LIPSCHITZ_EXCEEDS_R,
            'lambda_max(Q) <= %g' % r, '%g' % report.lipschitz_bound,
            'choose r >= lambda_max(Q)'
                             )
    return report.g


def invert_envelope_1d(alpha, beta, gamma, r, tol=None):
    """
    invert_envelope_1d handles f(x) = alpha x^2 + beta x + gamma on R,
    alpha >= 0, case by case:

        alpha < r/2:  g(x) = ax^2 + bx + c with a = alpha r / (r - 2 alpha),
                      b = beta r / (r - 2 alpha),
                      c = gamma + beta^2 / (2 (r - 2 alpha))
        alpha = r/2:  g = i_{b} + c with b = -beta / r,
                      c = gamma - beta^2 / (2r)
        alpha > r/2:  no g exists

    The tie alpha = r/2 is decided within psd_tol.

    Usage:
        invert_envelope_1d(0.4, 0.6, 1.1, 1.0).coefficients   # (2, 3, 2)
    """
    r = _check_prox_parameter(r, 'invert_envelope_1d')
    if alpha < 0.0:
        raise ValidationError(
            MODULE, 'invert_envelope_1d', NEGATIVE_LEADING_COEFFICIENT,
            'alpha >= 0', str(alpha), ''
                             )
    alpha, beta, gamma = float(alpha), float(beta), float(gamma)
    bound = 2.0 * alpha
    if abs(alpha - 0.5 * r) <= _boundary_slack(r, tol):
        point = -beta / r
        constant = gamma - beta * beta / (2.0 * r)
        g = GlqFunction.indicator([point], constant, tol)
        return EnvelopeInverseReport(True, REASON_OK, bound, g,
                                     CASE_INDICATOR, (point, constant))
    if alpha > 0.5 * r:
        return EnvelopeInverseReport(False, REASON_LIPSCHITZ, bound,
                                     case=CASE_NONE)
    gap = r - 2.0 * alpha
    a = alpha * r / gap
    b = beta * r / gap
    c = gamma + beta * beta / (2.0 * gap)
    g = GlqFunction.from_matrix([[2.0 * a]], None, [b], c, tol)
    return EnvelopeInverseReport(True, REASON_OK, bound, g,
                                 CASE_QUADRATIC, (a, b, c))

# end invert_envelope_1d()


class NonexpansiveReport(object):
    """
    Result of nonexpansive_report(): the two verdicts, the eigenvalues
    they were read from and, for nonexpansive M, the maximally monotone
    relation P with M = (P + Id)^-1.
    """

    def __init__(self, nonexpansive, firmly, eigenvalues, relation_P=None):
        self.__nonexpansive = bool(nonexpansive)
        self.__firmly = bool(firmly)
        self.__eigenvalues = eigenvalues
        self.__relation_P = relation_P

    @property
    def nonexpansive(self):
        return self.__nonexpansive

    @property
    def firmly(self):
        return self.__firmly

    @property
    def eigenvalues(self):
        return self.__eigenvalues

    @property
    def relation_P(self):
        return self.__relation_P

# end class NonexpansiveReport()


def nonexpansive_report(M, tol=None):
    """
    nonexpansive_report examines a symmetric PSD matrix M.  M is
    nonexpansive when |M| <= 1 and firmly nonexpansive when
    <x, Mx> >= |Mx|^2, i.e. M - M^T M is PSD; for symmetric PSD M both
    reduce to spec(M) in [0, 1] and M is then the resolvent of
    P = M^-1 - Id, a maximally monotone linear relation.

    Parameters:
        M: symmetric positive semidefinite n x n matrix
            type: array_like
            default: none
            required: yes
        tol: thresholds to use
            type: Tolerances
            default: package defaults
            required: no

    Return Values:
        NonexpansiveReport: verdicts, eigenvalues and P

    Usage:
        nonexpansive_report(np.diag([1.0, 0.5])).relation_P   # diag(0, 1)
        nonexpansive_report(3.0 * np.eye(2)).nonexpansive     # False
    """
    tol = resolve(tol)
    M = as_matrix(M, 'nonexpansive_report')
    if M.shape[0] != M.shape[1] or \
            np.max(np.abs(M - M.T)) > tol.psd_tol * max(1.0, np.max(np.abs(M))):
        raise ValidationError(
            MODULE, 'nonexpansive_report', NOT_SYMMETRIC_PSD,
            'symmetric n x n matrix', 'shape %s' % (M.shape,), ''
                             )
    M = 0.5 * (M + M.T)
    eigenvalues = np.linalg.eigvalsh(M)
    if eigenvalues[0] < -tol.psd_tol:
        raise ValidationError(
            MODULE, 'nonexpansive_report', NOT_SYMMETRIC_PSD,
            'eigenvalues >= 0', 'lowest eigenvalue %g' % eigenvalues[0], ''
                             )
    nonexpansive = np.linalg.norm(M, 2) <= 1.0 + tol.psd_tol
    firmly = np.linalg.eigvalsh(M - M.T @ M)[0] >= -tol.psd_tol
    relation_P = None
    if nonexpansive and firmly:
        # eigenpairs (m, v) of M give (m v, (1 - m) v) in gra P; m = 0 is vertical
        m, V = np.linalg.eigh(M)
        m = np.clip(m, 0.0, 1.0)
        m[m <= tol.psd_tol] = 0.0
        relation_P = _spectral_relation(V, m, 1.0 - m, tol)
        if not relation_P.is_maximal_monotone(tol):
            raise ValidationError(
                MODULE, 'nonexpansive_report', NOT_SYMMETRIC_PSD,
                'maximally monotone M^-1 - Id', str(relation_P), ''
                                 )
    return NonexpansiveReport(nonexpansive, firmly, eigenvalues, relation_P)

# end nonexpansive_report()


def sum_of_envelopes(g, r1, h, r2, tol=None):
    """
    sum_of_envelopes returns the GLQ function f with
    e_(r1 + r2) f = e_r1 g + e_r2 h.  The sum always has an
    (r1 + r2)-Lipschitz gradient, so the inversion cannot fail.
    """
    r1 = _check_prox_parameter(r1, 'sum_of_envelopes')
    r2 = _check_prox_parameter(r2, 'sum_of_envelopes')
    total = g.envelope(r1, tol).add(h.envelope(r2, tol))
    return invert_envelope_strict(total, r1 + r2, tol)

