import logging

import numpy as np
import scipy.interpolate
import scipy.optimize

from moreau import ILLEGAL_PROX_PARAMETER
from moreau.calcerror import ValidationError
from moreau.glq import GlqFunction, \
                       QuadraticFunction
from moreau.linrel import LinearRelation
from moreau.moreau_config import DEFAULT_I_MAX, \
                                 DEFAULT_PROX_PARAMETER
from moreau.subspace import Subspace
from moreau.tolerances import resolve

MODULE = 'epiconv.py'

# limit kinds
AFFINE = 'affine'
QUADRATIC = 'quadratic'
INDICATOR = 'indicator'
IMPROPER_PLUS_INFINITY = 'improper_plus_infinity'
IMPROPER_MINUS_INFINITY = 'improper_minus_infinity'
UNDETERMINED = 'undetermined'

# built-in 1-D families, k >= 1
FAMILY_FK = 'fk'
FAMILY_GK = 'gk'
FAMILY_HK = 'hk'
FAMILIES = (FAMILY_FK, FAMILY_GK, FAMILY_HK)

# default Cauchy tolerance for limit detection
CLASSIFY_TOL = 1e-6

# error messages
NEGATIVE_LEADING_COEFFICIENT = 'Leading coefficient a must be >= 0'
TOO_FEW_PROBES = 'At least three increasing probe indices are needed'
UNKNOWN_FAMILY = 'Unknown sequence family'
BAD_INDEX = 'Sequence index out of range'
NO_TERMS = 'Sequence needs explicit terms or a generator'
ILLEGAL_I_MAX = 'i_max must be >= 1'
ILLEGAL_RADIUS = 'Trust region radius must be strictly positive'
MIXED_DIMENSIONS = 'Sequence terms live in different spaces'
TOO_FEW_TERMS = 'A sequence needs at least two terms'

logger = logging.getLogger(__name__)


def envelope_coeffs_1d(a, b, c, r):
    """
    envelope_coeffs_1d returns the coefficients (alpha, beta, gamma) of the
    Moreau envelope of f(x) = ax^2 + bx + c, a >= 0:

        e_r f(x) = ar/(2a + r) x^2 + br/(2a + r) x + c - b^2 / (2(2a + r))

    Usage:
        envelope_coeffs_1d(2.0, 3.0, 2.0, 1.0)    # (0.4, 0.6, 1.1)
    """
    if a < 0.0:
        raise ValidationError(
            MODULE, 'envelope_coeffs_1d', NEGATIVE_LEADING_COEFFICIENT,
            'a >= 0', str(a), ''
                             )
    if not r > 0.0:
        raise ValidationError(
            MODULE, 'envelope_coeffs_1d', ILLEGAL_PROX_PARAMETER,
            'r > 0', str(r), ''
                             )
    denominator = 2.0 * a + r
    return (a * r / denominator,
            b * r / denominator,
            c - b * b / (2.0 * denominator))


def builtin_family(name, k):
    """
    builtin_family returns the k-th term of one of the three built-in 1-D
    families together with the closed form of its envelope at r = 1:

        fk = (1 + 1/k) x^2 + (2 + 1/k) x + 1 + 1/k  ->  (x + 1)^2
        gk = x^2 / k + (1 + 1/k) x + 1/k            ->  x
        hk = k x^2 + x / k + 1/k                    ->  i_{0}

    Return Values:
        tuple: ((a, b, c), (alpha, beta, gamma))
    """
    k = float(k)
    if k < 1.0:
        raise ValidationError(
            MODULE, 'builtin_family', BAD_INDEX, 'k >= 1', str(k), ''
                             )
    if name == FAMILY_FK:
        term = (1.0 + 1.0 / k, 2.0 + 1.0 / k, 1.0 + 1.0 / k)
        envelope = ((k + 1.0) / (3.0 * k + 2.0),
                    (2.0 * k + 1.0) / (3.0 * k + 2.0),
                    (2.0 * k * k + 6.0 * k + 3.0) / (k * (6.0 * k + 4.0)))
    elif name == FAMILY_GK:
        term = (1.0 / k, 1.0 + 1.0 / k, 1.0 / k)
        envelope = (1.0 / (k + 2.0),
                    (k + 1.0) / (k + 2.0),
                    (3.0 - k * k) / (2.0 * k * (k + 2.0)))
    elif name == FAMILY_HK:
        term = (k, 1.0 / k, 1.0 / k)
        envelope = (k / (2.0 * k + 1.0),
                    1.0 / (k * (2.0 * k + 1.0)),
                    (4.0 * k * k + 2.0 * k - 1.0) / (2.0 * k * k * (2.0 * k + 1.0)))
    else:
        raise ValidationError(
            MODULE, 'builtin_family', UNKNOWN_FAMILY,
            ', '.join(FAMILIES), str(name), ''
                             )
    return term, envelope


class QuadSeq1D(object):
    """
    Class QuadSeq1D is a sequence f_k(x) = a_k x^2 + b_k x + c_k, k >= 1,
    given either as an explicit list of (a, b, c) triples or by a callable
    k -> (a, b, c).  r is the prox-parameter its envelopes are taken with.

    Attributes:
        r: prox-parameter.
            type: float
            default: DEFAULT_PROX_PARAMETER
            scope: protected
        length: number of explicit terms, None for a generator.
            type: int
            scope: protected

    Usage:
        seq = QuadSeq1D(terms=[(2, 3, 2), (1.5, 2.5, 1.5)])
        seq = QuadSeq1D.family('hk')
        seq.term(10)   # (10, 0.1, 0.1)
    """

    def __init__(self, terms=None, generator=None, r=DEFAULT_PROX_PARAMETER):
        if terms is None and generator is None:
            raise ValidationError(
                MODULE, 'QuadSeq1D', NO_TERMS, 'terms or generator', 'None', ''
                                 )
        if not r > 0.0:
            raise ValidationError(
                MODULE, 'QuadSeq1D', ILLEGAL_PROX_PARAMETER,
                'r > 0', str(r), ''
                                 )
        self.__terms = None if terms is None else \
            [tuple(float(v) for v in t) for t in terms]
        self.__generator = generator
        self.__r = float(r)
        if self.__terms is not None:
            for t in self.__terms:
                self._check_term(t)

    @classmethod
    def family(cls, name, r=DEFAULT_PROX_PARAMETER):
        builtin_family(name, 1)
        return cls(generator=lambda k: builtin_family(name, k)[0], r=r)

    @property
    def r(self):
        return self.__r

    @property
    def length(self):
        return None if self.__terms is None else len(self.__terms)

    def _check_term(self, t):
        if t[0] < 0.0:
            raise ValidationError(
                MODULE, 'QuadSeq1D', NEGATIVE_LEADING_COEFFICIENT,
                'a_k >= 0', str(t[0]), ''
                                 )

    def term(self, k):
        """
        Returns (a_k, b_k, c_k), k counting from 1.
        """
        if self.__terms is not None:
            if not 1 <= k <= len(self.__terms):
                raise ValidationError(
                    MODULE, 'term', BAD_INDEX,
                    '1..%i' % len(self.__terms), str(k), ''
                                     )
            return self.__terms[int(k) - 1]
        t = tuple(float(v) for v in self.__generator(k))
        self._check_term(t)
        return t

    def envelope_coeffs(self, k):
        a, b, c = self.term(k)
        return envelope_coeffs_1d(a, b, c, self.__r)

# end class QuadSeq1D()


class LimitClassification1D(object):
    """
    Verdict of classify_1d().  params holds the limit of f_k:
    {'a', 'b', 'c'} for the quadratic and affine kinds, {'point', 'c'} for
    the indicator, and is empty otherwise.  envelope holds the limiting
    (alpha, beta, gamma) of e_r f_k when they exist.  evidence holds the
    Cauchy residuals of the extrapolated limits over the probe tail.
    """

    def __init__(self, kind, params, envelope, evidence):
        self.__kind = kind
        self.__params = params
        self.__envelope = envelope
        self.__evidence = evidence

    def __str__(self):
        return 'LimitClassification1D(kind=%s, params=%s)' % \
            (self.__kind, self.__params)

    @property
    def kind(self):
        return self.__kind

    @property
    def params(self):
        return self.__params

    @property
    def envelope(self):
        return self.__envelope

    @property
    def evidence(self):
        return self.__evidence

    def limit_function(self, tol=None):
        """
        Returns the limit as a GlqFunction, None for improper and
        undetermined kinds.
        """
        if self.__kind in (QUADRATIC, AFFINE):
            p = self.__params
            return GlqFunction.from_matrix([[2.0 * p['a']]], None, [p['b']],
                                           p['c'], tol)
        if self.__kind == INDICATOR:
            return GlqFunction.indicator([self.__params['point']],
                                         self.__params['c'], tol)
        return None

# end class LimitClassification1D()


def _extrapolate(indices, values):
    # interpolate in h = 1/k through the given points and read off h = 0
    h = 1.0 / np.asarray(indices, dtype=float)
    return float(scipy.interpolate.BarycentricInterpolator(h, values)(0.0))


def _diverges(values, tol):
    steps = np.abs(np.diff(values))
    return steps[-1] > tol and steps[-1] >= steps[-2]


def classify_1d(seq, k_probe, tol=CLASSIFY_TOL):
    """
    classify_1d decides the epi-limit of a 1-D quadratic sequence from its
    envelope coefficients at the probe indices.  For convex functions
    epiconvergence is pointwise convergence of the envelopes, so only the
    three coefficient sequences alpha_k, beta_k, gamma_k matter.

    Limits are estimated by polynomial extrapolation in 1/k through the
    last three probes.  The sequence counts as convergent when the estimate
    from the last three probes agrees within tol with the estimate from
    the three before (with exactly three probes, with the last value).
    A limit is then read back through the 1-D inversion:

        alpha -> 0            affine limit bx + c
        0 < alpha < r/2       quadratic limit ax^2 + bx + c
        alpha -> r/2          indicator i_{point} + c

    A coefficient whose increments stop shrinking diverges; gamma growing
    without bound means the limit is +inf everywhere, falling without
    bound that it takes the value -inf.

    Parameters:
        seq: the sequence
            type: QuadSeq1D
            default: none
            required: yes
        k_probe: increasing indices, at least three
            type: list of int
            default: none
            required: yes
        tol: Cauchy tolerance
            type: float
            default: CLASSIFY_TOL
            required: no

    Return Values:
        LimitClassification1D: the verdict

    Usage:
        classify_1d(QuadSeq1D.family('fk'), [10, 100, 1000, 10000]).params
        # {'a': 1.0, 'b': 2.0, 'c': 1.0}
    """
    k_probe = [int(k) for k in k_probe]
    if len(k_probe) < 3 or any(b <= a for a, b in zip(k_probe, k_probe[1:])):
        raise ValidationError(
            MODULE, 'classify_1d', TOO_FEW_PROBES,
            'at least 3 increasing indices', str(k_probe), ''
                             )
    r = seq.r
    coeffs = np.array([seq.envelope_coeffs(k) for k in k_probe])
    alpha, beta, gamma = coeffs.T

    for column in (alpha, beta, gamma):
        if _diverges(column, tol):
            kind = IMPROPER_PLUS_INFINITY if gamma[-1] > gamma[-2] \
                else IMPROPER_MINUS_INFINITY
            logger.debug('classify_1d: divergent envelope coefficients, %s', kind)
            evidence = [float(v) for v in np.abs(np.diff(gamma))]
            return LimitClassification1D(kind, {}, None, evidence)

    limits = np.array([_extrapolate(k_probe[-3:], col[-3:]) for col in coeffs.T])
    if len(k_probe) >= 4:
        previous = np.array([_extrapolate(k_probe[-4:-1], col[-4:-1])
                             for col in coeffs.T])
    else:
        previous = coeffs[-1]
    evidence = [float(v) for v in np.abs(limits - previous)]
    logger.debug('classify_1d: limits %s, residuals %s', limits, evidence)
    if max(evidence) > tol:
        logger.warning('classify_1d: no limit within tol = %g (residuals %s)',
                       tol, evidence)
        return LimitClassification1D(UNDETERMINED, {}, None, evidence)

    a_inf, b_inf, c_inf = limits
    envelope = (float(a_inf), float(b_inf), float(c_inf))
    slack = tol * max(1.0, r)
    if abs(a_inf - 0.5 * r) <= slack:
        params = {'point': -b_inf / r, 'c': c_inf - b_inf * b_inf / (2.0 * r)}
        return LimitClassification1D(INDICATOR, params, envelope, evidence)
    if a_inf > 0.5 * r:
        return LimitClassification1D(UNDETERMINED, {}, envelope, evidence)
    if abs(a_inf) <= slack:
        params = {'a': 0.0, 'b': b_inf, 'c': c_inf + b_inf * b_inf / (2.0 * r)}
        return LimitClassification1D(AFFINE, params, envelope, evidence)
    gap = r - 2.0 * a_inf
    params = {'a': a_inf * r / gap,
              'b': b_inf * r / gap,
              'c': c_inf + b_inf * b_inf / (2.0 * gap)}
    return LimitClassification1D(QUADRATIC, params, envelope, evidence)

# end classify_1d()


def envelope_gradients_1d(seq, k_probe, points=(0.0, 1.0)):
    """
    Returns the envelope derivatives 2 alpha_k x + beta_k as an array with
    one row per probe index and one column per point.
    """
    rows = []
    for k in k_probe:
        alpha, beta, _ = seq.envelope_coeffs(k)
        rows.append([2.0 * alpha * x + beta for x in points])
    return np.array(rows)


def _minimize_on_ball(H, g, radius):
    # exact minimum of 1/2 <x, Hx> + <g, x> over |x| <= radius
    lam, V = np.linalg.eigh(0.5 * (H + H.T))
    gam = V.T @ g
    eps = 1e-12 * max(1.0, float(np.max(np.abs(lam))), float(np.linalg.norm(g)))

    def value(x):
        return float(0.5 * x @ H @ x + g @ x)

    if lam[0] >= -eps:
        active = lam > eps
        if np.all(np.abs(gam[~active]) <= eps):
            coeffs = np.zeros_like(gam)
            coeffs[active] = -gam[active] / lam[active]
            if np.linalg.norm(coeffs) <= radius:
                logger.debug('trust region: interior solution')
                return value(V @ coeffs)

    floor = max(0.0, -lam[0])
    lowest = np.abs(lam - lam[0]) <= eps

    def norm_at(mu):
        return float(np.linalg.norm(gam / (lam + mu)))

    if np.all(np.abs(gam[lowest]) <= eps):
        rest = np.zeros_like(gam)
        shifted = lam[~lowest] + floor
        rest[~lowest] = -gam[~lowest] / shifted
        spare = radius * radius - float(rest @ rest)
        if spare >= 0.0:
            # hard case: move along an eigenvector of the lowest eigenvalue
            logger.debug('trust region: hard case, mu = %g', floor)
            rest[np.flatnonzero(lowest)[0]] = np.sqrt(spare)
            return value(V @ rest)

    delta = max(float(np.max(np.abs(gam[lowest]))), eps) / (2.0 * radius)
    while norm_at(floor + delta) <= radius and delta > 1e-300:
        delta *= 0.1
    upper = floor + float(np.linalg.norm(g)) / radius + delta
    mu = scipy.optimize.brentq(lambda m: norm_at(m) - radius,
                               floor + delta, upper, xtol=1e-15, rtol=1e-14)
    logger.debug('trust region: boundary solution, mu = %g', mu)
    return value(-V @ (gam / (lam + mu)))


def trust_region_extremes(H, g, radius):
    """
    trust_region_extremes returns (min, max) of 1/2 <x, Hx> + <g, x> over
    the ball |x| <= radius, H symmetric and possibly indefinite.  Each
    extreme is a trust region subproblem, solved exactly from the
    eigendecomposition of H: the interior stationary point when it is
    feasible, otherwise the root mu of |x(mu)| = radius of the secular
    equation (brentq), including the hard case where g has no component
    along the lowest eigenvector.

    Usage:
        trust_region_extremes(np.eye(2), np.zeros(2), 2.0)    # (0.0, 2.0)
    """
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float).reshape(-1)
    if not radius > 0.0:
        raise ValidationError(
            MODULE, 'trust_region_extremes', ILLEGAL_RADIUS,
            'radius > 0', str(radius), ''
                             )
    low = _minimize_on_ball(H, g, radius)
    high = -_minimize_on_ball(-H, -g, radius)
    return low, high


class AwDistanceResult(object):
    """
    Class AwDistanceResult holds a truncated Attouch-Wets distance

        d(f, g) = sum_i 2^-i s_i / (1 + s_i),
        s_i = sup_{|x| <= i} |e_r f(x) - e_r g(x)|,

    summed for i = 1..truncation_index.  The neglected tail is at most
    tail_bound = 2^-truncation_index.

    Attributes:
        value: the truncated sum.
            type: float
            scope: protected
        truncation_index: i_max.
            type: int
            scope: protected
        tail_bound: 2^-i_max.
            type: float
            scope: protected
        per_ball_sup: (i, s_i) for every ball.
            type: list of tuple
            scope: protected
    """

    def __init__(self, value, truncation_index, per_ball_sup):
        self.__value = float(value)
        self.__truncation_index = int(truncation_index)
        self.__per_ball_sup = per_ball_sup

    def __str__(self):
        return 'AwDistanceResult(value=%g, i_max=%i)' % \
            (self.__value, self.__truncation_index)

    @property
    def value(self):
        return self.__value

    @property
    def truncation_index(self):
        return self.__truncation_index

    @property
    def tail_bound(self):
        return 2.0 ** -self.__truncation_index

    @property
    def per_ball_sup(self):
        return self.__per_ball_sup

# end class AwDistanceResult()


def aw_distance_envelopes(e1, e2, i_max=DEFAULT_I_MAX):
    """
    aw_distance_envelopes computes the truncated distance directly from
    two envelopes, given as QuadraticFunctions.  The supremum over each
    ball is exact: h = e1 - e2 is a quadratic, so max h and max -h over
    |x| <= i are two trust region subproblems.
    """
    if int(i_max) < 1:
        raise ValidationError(
            MODULE, 'aw_distance', ILLEGAL_I_MAX, 'i_max >= 1', str(i_max), ''
                             )
    H = e1.Q - e2.Q
    g = e1.b - e2.b
    c = e1.c - e2.c
    value = 0.0
    per_ball = []
    for i in range(1, int(i_max) + 1):
        low, high = trust_region_extremes(H, g, float(i))
        s = max(c + high, -(c + low), 0.0)
        per_ball.append((i, s))
        value += 2.0 ** -i * s / (1.0 + s)
    return AwDistanceResult(value, i_max, per_ball)


def aw_distance(f, g, r=DEFAULT_PROX_PARAMETER, i_max=DEFAULT_I_MAX, tol=None):
    """
    aw_distance returns the Attouch-Wets distance between two GLQ
    functions, measured through their Moreau envelopes with parameter r.
    QuadraticFunction arguments are taken to be envelopes already.

    Parameters:
        f, g: the two functions
            type: GlqFunction or QuadraticFunction
            default: none
            required: yes
        r: prox-parameter of the envelopes
            type: float
            default: DEFAULT_PROX_PARAMETER
            required: no
        i_max: number of balls summed
            type: int
            default: DEFAULT_I_MAX
            required: no
        tol: thresholds for the envelope computations
            type: Tolerances
            default: package defaults
            required: no

    Return Values:
        AwDistanceResult: value, truncation data and per-ball suprema

    Usage:
        q = GlqFunction.half_squared_norm(2)
        aw_distance(q, q).value    # 0.0
    """
    if not r > 0.0:
        raise ValidationError(
            MODULE, 'aw_distance', ILLEGAL_PROX_PARAMETER, 'r > 0', str(r), ''
                             )
    e1 = f if isinstance(f, QuadraticFunction) else f.envelope(r, tol)
    e2 = g if isinstance(g, QuadraticFunction) else g.envelope(r, tol)
    return aw_distance_envelopes(e1, e2, i_max)

# end aw_distance()


class SequenceLimit(object):
    """
    Verdict of classify_sequence(): converged, the estimated distance of
    the last term to the limit, and the limit itself when converged.
    """

    def __init__(self, converged, residual, limit=None):
        self.__converged = bool(converged)
        self.__residual = float(residual)
        self.__limit = limit

    @property
    def converged(self):
        return self.__converged

    @property
    def residual(self):
        return self.__residual

    @property
    def limit(self):
        return self.__limit

# end class SequenceLimit()


def _term_state(f):
    return (f.relation.graph.projector(), f.a, f.b, f.c)


def _state_gap(s, t):
    return max(float(np.max(np.abs(s[0] - t[0]))),
               float(np.max(np.abs(s[1] - t[1]))),
               float(np.max(np.abs(s[2] - t[2]))),
               abs(s[3] - t[3]))


def classify_sequence(functions, tol=CLASSIFY_TOL, tolerances=None):
    """
    classify_sequence looks for the epi-limit of a sequence of GLQ
    functions on R^n.  Epiconvergence of GLQ functions goes with graph
    convergence of the subdifferentials, so each term is represented by
    the orthogonal projector onto gra A_k, a 2n x 2n matrix, together with
    (a_k, b_k, c_k).

    With d_j the gap between consecutive terms, the distance of the last
    term to the limit is estimated as the geometric tail
    d_last rho / (1 - rho), rho = d_last / d_prev.  When that estimate is
    at most tol the last term is pushed along the same geometric tail.
    Otherwise the plain Cauchy test applies: a last gap of at most tol
    still counts as convergent, with the last term taken as the limit and
    d_last reported as the residual.  The limit graph is read off as the
    eigenspace of the (extrapolated) projector for eigenvalues above 1/2.

    Parameters:
        functions: the terms, at least two
            type: list of GlqFunction
            default: none
            required: yes
        tol: tolerance on the tail estimate
            type: float
            default: CLASSIFY_TOL
            required: no
        tolerances: thresholds for building the limit
            type: Tolerances
            default: package defaults
            required: no

    Return Values:
        SequenceLimit: verdict, tail estimate and limit

    Usage:
        terms = [GlqFunction.from_matrix(np.eye(2) / k) for k in (10, 100, 1000)]
        classify_sequence(terms).limit    # the zero function
    """
    functions = list(functions)
    if len(functions) < 2:
        raise ValidationError(
            MODULE, 'classify_sequence', TOO_FEW_TERMS,
            'at least 2 terms', str(len(functions)), ''
                             )
    n = functions[0].n
    for f in functions:
        if f.n != n:
            raise ValidationError(
                MODULE, 'classify_sequence', MIXED_DIMENSIONS,
                'n = %i' % n, 'n = %i' % f.n, ''
                                 )
    states = [_term_state(f) for f in functions]
    gaps = [_state_gap(s, t) for s, t in zip(states, states[1:])]
    last = gaps[-1]
    weight = 0.0
    if last == 0.0:
        residual = 0.0
    elif len(gaps) == 1:
        residual = last
    else:
        rho = last / gaps[-2] if gaps[-2] > 0.0 else np.inf
        if rho < 1.0:
            weight = rho / (1.0 - rho)
            residual = last * weight
        else:
            residual = np.inf
    logger.debug('classify_sequence: gaps %s, tail estimate %g', gaps, residual)
    if residual > tol and last <= tol:
        # Cauchy within tol without a geometric rate
        weight = 0.0
        residual = last
    if residual > tol:
        logger.warning('classify_sequence: no limit within tol = %g', tol)
        return SequenceLimit(False, residual)

    # push the last term along the geometric tail
    limit_state = [s + weight * (s - p) for s, p in zip(states[-1], states[-2])]
    projector, a, b, c = limit_state
    eigenvalues, vectors = np.linalg.eigh(0.5 * (projector + projector.T))
    graph = Subspace(vectors[:, eigenvalues > 0.5], check=False)
    relation = LinearRelation(n, graph)
    limit = GlqFunction(relation, a, b, c, resolve(tolerances))
    return SequenceLimit(True, residual, limit)

# end classify_sequence()
