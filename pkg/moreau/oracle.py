"""
Brute-force counterparts of the closed forms, for testing.  Every oracle
takes black-box callables, so nothing here may import glq or envinv.
"""
import logging

import numpy as np

from moreau.calcerror import ValidationError
from moreau.moreau_config import CYCLIC_TOL, \
                                 FD_STEP, \
                                 GRID_HALF_WIDTH, \
                                 GRID_POINTS
from moreau.subspace import as_vector

MODULE = 'oracle.py'

# error messages
BAD_GRID = 'Grid needs an odd number >= 3 of points per axis and a positive half width'
NO_DEFAULT_GRID = 'No default grid size for this dimension'
NON_FINITE = 'Function is not finite near the point'
TOO_FEW_POINTS = 'A cycle needs at least two points'

logger = logging.getLogger(__name__)


class GridSpec(object):
    """
    Class GridSpec is the cube center + [-half_width, half_width]^n sampled
    with points_per_axis equally spaced points on every axis.  The defaults
    come from GRID_HALF_WIDTH and GRID_POINTS.

    Usage:
        grid = GridSpec([0.0])                    # 2001 points on [-5, 5]
        grid = GridSpec([0.0, 0.0], 2.0, 101)
    """

    def __init__(self, center, half_width=GRID_HALF_WIDTH, points_per_axis=None):
        center = np.array(as_vector(center, function='GridSpec'))
        n = center.shape[0]
        if points_per_axis is None:
            if n not in GRID_POINTS:
                raise ValidationError(
                    MODULE, 'GridSpec', NO_DEFAULT_GRID,
                    'n in %s' % sorted(GRID_POINTS), 'n = %i' % n,
                    'pass points_per_axis'
                                     )
            points_per_axis = GRID_POINTS[n]
        points_per_axis = int(points_per_axis)
        if points_per_axis < 3 or points_per_axis % 2 == 0 or not half_width > 0.0:
            raise ValidationError(
                MODULE, 'GridSpec', BAD_GRID,
                'odd points_per_axis >= 3, half_width > 0',
                '%i, %s' % (points_per_axis, half_width), ''
                                 )
        self.__center = center
        self.__half_width = float(half_width)
        self.__points_per_axis = points_per_axis

    @property
    def center(self):
        return self.__center

    @property
    def half_width(self):
        return self.__half_width

    @property
    def points_per_axis(self):
        return self.__points_per_axis

    @property
    def n(self):
        return self.__center.shape[0]

    @property
    def step(self):
        return 2.0 * self.__half_width / (self.__points_per_axis - 1)

    def axes(self):
        offsets = np.linspace(-self.__half_width, self.__half_width,
                              self.__points_per_axis)
        return [c + offsets for c in self.__center]

    def points(self):
        """
        Returns every grid point as the rows of an N x n array, in a fixed
        order.
        """
        mesh = np.meshgrid(*self.axes(), indexing='ij')
        return np.column_stack([m.reshape(-1) for m in mesh])

    def on_boundary(self, index):
        """
        Tells whether the flat point index lies on the hull of the grid.
        """
        position = np.unravel_index(index, (self.__points_per_axis,) * self.n)
        return any(p in (0, self.__points_per_axis - 1) for p in position)

# end class GridSpec()


class BruteResult(object):
    """
    Value of a grid search, the grid point attaining it, and whether that
    point lies on the hull of the grid.  A hull hit means the grid may not
    contain the true optimizer.
    """

    def __init__(self, value, point, on_boundary):
        self.__value = float(value)
        self.__point = point
        self.__on_boundary = bool(on_boundary)

    def __str__(self):
        return 'BruteResult(value=%g, on_boundary=%s)' % \
            (self.__value, self.__on_boundary)

    @property
    def value(self):
        return self.__value

    @property
    def point(self):
        return self.__point

    @property
    def on_boundary(self):
        return self.__on_boundary

# end class BruteResult()


def _evaluate(f, points, vectorized):
    if vectorized:
        return np.asarray(f(points), dtype=float).reshape(-1)
    return np.array([float(f(p)) for p in points])


def brute_envelope(f, r, x, grid=None, vectorized=False):
    """
    brute_envelope returns min over the grid of f(y) + (r/2) |y - x|^2.

    Parameters:
        f: the function, +inf allowed
            type: callable R^n -> float, or N x n -> N when vectorized
            default: none
            required: yes
        r: prox-parameter
            type: float
            default: none
            required: yes
        x: prox centre
            type: array_like
            default: none
            required: yes
        grid: search grid
            type: GridSpec
            default: GridSpec(x)
            required: no
        vectorized: f takes all grid points at once
            type: bool
            default: False
            required: no

    Return Values:
        BruteResult: minimum, minimizer and hull flag

    Usage:
        brute_envelope(lambda y: 0.5 * y @ y, 1.0, [2.0]).value   # 1.0
    """
    x = as_vector(x, function='brute_envelope')
    grid = grid or GridSpec(x)
    points = grid.points()
    values = _evaluate(f, points, vectorized) + \
        0.5 * r * np.sum((points - x) ** 2, axis=1)
    index = int(np.argmin(values))
    hit = grid.on_boundary(index)
    if hit:
        logger.warning('brute_envelope: minimizer on the grid hull at %s',
                       points[index])
    return BruteResult(values[index], points[index], hit)

# end brute_envelope()


def brute_conjugate(f, y, grid=None, vectorized=False):
    """
    brute_conjugate returns max over the grid of <y, x> - f(x).  A maximizer
    on the hull flags the supremum as unbounded, as happens off dom f*.
    """
    y = as_vector(y, function='brute_conjugate')
    grid = grid or GridSpec(np.zeros_like(y))
    points = grid.points()
    values = points @ y - _evaluate(f, points, vectorized)
    index = int(np.argmax(values))
    hit = grid.on_boundary(index)
    if hit:
        logger.warning('brute_conjugate: maximizer on the grid hull, supremum looks unbounded')
    return BruteResult(values[index], points[index], hit)


def fd_gradient(f, x, h=FD_STEP):
    """
    Central finite differences of a smooth f at x with step h.
    """
    x = as_vector(x, function='fd_gradient')
    gradient = np.empty_like(x)
    for i in range(x.shape[0]):
        e = np.zeros_like(x)
        e[i] = h
        forward, backward = float(f(x + e)), float(f(x - e))
        if not (np.isfinite(forward) and np.isfinite(backward)):
            raise ValidationError(
                MODULE, 'fd_gradient', NON_FINITE,
                'finite values', '%s, %s' % (forward, backward), ''
                                 )
        gradient[i] = (forward - backward) / (2.0 * h)
    return gradient


def cyclic_sum(T, points):
    """
    Returns sum_i <x_i - T x_i, T x_i - T x_(i+1)> over the closed cycle
    x_1, ..., x_m, x_1.
    """
    points = [as_vector(p, function='cyclic_sum') for p in points]
    if len(points) < 2:
        raise ValidationError(
            MODULE, 'cyclic_sum', TOO_FEW_POINTS,
            '>= 2 points', str(len(points)), ''
                             )
    images = [np.asarray(T(p), dtype=float) for p in points]
    total = 0.0
    for i, (x, tx) in enumerate(zip(points, images)):
        total += float((x - tx) @ (tx - images[(i + 1) % len(points)]))
    return total


def cyclic_monotonicity_check(T, points, slack=CYCLIC_TOL):
    """
    cyclic_monotonicity_check returns whether the cyclic sum of T over the
    points is >= -slack.  Resolvents of maximally cyclically monotone
    operators, e.g. proximal maps, pass on every cycle.

    Usage:
        cyclic_monotonicity_check(lambda x: x / 2, [[1.0], [2.0], [-1.0]])
    """
    return cyclic_sum(T, points) >= -slack
