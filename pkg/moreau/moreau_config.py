'''Configuration parameters for the moreau package.'''

# RANK_REL_TOL: Singular values below RANK_REL_TOL * sigma_max are treated
#               as zero when deciding the dimension of a span or the rank
#               of a matrix handed to pinv.
RANK_REL_TOL = 1e-10

#
# PSD_TOL: Slack allowed below zero for eigenvalues of forms that must be
#          positive semidefinite, and for the symmetry defect of relations.
#
PSD_TOL = 1e-9

#
# VALUE_TOL: Residual allowed when testing membership of a vector in a
#            subspace or affine set, and when comparing vectors and scalars.
#            Membership residuals are scaled by max(1, |x|).
#
VALUE_TOL = 1e-9

#
# DEFAULT_PROX_PARAMETER: The r used for envelopes when the caller gives none,
#                         including the Attouch-Wets distance.
#
DEFAULT_PROX_PARAMETER = 1.0

#
# DEFAULT_I_MAX: Number of balls summed by the Attouch-Wets distance.  The
#                neglected tail is bounded by 2 ** -DEFAULT_I_MAX.
#
DEFAULT_I_MAX = 20

#
# FD_STEP: Step of the central finite differences used by the oracle.
#
FD_STEP = 1e-5

#
# GRID_HALF_WIDTH: Half width of the brute-force oracle grids.
#
GRID_HALF_WIDTH = 5.0

#
# GRID_POINTS: Points per axis of the oracle grids keyed by dimension.
#              Brute force beyond n = 3 is not supported.
#
GRID_POINTS = {1: 2001, 2: 201, 3: 51}

#
# CYCLIC_TOL: Slack allowed below zero in the cyclic monotonicity sum.
#
CYCLIC_TOL = 1e-10

#
# LOG_LEVEL / LOG_FORMAT: Used by the command line tool only.  The library
#                         never installs logging handlers itself.
#
LOG_LEVEL = 'WARNING'
LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s: %(message)s'
