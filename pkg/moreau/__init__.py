from moreau.moreau_config import RANK_REL_TOL, \
                                  PSD_TOL, \
                                  VALUE_TOL, \
                                  DEFAULT_PROX_PARAMETER, \
                                  DEFAULT_I_MAX

__version__ = '0.3.1'
__author__ = 'moreau contributors'
__all__ = [
    'apps',
    'calcerror',
    'cli',
    'envinv',
    'epiconv',
    'extreal',
    'glq',
    'jsonio',
    'linrel',
    'moreau_config',
    'oracle',
    'subspace',
    'tolerances'
]

# globals
MODULE = 'moreau'

# package errors
UNKNOWN_ERROR = 'Unknown error'
ILLEGAL_TOLERANCE = 'Tolerances must be strictly positive'
ILLEGAL_PROX_PARAMETER = 'The prox-parameter r must be strictly positive'
NOT_REPRESENTABLE = 'Value is not representable as an extended real in (-inf, +inf]'

# package exception class - all others inherit from this one


class MoreauError(Exception):
    """
    MoreauError is the base exception for the moreau package.  It is raised
    directly for configuration problems, e.g. a non-positive tolerance, and
    for values that cannot be represented, e.g. a finite number minus +inf.
    Errors raised by the mathematical operations themselves derive from it
    through calcerror.CalcError.

    Attributes:
        None
    """

    def __init__(self, msg):
        """
        MoreauError's __init__ method passes a message to its parent class.

        Parameters:
            msg: An error message indicating the problem.  Current values
                 include:
                    UNKNOWN_ERROR="Unknown error"
                    ILLEGAL_TOLERANCE="Tolerances must be strictly positive"
                    NOT_REPRESENTABLE="Value is not representable ..."

        Return Values:
            MoreauError object: the new exception.

        Usage:
            if rank_rel_tol <= 0.0:
                raise MoreauError(
                    ILLEGAL_TOLERANCE + ': rank_rel_tol = %s' % rank_rel_tol
                                 )
        """
        super(MoreauError, self).__init__(msg)

# end class MoreauError()
