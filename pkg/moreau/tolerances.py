from moreau import MoreauError, \
                   ILLEGAL_TOLERANCE
from moreau.moreau_config import RANK_REL_TOL, \
                                 PSD_TOL, \
                                 VALUE_TOL

MODULE = 'tolerances.py'


class Tolerances(object):
    """
    Class Tolerances stores the three numerical thresholds every rank,
    positivity and membership decision in the package is made against.

    Attributes:
        rank_rel_tol: Singular values smaller than rank_rel_tol times the
                      largest one are dropped.
            type: float
            scope: protected
            default: RANK_REL_TOL
        psd_tol: Allowed negative slack for eigenvalues of positive
                 semidefinite forms and for symmetry defects.
            type: float
            scope: protected
            default: PSD_TOL
        value_tol: Allowed residual for subspace and affine set membership.
            type: float
            scope: protected
            default: VALUE_TOL
    """

    def __init__(self,
                 rank_rel_tol=RANK_REL_TOL,
                 psd_tol=PSD_TOL,
                 value_tol=VALUE_TOL):
        """
        Method __init__ initializes a Tolerances object.  Every value must be
        strictly positive.

        Parameters:
            rank_rel_tol: relative singular value threshold.
               type: float
               default: RANK_REL_TOL
               required: no
            psd_tol: eigenvalue slack.
               type: float
               default: PSD_TOL
               required: no
            value_tol: membership residual.
               type: float
               default: VALUE_TOL
               required: no

        Return Values:
            Tolerances object: The newly constructed tolerances.

        Usage: tol = Tolerances()
               tol = Tolerances(psd_tol=1e-7)
        """
        for name, value in (('rank_rel_tol', rank_rel_tol),
                            ('psd_tol', psd_tol),
                            ('value_tol', value_tol)):
            if not value > 0.0:
                raise MoreauError(
                    '%s: __init__: %s: %s = %s' %
                    (MODULE, ILLEGAL_TOLERANCE, name, value)
                                 )
        self.__rank_rel_tol = float(rank_rel_tol)
        self.__psd_tol = float(psd_tol)
        self.__value_tol = float(value_tol)

    def __str__(self):
        """
        String handler for a Tolerances object.

        Usage: t = Tolerances()
               str(t)
        """
        return 'rank_rel_tol=%g, psd_tol=%g, value_tol=%g' % \
            (self.__rank_rel_tol, self.__psd_tol, self.__value_tol)

    @property
    def rank_rel_tol(self):
        """
        Get method rank_rel_tol returns the relative singular value
        threshold.

        Return Values:
            float: the threshold
        """
        return self.__rank_rel_tol

    @property
    def psd_tol(self):
        """
        Get method psd_tol returns the eigenvalue slack.

        Return Values:
            float: the slack
        """
        return self.__psd_tol

    @property
    def value_tol(self):
        """
        Get method value_tol returns the membership residual.

        Return Values:
            float: the residual bound
        """
        return self.__value_tol

# end class Tolerances()


DEFAULT_TOLERANCES = Tolerances()


def resolve(tol):
    """
    Returns tol, or the package defaults when tol is None.  Every operation
    with an optional Tolerances argument funnels through here.
    """
    if tol is None:
        return DEFAULT_TOLERANCES
    return tol
