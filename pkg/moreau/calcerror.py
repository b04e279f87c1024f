from moreau import MoreauError

MODULE = 'calcerror.py'


class CalcError(MoreauError):
    """
    CalcError is derived from MoreauError and is the common parent of every
    exception raised by the mathematical operations of the package.  Code
    that wants to catch any failure coming out of subspace, linrel, glq,
    envinv, epiconv, apps or oracle catches CalcError.

    CalcError has no attributes itself, but its initialization method
    includes a rich parameter set to indicate the problem, where it
    happened and what its cause might be.  See the documentation for
    the __init__ method for an explanation of each parameter.

    Attributes:
        none
    """

    def __init__(self,
                 module,
                 function,
                 error,
                 expected_value,
                 received_value,
                 cause_or_resolution):
        """
        CalcError's __init__ method formats a message based on its
        parameters and then calls its parent class, MoreauError, to post it.

        Parameters:
            module: Name of the python module in which the error originated.
                type: str
                default: none
                required: yes
            function: The function's name where the problem happened.
                type: str
                default: none
                required: yes
            error: The error encountered.  Use one of the module's error
                   constants.
                type: str
                default: none
                required: yes
            expected_value: The value(s) that should have been provided.  If
                            no value was expected, use an empty string.
                type: str
                default: none
                required: yes
            received_value: The value that caused the problem.  Use an empty
                            string if no single value is to blame.
                type: str
                default: none
                required: yes
            cause_or_resolution: Notes on why the exception was raised and
                                 what might fix it.  Use an empty string if
                                 unknown.
                type: str
                default: none
                required: yes

        Return Values:
            CalcError object: the exception that gets thrown.

        Usage:
            if M.shape[0] != M.shape[1]:
                raise ValidationError(
                    MODULE, 'from_matrix', NOT_SQUARE,
                    'n x n matrix', str(M.shape), ''
                                     )
        """
        self.__error = error
        exception_msg = \
            '%s: %s: %s: expected = %s: received = %s: possible cause or resolution = %s' % \
            (module, function, error, expected_value, received_value, cause_or_resolution)
        super(CalcError, self).__init__(exception_msg)

# end __init__()

    @property
    def error(self):
        """
        Get method error returns the short error constant this exception was
        raised with, e.g. NOT_SQUARE, without the surrounding context.

        Return Values:
            str: The error constant.
        """
        return self.__error

# end error getter

# end class CalcError


class ValidationError(CalcError):
    """
    ValidationError signals a violated precondition or malformed input:
    mismatched dimensions, non-square matrices, a non-positive
    prox-parameter, or a relation that is not maximally monotone and
    symmetric where one is required.  The command line tool exits with
    status 2 when it catches one.
    """
    pass

# end class ValidationError


class InfeasibleError(CalcError):
    """
    InfeasibleError signals a request that is well formed but has no answer,
    for instance the difference of two quadratic forms whose domains are not
    nested, or a quadratic whose gradient is not r-Lipschitz and therefore
    is no Moreau envelope with parameter r.  The command line tool exits
    with status 3 when it catches one.
    """
    pass

# end class InfeasibleError
