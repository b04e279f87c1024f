import functools
import math

from moreau import MoreauError, \
                   NOT_REPRESENTABLE

# globals

MODULE = 'extreal.py'

FINITE = 'finite'
PLUS_INFINITY = 'plus_infinity'

# how +inf is written into json documents
INF_TOKEN = 'inf'


@functools.total_ordering
class ExtReal(object):
    """
    The ExtReal class holds a value of (-inf, +inf], the range of the proper
    convex functions handled by this package.  Addition follows
    inf-addition, so +inf absorbs everything and +inf - +inf = +inf.
    Subtracting +inf from a finite number would leave the range and raises
    MoreauError.

    Attributes:
        tag: FINITE or PLUS_INFINITY.
            type: str
            default: none
            scope: protected
        value: The real value when finite, float('inf') otherwise.
            type: float
            default: none
            scope: protected

    Usage:
        v = ExtReal(2.5)
        w = ExtReal.infinity()
        print(v + w)
    """

    def __init__(self, value):
        """
        The ExtReal's __init__ method accepts any real number, float('inf')
        or another ExtReal.  NaN and -inf are rejected.

        Parameters:
            value: the number to wrap
                type: float, int, ExtReal
                default: none
                required: yes

        Return Values:
            ExtReal object: a new ExtReal instance

        Usage:
            v = ExtReal(0.5)
        """
        if isinstance(value, ExtReal):
            value = value.value
        value = float(value)
        if math.isnan(value) or value == -math.inf:
            raise MoreauError(
                '%s: __init__: %s: %s' % (MODULE, NOT_REPRESENTABLE, value)
                             )
        self.__value = value
        self.__tag = PLUS_INFINITY if value == math.inf else FINITE

# end __init__

    @classmethod
    def infinity(cls):
        return cls(math.inf)

    def __str__(self):
        return INF_TOKEN if self.__tag == PLUS_INFINITY else repr(self.__value)

    def __repr__(self):
        return 'ExtReal(%s)' % self

    def __float__(self):
        return self.__value

    @property
    def tag(self):
        """
        The tag getter returns FINITE or PLUS_INFINITY.

        Return Values:
            str: the tag
        """
        return self.__tag

    @property
    def value(self):
        """
        The value getter returns the wrapped float; float('inf') for +inf.

        Return Values:
            float: the value
        """
        return self.__value

    @property
    def is_finite(self):
        return self.__tag == FINITE

    def __add__(self, other):
        other = ExtReal(other)
        if not (self.is_finite and other.is_finite):
            return ExtReal.infinity()
        return ExtReal(self.__value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = ExtReal(other)
        if not self.is_finite:
            # inf-addition: +inf - anything = +inf, including +inf - +inf
            return ExtReal.infinity()
        if not other.is_finite:
            raise MoreauError(
                '%s: __sub__: %s: %s - inf' % (MODULE, NOT_REPRESENTABLE, self)
                             )
        return ExtReal(self.__value - other.value)

    def __mul__(self, scalar):
        """
        Multiplication by a nonnegative real.  0 * +inf = 0, following the
        convention that a zero multiple of a proper function is zero.
        """
        scalar = float(scalar)
        if scalar < 0.0:
            raise MoreauError(
                '%s: __mul__: %s: %s * %s' %
                (MODULE, NOT_REPRESENTABLE, scalar, self)
                             )
        if scalar == 0.0:
            return ExtReal(0.0)
        return ExtReal(scalar * self.__value)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = ExtReal(other)
        except (MoreauError, TypeError, ValueError):
            return NotImplemented
        return self.__value == other.value

    def __lt__(self, other):
        return self.__value < ExtReal(other).value

    def __hash__(self):
        return hash(self.__value)

    def isclose(self, other, abs_tol=1e-9, rel_tol=0.0):
        """
        Two +inf values are close; +inf is never close to a finite value.
        """
        other = ExtReal(other)
        if self.is_finite != other.is_finite:
            return False
        if not self.is_finite:
            return True
        return math.isclose(self.__value, other.value,
                            rel_tol=rel_tol, abs_tol=abs_tol)

    def to_json(self):
        """
        Returns a json friendly value: the float when finite, "inf" when not.
        """
        return self.__value if self.is_finite else INF_TOKEN

# end class ExtReal()
