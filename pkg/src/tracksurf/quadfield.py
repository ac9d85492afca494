r"""
Exact arithmetic in real quadratic fields Q(sqrt(D)).

A :class:`QuadNumber` is ``a + b*sqrt(D)`` with rational ``a, b`` and a fixed
squarefree ``D > 1``.  The class supports field arithmetic, exact comparisons
(via the sign trick: compare ``a**2`` against ``b**2 * D`` when the two parts
disagree in sign), hashing, and float conversion.  It mixes freely with ints
and Fractions, which are treated as elements with ``b = 0``.

This is all the infrastructure needed to drive splitting sequences whose
weights live in a quadratic extension, e.g. eigen-measures of periodic
splitting loops.
"""

from fractions import Fraction
from math import isqrt


def _is_squarefree(d):
    if d < 2:
        return False
    i = 2
    while i * i <= d:
        if d % (i * i) == 0:
            return False
        i += 1
    return True


class QuadNumber:
    """An element a + b*sqrt(D) of the real quadratic field Q(sqrt(D))."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D=5):
        if isinstance(a, QuadNumber):
            if b != 0:
                raise ValueError("cannot re-wrap a QuadNumber with b != 0")
            self.a, self.b, self.D = a.a, a.b, a.D
            return
        if isinstance(a, float) or isinstance(b, float):
            raise TypeError("QuadNumber parts must be exact (int/Fraction)")
        if not _is_squarefree(D):
            raise ValueError("D must be a squarefree integer > 1, got %r" % (D,))
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadNumber):
            if other.D != self.D:
                raise ValueError("mixed fields: sqrt(%d) vs sqrt(%d)" % (self.D, other.D))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNumber(other, 0, self.D)
        return None

    def conjugate(self):
        return QuadNumber(self.a, -self.b, self.D)

    def sign(self):
        """Exact sign of the real value: -1, 0 or 1."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Signs disagree: |a| vs |b| sqrt(D) decides.
        lhs = a * a
        rhs = b * b * self.D
        if lhs == rhs:
            return 0  # impossible for squarefree D, kept for safety
        big_is_a = lhs > rhs
        return (1 if a > 0 else -1) if big_is_a else (1 if b > 0 else -1)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNumber(o.a - self.a, o.b - self.b, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNumber(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + self.b * o.a,
            self.D,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nrm = o.a * o.a - o.b * o.b * o.D
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.D)
        inv = QuadNumber(o.a / nrm, -o.b / nrm, o.D)
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.D)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conversions -----------------------------------------------------

    def __float__(self):
        # Split sqrt(D) into integer and fractional parts to keep precision.
        r = isqrt(self.D)
        frac_part = self.D**0.5 - r  # small, well-conditioned
        return float(self.a) + float(self.b) * (r + frac_part)

    def as_fraction(self):
        """Return the rational value, or raise if the element is irrational."""
        if self.b != 0:
            raise ValueError("not a rational element: %r" % (self,))
        return self.a

    def __repr__(self):
        if self.b == 0:
            return "QuadNumber(%s, D=%d)" % (self.a, self.D)
        return "QuadNumber(%s + %s*sqrt(%d))" % (self.a, self.b, self.D)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return "%s+%s*sqrt(%d)" % (self.a, self.b, self.D)


def sqrtD(D):
    """The element sqrt(D) itself."""
    return QuadNumber(0, 1, D)


GOLDEN = QuadNumber(Fraction(1, 2), Fraction(1, 2), 5)  # (1 + sqrt 5) / 2
