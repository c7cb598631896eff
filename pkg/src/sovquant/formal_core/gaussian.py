"""Exact complex numbers with rational real and imaginary parts."""

from fractions import Fraction
from numbers import Rational


def parse_rational(value):
    """Accept ints, Fractions and "p/q" strings; reject floats."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = re if type(re) is Fraction else parse_rational(re)
        self.im = im if type(im) is Fraction else parse_rational(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point values are not accepted")
        return cls(x)

    @classmethod
    def from_json(cls, obj):
        """Build from ``{"re": "p/q", "im": "p/q"}``, a ``[re, im]`` pair or a rational."""
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ValueError(f"unknown complex-number fields: {sorted(extra)}")
            return cls(parse_rational(obj.get("re", 0)), parse_rational(obj.get("im", 0)))
        if isinstance(obj, (list, tuple)):
            re, im = obj
            return cls(parse_rational(re), parse_rational(im))
        return cls(parse_rational(obj))

    def to_json(self):
        return {"re": str(self.re), "im": str(self.im)}

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """Squared modulus, a rational number."""
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return not self.re and not self.im

    def is_unit(self):
        return not self.is_zero()

    def inv(self):
        from ..errors import NotInvertible

        n = self.norm()
        if not n:
            raise NotInvertible("division by zero in GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * GaussianRational(other).inv()
        if isinstance(other, GaussianRational):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)
