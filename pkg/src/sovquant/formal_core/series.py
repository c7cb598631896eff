"""Truncated Laurent series in a single formal parameter (h or nu)."""

from fractions import Fraction
from numbers import Rational

from ..errors import NotInvertible, PrecisionExhausted
from .gaussian import GaussianRational


def is_zero(x):
    if isinstance(x, (int, Rational)):
        return x == 0
    return x.is_zero()


class FormalSeries:
    """``sum_{d >= min_degree} param^d * coeffs[d]``, exact for ``d <= order``.

    Coefficients may be scalars (Fraction, GaussianRational), jets or
    fiber-graded jets; only ``+``, ``-``, ``*`` and ``is_zero`` are required of
    them.  ``min_degree`` is a lower bound for the valuation.
    """

    __slots__ = ("param", "coeffs", "order", "min_degree")

    def __init__(self, param, coeffs, order, min_degree=None):
        self.param = param
        self.order = order
        self.coeffs = {d: c for d, c in coeffs.items() if d <= order}
        if min_degree is None:
            min_degree = min(self.coeffs) if self.coeffs else order + 1
        if self.coeffs and min(self.coeffs) < min_degree:
            raise ValueError("coefficient below min_degree")
        self.min_degree = min_degree

    @classmethod
    def constant(cls, param, c, order):
        return cls(param, {0: c}, order, 0)

    @classmethod
    def monomial(cls, param, degree, c, order):
        return cls(param, {degree: c}, order, degree)

    def valuation(self):
        """Lowest degree carrying a nonzero coefficient, or order + 1 if none."""
        nz = [d for d, c in self.coeffs.items() if not is_zero(c)]
        return min(nz) if nz else max(self.order + 1, self.min_degree)

    def coeff(self, d, default=None):
        if d > self.order:
            raise PrecisionExhausted(f"{self.param}^{d} is beyond the valid order {self.order}")
        return self.coeffs.get(d, default)

    def degrees(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return all(is_zero(c) for c in self.coeffs.values())

    def truncate(self, order):
        if order >= self.order:
            return self
        return FormalSeries(self.param, self.coeffs, order, min(self.min_degree, order + 1))

    def map(self, fn):
        return FormalSeries(self.param, {d: fn(c) for d, c in self.coeffs.items()}, self.order, self.min_degree)

    def shift(self, k):
        """Multiply by param^k."""
        return FormalSeries(
            self.param, {d + k: c for d, c in self.coeffs.items()}, self.order + k, self.min_degree + k
        )

    def euler(self):
        """param * d/dparam."""
        return FormalSeries(self.param, {d: c * d for d, c in self.coeffs.items() if d}, self.order, self.min_degree)

    def _other(self, other):
        if isinstance(other, FormalSeries):
            if other.param != self.param:
                raise ValueError(f"cannot combine series in {self.param} and {other.param}")
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return self + FormalSeries.constant(self.param, other, self.order)
        order = min(self.order, o.order)
        out = {d: c for d, c in self.coeffs.items() if d <= order}
        for d, c in o.coeffs.items():
            if d <= order:
                out[d] = out[d] + c if d in out else c
        return FormalSeries(self.param, out, order, min(self.min_degree, o.min_degree))

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(self.param, {d: -c for d, c in self.coeffs.items()}, self.order, self.min_degree)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return FormalSeries(self.param, {d: c * other for d, c in self.coeffs.items()}, self.order, self.min_degree)
        va, vb = self.valuation(), o.valuation()
        order = min(self.order + vb, o.order + va)
        out = {}
        for d1, c1 in self.coeffs.items():
            if is_zero(c1):
                continue
            for d2, c2 in o.coeffs.items():
                d = d1 + d2
                if d > order or is_zero(c2):
                    continue
                p = c1 * c2
                out[d] = out[d] + p if d in out else p
        return FormalSeries(self.param, out, order, va + vb)

    def __rmul__(self, other):
        return FormalSeries(self.param, {d: other * c for d, c in self.coeffs.items()}, self.order, self.min_degree)

    def __eq__(self, other):
        """Coefficientwise equality up to the common valid order."""
        if isinstance(other, FormalSeries):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{self.param}^{d}*({self.coeffs[d]!r})" for d in self.degrees())
        return f"FormalSeries({body or '0'} + O({self.param}^{self.order + 1}))"


def series_inv(s):
    """Multiplicative inverse of a scalar Laurent series.

    If ``s = x^m (c0 + c1 x + ...)`` is known to order R, the inverse starts at
    ``x^-m`` and is known to order ``R - 2m``.
    """
    m = s.valuation()
    if m > s.order:
        raise NotInvertible("series vanishes to its valid order")
    c0 = s.coeffs[m]
    inv0 = Fraction(1) / c0 if isinstance(c0, (int, Rational)) else c0.inv()
    rel = s.order - m
    a = [s.coeffs.get(m + k, 0) for k in range(rel + 1)]
    b = [inv0]
    for k in range(1, rel + 1):
        acc = 0
        for i in range(1, k + 1):
            if a[i]:
                acc = acc + a[i] * b[k - i]
        b.append(-(acc * inv0) if acc else 0 * inv0)
    return FormalSeries(s.param, {k - m: c for k, c in enumerate(b) if c}, rel - m, -m)


def scalar_series(param, values, order, min_degree=0):
    """Convenience: series from a list of scalar coefficients starting at min_degree."""
    coeffs = {min_degree + k: v for k, v in enumerate(values) if v}
    return FormalSeries(param, coeffs, order, min_degree)


__all__ = ["FormalSeries", "series_inv", "scalar_series", "is_zero", "GaussianRational"]
