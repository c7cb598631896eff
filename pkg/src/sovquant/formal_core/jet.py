"""Truncated power series in z^1..z^n, zbar^1..zbar^n around a base point.

A jet stores the Taylor coefficients in the displacement variables
``zeta = z - x`` and ``conj(zeta)``.  Internally the coefficients live in
homogeneous components ``0..order`` of FLINT rational multivariate
polynomials, one list for the real parts and one for the imaginary parts, so
that a truncated product only ever forms the components it keeps.
"""

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import flint

from ..errors import BasePointMismatch, NotInvertible, PrecisionExhausted
from .gaussian import GaussianRational


@lru_cache(maxsize=None)
def _context(n):
    names = tuple(f"z{k}" for k in range(n)) + tuple(f"zb{k}" for k in range(n))
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


@lru_cache(maxsize=None)
def _swap_gens(n):
    gens = _context(n).gens()
    return gens[n:] + gens[:n]


def _fq(x):
    return flint.fmpq(x.numerator, x.denominator)


def _from_fq(q):
    return Fraction(int(q.p), int(q.q))


def _scalar_parts(c):
    """Split an int/Fraction/GaussianRational into two fmpq values."""
    if isinstance(c, GaussianRational):
        return _fq(c.re), _fq(c.im)
    if isinstance(c, (int, Rational)):
        c = Fraction(c)
        return _fq(c), flint.fmpq(0)
    raise TypeError(f"unsupported scalar {type(c).__name__}")


def _cmul(ar, ai, br, bi):
    """(ar + i ai)(br + i bi) for polynomials, skipping zero factors."""
    re = im = None
    if ar and br:
        re = ar * br
    if ai and bi:
        re = -(ai * bi) if re is None else re - ai * bi
    if ar and bi:
        im = ar * bi
    if ai and br:
        im = ai * br if im is None else im + ai * br
    return re, im


class Jet:
    """A jet of a function of (z, zbar) with a tracked valid order.

    Coefficients of total degree ``<= order`` are exact; nothing beyond that
    is stored or ever reported.
    """

    __slots__ = ("n", "base", "order", "_re", "_im")

    def __init__(self, n, base, order, re, im):
        self.n = n
        self.base = base
        self.order = order
        self._re = re
        self._im = im

    # ------------------------------------------------------------------ construction

    @classmethod
    def zero(cls, n, base, order):
        if order < 0:
            raise PrecisionExhausted("negative jet order")
        z = _context(n).from_dict({})
        base = tuple(GaussianRational.coerce(b) for b in base)
        return cls(n, base, order, (z,) * (order + 1), (z,) * (order + 1))

    @classmethod
    def constant(cls, n, base, order, c):
        return cls.zero(n, base, order) + c

    @classmethod
    def variable(cls, n, base, order, var):
        """The displacement coordinate ``z^var - x^var`` (``var < n``) or its conjugate."""
        return cls.from_terms(n, base, order, {tuple(int(i == var) for i in range(2 * n)): 1})

    @classmethod
    def from_terms(cls, n, base, order, terms):
        """Build from ``{exponents(2n): coefficient}`` in local coordinates.

        Terms above ``order`` are dropped.
        """
        ctx = _context(n)
        re = [dict() for _ in range(order + 1)]
        im = [dict() for _ in range(order + 1)]
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != 2 * n:
                raise ValueError(f"exponent tuple {exps} has wrong length for n={n}")
            d = sum(exps)
            if d > order:
                continue
            cr, ci = _scalar_parts(c)
            if cr:
                re[d][exps] = re[d].get(exps, 0) + cr
            if ci:
                im[d][exps] = im[d].get(exps, 0) + ci
        base = tuple(GaussianRational.coerce(b) for b in base)
        return cls(
            n,
            base,
            order,
            tuple(ctx.from_dict(c) for c in re),
            tuple(ctx.from_dict(c) for c in im),
        )

    @classmethod
    def from_polynomial(cls, n, base, order, terms):
        """Taylor-expand a polynomial given in global coordinates around ``base``.

        ``terms`` maps ``(alpha, beta)`` (exponents of z and zbar) to
        coefficients.
        """
        base = tuple(GaussianRational.coerce(b) for b in base)
        shifts = list(base) + [b.conj() for b in base]
        out = cls.zero(n, base, order)
        linear = [cls.variable(n, base, order, v) + shifts[v] for v in range(2 * n)]
        for (alpha, beta), c in terms.items():
            term = cls.constant(n, base, order, c)
            for v, e in enumerate(tuple(alpha) + tuple(beta)):
                for _ in range(e):
                    term = term * linear[v]
            out = out + term
        return out

    # ------------------------------------------------------------------ inspection

    def _check(self, other):
        if self.n != other.n or (self.base is not other.base and self.base != other.base):
            raise BasePointMismatch(f"jets at {self.base} and {other.base} cannot be combined")

    def coeff(self, exps):
        exps = tuple(exps)
        d = sum(exps)
        if d > self.order:
            raise PrecisionExhausted(f"coefficient of degree {d} beyond valid order {self.order}")
        return GaussianRational(_from_fq(self._re[d][exps]), _from_fq(self._im[d][exps]))

    def terms(self):
        """Nonzero coefficients as ``{exponents: GaussianRational}``."""
        out = {}
        for d in range(self.order + 1):
            re = self._re[d].to_dict() if self._re[d] else {}
            im = self._im[d].to_dict() if self._im[d] else {}
            for e in set(re) | set(im):
                out[e] = GaussianRational(
                    _from_fq(re[e]) if e in re else 0, _from_fq(im[e]) if e in im else 0
                )
        return out

    def value(self):
        """Constant term, i.e. the value at the base point."""
        return self.coeff((0,) * (2 * self.n))

    def is_zero(self):
        return not any(self._re) and not any(self._im)

    def is_unit(self):
        return not self.value().is_zero()

    def is_real(self):
        """Coefficient symmetry coeff(a, b) == conj(coeff(b, a))."""
        return (self - self.conj()).is_zero()

    def is_holomorphic(self):
        return all(not any(e[self.n:]) for e in self.terms())

    def is_antiholomorphic(self):
        return all(not any(e[: self.n]) for e in self.terms())

    def max_abs_part(self):
        """Largest |re| or |im| among the stored coefficients (exact)."""
        best = Fraction(0)
        for c in self.terms().values():
            best = max(best, abs(c.re), abs(c.im))
        return best

    # ------------------------------------------------------------------ arithmetic

    def truncate(self, order):
        if order < 0:
            raise PrecisionExhausted("negative jet order")
        if order >= self.order:
            return self
        return Jet(self.n, self.base, order, self._re[: order + 1], self._im[: order + 1])

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            o = min(self.order, other.order)
            return Jet(
                self.n,
                self.base,
                o,
                tuple(self._re[d] + other._re[d] for d in range(o + 1)),
                tuple(self._im[d] + other._im[d] for d in range(o + 1)),
            )
        try:
            cr, ci = _scalar_parts(other)
        except TypeError:
            return NotImplemented
        return Jet(
            self.n,
            self.base,
            self.order,
            (self._re[0] + cr,) + self._re[1:],
            (self._im[0] + ci,) + self._im[1:],
        )

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.n, self.base, self.order, tuple(-p for p in self._re), tuple(-p for p in self._im))

    def __sub__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            o = min(self.order, other.order)
            return Jet(
                self.n,
                self.base,
                o,
                tuple(self._re[d] - other._re[d] for d in range(o + 1)),
                tuple(self._im[d] - other._im[d] for d in range(o + 1)),
            )
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        cr, ci = _scalar_parts(c)
        if not ci:
            return Jet(self.n, self.base, self.order, tuple(p * cr for p in self._re), tuple(p * cr for p in self._im))
        re = tuple(self._re[d] * cr - self._im[d] * ci for d in range(self.order + 1))
        im = tuple(self._im[d] * cr + self._re[d] * ci for d in range(self.order + 1))
        return Jet(self.n, self.base, self.order, re, im)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        o = min(self.order, other.order)
        ctx = _context(self.n)
        zero = ctx.from_dict({})
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        lhs = [d for d in range(o + 1) if ar[d] or ai[d]]
        rhs = [d for d in range(o + 1) if br[d] or bi[d]]
        re = [zero] * (o + 1)
        im = [zero] * (o + 1)
        for i in lhs:
            for j in rhs:
                d = i + j
                if d > o:
                    break
                pr, pi = _cmul(ar[i], ai[i], br[j], bi[j])
                if pr is not None:
                    re[d] = re[d] + pr
                if pi is not None:
                    im[d] = im[d] + pi
        return Jet(self.n, self.base, o, tuple(re), tuple(im))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = Jet.constant(self.n, self.base, self.order, 1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inv()
        return self.scale(GaussianRational.coerce(other).inv())

    def diff(self, var):
        """Partial derivative in local variable ``var`` (0..n-1 for z, n..2n-1 for zbar)."""
        if self.order < 1:
            raise PrecisionExhausted("cannot differentiate a jet of valid order 0")
        re = tuple(p.derivative(var) if p else p for p in self._re[1:])
        im = tuple(p.derivative(var) if p else p for p in self._im[1:])
        return Jet(self.n, self.base, self.order - 1, re, im)

    def diff_z(self, k):
        return self.diff(k)

    def diff_zbar(self, l):
        return self.diff(self.n + l)

    def conj(self):
        """Complex conjugate function: swap z and zbar, conjugate coefficients."""
        gens = _swap_gens(self.n)
        re = tuple(p.compose(*gens) if p else p for p in self._re)
        im = tuple(-p.compose(*gens) if p else p for p in self._im)
        return Jet(self.n, self.base, self.order, re, im)

    def inv(self):
        """Multiplicative inverse up to the valid order."""
        a0 = self.value()
        if a0.is_zero():
            raise NotInvertible("jet with vanishing constant term is not invertible")
        b0 = a0.inv()
        b0r, b0i = _scalar_parts(b0)
        ctx = _context(self.n)
        zero = ctx.from_dict({})
        ar, ai = self._re, self._im
        re = [ctx.constant(b0r)] + [zero] * self.order
        im = [ctx.constant(b0i)] + [zero] * self.order
        nz = [i for i in range(1, self.order + 1) if ar[i] or ai[i]]
        for d in range(1, self.order + 1):
            sr, si = zero, zero
            for i in nz:
                if i > d:
                    break
                pr, pi = _cmul(ar[i], ai[i], re[d - i], im[d - i])
                if pr is not None:
                    sr = sr + pr
                if pi is not None:
                    si = si + pi
            # b_d = -b0 * s
            re[d] = -(sr * b0r - si * b0i)
            im[d] = -(si * b0r + sr * b0i)
        return Jet(self.n, self.base, self.order, tuple(re), tuple(im))

    def log_ratio(self):
        """Jet of log(a / a0) via the Mercator series in w = a/a0 - 1."""
        a0 = self.value()
        if a0.is_zero():
            raise NotInvertible("log_ratio needs a nonzero constant term")
        w = self.scale(a0.inv()) - 1
        out = Jet.zero(self.n, self.base, self.order)
        power = w
        for m in range(1, self.order + 1):
            out = out + power.scale(Fraction((-1) ** (m + 1), m))
            power = power * w
        return out

    # ------------------------------------------------------------------ comparison

    def __eq__(self, other):
        """Equality of all coefficients both jets know (up to the common valid order)."""
        if isinstance(other, Jet):
            if self.n != other.n or self.base != other.base:
                return False
            return (self - other).is_zero()
        if isinstance(other, (int, Rational, GaussianRational)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        terms = self.terms()
        if not terms:
            return f"Jet(0 + O({self.order + 1}))"
        parts = []
        for e in sorted(terms, key=lambda e: (sum(e), e)):
            mono = "*".join(
                (f"z{i}" if i < self.n else f"zb{i - self.n}") + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p
            )
            parts.append(f"({terms[e]})" + (f"*{mono}" if mono else ""))
        return "Jet(" + " + ".join(parts) + f" + O({self.order + 1}))"
