"""Functions on U x C^* with exact monomial dependence u^a ubar^b on the fiber."""

from fractions import Fraction
from numbers import Rational

from ..errors import BasePointMismatch, PrecisionExhausted
from .gaussian import GaussianRational
from .jet import Jet


class FiberGradedJet:
    """Finite sum of ``u^a ubar^b * jet`` over grades ``(a, b)`` in Z^2.

    All component jets share the base point and the valid order ``order``.
    Grades whose jet vanishes to that order are not stored.
    """

    __slots__ = ("n", "base", "order", "grades")

    def __init__(self, n, base, order, grades):
        self.n = n
        self.base = base
        self.order = order
        self.grades = grades

    @classmethod
    def build(cls, n, base, order, grades):
        clean = {}
        for g, jet in grades.items():
            jet = jet.truncate(order)
            if jet.order < order:
                order = jet.order
        for g, jet in grades.items():
            jet = jet.truncate(order)
            if not jet.is_zero():
                clean[(int(g[0]), int(g[1]))] = jet
        base = tuple(GaussianRational.coerce(b) for b in base)
        return cls(n, base, order, clean)

    @classmethod
    def zero(cls, n, base, order):
        if order < 0:
            raise PrecisionExhausted("negative jet order")
        return cls(n, tuple(GaussianRational.coerce(b) for b in base), order, {})

    @classmethod
    def from_jet(cls, jet, grade=(0, 0)):
        return cls.build(jet.n, jet.base, jet.order, {grade: jet})

    def component(self, grade):
        jet = self.grades.get(tuple(grade))
        if jet is None:
            return Jet.zero(self.n, self.base, self.order)
        return jet

    def grade_set(self):
        return set(self.grades)

    def is_zero(self):
        return not self.grades

    def value(self):
        """Value at the base point with u = 1, as a GaussianRational."""
        total = GaussianRational(0)
        for jet in self.grades.values():
            total = total + jet.value()
        return total

    def is_unit(self):
        return len(self.grades) == 1 and next(iter(self.grades.values())).is_unit()

    def max_abs_part(self):
        best = Fraction(0)
        for jet in self.grades.values():
            best = max(best, jet.max_abs_part())
        return best

    def _check(self, other):
        if self.n != other.n or (self.base is not other.base and self.base != other.base):
            raise BasePointMismatch("fiber-graded jets at different base points")

    def _coerce(self, other):
        if isinstance(other, FiberGradedJet):
            self._check(other)
            return other
        if isinstance(other, Jet):
            return FiberGradedJet.from_jet(other)
        if isinstance(other, (int, Rational, GaussianRational)):
            return FiberGradedJet.from_jet(Jet.constant(self.n, self.base, self.order, other))
        return None

    def truncate(self, order):
        if order >= self.order:
            return self
        return FiberGradedJet.build(self.n, self.base, order, self.grades)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        o = min(self.order, other.order)
        out = {g: j.truncate(o) for g, j in self.grades.items()}
        for g, j in other.grades.items():
            out[g] = out[g] + j if g in out else j.truncate(o)
        return FiberGradedJet.build(self.n, self.base, o, out)

    __radd__ = __add__

    def __neg__(self):
        return FiberGradedJet(self.n, self.base, self.order, {g: -j for g, j in self.grades.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return FiberGradedJet.zero(self.n, self.base, self.order)
        return FiberGradedJet(self.n, self.base, self.order, {g: j.scale(c) for g, j in self.grades.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            if not other:
                return FiberGradedJet.zero(self.n, self.base, self.order)
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        o = min(self.order, other.order)
        out = {}
        for (a, b), f in self.grades.items():
            for (c, d), g in other.grades.items():
                key = (a + c, b + d)
                prod = f * g
                out[key] = out[key] + prod if key in out else prod
        return FiberGradedJet.build(self.n, self.base, o, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        out = FiberGradedJet.from_jet(Jet.constant(self.n, self.base, self.order, 1))
        for _ in range(k):
            out = out * self
        return out

    def shift(self, da, db):
        """Multiply by the fiber monomial u^da ubar^db."""
        return FiberGradedJet(self.n, self.base, self.order, {(a + da, b + db): j for (a, b), j in self.grades.items()})

    def inv(self):
        """Inverse of a single-grade element."""
        if len(self.grades) != 1:
            from ..errors import NotInvertible

            raise NotInvertible("only single-grade fiber jets are invertible")
        (a, b), jet = next(iter(self.grades.items()))
        return FiberGradedJet(self.n, self.base, self.order, {(-a, -b): jet.inv()})

    # ------------------------------------------------------------------ calculus

    def _gradewise(self, fn, order):
        return FiberGradedJet.build(self.n, self.base, order, {g: fn(j) for g, j in self.grades.items()})

    def diff_z(self, k):
        if self.order < 1:
            raise PrecisionExhausted("cannot differentiate a jet of valid order 0")
        return self._gradewise(lambda j: j.diff(k), self.order - 1)

    def diff_zbar(self, l):
        if self.order < 1:
            raise PrecisionExhausted("cannot differentiate a jet of valid order 0")
        return self._gradewise(lambda j: j.diff(self.n + l), self.order - 1)

    def diff_u(self):
        out = {(a - 1, b): j.scale(a) for (a, b), j in self.grades.items() if a}
        return FiberGradedJet(self.n, self.base, self.order, out)

    def diff_ubar(self):
        out = {(a, b - 1): j.scale(b) for (a, b), j in self.grades.items() if b}
        return FiberGradedJet(self.n, self.base, self.order, out)

    def euler_u(self):
        """u d/du: multiplies grade (a, b) by a."""
        out = {g: j.scale(g[0]) for g, j in self.grades.items() if g[0]}
        return FiberGradedJet(self.n, self.base, self.order, out)

    def euler_ubar(self):
        out = {g: j.scale(g[1]) for g, j in self.grades.items() if g[1]}
        return FiberGradedJet(self.n, self.base, self.order, out)

    def conj(self):
        out = {(b, a): j.conj() for (a, b), j in self.grades.items()}
        return FiberGradedJet(self.n, self.base, self.order, out)

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, FiberGradedJet) else other
        if other is None:
            return NotImplemented
        if self.n != other.n or self.base != other.base:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.grades:
            return f"FiberGradedJet(0 + O({self.order + 1}))"
        body = ", ".join(f"u^{a} ub^{b}: {j!r}" for (a, b), j in sorted(self.grades.items()))
        return f"FiberGradedJet({body})"
