"""The lift to U x C^*, the central element kappa, the maps tau and sigma,
the bidifferential operators D_r and the star product extended across S.

All lifted quantities are h-series of fiber-graded jets.  Elements of the
graded subalgebra ``sum_r (h/(u ubar))^r f_r`` carry fiber grade (-r, -r) in
h-degree r; :class:`FElement` is that representation.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import FiberGradeViolation, OnHypersurface, PrecisionExhausted
from .formal_core import FiberGradedJet, FormalSeries, Jet, series_inv
from .formal_core.series import is_zero
from .levi_geometry import PointCase, _point, classify_point
from .sov_engine import PotentialChart, left_mult_operator, star


def lift_rho(psi, x, order):
    """rho = psi u ubar as a fiber-graded jet (grade (1, 1) only)."""
    return FiberGradedJet.from_jet(psi.jet(x, order), (1, 1))


def formal_number(r, order):
    """N_r(nu) = prod_{s=1}^r nu / (1 + nu s), truncated at nu-order ``order``."""
    out = FormalSeries("nu", {0: Fraction(1)}, order, 0)
    for s in range(1, r + 1):
        factor = series_inv(FormalSeries("nu", {0: Fraction(1), 1: Fraction(s)}, order, 0))
        out = (out * factor).shift(1).truncate(order)
    return out


@dataclass(frozen=True)
class FElement:
    """``sum_r (h/(u ubar))^r coeffs[r]`` known to h-order ``order``."""

    coeffs: dict
    order: int

    def to_series(self):
        return FormalSeries(
            "h",
            {r: FiberGradedJet.from_jet(j, (-r, -r)) for r, j in self.coeffs.items()},
            self.order,
            min(self.coeffs, default=self.order + 1),
        )

    @classmethod
    def from_series(cls, s):
        out = {}
        for r, c in s.coeffs.items():
            extra = c.grade_set() - {(-r, -r)}
            if extra:
                raise FiberGradeViolation(f"h^{r} coefficient has grades {sorted(extra)}, expected ({-r}, {-r})")
            out[r] = c.component((-r, -r))
        return cls(out, s.order)


def check_graded(s):
    """Raise unless every h^r coefficient of ``s`` sits in fiber grade (-r, -r)."""
    FElement.from_series(s)
    return True


@dataclass(frozen=True)
class ExtendedProduct:
    """``sum_r N_r(nu) psi^r D_r(f, g)`` with the psi^r factors kept explicit."""

    psi_jet: Jet
    d_ops: dict
    numbers: dict
    order: int

    @property
    def result(self):
        out = {}
        for r, d in self.d_ops.items():
            term = self.psi_jet ** r * d
            for deg, c in self.numbers[r].coeffs.items():
                if deg > self.order:
                    continue
                out[deg] = out[deg] + term * c if deg in out else term * c
        return FormalSeries("nu", out, self.order, 0)

    def quotient_by_psi(self, degree):
        """Q with nu^degree coefficient = psi * Q, for degree >= 1 (structural)."""
        if degree < 1:
            raise ValueError("only positive nu-degrees are divisible by psi")
        out = None
        for r, d in self.d_ops.items():
            if r < 1:
                continue
            c = self.numbers[r].coeffs.get(degree)
            if not c:
                continue
            term = self.psi_jet ** (r - 1) * d * c
            out = term if out is None else out + term
        return out


class HypersurfaceLift:
    """Lifted-chart computations around one base point ``x``.

    ``nu_order`` is the formal order of every returned series; internal lifted
    computations run ``margin`` orders higher so that Laurent inputs of
    valuation >= -margin still produce results valid to ``nu_order``.
    """

    def __init__(self, psi, x, jet_order, nu_order, margin=1, check=True):
        self.psi = psi
        self.x = _point(x)
        self.jet_order = jet_order
        self.R = nu_order
        self.margin = margin
        self.check = check
        self.case = classify_point(psi, self.x)
        self.chart = PotentialChart.lifted_chart(psi, self.x, jet_order)
        self.base = self.chart.base
        self.psi_jet = psi.jet(self.x, jet_order)
        self.rho = lift_rho(psi, self.x, jet_order)
        self._powers = {}
        self._kappa = None

    @property
    def internal_order(self):
        return self.R + self.margin

    @property
    def on_surface(self):
        return self.case is not PointCase.CASE1

    def _require_off_surface(self):
        if self.on_surface:
            raise OnHypersurface("kappa and tau need psi(x) != 0")

    def jet(self, terms):
        return Jet.from_terms(self.psi.n, self.base, self.jet_order, terms)

    def series(self, coeffs, order=None):
        return FormalSeries("h", coeffs, self.internal_order if order is None else order)

    def rho_over_h(self, order=None):
        return FormalSeries("h", {-1: self.rho}, self.internal_order + 1 if order is None else order, -1)

    def lifted_star(self, F, G, order=None):
        return star(F, G, self.chart, self.internal_order if order is None else order, self.check)

    # ------------------------------------------------------------------ kappa

    def kappa(self):
        """Star inverse of rho/h, solved order by order in h."""
        if self._kappa is not None:
            return self._kappa
        self._require_off_surface()
        R = self.internal_order
        op = left_mult_operator(self.rho_over_h(R + 1), self.chart, R, self.check)
        leading = self.rho.component((1, 1))
        coeffs = {}
        for r in range(R):
            partial = FElement(coeffs, R).to_series()
            lhs = op(partial)
            residual = lhs.coeff(r) if r in lhs.coeffs else None
            if r == 0:
                residual = -1 if residual is None else residual - 1
            if residual is None or is_zero(residual):
                continue
            if not isinstance(residual, FiberGradedJet):
                residual = self.chart.coerce(residual)
            extra = residual.grade_set() - {(-r, -r)}
            if extra:
                raise FiberGradeViolation(f"kappa residual at h^{r} has grades {sorted(extra)}")
            coeffs[r + 1] = -(residual.component((-r, -r)) / leading)
        self._kappa = FElement(coeffs, R)
        return self._kappa

    def kappa_power(self, m):
        """kappa^{*m} as an h-series valid to the internal order."""
        if m in self._powers:
            return self._powers[m]
        R = self.internal_order
        one = FormalSeries("h", {0: self.chart.coerce(1)}, R, 0)
        if m == 0:
            out = one
        elif m > 0:
            self._require_off_surface()
            op = left_mult_operator(self.kappa().to_series(), self.chart, R, self.check)
            out = self.kappa_power(m - 1) if m > 1 else one
            out = op(out).truncate(R)
        else:
            k = -m
            op = left_mult_operator(self.rho_over_h(R + k + 1), self.chart, R + k, self.check)
            out = FormalSeries("h", {0: self.chart.coerce(1)}, R + k, 0)
            for _ in range(k):
                out = op(out)
            out = out.truncate(R)
        self._powers[m] = out
        return out

    # ------------------------------------------------------------------ tau

    def tau(self, f):
        """tau(sum nu^r f_r) = sum kappa^{*r} . f_r (pointwise products)."""
        self._require_off_surface()
        if not isinstance(f, FormalSeries):
            f = FormalSeries("nu", {0: f}, self.internal_order, 0)
        order = min(self.internal_order, f.order)
        out = FormalSeries("h", {}, order, order + 1)
        for r, fr in f.coeffs.items():
            if is_zero(fr) or r > order:
                continue
            out = out + self.kappa_power(r).truncate(order) * fr
        return out

    def tau_inv(self, F):
        """Triangular h-degree solve of tau(f) = F."""
        self._require_off_surface()
        if isinstance(F, FElement):
            F = F.to_series()
        order = F.order
        residual = F
        out = {}
        psi_inv = None
        r = F.valuation()
        while r <= order:
            c = residual.coeffs.get(r)
            if c is not None and not is_zero(c):
                extra = c.grade_set() - {(-r, -r)}
                if extra:
                    raise FiberGradeViolation(f"h^{r} coefficient has grades {sorted(extra)}")
                jet = c.component((-r, -r))
                if r >= 0:
                    fr = jet * self.psi_jet ** r
                else:
                    psi_inv = psi_inv or self.psi_jet.inv()
                    fr = jet * psi_inv ** (-r)
                out[r] = fr
                if r < order:
                    residual = residual - self.kappa_power(r).truncate(order) * fr
            r += 1
        return FormalSeries("nu", out, order, min(out, default=order + 1))

    def pullback_star(self, f, g):
        """tau^{-1}(tau(f) * tau(g)), returned to nu-order R."""
        prod = self.lifted_star(self.tau(f), self.tau(g))
        return self.tau_inv(prod).truncate(self.R)

    # ------------------------------------------------------------------ lemmas

    def A_k(self, f, k):
        """A_k f = (1/(nu psi)) dpsi/dz^k f + df/dz^k as a nu-series."""
        if not isinstance(f, FormalSeries):
            f = FormalSeries("nu", {0: f}, self.R + 1, 0)
        dlog = self.psi_jet.diff(k) / self.psi_jet
        return (f * dlog).shift(-1) + f.map(lambda c: c.diff(k))

    def technstat_residual(self, f, k):
        """(1/h) d rho/dz^k * f - tau(A_k f)."""
        lhs_factor = FormalSeries("h", {-1: self.rho.diff_z(k)}, self.internal_order + 1, -1)
        lhs = self.lifted_star(lhs_factor, self.chart.coerce(f))
        rhs = self.tau(self.A_k(f, k))
        return (lhs - rhs).truncate(self.R)

    def leftmult_residual(self, f, k):
        """L_{(1/nu) d log|psi| / dz^k} f - A_k f under the pulled-back product."""
        dphi = self.psi_jet.log_ratio().diff(k)
        lhs = self.pullback_star(FormalSeries("nu", {-1: dphi}, self.internal_order, -1), f)
        return (lhs - self.A_k(f, k)).truncate(self.R)

    def invtau_residual(self, f, r):
        """tau^{-1}((h/(u ubar))^r f) - N_r(nu) psi^r f."""
        F = FElement({r: f}, self.internal_order)
        lhs = self.tau_inv(F)
        rhs = formal_number(r, self.internal_order).map(lambda c: self.psi_jet ** r * f * c)
        return (lhs - rhs).truncate(self.R)

    # ------------------------------------------------------------------ D_r and the extension

    def d_operators(self, f, g, order=None):
        """{r: D_r(f, g)} for r <= order, from the lifted product of two base functions."""
        order = self.R if order is None else order
        if order < 0:
            return {}
        op = left_mult_operator(self.chart.coerce(f), self.chart, order, self.check)
        prod = op(self.chart.coerce(g))
        out = {}
        for r in range(order + 1):
            c = prod.coeffs.get(r)
            if c is None:
                out[r] = Jet.zero(self.psi.n, self.base, max(0, min(f.order, g.order) - 2 * r))
                continue
            extra = c.grade_set() - {(-r, -r)}
            if extra:
                raise FiberGradeViolation(f"C_{r}(f, g) has fiber grades {sorted(extra)}")
            out[r] = c.component((-r, -r))
        return out

    def extract_D(self, f, g, r):
        return self.d_operators(f, g, r)[r]

    def extended_star(self, f, g, order=None):
        order = self.R if order is None else order
        d_ops = self.d_operators(f, g, order)
        numbers = {r: formal_number(r, order) for r in d_ops}
        return ExtendedProduct(self.psi_jet, d_ops, numbers, order)

    def extended_star_series(self, f, g, order=None):
        """Bilinear extension of the extended product to nu-series arguments."""
        order = self.R if order is None else order
        if not isinstance(f, FormalSeries):
            f = FormalSeries("nu", {0: f}, order, 0)
        if not isinstance(g, FormalSeries):
            g = FormalSeries("nu", {0: g}, order, 0)
        total = min(order, f.order + g.valuation(), g.order + f.valuation())
        out = FormalSeries("nu", {}, total, total + 1)
        for s, fs in f.coeffs.items():
            for t, gt in g.coeffs.items():
                rest = total - s - t
                if rest < 0 or is_zero(fs) or is_zero(gt):
                    continue
                out = out + self.extended_star(fs, gt, rest).result.shift(s + t)
        return out.truncate(total)


__all__ = [
    "lift_rho",
    "formal_number",
    "FElement",
    "ExtendedProduct",
    "HypersurfaceLift",
    "check_graded",
    "PrecisionExhausted",
]
