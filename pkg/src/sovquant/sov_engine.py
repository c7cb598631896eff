"""Standard deformation quantization with separation of variables on a chart.

Given a potential Phi on a chart, the left multiplication operator
``L_f = sum_r nu^r A_r`` is the unique formal differential operator with
``A_0 = f``, ``A_r(1) = 0`` for r >= 1, differentiating only in holomorphic
directions, and commuting with every right-multiplication generator
``phi_l / nu + d/dzbar^l`` where ``phi_l = dPhi/dzbar^l``.  Commutation is
equivalent to ``[A_{r+1}, phi_l] = dA_r/dzbar^l`` (coefficientwise), which is
solved here degree by degree from the top down.

The same code path serves the plain chart (Jet coefficients, parameter nu)
and the lifted chart on U x C^* (FiberGradedJet coefficients, parameter h).
Right multiplication operators are built by the mirrored recursion.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyFailure, PrecisionExhausted
from .formal_core import FiberGradedJet, FormalSeries, GaussianRational, I, Jet
from .formal_core import multiindex as mi
from .formal_core.series import is_zero
from .levi_geometry import (
    build_gamma,
    inverse_metric_jets,
    invert_gamma,
    metric_from_potential,
)

LEFT = "left"
RIGHT = "right"


class PotentialChart:
    """A chart with potential, metric ``G[k][l] = d_k d_lbar Phi`` and its inverse ``H[l][k]``.

    Holomorphic directions are numbered ``0..dim-1``; on the lifted chart the
    last one is ``u`` (and the last antiholomorphic one ``ubar``).
    """

    def __init__(self, potential, metric, metric_inverse, *, lifted=False, param="nu", psi=None, x=None):
        self.potential = potential
        self.metric = metric
        self.metric_inverse = metric_inverse
        self.lifted = lifted
        self.param = param
        self.dim = len(metric)
        self.n = potential.n
        self.base = potential.base
        self.psi = psi
        self.x = x
        self._dphi = {}

    # ------------------------------------------------------------------ factories

    @classmethod
    def from_potential(cls, phi, param="nu"):
        metric = metric_from_potential(phi)
        return cls(phi, metric, inverse_metric_jets(metric), param=param)

    @classmethod
    def flat(cls, n, base, order):
        """Phi = sum z^k zbar^k."""
        terms = {}
        for k in range(n):
            e = tuple(int(i == k) for i in range(n))
            terms[(e, e)] = GaussianRational(1)
        return cls.from_potential(Jet.from_polynomial(n, base, order, terms))

    @classmethod
    def log_psi(cls, psi, x, order):
        """Potential log|psi| (modulo a constant) off the hypersurface."""
        chart = cls.from_potential(psi.jet(x, order).log_ratio())
        chart.psi, chart.x = psi, chart.base
        return chart

    @classmethod
    def lifted_chart(cls, psi, x, order):
        """Potential rho = psi u ubar on U x C^*, metric Gamma, inverse Pi."""
        gamma = build_gamma(psi, x, order)
        pi = invert_gamma(gamma)
        rho = FiberGradedJet.from_jet(psi.jet(x, order), (1, 1))
        chart = cls(rho, gamma.full(), pi.full(), lifted=True, param="h", psi=psi, x=gamma.x)
        chart.gamma, chart.pi = gamma, pi
        return chart

    # ------------------------------------------------------------------ calculus

    def coerce(self, x, order=None):
        """Turn scalars / plain jets into the chart's coefficient type."""
        if order is None:
            order = self.potential.order
        if isinstance(x, (int, Fraction, GaussianRational)):
            x = Jet.constant(self.n, self.base, order, x)
        if self.lifted and isinstance(x, Jet):
            return FiberGradedJet.from_jet(x)
        return x

    def d_hol(self, x, k):
        if self.lifted:
            return x.diff_u() if k == self.n else x.diff_z(k)
        return x.diff(k)

    def d_anti(self, x, l):
        if self.lifted:
            return x.diff_ubar() if l == self.n else x.diff_zbar(l)
        return x.diff(self.n + l)

    def derivative(self, x, alpha, side=LEFT, cache=None):
        """d^alpha x along the directions ``side`` differentiates in."""
        step = self.d_hol if side == LEFT else self.d_anti
        if cache is None:
            cache = {}
        if alpha in cache:
            return cache[alpha]
        j = mi.first_nonzero(alpha)
        if j is None:
            out = x
        else:
            out = step(self.derivative(x, mi.sub(alpha, mi.unit(len(alpha), j)), side, cache), j)
        cache[alpha] = out
        return out

    def generator(self, side, o):
        """phi_o: the potential differentiated along the *other* family of directions."""
        key = (side, o, None)
        if key not in self._dphi:
            other = self.d_anti if side == LEFT else self.d_hol
            self._dphi[key] = other(self.potential, o)
        return self._dphi[key]

    def generator_derivative(self, side, o, beta):
        key = (side, o, beta)
        if key not in self._dphi:
            j = mi.first_nonzero(beta)
            step = self.d_hol if side == LEFT else self.d_anti
            prev = self.generator(side, o) if j is None else self.generator_derivative(
                side, o, mi.sub(beta, mi.unit(len(beta), j))
            )
            self._dphi[key] = prev if j is None else step(prev, j)
        return self._dphi[key]

    def system(self, side):
        """(M, Minv) with M[d][o] = d_d phi_o and sum_o M[d][o] Minv[o][j] = delta_dj."""
        g, h = self.metric, self.metric_inverse
        if side == LEFT:
            return g, h
        size = self.dim
        return (
            [[g[o][d] for o in range(size)] for d in range(size)],
            [[h[j][o] for j in range(size)] for o in range(size)],
        )

    def bracket(self, f, g):
        """Poisson bracket {f, g} = i H[l][k] (d_k f d_lbar g - d_lbar f d_k g) of the chart."""
        f, g = self.coerce(f), self.coerce(g)
        acc = None
        for l in range(self.dim):
            for k in range(self.dim):
                t = self.metric_inverse[l][k] * (
                    self.d_hol(f, k) * self.d_anti(g, l) - self.d_anti(f, l) * self.d_hol(g, k)
                )
                acc = t if acc is None else acc + t
        return acc * I


@dataclass(frozen=True)
class FormalOperator:
    """``sum_r param^r sum_alpha coeff[r][alpha] d^alpha``.

    ``side`` says which derivatives appear: holomorphic for a left
    multiplication operator, antiholomorphic for a right one.  Terms are
    exact for ``r <= order``.
    """

    chart: PotentialChart
    side: str
    terms: dict
    order: int
    min_degree: int = 0

    def valuation(self):
        nz = [r for r, t in self.terms.items() if any(not c.is_zero() for c in t.values())]
        return min(nz) if nz else self.order + 1

    def term(self, r):
        return self.terms.get(r, {})

    def differential_order(self, r):
        """Largest |alpha| with a nonzero coefficient at param^r (-1 if none)."""
        degs = [sum(a) for a, c in self.term(r).items() if not c.is_zero()]
        return max(degs, default=-1)

    def coefficient(self, r, alpha):
        return self.term(r).get(tuple(alpha))

    def apply(self, g, g_order=None):
        """Apply to a function or a series; returns a FormalSeries."""
        chart = self.chart
        if not isinstance(g, FormalSeries):
            g = FormalSeries(chart.param, {0: chart.coerce(g)}, self.order - self.min_degree if g_order is None else g_order, 0)
        vo = self.valuation()
        order = min(self.order + g.valuation(), g.order + vo)
        out = {}
        for t, gt in g.coeffs.items():
            if is_zero(gt):
                continue
            gt = chart.coerce(gt)
            cache = {}
            for r, term in self.terms.items():
                d = r + t
                if d > order:
                    continue
                for alpha, a in term.items():
                    if a.is_zero():
                        continue
                    p = a * chart.derivative(gt, alpha, self.side, cache)
                    out[d] = out[d] + p if d in out else p
        return FormalSeries(chart.param, out, order, min(self.min_degree + g.min_degree, order + 1))

    __call__ = apply


def _build_single(f, chart, order, side, check):
    """Operator of a single function (no formal parameter) to param-order ``order``."""
    size = chart.dim
    M, Minv = chart.system(side)
    other = chart.d_anti if side == LEFT else chart.d_hol
    zero_idx = mi.zero(size)
    levels = {0: {zero_idx: f}}
    for r in range(order):
        prev = levels[r]
        if all(c.is_zero() for c in prev.values()) and r > 0:
            levels[r + 1] = {}
            continue
        dprev = {}
        for gamma, c in prev.items():
            if c.is_zero():
                continue
            for o in range(size):
                dprev[(gamma, o)] = other(c, o)
        new = {}
        for m in range(r + 1, 0, -1):
            rhs = {}
            for gamma in mi.indices_of_degree(size, m - 1):
                row = []
                for o in range(size):
                    t = dprev.get((gamma, o))
                    for alpha, a in new.items():
                        if sum(alpha) < m + 1 or not mi.leq(gamma, alpha) or a.is_zero():
                            continue
                        term = chart.generator_derivative(side, o, mi.sub(alpha, gamma)) * a
                        b = mi.binom(alpha, gamma)
                        if b != 1:
                            term = term * b
                        t = -term if t is None else t - term
                    row.append(t)
                rhs[gamma] = row
            for alpha in mi.indices_of_degree(size, m):
                j = mi.first_nonzero(alpha)
                row = rhs[mi.sub(alpha, mi.unit(size, j))]
                acc = None
                for o in range(size):
                    if row[o] is None:
                        continue
                    t = Minv[o][j] * row[o]
                    acc = t if acc is None else acc + t
                if acc is not None:
                    new[alpha] = acc * Fraction(1, alpha[j]) if alpha[j] != 1 else acc
            if check:
                _check_level(chart, M, new, rhs, m, size)
        levels[r + 1] = new
    return levels


def _check_level(chart, M, new, rhs, m, size):
    for gamma, row in rhs.items():
        for o in range(size):
            acc = row[o]
            acc = None if acc is None else -acc
            for k in range(size):
                a = new.get(mi.add(gamma, mi.unit(size, k)))
                if a is None:
                    continue
                t = M[k][o] * a
                if gamma[k]:
                    t = t * (gamma[k] + 1)
                acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                raise ConsistencyFailure(f"nonzero residual at degree {m}, gamma={gamma}, direction {o}")


def _operator(f, chart, order, side, check):
    if isinstance(f, FormalSeries):
        terms = {}
        vf = f.valuation()
        total = min(order, f.order)
        for s, fs in f.coeffs.items():
            if is_zero(fs) or s > total:
                continue
            levels = _build_single(chart.coerce(fs), chart, total - s, side, check)
            for r, t in levels.items():
                if not t:
                    continue
                bucket = terms.setdefault(r + s, {})
                for alpha, a in t.items():
                    bucket[alpha] = bucket[alpha] + a if alpha in bucket else a
        return FormalOperator(chart, side, terms, total, min(vf, total + 1))
    levels = _build_single(chart.coerce(f), chart, order, side, check)
    return FormalOperator(chart, side, {r: t for r, t in levels.items() if t}, order, 0)


def left_mult_operator(f, chart, order, check=True):
    """L_f to param-order ``order`` (f may be a Laurent FormalSeries)."""
    return _operator(f, chart, order, LEFT, check)


def right_mult_operator(g, chart, order, check=True):
    """R_g to param-order ``order``; R_g(f) = f * g."""
    return _operator(g, chart, order, RIGHT, check)


def as_series(x, chart, order):
    if isinstance(x, FormalSeries):
        return x
    return FormalSeries(chart.param, {0: chart.coerce(x)}, order, 0)


def star(f, g, chart, order, check=True):
    """f * g truncated at param-order ``order``; Laurent inputs by bilinearity."""
    F = as_series(f, chart, order)
    G = as_series(g, chart, order)
    op = left_mult_operator(F, chart, order - G.valuation(), check)
    return op(G).truncate(order)


def c_r(f, g, chart, r, check=True):
    """Coefficient of param^r in f * g (zero carrier if absent)."""
    out = star(f, g, chart, r, check).coeff(r)
    if out is None:
        order = min(f.order, g.order) - r
        if order < 0:
            raise PrecisionExhausted("no valid order left for C_r")
        return chart.coerce(Jet.zero(chart.n, chart.base, order))
    return out


@dataclass
class ResidualReport:
    """Named residuals; ``ok`` iff every residual vanishes identically to its valid order."""

    residuals: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(_vanishes(r) for r in self.residuals.values())


def _vanishes(x):
    if isinstance(x, (list, tuple)):
        return all(_vanishes(y) for y in x)
    return is_zero(x)


def check_separation(f, a_holo, b_antiholo, chart, order, check=True):
    """Residuals a * f - a f and f * b - f b."""
    a = chart.coerce(a_holo)
    b = chart.coerce(b_antiholo)
    fs = chart.coerce(f)
    left = star(a, fs, chart, order, check) - as_series(a * fs, chart, order)
    right = star(fs, b, chart, order, check) - as_series(fs * b, chart, order)
    return ResidualReport({"a*f - af": left, "f*b - fb": right})


def check_associativity(f, g, k, chart, order, check=True):
    """Residual (f * g) * k - f * (g * k)."""
    fg = star(f, g, chart, order, check)
    gk = star(g, k, chart, order, check)
    lhs = star(fg, k, chart, order, check)
    rhs = star(f, gk, chart, order, check)
    return ResidualReport({"(f*g)*k - f*(g*k)": lhs - rhs})


def _times_inverse_param(x, chart, order):
    return FormalSeries(chart.param, {-1: x}, order + 1, -1)


def _batch(gs):
    return list(gs) if isinstance(gs, (list, tuple)) else [gs]


def check_ops_identities(gs, chart, order, a_holo=None, b_antiholo=None, check=True):
    """Residuals of the characterizing identities of L and R, applied to each of ``gs``.

    For every holomorphic direction k: L_{(1/param) dPhi/dz^k} = (1/param) dPhi/dz^k + d/dz^k,
    and mirrored for R with antiholomorphic directions; plus L_a = a and R_b = b.
    On the lifted chart the u and ubar directions are included.
    """
    gs = [chart.coerce(g) for g in _batch(gs)]
    ops = []
    for o in range(chart.dim):
        for side, diff, build in ((LEFT, chart.d_hol, left_mult_operator), (RIGHT, chart.d_anti, right_mult_operator)):
            dphi = diff(chart.potential, o)
            ops.append((f"{side}[dPhi_{o}/param]", dphi, diff, o, build(_times_inverse_param(dphi, chart, order), chart, order, check)))
    la = lb = None
    if a_holo is not None:
        a = chart.coerce(a_holo)
        la = left_mult_operator(a, chart, order, check)
    if b_antiholo is not None:
        b = chart.coerce(b_antiholo)
        lb = right_mult_operator(b, chart, order, check)
    out = {}
    for i, g in enumerate(gs):
        gser = FormalSeries(chart.param, {0: g}, order + 1, 0)
        for label, dphi, diff, o, op in ops:
            expected = FormalSeries(chart.param, {-1: dphi * g, 0: diff(g, o)}, order, -1)
            out[f"{label}(g{i}) - (dPhi_{o}/param + d_{o})(g{i})"] = (op(gser) - expected).truncate(order)
        if la is not None:
            out[f"L_a(g{i}) - a g{i}"] = la(gser).truncate(order) - as_series(a * g, chart, order)
        if lb is not None:
            out[f"R_b(g{i}) - g{i} b"] = lb(gser).truncate(order) - as_series(g * b, chart, order)
    return ResidualReport(out)


def check_rho_identities(Fs, chart, order, check=True):
    """Lifted chart: L and R of rho/h act as rho/h + u d/du and rho/h + ubar d/dubar.

    Also reports (L - R)_{rho/h} - (u d/du - ubar d/dubar).
    """
    if not chart.lifted:
        raise ValueError("rho identities live on the lifted chart")
    rho_h = _times_inverse_param(chart.potential, chart, order)
    lop = left_mult_operator(rho_h, chart, order, check)
    rop = right_mult_operator(rho_h, chart, order, check)
    out = {}
    for i, F in enumerate(_batch(Fs)):
        F = chart.coerce(F)
        ser = FormalSeries(chart.param, {0: F}, order + 1, 0)
        left, right = lop(ser), rop(ser)
        mult = chart.potential * F
        exp_left = FormalSeries(chart.param, {-1: mult, 0: F.euler_u()}, order, -1)
        exp_right = FormalSeries(chart.param, {-1: mult, 0: F.euler_ubar()}, order, -1)
        inner = FormalSeries(chart.param, {0: F.euler_u() - F.euler_ubar()}, order, 0)
        out[f"L_(rho/h)(F{i}) - (rho/h + u d_u)(F{i})"] = (left - exp_left).truncate(order)
        out[f"R_(rho/h)(F{i}) - (rho/h + ubar d_ubar)(F{i})"] = (right - exp_right).truncate(order)
        out[f"(L - R)_(rho/h)(F{i}) - (u d_u - ubar d_ubar)(F{i})"] = ((left - right) - inner).truncate(order)
    return ResidualReport(out)


def inner_derivation(F):
    """u d/du - ubar d/dubar applied gradewise to a lifted h-series."""
    return F.map(lambda c: c.euler_u() - c.euler_ubar())


def lifted_delta(F):
    """delta(F) = (h d/dh + ubar d/dubar) F on lifted h-series."""
    out = {}
    for d, c in F.coeffs.items():
        t = c.euler_ubar()
        if d:
            t = t + c * d
        out[d] = t
    return FormalSeries(F.param, out, F.order, F.min_degree)


__all__ = [
    "PotentialChart",
    "FormalOperator",
    "ResidualReport",
    "left_mult_operator",
    "right_mult_operator",
    "star",
    "c_r",
    "check_separation",
    "check_associativity",
    "lifted_delta",
    "inner_derivation",
    "check_ops_identities",
    "check_rho_identities",
    "as_series",
    "LEFT",
    "RIGHT",
]
