"""The lifted Hessian Gamma, its inverse, point classification, the Levi form,
and the smooth inverse metric that extends across the hypersurface."""

from dataclasses import dataclass
from enum import Enum

from .errors import (
    ConfigError,
    CriticalPoint,
    GammaSingular,
    NotInvertible,
    NotOnHypersurface,
    PrecisionExhausted,
)
from .formal_core import FiberGradedJet, GaussianRational, I, Jet, linalg


@dataclass(frozen=True)
class DefiningFunction:
    """A real polynomial psi(z, zbar) with Gaussian-rational coefficients.

    ``terms`` is a tuple of ``(alpha, beta, coeff)`` with ``alpha`` the z
    exponents and ``beta`` the zbar exponents.
    """

    n: int
    terms: tuple

    def __post_init__(self):
        norm = []
        for alpha, beta, c in self.terms:
            alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
            if len(alpha) != self.n or len(beta) != self.n or min(alpha + beta, default=0) < 0:
                raise ConfigError(f"bad exponents {alpha}, {beta} for n={self.n}")
            norm.append((alpha, beta, GaussianRational.coerce(c)))
        object.__setattr__(self, "terms", tuple(norm))
        if not self.is_real():
            raise ConfigError("defining function is not real (coefficient symmetry fails)")

    @classmethod
    def sphere(cls, n):
        """psi = sum |z^k|^2 - 1."""
        terms = [
            (tuple(int(i == k) for i in range(n)), tuple(int(i == k) for i in range(n)), 1) for k in range(n)
        ]
        terms.append(((0,) * n, (0,) * n, -1))
        return cls(n, tuple(terms))

    @classmethod
    def cylinder(cls, n=2):
        """psi = |z^1|^2 - 1 in C^n: a Levi-degenerate hypersurface for n >= 2."""
        e = tuple(int(i == 0) for i in range(n))
        return cls(n, ((e, e, 1), ((0,) * n, (0,) * n, -1)))

    def as_dict(self):
        out = {}
        for alpha, beta, c in self.terms:
            out[(alpha, beta)] = out.get((alpha, beta), GaussianRational(0)) + c
        return out

    def is_real(self):
        d = self.as_dict()
        zero = GaussianRational(0)
        return all(d.get((b, a), zero) == c.conj() for (a, b), c in d.items())

    def degree(self):
        return max((sum(a) + sum(b) for a, b, _ in self.terms), default=0)

    def jet(self, x, order):
        return Jet.from_polynomial(self.n, _point(x), order, self.as_dict())

    def value(self, x):
        return self.jet(x, 0).value()


def _point(x):
    return tuple(GaussianRational.coerce(c) for c in x)


class PointCase(Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CRITICAL = "Critical"


def _first_derivatives(psi, x):
    jet = psi.jet(x, 1)
    n = psi.n
    dz = [jet.coeff(tuple(int(i == k) for i in range(2 * n))) for k in range(n)]
    dzb = [jet.coeff(tuple(int(i == n + k) for i in range(2 * n))) for k in range(n)]
    return jet.value(), dz, dzb


def classify_point(psi, x):
    value, dz, _ = _first_derivatives(psi, x)
    if not value.is_zero():
        return PointCase.CASE1
    if any(not c.is_zero() for c in dz):
        return PointCase.CASE2
    return PointCase.CRITICAL


@dataclass(frozen=True)
class GammaData:
    """Fiber-stripped Hessian of rho = psi u ubar.

    Rows are indexed by holomorphic directions (z^1..z^n, u), columns by
    antiholomorphic ones (zbar^1..zbar^n, ubar); the full matrix is
    ``diag(u,..,u,1) * gamma0 * diag(ubar,..,ubar,1)``.
    """

    psi: DefiningFunction
    x: tuple
    order: int
    gamma0: list

    @property
    def n(self):
        return self.psi.n

    def constant_part(self):
        return [[e.value() for e in row] for row in self.gamma0]

    def full(self):
        n = self.n
        return [
            [FiberGradedJet.from_jet(e, (int(i < n), int(j < n))) for j, e in enumerate(row)]
            for i, row in enumerate(self.gamma0)
        ]

    def is_hermitian(self):
        size = len(self.gamma0)
        return all(self.gamma0[i][j] == self.gamma0[j][i].conj() for i in range(size) for j in range(size))


def build_gamma(psi, x, order):
    x = _point(x)
    n = psi.n
    jet = psi.jet(x, order + 2)
    dz = [jet.diff(k) for k in range(n)]
    dzb = [jet.diff(n + l) for l in range(n)]
    gamma0 = []
    for k in range(n):
        gamma0.append([dz[k].diff(n + l) for l in range(n)] + [dz[k].truncate(order)])
    gamma0.append([dzb[l].truncate(order) for l in range(n)] + [jet.truncate(order)])
    return GammaData(psi, x, order, gamma0)


@dataclass(frozen=True)
class PiData:
    """Inverse of Gamma, stored fiber-stripped.

    ``p0 = gamma0^{-1}`` has rows (zbar, ubar) and columns (z, u); the full
    inverse is ``diag(1/ubar,..,1) * p0 * diag(1/u,..,1)``, so the A block sits
    at fiber grade (-1,-1), B at (-1,0), C at (0,-1) and D at (0,0).
    """

    gamma: GammaData
    p0: list

    @property
    def A(self):
        n = self.gamma.n
        return [row[:n] for row in self.p0[:n]]

    @property
    def B(self):
        n = self.gamma.n
        return self.p0[n][:n]

    @property
    def C(self):
        n = self.gamma.n
        return [row[n] for row in self.p0[:n]]

    @property
    def D(self):
        n = self.gamma.n
        return self.p0[n][n]

    def full(self):
        n = self.gamma.n
        return [
            [FiberGradedJet.from_jet(e, (-int(j < n), -int(i < n))) for j, e in enumerate(row)]
            for i, row in enumerate(self.p0)
        ]

    def residual(self):
        """Gamma * Pi - 1 as a matrix of fiber-graded jets."""
        prod = linalg.matmul(self.gamma.full(), self.full())
        return [[prod[i][j] - int(i == j) for j in range(len(prod))] for i in range(len(prod))]


def _diagnose(psi, x):
    case = classify_point(psi, x)
    if case is PointCase.CASE1:
        return "case1", "Gamma singular off S: the metric g_{k lbar} is degenerate"
    if case is PointCase.CASE2:
        return "case2", "Gamma singular on S: the Levi form is degenerate"
    return "critical", "Gamma singular: psi has a critical point on S"


def invert_gamma(g):
    if linalg.determinant(g.constant_part()).is_zero():
        case, msg = _diagnose(g.psi, g.x)
        raise GammaSingular(msg, case)
    return PiData(g, linalg.inverse(g.gamma0))


@dataclass(frozen=True)
class LeviData:
    x: tuple
    pivot: int
    V_basis: list
    W_basis: list
    Q: list

    def determinant(self):
        return linalg.determinant(self.Q)

    def is_nondegenerate(self):
        return not self.determinant().is_zero()


def _pivot(values):
    best = None
    for k, v in enumerate(values):
        if v.is_zero():
            continue
        if best is None or v.norm() > values[best].norm():
            best = k
    return best


def _hyperplane_basis(coeffs, pivot):
    n = len(coeffs)
    basis = []
    for j in range(n):
        if j == pivot:
            continue
        v = [GaussianRational(0)] * n
        v[j] = GaussianRational(1)
        v[pivot] = -(coeffs[j] / coeffs[pivot])
        basis.append(v)
    return basis


def levi_form(psi, x):
    x = _point(x)
    value, dz, dzb = _first_derivatives(psi, x)
    if not value.is_zero():
        raise NotOnHypersurface(f"psi({x}) = {value} != 0")
    k_star = _pivot(dz)
    if k_star is None:
        raise CriticalPoint(f"psi has a critical point at {x}")
    l_star = _pivot(dzb)
    V = _hyperplane_basis(dz, k_star)
    W = _hyperplane_basis(dzb, l_star)
    hess = [[e.value() for e in row[: psi.n]] for row in build_gamma(psi, x, 0).gamma0[: psi.n]]
    Q = []
    for v in V:
        row = []
        for w in W:
            acc = GaussianRational(0)
            for k in range(psi.n):
                for l in range(psi.n):
                    acc = acc + hess[k][l] * v[k] * w[l]
            row.append(acc)
        Q.append(row)
    return LeviData(x, k_star, V, W, Q)


def gamma_kernel(psi, x):
    """Vectors (v^1..v^n, a) with sum_i x_i gamma0[i][j] = 0 for every column j at u = 1."""
    const = build_gamma(psi, x, 0).constant_part()
    return linalg.nullspace(linalg.transpose(const))


def metric_from_potential(phi):
    """Mixed Hessian g[k][l] = d^2 phi / dz^k dzbar^l."""
    if phi.order < 2:
        raise PrecisionExhausted("potential needs valid order >= 2")
    n = phi.n
    phis = [phi.diff(n + l) for l in range(n)]
    return [[phis[l].diff(k) for l in range(n)] for k in range(n)]


def smooth_inverse_metric(psi, x, order):
    """g^{lbar k} = psi * (gamma0^{-1})[l][k], returned as ``h[l][k]``.

    Defined across S; off S it inverts the mixed Hessian of log|psi|.
    """
    pi = invert_gamma(build_gamma(psi, x, order))
    psi_jet = psi.jet(x, order)
    return [[psi_jet * a for a in row] for row in pi.A]


def poisson_bracket(psi, x, f, g, inverse_metric=None):
    """{f, g} = i g^{lbar k} (df/dz^k dg/dzbar^l - df/dzbar^l dg/dz^k)."""
    n = psi.n
    order = min(f.order, g.order)
    h = inverse_metric or smooth_inverse_metric(psi, x, order)
    fz = [f.diff(k) for k in range(n)]
    fzb = [f.diff(n + l) for l in range(n)]
    gz = [g.diff(k) for k in range(n)]
    gzb = [g.diff(n + l) for l in range(n)]
    acc = Jet.zero(n, f.base, order - 1)
    for l in range(n):
        for k in range(n):
            acc = acc + h[l][k] * (fz[k] * gzb[l] - fzb[l] * gz[k])
    return acc * I


def case1_equivalence(psi, x, order):
    """At a Case 1 point: (Gamma invertible, g invertible, residual of psi*A*g - 1 or None)."""
    x = _point(x)
    gamma = build_gamma(psi, x, order)
    gamma_ok = not linalg.determinant(gamma.constant_part()).is_zero()
    g = metric_from_potential(psi.jet(x, order + 2).log_ratio())
    g_ok = not linalg.determinant([[e.value() for e in row] for row in g]).is_zero()
    residual = None
    if gamma_ok and g_ok:
        h = smooth_inverse_metric(psi, x, order)
        prod = linalg.matmul(g, h)
        residual = [[prod[i][j] - int(i == j) for j in range(psi.n)] for i in range(psi.n)]
    return gamma_ok, g_ok, residual


def inverse_metric_jets(g):
    """Jet-matrix inverse of a metric g[k][l], returned as h[l][k]."""
    try:
        return linalg.inverse(g)
    except NotInvertible as exc:
        raise GammaSingular(str(exc), "case1") from exc


def sphere_inverse_metric_closed_form(n, x, order):
    """psi (delta^{kl} - zbar^l z^k) as a jet matrix h[l][k]."""
    psi = DefiningFunction.sphere(n)
    x = _point(x)
    psi_jet = psi.jet(x, order)
    out = []
    for l in range(n):
        row = []
        for k in range(n):
            zb_l = tuple(int(i == l) for i in range(n))
            z_k = tuple(int(i == k) for i in range(n))
            poly = {(z_k, zb_l): GaussianRational(-1)}
            if k == l:
                poly[((0,) * n, (0,) * n)] = GaussianRational(1)
            row.append(psi_jet * Jet.from_polynomial(n, x, order, poly))
        out.append(row)
    return out


__all__ = [
    "DefiningFunction",
    "PointCase",
    "GammaData",
    "PiData",
    "LeviData",
    "classify_point",
    "build_gamma",
    "invert_gamma",
    "levi_form",
    "gamma_kernel",
    "metric_from_potential",
    "smooth_inverse_metric",
    "poisson_bracket",
    "case1_equivalence",
    "inverse_metric_jets",
    "sphere_inverse_metric_closed_form",
]
