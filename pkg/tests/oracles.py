"""Independent sympy oracles: Taylor jets, the Wick product and jet conversion.

Nothing here uses the package's arithmetic; jets are compared against these
after conversion with :func:`jet_to_sympy`.
"""

from fractions import Fraction

import sympy as sp

from sovquant.formal_core import GaussianRational


def local_symbols(n):
    w = sp.symbols(f"w0:{n}")
    wb = sp.symbols(f"wb0:{n}")
    return w, wb


def to_sympy_number(c):
    c = GaussianRational.coerce(c)
    return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)


def jet_to_sympy(jet):
    """Polynomial in the local displacements w (z - x) and wb (zbar - conj x)."""
    n = jet.n
    w, wb = local_symbols(n)
    variables = list(w) + list(wb)
    expr = sp.Integer(0)
    for exps, c in jet.terms().items():
        mono = sp.Integer(1)
        for v, e in zip(variables, exps):
            mono *= v ** e
        expr += to_sympy_number(c) * mono
    return sp.expand(expr)


def taylor(fn, n, base, order):
    """Local Taylor polynomial of ``fn(z, zb)`` (z, zb sympy lists) at ``base``, degree <= order.

    Uses the scaling z = x + t w, zb = conj(x) + t wb and a series in t.
    """
    t = sp.Symbol("t")
    w, wb = local_symbols(n)
    x = [to_sympy_number(c) for c in base]
    z = [x[k] + t * w[k] for k in range(n)]
    zb = [sp.conjugate(x[k]) + t * wb[k] for k in range(n)]
    expr = fn(z, zb)
    ser = sp.series(expr, t, 0, order + 1).removeO()
    return sp.expand(ser.subs(t, 1))


def sphere_psi(z, zb):
    return sum(z[k] * zb[k] for k in range(len(z))) - 1


def same(jet, expr):
    return sp.expand(jet_to_sympy(jet) - expr) == 0


def wick_oracle(f_expr, g_expr, n, order):
    """Coefficients {m: expr} of sum_{|alpha| = m} nu^m / alpha! d_wb^alpha f d_w^alpha g (flat metric)."""
    w, wb = local_symbols(n)
    out = {}
    for m in range(order + 1):
        acc = sp.Integer(0)
        for alpha in _indices(n, m):
            df, dg = f_expr, g_expr
            denom = 1
            for k, e in enumerate(alpha):
                if e:
                    df = sp.diff(df, wb[k], e)
                    dg = sp.diff(dg, w[k], e)
                    denom *= sp.factorial(e)
            acc += df * dg / denom
        out[m] = sp.expand(acc)
    return out


def _indices(n, m):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _indices(n - 1, m - first):
            yield (first,) + rest


def series_coefficients(expr, var, order):
    """Taylor coefficients [c0..c_order] of a rational function of one variable."""
    ser = sp.series(expr, var, 0, order + 1).removeO()
    return [Fraction(str(sp.nsimplify(ser.coeff(var, k)))) for k in range(order + 1)]
