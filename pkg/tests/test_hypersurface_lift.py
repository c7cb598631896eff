import random
from fractions import Fraction
from math import factorial

import pytest
import sympy as sp

from oracles import same, series_coefficients, sphere_psi, taylor
from sovquant.errors import FiberGradeViolation, OnHypersurface
from sovquant.formal_core import FiberGradedJet, FormalSeries, GaussianRational, I, Jet
from sovquant.hypersurface_lift import FElement, HypersurfaceLift, check_graded, formal_number, lift_rho
from sovquant.levi_geometry import DefiningFunction, build_gamma, poisson_bracket
from sovquant.sov_engine import PotentialChart, star
from sovquant.verify_cli.checks import random_felement, random_jet

Q = GaussianRational
SPHERE1 = DefiningFunction.sphere(1)
SPHERE2 = DefiningFunction.sphere(2)


@pytest.fixture(scope="module")
def off1():
    return HypersurfaceLift(SPHERE1, (2,), 10, 3)


@pytest.fixture(scope="module")
def off2():
    return HypersurfaceLift(SPHERE2, (2, 0), 10, 3)


@pytest.fixture(scope="module")
def on2():
    return HypersurfaceLift(SPHERE2, (1, 0), 10, 3)


def one_h(lift, order):
    return FormalSeries("h", {0: FiberGradedJet.from_jet(Jet.constant(lift.psi.n, lift.base, lift.jet_order, 1))}, order, 0)


def nu(coeffs, order, low=0):
    return FormalSeries("nu", coeffs, order, low)


# ---------------------------------------------------------------------- rho and formal numbers


def test_lift_rho_examples():
    rho = lift_rho(SPHERE1, (2,), 6)
    assert rho.grade_set() == {(1, 1)}
    assert rho.component((1, 1)).value() == Q(3)
    assert rho.diff_u().diff_ubar() == FiberGradedJet.from_jet(SPHERE1.jet((2,), 6).truncate(4))
    gamma = build_gamma(SPHERE2, (2, 0), 4).full()
    rho2 = lift_rho(SPHERE2, (2, 0), 6)
    for i in range(3):
        di = rho2.diff_u() if i == 2 else rho2.diff_z(i)
        for j in range(3):
            assert (di.diff_ubar() if j == 2 else di.diff_zbar(j)) == gamma[i][j]


def test_formal_number_examples():
    assert formal_number(0, 4).coeffs == {0: 1}
    assert [formal_number(1, 4).coeff(k, 0) for k in range(5)] == [0, 1, -1, 1, -1]
    assert [formal_number(2, 4).coeff(k, 0) for k in range(5)] == [0, 0, 1, -3, 7]


@pytest.mark.parametrize("r", range(5))
def test_formal_numbers_match_sympy(r):
    x = sp.Symbol("x")
    expr = sp.Integer(1)
    for s in range(1, r + 1):
        expr *= x / (1 + s * x)
    expected = series_coefficients(expr, x, 6)
    got = formal_number(r, 6)
    assert [got.coeff(k, 0) for k in range(7)] == expected
    assert got.valuation() == r and got.coeff(r) == 1


# ---------------------------------------------------------------------- kappa


def test_kappa_matches_closed_form_oracle():
    lift = HypersurfaceLift(SPHERE1, (2,), 12, 5, margin=0)
    kappa = lift.kappa()
    assert set(kappa.coeffs) == set(range(1, 6))
    for r in range(1, 6):
        oracle = taylor(lambda zz, zzb, r=r: sp.factorial(r - 1) / sphere_psi(zz, zzb) ** r, 1, (2,), 5)
        assert same(kappa.coeffs[r].truncate(5), oracle)


def test_kappa_recursion_and_inverse(off2):
    kappa = off2.kappa()
    psi = off2.psi_jet
    assert kappa.coeffs[1] == psi.inv()
    for r in range(1, off2.internal_order):
        assert psi * kappa.coeffs[r + 1] == kappa.coeffs[r] * r
    K = kappa.to_series()
    rho_h = off2.rho_over_h()
    one = one_h(off2, 3)
    assert off2.lifted_star(rho_h, K).truncate(3) == one
    assert off2.lifted_star(K, rho_h).truncate(3) == one


def test_kappa_needs_a_point_off_s(on2):
    with pytest.raises(OnHypersurface):
        on2.kappa()
    with pytest.raises(OnHypersurface):
        on2.kappa_power(1)
    with pytest.raises(OnHypersurface):
        on2.tau(Jet.constant(2, on2.base, 10, 1))
    minus = on2.kappa_power(-1)
    assert minus == FElement({-1: on2.psi_jet}, 4).to_series()


def test_kappa_powers(off2):
    assert off2.kappa_power(-1) == FElement({-1: off2.psi_jet}, 4).to_series()
    prod = off2.lifted_star(off2.kappa_power(1), off2.kappa_power(-1)).truncate(3)
    assert prod == one_h(off2, 3)
    for m in range(1, 4):
        p = off2.kappa_power(m)
        assert p.valuation() == m
        assert p.coeffs[m] == FiberGradedJet.from_jet(off2.psi_jet.inv() ** m, (-m, -m))
    assert off2.kappa_power(-2) == off2.lifted_star(off2.rho_over_h(), off2.rho_over_h()).truncate(4)


def test_kappa_is_central(off2):
    rng = random.Random(1)
    K = off2.kappa().to_series()
    F = random_felement(rng, 2, off2.base, 10, 4).to_series()
    assert off2.lifted_star(K, F).truncate(3) == off2.lifted_star(F, K).truncate(3)
    G = random_felement(rng, 2, off2.base, 10, 4).to_series()
    assert check_graded(off2.lifted_star(F, G))
    rho_h = off2.rho_over_h()
    assert off2.lifted_star(rho_h, F).truncate(3) == off2.lifted_star(F, rho_h).truncate(3)


# ---------------------------------------------------------------------- F elements


def test_felement_round_trip_and_violation(off1):
    f = random_jet(random.Random(2), 1, off1.base, 10)
    e = FElement({-1: f, 2: f * f}, 3)
    s = e.to_series()
    assert s.coeffs[2].grade_set() == {(-2, -2)}
    assert FElement.from_series(s).coeffs == e.coeffs
    bad = FormalSeries("h", {1: FiberGradedJet.from_jet(f, (0, 0))}, 3, 1)
    with pytest.raises(FiberGradeViolation):
        FElement.from_series(bad)
    with pytest.raises(FiberGradeViolation):
        off1.tau_inv(bad)


# ---------------------------------------------------------------------- tau


def test_tau_module_identities(off2):
    rng = random.Random(3)
    f = random_jet(rng, 2, off2.base, 10)
    assert off2.tau(f).truncate(3) == FormalSeries("h", {0: FiberGradedJet.from_jet(f)}, 3, 0)
    one = Jet.constant(2, off2.base, 10, 1)
    K = off2.kappa().to_series()
    assert off2.tau(nu({1: one}, 4, 1)).truncate(3) == K.truncate(3)
    F = nu({r: random_jet(rng, 2, off2.base, 10) for r in range(5)}, 4)
    lhs = off2.tau(F.shift(1))
    assert lhs.truncate(3) == off2.lifted_star(K, off2.tau(F)).truncate(3)
    assert lhs.truncate(3) == off2.lifted_star(off2.tau(F), K).truncate(3)


def test_tau_inverse(off2):
    rng = random.Random(4)
    f = nu({r: random_jet(rng, 2, off2.base, 10) for r in range(4)}, 3)
    assert off2.tau_inv(off2.tau(f)).truncate(3) == f
    g = random_jet(rng, 2, off2.base, 10)
    assert off2.tau_inv(FElement({0: g}, 3)) == nu({0: g}, 3)
    expected = formal_number(1, 3).map(lambda c: off2.psi_jet * g * c)
    assert off2.tau_inv(FElement({1: g}, 3)) == expected


def test_tau_inverse_with_negative_degrees(off2):
    rng = random.Random(14)
    F = random_felement(rng, 2, off2.base, 10, 4, degrees=(-2, -1, 0, 1))
    f = off2.tau_inv(F)
    assert f.min_degree == -2
    assert off2.tau(f).truncate(2) == F.to_series().truncate(2)


@pytest.mark.parametrize("r", range(4))
def test_invtau_lemma(off2, r):
    f = random_jet(random.Random(r), 2, off2.base, 10)
    assert off2.invtau_residual(f, r).is_zero()


def test_tau_is_a_morphism(off2):
    rng = random.Random(5)
    a, b = random_jet(rng, 2, off2.base, 10), random_jet(rng, 2, off2.base, 10)
    lhs = off2.tau(off2.pullback_star(a, b))
    rhs = off2.lifted_star(off2.tau(a), off2.tau(b))
    assert lhs.truncate(3) == rhs.truncate(3)


# ---------------------------------------------------------------------- lemmas and the identification


def test_pullback_separation(off2):
    rng = random.Random(6)
    a = random_jet(rng, 2, off2.base, 10, "hol")
    f = random_jet(rng, 2, off2.base, 10)
    assert off2.pullback_star(a, f) == nu({0: a * f}, 3)


@pytest.mark.parametrize("k", [0, 1])
def test_technstat(off2, k):
    rng = random.Random(7 + k)
    one = Jet.constant(2, off2.base, 10, 1)
    for f in (random_jet(rng, 2, off2.base, 10), one, off2.psi_jet):
        assert off2.technstat_residual(f, k).is_zero()


def test_technstat_f_equal_one_both_sides(off1):
    one = Jet.constant(1, off1.base, 10, 1)
    lhs_factor = FormalSeries("h", {-1: off1.rho.diff_z(0)}, 5, -1)
    lhs = off1.lifted_star(lhs_factor, off1.chart.coerce(one)).truncate(3)
    rhs = off1.tau(off1.A_k(one, 0)).truncate(3)
    assert lhs == rhs
    dpsi = off1.psi_jet.diff(0)
    assert off1.A_k(one, 0) == nu({-1: dpsi / off1.psi_jet}, 4, -1)


@pytest.mark.parametrize("k", [0, 1])
def test_leftmult(off2, k):
    f = random_jet(random.Random(9 + k), 2, off2.base, 10)
    assert off2.leftmult_residual(f, k).is_zero()


@pytest.mark.parametrize("x", [(2, 0), (Fraction(1, 2), Fraction(1, 3)), (0, Q(0, 2))])
def test_theorem_ident(x):
    lift = HypersurfaceLift(SPHERE2, x, 10, 3)
    rng = random.Random(str(x))
    f, g = random_jet(rng, 2, lift.base, 10), random_jet(rng, 2, lift.base, 10)
    ext = lift.extended_star(f, g).result
    pb = lift.pullback_star(f, g)
    std = star(f, g, PotentialChart.log_psi(SPHERE2, x, 10), 3)
    assert ext == pb
    assert pb == std


# ---------------------------------------------------------------------- D_r and the extended product


def test_extract_d_examples(on2):
    rng = random.Random(10)
    f, g = random_jet(rng, 2, on2.base, 10), random_jet(rng, 2, on2.base, 10)
    assert on2.extract_D(f, g, 0) == f * g
    lift1 = HypersurfaceLift(SPHERE1, (1,), 10, 3)
    zb = Jet.variable(1, lift1.base, 10, 1)
    z = Jet.variable(1, lift1.base, 10, 0)
    d1 = lift1.extract_D(zb, z, 1)
    assert d1.order >= 0 and not d1.is_zero()
    a = random_jet(rng, 2, on2.base, 10, "hol")
    d = on2.d_operators(a, g)
    assert all(d[r].is_zero() for r in range(1, 4))


def test_d_operators_are_bidifferential(on2):
    rng = random.Random(11)
    f, g = random_jet(rng, 2, on2.base, 10), random_jet(rng, 2, on2.base, 10)
    a, b = random_jet(rng, 2, on2.base, 10, "hol"), random_jet(rng, 2, on2.base, 10, "anti")
    d = on2.d_operators(f, g)
    daf = on2.d_operators(a * f, g)
    dgb = on2.d_operators(f, g * b)
    for r in range(4):
        assert daf[r] == a * d[r]
        assert dgb[r] == d[r] * b


def test_extended_star_on_s(on2):
    rng = random.Random(12)
    f, g, k = (random_jet(rng, 2, on2.base, 10) for _ in range(3))
    prod = on2.extended_star(f, g)
    res = prod.result
    assert res.coeffs[0] == f * g
    for d in range(1, 4):
        assert res.coeffs[d].value().is_zero()
        assert res.coeffs[d] == on2.psi_jet * prod.quotient_by_psi(d)
    lhs = on2.extended_star_series(res, k)
    rhs = on2.extended_star_series(f, on2.extended_star(g, k).result)
    assert lhs == rhs
    assert lhs.order == 3


def test_extended_first_order_bracket_on_s(on2):
    rng = random.Random(13)
    f, g = random_jet(rng, 2, on2.base, 10), random_jet(rng, 2, on2.base, 10)
    fg = on2.extended_star(f, g).result
    gf = on2.extended_star(g, f).result
    bracket = poisson_bracket(SPHERE2, (1, 0), f, g)
    assert fg.coeffs[1] - gf.coeffs[1] == bracket * I
    assert bracket.value().is_zero()


def test_naive_formal_numbers_break_associativity(on2, monkeypatch):
    import sovquant.hypersurface_lift as hl

    monkeypatch.setattr(hl, "formal_number", lambda r, order: FormalSeries("nu", {r: Fraction(1)}, order, r))
    rng = random.Random(12)
    f, g, k = (random_jet(rng, 2, on2.base, 10) for _ in range(3))
    lhs = on2.extended_star_series(on2.extended_star(f, g).result, k)
    rhs = on2.extended_star_series(f, on2.extended_star(g, k).result)
    assert lhs != rhs
