import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import jet_to_sympy, same, wick_oracle
from sovquant.errors import ConsistencyFailure
from sovquant.formal_core import FiberGradedJet, FormalSeries, GaussianRational, I, Jet
from sovquant.levi_geometry import DefiningFunction, poisson_bracket
from sovquant.sov_engine import (
    PotentialChart,
    c_r,
    check_associativity,
    check_ops_identities,
    check_rho_identities,
    check_separation,
    inner_derivation,
    left_mult_operator,
    lifted_delta,
    right_mult_operator,
    star,
)
from sovquant.verify_cli.checks import random_jet, random_lifted

Q = GaussianRational
ORIGIN = (Q(0),)
SPHERE1 = DefiningFunction.sphere(1)
SPHERE2 = DefiningFunction.sphere(2)


@pytest.fixture(scope="module")
def flat():
    return PotentialChart.flat(1, ORIGIN, 12)


def mono(a, b, order=12):
    return Jet.from_terms(1, ORIGIN, order, {(a, b): 1})


def nu_series(coeffs, order):
    return FormalSeries("nu", coeffs, order, 0)


def test_left_mult_of_zbar_on_flat_chart(flat):
    op = left_mult_operator(mono(0, 1), flat, 4)
    nonzero = {r: {a: c for a, c in t.items() if not c.is_zero()} for r, t in op.terms.items()}
    nonzero = {r: t for r, t in nonzero.items() if t}
    assert set(nonzero) == {0, 1}
    assert nonzero[0] == {(0,): mono(0, 1)}
    assert set(nonzero[1]) == {(1,)} and nonzero[1][(1,)] == Jet.constant(1, ORIGIN, 12, 1)


def test_holomorphic_left_mult_is_multiplication(flat):
    a = mono(2, 0) + mono(1, 0) * 3
    op = left_mult_operator(a, flat, 4)
    assert all(c.is_zero() for r, t in op.terms.items() if r for c in t.values())
    chart = PotentialChart.log_psi(SPHERE2, (2, 0), 10)
    b = Jet.from_terms(2, chart.base, 10, {(1, 1, 0, 0): 1, (0, 2, 0, 0): Q(0, 1)})
    op = left_mult_operator(b, chart, 3)
    assert all(c.is_zero() for r, t in op.terms.items() if r for c in t.values())


def test_flat_examples(flat):
    zb, z = mono(0, 1), mono(1, 0)
    one = Jet.constant(1, ORIGIN, 12, 1)
    assert star(zb, z, flat, 4) == nu_series({0: mono(1, 1), 1: one}, 4)
    assert star(mono(0, 2), mono(2, 0), flat, 4) == nu_series({0: mono(2, 2), 1: mono(1, 1) * 4, 2: one * 2}, 4)
    assert c_r(zb, z, flat, 1) == one
    assert c_r(z, zb, flat, 1).is_zero()


coef = st.builds(Q, st.integers(-3, 3), st.integers(-3, 3))
flat_polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coef, min_size=1, max_size=4)


@given(flat_polys, flat_polys)
def test_flat_star_matches_wick_oracle(a, b):
    flat = PotentialChart.flat(1, ORIGIN, 12)
    f = Jet.from_terms(1, ORIGIN, 12, a)
    g = Jet.from_terms(1, ORIGIN, 12, b)
    prod = star(f, g, flat, 4)
    oracle = wick_oracle(jet_to_sympy(f), jet_to_sympy(g), 1, 4)
    for m in range(5):
        got = prod.coeff(m)
        assert same(got, oracle[m]) if got is not None else oracle[m] == 0


def test_two_dimensional_flat_star_matches_wick_oracle():
    base = (Q(0), Q(0))
    chart = PotentialChart.flat(2, base, 10)
    rng = random.Random(5)
    for _ in range(3):
        f, g = random_jet(rng, 2, base, 10), random_jet(rng, 2, base, 10)
        prod = star(f, g, chart, 3)
        oracle = wick_oracle(jet_to_sympy(f), jet_to_sympy(g), 2, 3)
        for m in range(4):
            got = prod.coeff(m)
            assert same(got, oracle[m]) if got is not None else oracle[m] == 0


def test_unit(flat):
    chart = PotentialChart.log_psi(SPHERE1, (2,), 10)
    f = random_jet(random.Random(1), 1, chart.base, 10)
    one = Jet.constant(1, chart.base, 10, 1)
    expected = nu_series({0: f}, 3)
    assert star(one, f, chart, 3) == expected
    assert star(f, one, chart, 3) == expected


@pytest.mark.parametrize("x", [(2,), (Fraction(1, 2),), (Q(1, 1),)])
def test_first_order_bracket_off_s(x):
    chart = PotentialChart.log_psi(SPHERE1, x, 10)
    rng = random.Random(str(x))
    f, g = random_jet(rng, 1, chart.base, 10), random_jet(rng, 1, chart.base, 10)
    assert c_r(f, g, chart, 0) == f * g
    anti = c_r(f, g, chart, 1) - c_r(g, f, chart, 1)
    assert anti == poisson_bracket(SPHERE1, x, f, g) * I
    assert anti == chart.bracket(f, g) * I


def test_separation_on_both_charts():
    rng = random.Random(3)
    log_chart = PotentialChart.log_psi(SPHERE2, (2, 0), 10)
    base = log_chart.base
    f = random_jet(rng, 2, base, 10)
    a = Jet.from_terms(2, base, 10, {(2, 0, 0, 0): 1})
    b = Jet.from_terms(2, base, 10, {(0, 0, 3, 0): 1})
    assert check_separation(f, a, b, log_chart, 3).ok
    lifted = PotentialChart.lifted_chart(SPHERE2, (1, 0), 10)
    base = lifted.base
    zu = FiberGradedJet.from_jet(Jet.variable(2, base, 10, 0), (1, 0))
    zbub = FiberGradedJet.from_jet(Jet.variable(2, base, 10, 2), (0, 1))
    assert check_separation(random_lifted(rng, 2, base, 10), zu, zbub, lifted, 3).ok


def test_associativity_examples(flat):
    assert check_associativity(mono(0, 2), mono(2, 1), mono(1, 2), flat, 4).ok
    rng = random.Random(11)
    chart = PotentialChart.log_psi(SPHERE1, (2,), 10)
    f, g, k = (random_jet(rng, 1, chart.base, 10) for _ in range(3))
    assert check_associativity(f, g, k, chart, 3).ok
    lifted = PotentialChart.lifted_chart(SPHERE1, (1,), 10)
    f, g, k = (random_lifted(rng, 1, lifted.base, 10) for _ in range(3))
    assert check_associativity(f, g, k, lifted, 3).ok


def test_associativity_detects_a_wrong_metric():
    chart = PotentialChart.log_psi(SPHERE1, (2,), 10)
    h = chart.metric_inverse
    wrong = PotentialChart(chart.potential, chart.metric, [[h[0][0] * 2]])
    rng = random.Random(2)
    f, g, k = (random_jet(rng, 1, chart.base, 10) for _ in range(3))
    with pytest.raises(ConsistencyFailure):
        check_associativity(f, g, k, wrong, 3)
    assert not check_associativity(f, g, k, wrong, 3, check=False).ok


def test_consistency_failure_on_inconsistent_metric_in_two_dimensions():
    chart = PotentialChart.log_psi(SPHERE2, (2, 0), 8)
    h = chart.metric_inverse
    wrong = PotentialChart(chart.potential, chart.metric, [[h[0][0], h[0][1]], [h[1][0], h[1][1] * 3]])
    f = random_jet(random.Random(4), 2, chart.base, 8)
    with pytest.raises(ConsistencyFailure):
        left_mult_operator(f, wrong, 3)


def test_differential_order_bound():
    chart = PotentialChart.log_psi(SPHERE2, (2, 0), 10)
    f = random_jet(random.Random(8), 2, chart.base, 10)
    op = left_mult_operator(f, chart, 3)
    for r in op.terms:
        assert op.differential_order(r) <= r
        if r:
            assert all(sum(alpha) >= 1 for alpha, c in op.terms[r].items() if not c.is_zero())


def test_right_mult_operator_agrees_with_star():
    chart = PotentialChart.log_psi(SPHERE2, (2, 0), 10)
    rng = random.Random(9)
    f, g = random_jet(rng, 2, chart.base, 10), random_jet(rng, 2, chart.base, 10)
    via_right = right_mult_operator(g, chart, 3)(f).truncate(3)
    assert via_right == star(f, g, chart, 3)


def test_ops_identities_on_both_charts():
    rng = random.Random(12)
    chart = PotentialChart.log_psi(SPHERE1, (2,), 10)
    gs = [random_jet(rng, 1, chart.base, 10) for _ in range(10)]
    a = random_jet(rng, 1, chart.base, 10, "hol")
    b = random_jet(rng, 1, chart.base, 10, "anti")
    assert check_ops_identities(gs, chart, 3, a, b).ok
    lifted = PotentialChart.lifted_chart(SPHERE1, (1,), 10)
    Fs = [random_lifted(rng, 1, lifted.base, 10) for _ in range(10)]
    assert check_ops_identities(Fs, lifted, 3).ok
    assert check_rho_identities(Fs, lifted, 3).ok


def test_left_mult_of_rho_over_h_is_two_terms():
    lifted = PotentialChart.lifted_chart(SPHERE1, (1,), 10)
    rho_h = FormalSeries("h", {-1: lifted.potential}, 4, -1)
    op = left_mult_operator(rho_h, lifted, 3)
    nonzero = {(r, a) for r, t in op.terms.items() for a, c in t.items() if not c.is_zero()}
    assert nonzero == {(-1, (0, 0)), (0, (0, 1))}
    assert op.terms[0][(0, 1)] == FiberGradedJet.from_jet(Jet.constant(1, lifted.base, 10, 1), (1, 0))


def test_rho_identities_detect_errors():
    lifted = PotentialChart.lifted_chart(SPHERE1, (1,), 10)
    F = random_lifted(random.Random(1), 1, lifted.base, 10)
    good = check_rho_identities(F, lifted, 3)
    assert good.ok
    scaled = [[e * 2 for e in row] for row in lifted.metric_inverse]
    wrong = PotentialChart(lifted.potential, lifted.metric, scaled, lifted=True, param="h")
    assert not check_rho_identities(F, wrong, 3, check=False).ok


def test_lifted_delta_examples():
    lifted = PotentialChart.lifted_chart(SPHERE1, (1,), 10)
    base = lifted.base
    rng = random.Random(6)
    graded = FormalSeries(
        "h", {r: FiberGradedJet.from_jet(random_jet(rng, 1, base, 10), (-r, -r)) for r in (-1, 0, 1, 2)}, 3, -1
    )
    assert lifted_delta(graded).is_zero()
    assert inner_derivation(graded).is_zero()
    hf = FormalSeries("h", {1: FiberGradedJet.from_jet(random_jet(rng, 1, base, 10))}, 3, 1)
    assert lifted_delta(hf) == hf


def test_delta_is_a_derivation():
    lifted = PotentialChart.lifted_chart(SPHERE2, (1, 0), 10)
    rng = random.Random(7)

    def series():
        return FormalSeries("h", {0: random_lifted(rng, 2, lifted.base, 10), 1: random_lifted(rng, 2, lifted.base, 10)}, 3, 0)

    F, G = series(), series()
    lhs = lifted_delta(star(F, G, lifted, 3))
    rhs = star(lifted_delta(F), G, lifted, 3) + star(F, lifted_delta(G), lifted, 3)
    assert lhs == rhs


def test_laurent_inputs_bilinear():
    chart = PotentialChart.log_psi(SPHERE1, (2,), 12)
    rng = random.Random(13)
    f0, f1, g = (random_jet(rng, 1, chart.base, 12) for _ in range(3))
    F = FormalSeries("nu", {-1: f0, 0: f1}, 3, -1)
    lhs = star(F, g, chart, 2)
    rhs = star(f0, g, chart, 3).shift(-1) + star(f1, g, chart, 2)
    assert lhs == rhs.truncate(2)
    assert lhs.min_degree == -1


def test_star_has_exact_sympy_product_at_order_zero():
    chart = PotentialChart.log_psi(SPHERE2, (2, 0), 8)
    rng = random.Random(14)
    f, g = random_jet(rng, 2, chart.base, 8), random_jet(rng, 2, chart.base, 8)
    c0 = star(f, g, chart, 2).coeff(0)
    w = sp.expand(jet_to_sympy(f) * jet_to_sympy(g))
    truncated = sum(t for t in sp.Add.make_args(w) if sp.Poly(t, *sorted(w.free_symbols, key=str)).total_degree() <= c0.order)
    assert same(c0, truncated)
