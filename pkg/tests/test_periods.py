import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma as spgamma, gammaincc

from jacobiperiods.jacobi import build_testform
from jacobiperiods.modgroup import GroupElement, MultiplierSystem, random_group_element
from jacobiperiods.periods import (
    PElement, PeriodCocycle, cauchy_riemann_residual, coboundary_residual,
    eichler_integral, eichler_integral_quadrature, fit_growth,
    incomplete_gamma_upper, period_integral_quadrature, slash_p,
)
from jacobiperiods.series import FourierSeries
from jacobiperiods.thetadec import VVForm, decompose
from jacobiperiods.weilrep import ConjugateRep, build_generators


# -- incomplete gamma ----------------------------------------------------

def test_gamma_closed_forms():
    assert abs(incomplete_gamma_upper(1.0, 2.0) - math.exp(-2)) < 1e-15
    # Gamma(n+1, x) = n! e^-x sum x^k/k!
    assert abs(incomplete_gamma_upper(3.0, 1.0) - 5 / math.e) < 1e-14
    assert abs(incomplete_gamma_upper(3.0, 1.0) - 1.839397) < 1e-6


def test_gamma_limit_x_to_zero():
    # Gamma(s, x) -> Gamma(s), checked against quadrature of the integral
    s = 2.5
    val, _ = quad(lambda t: t ** (s - 1) * math.exp(-t), 1e-9, 60)
    assert abs(incomplete_gamma_upper(s, 1e-9) - val) < 1e-9
    assert abs(incomplete_gamma_upper(s, 1e-12) - math.gamma(s)) < 1e-8


@pytest.mark.parametrize("s,x", [(0.5, 0.3), (1.5, 2.0), (2.5, 0.01),
                                 (4.0, 40.0), (0.2, 9.0), (7.5, 300.0)])
def test_gamma_against_scipy(s, x):
    ref = gammaincc(s, x) * spgamma(s)
    assert abs(incomplete_gamma_upper(s, x) - ref) <= 1e-13 * abs(ref)


def test_gamma_scaled_large_x():
    # e^x Gamma(s,x) ~ x^(s-1) for large x; finite where the plain value
    # underflows
    val = incomplete_gamma_upper(3.0, 900.0, scaled=True)
    assert val == pytest.approx(900.0 ** 2, rel=1e-2)


def test_gamma_rejects_bad_s():
    with pytest.raises(ValueError):
        incomplete_gamma_upper(-1.0, 2.0)


# -- Eichler integrals ----------------------------------------------------

def _single_term_form(alpha, kappa, weight):
    f = FourierSeries.from_exponents({Fraction(alpha): 1.0}, 10)
    z = FourierSeries.zero(10)
    return VVForm([f, z], Fraction(weight), 1,
                  MultiplierSystem.eta_power(12), build_generators(1))


def test_single_term_matches_quadrature_k0():
    # one term e^{2 pi i w}, k = 0 (weight 2)
    F = _single_term_form(1, 0, 2)
    G = eichler_integral(F)
    for tau in (1j, 0.3 + 0.7j):
        tw = G(tau)
        qd = eichler_integral_quadrature(F, tau)
        assert np.max(np.abs(tw - qd)) < 1e-10


def test_zero_form_zero_integral():
    z = FourierSeries.zero(10)
    F = VVForm([z, z], Fraction(4), 1, MultiplierSystem.eta_power(12),
               build_generators(1))
    G = eichler_integral(F)
    assert np.max(np.abs(G(1.3j))) == 0.0


def test_non_cuspidal_refused():
    f = FourierSeries(0, 1, {0: 1.0}, 10)   # constant term: exponent 0
    F = VVForm([f, FourierSeries.zero(10)], Fraction(4), 1,
               MultiplierSystem.eta_power(12), build_generators(1))
    with pytest.raises(ValueError, match="cusp"):
        eichler_integral(F)


def test_testform_integral_vs_quadrature():
    F = decompose(build_testform(50))
    G = eichler_integral(F)
    rng = np.random.default_rng(1)
    for _ in range(10):
        tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.8))
        assert np.max(np.abs(G(tau) - eichler_integral_quadrature(F, tau))) < 1e-9


# -- period cocycle -------------------------------------------------------

@pytest.fixture(scope="module")
def pc():
    return PeriodCocycle(decompose(build_testform(60)))


def test_translations_give_zero_exactly(pc):
    for n in (1, -3, 7):
        assert pc(GroupElement.T(n)).is_zero()
    assert pc(GroupElement.identity()).is_zero()
    assert pc(GroupElement(-1, 0, 0, -1)).is_zero()
    assert pc(GroupElement(-1, 5, 0, -1)).is_zero()


def test_cocycle_identity_random_pairs(pc):
    rng = np.random.default_rng(11)
    pairs = [(random_group_element(rng, 2, 5), random_group_element(rng, 2, 5))
             for _ in range(20)]
    taus = [1.05j, 0.25 + 1.2j, -0.3 + 0.95j, 0.1 + 1.6j, 1.4j]
    assert pc.cocycle_residual(pairs, taus) < 1e-8


def test_period_quadrature_cross_check(pc):
    for g in (GroupElement.S(), GroupElement(2, 1, 1, 1),
              GroupElement(1, 0, 1, 1)):
        for tau in (1.1j, 0.2 + 0.9j):
            a = pc(g)(tau)
            b = pc.quadrature_value(g, tau)
            assert np.max(np.abs(a - b)) < 1e-7


def test_period_values_holomorphic(pc):
    g = pc(GroupElement.S())
    assert cauchy_riemann_residual(g, [1.2j, 0.3 + 0.9j]) < 1e-6


def test_quadrature_requires_integer_k():
    F = decompose(build_testform(30))
    F2 = VVForm(F.components, Fraction(9, 2), F.m, F.multiplier, F.rep)
    with pytest.raises(ValueError, match="integer"):
        period_integral_quadrature(F2, GroupElement.S(), 1j)


# -- slash and coboundaries ------------------------------------------------

def _poly_witness(dim=2):
    kaps = [Fraction(11, 24), Fraction(17, 24)]

    def fn(tau):
        return np.array([1.1 * cmath.exp(2j * math.pi * float(kaps[0]) * tau),
                         -0.4 * cmath.exp(2j * math.pi * float(kaps[1]) * tau)])

    return PElement(fn, dim, "witness")


def test_slash_identity_and_inverse(pc):
    p = _poly_witness()
    chi, rep = pc.chi, pc.rep
    same = slash_p(p, GroupElement.identity(), -2.0, chi, rep)
    tau = 1.2j
    assert np.max(np.abs(same(tau) - p(tau))) < 1e-14
    g = GroupElement(2, 1, 1, 1)
    round_trip = slash_p(slash_p(p, g, -2.0, chi, rep), g.inverse(), -2.0,
                         chi, rep)
    assert np.max(np.abs(round_trip(tau) - p(tau))) < 1e-12


def test_slash_composition(pc):
    p = _poly_witness()
    chi, rep = pc.chi, pc.rep
    g1, g2 = GroupElement.S(), GroupElement(1, 0, 1, 1)
    a = slash_p(slash_p(p, g1, -2.0, chi, rep), g2, -2.0, chi, rep)
    b = slash_p(p, g1 * g2, -2.0, chi, rep)
    for tau in (1.3j, 0.4 + 1.0j):
        assert np.max(np.abs(a(tau) - b(tau))) < 1e-12


def test_coboundary_residual_vanishes_for_coboundary(pc):
    p = _poly_witness()
    chi, rep = pc.chi, pc.rep

    def cob(gamma):
        return slash_p(p, gamma, -2.0, chi, rep) - p

    gammas = [GroupElement.S(), GroupElement(1, 0, 1, 1), GroupElement.T(2)]
    res = coboundary_residual(cob, p, gammas, [1.1j, 0.3 + 1.2j], -2.0, chi, rep)
    assert res < 1e-10


def test_period_cocycle_not_a_coboundary_of_zero(pc):
    """Against the zero witness the residual is bounded away from zero:
    the class is (numerically) nontrivial, matching injectivity."""
    zero = PElement.zero_element(2)
    res = coboundary_residual(pc, zero, [GroupElement.S()], [1.1j],
                              -2.0, pc.chi, pc.rep)
    assert res > 1e-3


def test_coboundary_scaling_linearity(pc):
    p = _poly_witness()
    chi, rep = pc.chi, pc.rep
    c = 3.7

    def cob_scaled(gamma):
        return (slash_p(p, gamma, -2.0, chi, rep) - p).scale(c)

    res = coboundary_residual(cob_scaled, p.scale(c),
                              [GroupElement.S()], [1.2j], -2.0, chi, rep)
    assert res < 1e-9


def test_growth_certificate_on_cocycle_values(pc):
    g = pc(GroupElement.S())
    grid = [complex(u, v) for u in (-4, 0, 4) for v in (0.05, 0.4, 2.0, 10.0)]
    fit = fit_growth(g, grid=grid)
    assert fit is not None
    K, rho, sigma = fit
    for tau in grid:
        assert float(np.max(np.abs(g(tau)))) < K * (abs(tau) ** rho +
                                                    tau.imag ** -sigma) * 1.001
