from fractions import Fraction

import numpy as np
import pytest

from jacobiperiods.jacobi import JacobiForm, build_testform
from jacobiperiods.modgroup import GroupElement, MultiplierSystem
from jacobiperiods.series import FourierSeries, JacobiSeries
from jacobiperiods.thetadec import (
    VVForm, decompose, recompose, theta_series, theta_t_law_exact,
    theta_transform_check, vv_transform_check,
)


def test_theta_terms_m1():
    th = theta_series(1, 0, 17)
    got = {(a, r) for a, r, _ in th.series.terms()}
    assert (Fraction(0), Fraction(0)) in got
    assert (Fraction(1), Fraction(2)) in got and (Fraction(1), Fraction(-2)) in got
    assert (Fraction(16), Fraction(8)) in got
    assert all(c == 1 for _, _, c in th.series.terms())

    th2 = theta_series(1, Fraction(1, 2), 17)
    got2 = {(a, r) for a, r, _ in th2.series.terms()}
    assert (Fraction(1, 4), Fraction(1)) in got2
    assert (Fraction(9, 4), Fraction(-3)) in got2


def test_characteristic_count_is_2m():
    for m in (1, 2, 5):
        chars = [Fraction(i, 2 * m) for i in range(2 * m)]
        thetas = [theta_series(m, a, 10) for a in chars]
        assert len({th.mu for th in thetas}) == 2 * m


def test_support_congruence():
    th = theta_series(3, Fraction(5, 6), 20)
    for _, rho, _ in th.series.terms():
        assert rho % (2 * 3) == 5


def test_bad_characteristic_rejected():
    with pytest.raises(ValueError):
        theta_series(2, Fraction(1, 3), 10)


@pytest.mark.parametrize("m", [1, 2])
def test_theta_transformation_laws(m):
    rng = np.random.default_rng(m)
    samples = [(complex(rng.uniform(-0.3, 0.3), rng.uniform(0.6, 1.3)),
                complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.04, 0.04)))
               for _ in range(10)]
    rep = theta_transform_check(m, samples, truncation=60)
    assert rep["S_law"] < 1e-10
    assert rep["T_law"] < 1e-12


def test_t_law_exact_on_coefficients():
    assert theta_t_law_exact(1)
    assert theta_t_law_exact(2)
    assert theta_t_law_exact(3)


def test_decompose_leading_coefficients():
    F = decompose(build_testform(40))
    # C_1(7/6) = 1 at q^{(7/6)/4}, C_0(13/6) = -2 at q^{(13/6)/4}
    assert F.components[1].coeff(Fraction(7, 24)) == 1
    assert F.components[0].coeff(Fraction(13, 24)) == -2
    assert F.weight == Fraction(4)
    assert F.kappa_consistency()


def test_decompose_rejects_elliptic_violation():
    bad = JacobiSeries.from_term_list(
        [(Fraction(1, 4), 1, 1.0), (Fraction(9, 4), 3, 0.5)], 10, 1)
    phi = JacobiForm(series=bad, weight=Fraction(9, 2), m=1,
                     multiplier=MultiplierSystem.eta_power(13), cuspidal=True)
    with pytest.raises(ValueError, match="elliptic invariance"):
        decompose(phi)


def test_round_trip_exact():
    phi = build_testform(40)
    F = decompose(phi)
    rec = recompose(F)
    hi = min(rec.truncation, phi.series.truncation)
    for alpha, rho, c in phi.series.terms():
        if alpha <= hi:
            assert rec.coeff(alpha, rho) == c
    for alpha, rho, c in rec.terms():
        if alpha <= hi:
            assert phi.series.coeff(alpha, rho) == c


def test_theta_decomposes_to_delta():
    # a theta series viewed as an index-m invariant splits as f_b = delta_ab
    m = 2
    a_idx = 3
    th = theta_series(m, Fraction(a_idx, 2 * m), 20)
    phi = JacobiForm(series=th.series, weight=Fraction(1, 2), m=m,
                     multiplier=MultiplierSystem.eta_power(1), cuspidal=False)
    F = decompose(phi)
    for b in range(2 * m):
        comp = F.components[b]
        if b == a_idx:
            assert comp.coeff(0) == 1
            assert len(comp) >= 1
            assert all(c == 1 for c in comp.coeffs.values())
        else:
            assert comp.is_zero()


def test_recompose_zero_and_single_component():
    m = 1
    zero = VVForm([FourierSeries.zero(10), FourierSeries.zero(10)],
                  Fraction(4), m, MultiplierSystem.eta_power(12))
    assert recompose(zero).is_zero()
    f = FourierSeries(Fraction(1, 3), 1, {0: 2.0}, 10)
    single = VVForm([f, FourierSeries.zero(10)], Fraction(4), m,
                    MultiplierSystem.eta_power(12))
    rec = recompose(single)
    th = theta_series(m, 0, 10)
    prod = JacobiSeries.from_fourier(f) * th.series
    for alpha, rho, c in prod.terms():
        if alpha <= rec.truncation:
            assert rec.coeff(alpha, rho) == c


def test_vv_transform_generators():
    F = decompose(build_testform(40))
    taus = [1.1j, 0.25 + 0.95j, -0.3 + 1.3j]
    S, T = GroupElement.S(), GroupElement.T()
    for g in (S, T, T * S * T):
        assert vv_transform_check(F, g, taus) < 1e-9


def test_vv_t_law_exact_phases():
    """T acts by the exact diagonal phase e(kappa_a) on each component,
    checked at the coefficient level."""
    F = decompose(build_testform(30))
    from jacobiperiods.series import e2pi
    phases = F._t_phases()
    for f, ph in zip(F.components, phases):
        for e in f.exponents():
            assert abs(e2pi(e) - ph) < 1e-14


def test_cusp_correspondence():
    phi = build_testform(30)
    F = decompose(phi)
    assert F.is_cuspidal() == phi.cuspidal
    th = theta_series(1, 0, 10)
    phi2 = JacobiForm(series=th.series, weight=Fraction(1, 2), m=1,
                      multiplier=MultiplierSystem.eta_power(1), cuspidal=False)
    assert not decompose(phi2).is_cuspidal()


def test_component_count_enforced():
    with pytest.raises(ValueError):
        VVForm([FourierSeries.zero(5)], Fraction(4), 1,
               MultiplierSystem.eta_power(12))
