from fractions import Fraction

import numpy as np
import pytest

from jacobiperiods.jacobi import JacobiForm, build_testform
from jacobiperiods.lfunctions import (
    CocycleRepresentative, PartialLSpec, cocycle_representative, lvalue_table,
    partial_L, partial_L_dirichlet, partial_L_integral, verify_main3,
)
from jacobiperiods.modgroup import GroupElement, MultiplierSystem
from jacobiperiods.periods import PeriodCocycle, period_integral_quadrature
from jacobiperiods.series import JacobiSeries
from jacobiperiods.thetadec import decompose

S = GroupElement.S()


@pytest.fixture(scope="module")
def setup():
    phi = build_testform(60)
    return phi, decompose(phi)


def test_dual_method_agreement_large_s(setup):
    phi, F = setup
    for gamma in (S, GroupElement(1, 0, 1, 1)):
        vals = partial_L_integral(F, gamma, 10.0)
        for mu in (0, 1):
            spec = PartialLSpec.from_vvform(F, mu, gamma)
            d = partial_L_dirichlet(spec, 10.0)
            assert abs(vals[mu] - d.value) < 1e-8 * max(abs(d.value), 1.0)


def test_partial_L_wrapper(setup):
    phi, F = setup
    spec = PartialLSpec.from_vvform(F, 1, S)
    li = partial_L(spec, 10.0, F=F, method="integral")
    ld = partial_L(spec, 10.0, method="dirichlet")
    assert abs(li.value - ld.value) < 1e-8 * abs(ld.value)
    assert li.method == "integral" and ld.method == "dirichlet"


def test_dirichlet_refuses_divergent_tail(setup):
    phi, F = setup
    spec = PartialLSpec.from_vvform(F, 1, S)
    with pytest.raises(ValueError, match="tail"):
        partial_L_dirichlet(spec, 1.0)


def test_linearity_in_the_form(setup):
    phi, F = setup
    c = 2.5
    scaled = F.scale(c)
    v1 = partial_L_integral(F, S, 3.0)
    v2 = partial_L_integral(scaled, S, 3.0)
    assert np.max(np.abs(v2 - c * v1)) < 1e-9 * np.max(np.abs(v1))


def test_empty_class_gives_zero():
    # an index-1 form supported only on even r has empty odd class
    ser = JacobiSeries.from_term_list(
        [(Fraction(13, 12), 0, 1.0), (Fraction(13, 12) + 1, 2, 1.0),
         (Fraction(13, 12) + 1, -2, 1.0)], 10, 1)
    phi = JacobiForm(series=ser, weight=Fraction(9, 2), m=1,
                     multiplier=MultiplierSystem.eta_power(13), cuspidal=True)
    F = decompose(phi)
    spec = PartialLSpec.from_vvform(F, 1, S)
    assert partial_L_dirichlet(spec, 10.0).value == 0


def test_c_zero_rejected(setup):
    phi, F = setup
    with pytest.raises(ValueError):
        PartialLSpec.from_vvform(F, 0, GroupElement.T())
    with pytest.raises(ValueError):
        partial_L_integral(F, GroupElement.T(), 3.0)


def test_representative_requires_integer_positive_k(setup):
    phi, F = setup
    bad = JacobiForm(series=phi.series, weight=Fraction(5, 2), m=1,
                     multiplier=MultiplierSystem.eta_power(13), cuspidal=True)
    with pytest.raises(ValueError, match="integer"):
        cocycle_representative(bad, S)


def test_representative_is_degree_k_polynomial(setup):
    phi, F = setup
    rep = cocycle_representative(phi, S, F=F)
    assert rep.polys.shape == (2, 3)
    # polynomial evaluation consistency
    tau = 1.3j
    vals = rep.r_mu(tau)
    manual = [np.polyval(rep.polys[mu], tau + rep.shift) for mu in range(2)]
    assert np.allclose(vals, manual)


def test_representative_vs_quadrature(setup):
    phi, F = setup
    for gamma in (S, GroupElement(1, 0, 1, 1), GroupElement(2, 1, 1, 1)):
        rep = cocycle_representative(phi, gamma, F=F)
        for tau in (1.1j, 0.4 + 1.2j):
            quadv = period_integral_quadrature(F, gamma, tau)
            assert np.max(np.abs(rep.r_mu(tau) - quadv)) < 1e-6


def test_x_independence(setup):
    phi, F = setup
    from jacobiperiods.jacobi import LatticeElement
    r0 = cocycle_representative(phi, S, X=LatticeElement(0, 0), F=F)
    r1 = cocycle_representative(phi, S, X=LatticeElement(3, -2), F=F)
    assert np.array_equal(r0.polys, r1.polys)


def test_gamma_and_T_gamma_relation(setup):
    """(T, gamma) pairs of the cocycle relation: T gamma has the same
    lower row, so the representative is unchanged, matching
    (r_T | gamma) + r_gamma with r_T = 0."""
    phi, F = setup
    for gamma in (S, GroupElement(2, 1, 1, 1)):
        ra = cocycle_representative(phi, gamma, F=F)
        rb = cocycle_representative(phi, GroupElement.T() * gamma, F=F)
        assert np.max(np.abs(ra.polys - rb.polys)) < 1e-6 * max(
            1.0, float(np.max(np.abs(ra.polys))))


def test_translation_gives_zero_representative(setup):
    phi, F = setup
    rep = cocycle_representative(phi, GroupElement.T(), F=F)
    assert rep.is_zero
    assert rep(1.2j, 0.1) == 0


def test_statement_order_flag_collapses(setup):
    phi, F = setup
    rep = cocycle_representative(phi, S, F=F, statement_order=True)
    # under 1/(negative)! = 0 only the top critical value survives
    assert np.count_nonzero(rep.polys[:, :-1]) == 0


def test_verify_main3_all_routes(setup):
    phi, F = setup
    gammas = [S, GroupElement(1, 0, 1, 1), GroupElement(2, 1, 1, 1)]
    taus = [1.1j, 0.3 + 0.9j, -0.2 + 1.3j, 0.45 + 1.7j, 2.1j]
    report = verify_main3(phi, gammas, taus, F=F)
    for g, r in report.items():
        assert r["vs_quadrature"] < 1e-6
        assert r["vs_period_cocycle"] < 1e-6


def test_verify_main3_translation_trivial(setup):
    phi, F = setup
    report = verify_main3(phi, [GroupElement.T()], [1.2j], F=F)
    assert report["1,1,0,1"]["vs_period_cocycle"] == 0.0


def test_lvalue_table_rows(setup):
    phi, F = setup
    rows = lvalue_table(phi, S, F=F)
    assert len(rows) == 6  # mu in {0,1}, n in {0,1,2}
    for mu, n, val, method, err in rows:
        assert mu in (0, 1) and n in (0, 1, 2)
        assert err < 1e-6


def test_negative_c_reduces_through_center(setup):
    """L and the representative are unchanged under gamma -> -gamma
    (the twist and cusp depend only on d/c; the cocycle kills -I)."""
    phi, F = setup
    g = GroupElement(2, 1, 1, 1)
    va = partial_L_integral(F, g, 3.0)
    vb = partial_L_integral(F, -g, 3.0)
    assert np.max(np.abs(va - vb)) < 1e-9 * np.max(np.abs(va))
    ra = cocycle_representative(phi, g, F=F)
    rb = cocycle_representative(phi, -g, F=F)
    assert np.max(np.abs(ra.polys - rb.polys)) < 1e-9
