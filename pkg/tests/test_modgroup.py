import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from jacobiperiods.modgroup import (
    Cusp, GroupElement, MultiplierSystem, act_moebius, dedekind_sum,
    dedekind_sum_naive, decompose_word, eta_multiplier,
    eta_multiplier_exponent, mu_norm, multiplier_consistency_check,
    principal_power, random_group_element,
)
from jacobiperiods.series import eta_series

S = GroupElement.S()
T = GroupElement.T()


def test_determinant_enforced():
    with pytest.raises(ValueError):
        GroupElement(1, 1, 1, 1)


def test_word_of_T_and_minus_identity():
    assert T.word() == [("T", 1)]
    assert GroupElement(-1, 0, 0, -1).word() == [("S", 2)]


def test_word_of_lower_triangular():
    g = GroupElement(1, 0, 1, 1)
    w = g.word()  # remultiplication is asserted inside word()
    assert GroupElement.from_word(w) == g


def test_word_round_trip_large_entries():
    rng = np.random.default_rng(7)
    for _ in range(150):
        g = GroupElement.identity()
        for _ in range(int(rng.integers(2, 26))):
            g = g * (S if rng.integers(2) else T)
        assert max(abs(e) for e in g.entries()) < 10 ** 7
        assert GroupElement.from_word(g.word()) == g


def test_word_length_logarithmic():
    g = GroupElement(1346269, 832040, 832040, 514229)  # Fibonacci entries
    assert GroupElement.from_word(g.word()) == g
    assert len(g.word()) < 80


def test_parse_and_print():
    g = GroupElement.from_string("2,1,1,1")
    assert str(g) == "2,1,1,1"
    assert GroupElement.from_word(g.word_string()) == g


def test_moebius_and_mu():
    assert mu_norm(GroupElement.identity()) == 2
    assert mu_norm(GroupElement(1, 5, 0, 1)) == 27
    assert act_moebius(S, 1j) == 1j


def test_im_transformation_identity():
    rng = np.random.default_rng(1)
    for _ in range(50):
        g = random_group_element(rng, 9, 10)
        tau = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
        lhs = act_moebius(g, tau).imag * abs(g.j_factor(tau)) ** 2
        assert abs(lhs - tau.imag) < 1e-12 * (1 + abs(tau)) ** 2


def test_lemma_bound_on_j_factor():
    # v^2 (c^2+d^2) / (1 + 4|tau|^2) <= |c tau + d|^2 <= 2(|tau|^2 + v^-2)(c^2+d^2)
    rng = np.random.default_rng(2)
    for _ in range(200):
        c, d = rng.uniform(-9, 9, 2)
        tau = complex(rng.uniform(-3, 3), rng.uniform(0.05, 4))
        v = tau.imag
        mid = abs(c * tau + d) ** 2
        lo = v * v * (c * c + d * d) / (1 + 4 * abs(tau) ** 2)
        hi = 2 * (abs(tau) ** 2 + v ** -2) * (c * c + d * d)
        assert lo <= mid + 1e-12
        assert mid <= hi + 1e-12


def test_dedekind_sum_small_values():
    assert dedekind_sum(0, 1) == 0
    assert dedekind_sum(1, 2) == 0
    # direct sum: ((1/3))((1/3)) + ((2/3))((2/3)) = 1/36 + 1/36
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum_naive(1, 3) == Fraction(1, 18)


def test_dedekind_sum_reciprocity_vs_naive():
    rng = np.random.default_rng(3)
    for _ in range(40):
        c = int(rng.integers(1, 120))
        d = int(rng.integers(1, 300))
        if math.gcd(d, c) != 1:
            continue
        assert dedekind_sum(d, c) == dedekind_sum_naive(d, c)


def test_dedekind_sum_rejects_non_coprime():
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)


def test_eta_multiplier_generators():
    assert abs(eta_multiplier(T) - cmath.exp(1j * cmath.pi / 12)) < 1e-15
    assert abs(eta_multiplier(S) - cmath.exp(-1j * cmath.pi / 4)) < 1e-15
    assert eta_multiplier_exponent(T) == Fraction(1, 24)


def test_eta_multiplier_unit_modulus():
    rng = np.random.default_rng(4)
    for _ in range(100):
        g = random_group_element(rng, 50, 14)
        assert abs(abs(eta_multiplier(g)) - 1) < 1e-15


def test_eta_multiplier_against_series_quotient():
    """eps(g) = eta(g tau) / ((c tau + d)^{1/2} eta(tau)) for a spread of g."""
    eta = eta_series(1, 60)
    rng = np.random.default_rng(5)
    gs = [T, S, GroupElement(1, 0, 1, 1), GroupElement(2, 1, 1, 1),
          GroupElement(-1, 0, 0, -1), GroupElement(0, 1, -1, 0),
          GroupElement(-2, -1, 1, 0)]
    gs += [random_group_element(rng, 4, 6) for _ in range(10)]
    tau = 0.23 + 1.4j
    for g in gs:
        num = eta(g.moebius(tau))
        den = principal_power(g.j_factor(tau), 0.5) * eta(tau)
        assert abs(num / den - eta_multiplier(g)) < 1e-12, str(g)


def test_eta_power_multiplier_consistency():
    rng = np.random.default_rng(6)
    taus = [0.1 + 1.0j, -0.4 + 0.8j, 2.3j]
    pairs = [(random_group_element(rng, 30, 12), random_group_element(rng, 30, 12))
             for _ in range(200)]
    eps = MultiplierSystem.eta_power(1)
    assert eps.weight == Fraction(1, 2)
    assert multiplier_consistency_check(eps, pairs, taus) < 1e-12
    eps13 = MultiplierSystem.eta_power(13)
    assert multiplier_consistency_check(eps13, pairs[:50], taus) < 1e-12


def test_trivial_multiplier_consistency_even_weight():
    rng = np.random.default_rng(8)
    pairs = [(random_group_element(rng, 10, 8), random_group_element(rng, 10, 8))
             for _ in range(30)]
    triv = MultiplierSystem.trivial(12)
    assert multiplier_consistency_check(triv, pairs, [1j, 0.5 + 2j]) < 1e-12
    with pytest.raises(ValueError):
        MultiplierSystem.trivial(3)


def test_eta24_trivial_on_T_weight_12():
    chi = MultiplierSystem.eta_power(24)
    assert chi(T) == 1
    assert chi.exponent(T) == 0
    rng = np.random.default_rng(9)
    pairs = [(random_group_element(rng, 10, 8), random_group_element(rng, 10, 8))
             for _ in range(30)]
    # weight 12 consistency with values identically a character
    assert multiplier_consistency_check(chi, pairs, [1.2j]) < 1e-12


def test_cusp_normalization():
    c = Cusp.from_rational(4, -6)
    assert (c.p, c.q) == (-2, 3)
    assert GroupElement(2, 1, 1, 1).cusp_at_infinity_preimage().value() == -1
    assert GroupElement.T(5).cusp_at_infinity_preimage().is_infinity
