import numpy as np
import pytest

from jacobiperiods.modgroup import GroupElement, MultiplierSystem, random_group_element
from jacobiperiods.weilrep import (
    ConjugateRep, RepresentationSpec, build_generators, chi_double_prime,
    homomorphism_residual, relation_check, rep_element, unitarity_residual,
)

S = GroupElement.S()
T = GroupElement.T()


def test_m1_generator_matrices():
    spec = build_generators(1)
    assert np.allclose(np.diagonal(spec.gen_T), [1, -1j], atol=1e-15)
    expected_S = np.exp(1j * np.pi / 4) / np.sqrt(2) * np.array([[1, 1], [1, -1]])
    assert np.allclose(spec.gen_S, expected_S, atol=1e-15)


def test_gen_T_unitary_any_m():
    for m in (1, 2, 5):
        spec = build_generators(m)
        assert np.allclose(np.abs(np.diagonal(spec.gen_T)), 1.0, atol=1e-15)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_relations(m):
    rep = relation_check(build_generators(m))
    assert rep.max_residual < 1e-12


def test_z_matrix_phase():
    # rho~(Z) e_a = i^j e_{-a}; fourth power is the identity exactly
    spec = build_generators(2)
    Z = spec.z_matrix()
    assert np.allclose(np.linalg.matrix_power(Z, 4), np.eye(4), atol=1e-15)
    assert np.allclose(Z @ Z, -np.eye(4), atol=1e-15)


def test_rep_element_identity_and_center():
    spec = build_generators(1)
    assert np.allclose(rep_element(spec, GroupElement.identity()), np.eye(2))
    # -I = S^2: chi'(-I) rho~(Z) = (-i)(i P) = P
    matZ = rep_element(spec, GroupElement(-1, 0, 0, -1))
    n = spec.dim
    P = np.zeros((n, n))
    for i in range(n):
        P[(n - i) % n, i] = 1
    assert np.allclose(matZ, P, atol=1e-14)


def test_word_independence_check():
    spec = build_generators(2)
    for g in (GroupElement(1, 0, 1, 1), GroupElement(2, 1, 1, 1)):
        spec.matrix(g, check=True)  # raises on violation


def test_two_words_same_matrix():
    spec = build_generators(1)
    g = GroupElement(1, 0, 1, 1)
    direct = spec._word_product(g.word(), spec.chi_prime)
    alt_word = [("S", 3), ("T", -1), ("S", 1)]  # S^-1 T^-1 S
    assert GroupElement.from_word(alt_word) == g
    alt = spec._word_product(alt_word, spec.chi_prime)
    assert np.max(np.abs(direct - alt)) < 1e-12


@pytest.mark.parametrize("m", [1, 3])
def test_homomorphism_and_unitarity(m):
    spec = build_generators(m)
    rng = np.random.default_rng(5 + m)
    pairs = [(random_group_element(rng, 25, 12), random_group_element(rng, 25, 12))
             for _ in range(100)]
    assert homomorphism_residual(spec, pairs) < 1e-10
    assert unitarity_residual(spec, [g for g, _ in pairs[:30]]) < 1e-12


def test_conjugate_rep_is_representation():
    spec = ConjugateRep(build_generators(2))
    rng = np.random.default_rng(9)
    for _ in range(20):
        g1 = random_group_element(rng, 10, 8)
        g2 = random_group_element(rng, 10, 8)
        lhs = spec.matrix(g1) @ spec.matrix(g2)
        assert np.max(np.abs(lhs - spec.matrix(g1 * g2))) < 1e-12


def test_chi_double_prime_even_is_identity_case():
    chi = MultiplierSystem.eta_power(13)
    assert chi_double_prime(chi, "even") is chi


def test_chi_double_prime_odd_values():
    chi = MultiplierSystem.eta_power(13)
    chid = chi_double_prime(chi, "odd")
    assert abs(chid(T) + 1) < 1e-14  # eta^12 at T is exactly -1
    assert chid.exponent(T) == 0.5
    assert chid.weight == 6


def test_chi_rho_product_choice_invariance():
    chi = MultiplierSystem.eta_power(13)
    triv = MultiplierSystem.eta_power(24) * MultiplierSystem.eta_power(24).conjugate()
    alt_prime = MultiplierSystem.eta_power(1) * triv
    spec = build_generators(1)
    spec_alt = RepresentationSpec(1, 1, chi_prime=alt_prime)
    chid = chi_double_prime(chi, "odd")
    chid_alt = chi_double_prime(chi, "odd", alt_prime)
    rng = np.random.default_rng(4)
    for _ in range(20):
        g = random_group_element(rng, 8, 8)
        lhs = complex(chid(g)) * spec.matrix(g)
        rhs = complex(chid_alt(g)) * spec_alt.matrix(g)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_j_restriction():
    with pytest.raises(NotImplementedError):
        build_generators(1, j=2)
    with pytest.raises(ValueError):
        build_generators(0)
