"""Theta series with characteristics and the bijection between Jacobi
forms of index m and 2m-vectors of modular forms.

For a characteristic a in (2m)^{-1}Z/Z the theta series is

    theta_a(tau, z) = sum_{r = 2ma mod 2m} q^(r^2/4m) zeta^r,

and every function satisfying the elliptic transformation law splits
uniquely as sum_a f_a theta_a.  The component vector transforms under
the eta-twisted Weil representation with multiplier chi'' and weight
(Jacobi weight - 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .jacobi import JacobiForm
from .modgroup import GroupElement, MultiplierSystem, principal_power
from .series import FourierSeries, JacobiSeries, e2pi
from .weilrep import RepresentationSpec, build_generators, chi_double_prime


@dataclass
class ThetaSeries:
    """theta_{2m,a,0}; support r = 2ma (mod 2m), unit coefficients."""
    m: int
    a: Fraction
    series: JacobiSeries

    @property
    def mu(self) -> int:
        """Characteristic as a residue 2ma mod 2m."""
        return int(2 * self.m * self.a) % (2 * self.m)


def theta_series(m: int, a, truncation) -> ThetaSeries:
    a = Fraction(a) % 1
    if (2 * m * a).denominator != 1:
        raise ValueError(f"characteristic {a} not in (1/{2*m})Z/Z")
    truncation = Fraction(truncation)
    mu = int(2 * m * a) % (2 * m)
    rmax = math.isqrt(int(4 * m * truncation))
    start = mu - 2 * m * ((mu + rmax) // (2 * m))  # least r = mu (2m), r >= -rmax
    terms = []
    for r in range(start, rmax + 1, 2 * m):
        e = Fraction(r * r, 4 * m)
        if e <= truncation:
            terms.append((e, Fraction(r), 1.0))
    series = JacobiSeries.from_term_list(terms, truncation, m)
    return ThetaSeries(m=m, a=a, series=series)


def theta_transform_check(m: int, samples, truncation=60) -> dict:
    """Residuals of the two theta transformation laws at the samples:

    (1) theta_a(-1/tau, z/tau) = (2m)^{-1/2} (tau/i)^{1/2} e(m z^2/tau)
            sum_b e(-2m a b) theta_b(tau, z),
    (2) theta_a(tau+1, z) = e(m a^2) theta_a(tau, z)   [exact reindexing].
    """
    thetas = [theta_series(m, Fraction(i, 2 * m), truncation)
              for i in range(2 * m)]
    worst_s = 0.0
    worst_t = 0.0
    for tau, z in samples:
        vals = np.array([t.series(tau, z) for t in thetas])
        stau = -1 / tau
        sz = z / tau
        pref = (principal_power(tau / 1j, 0.5) / math.sqrt(2 * m)
                * e2pi(m * z * z / tau))
        for i, t in enumerate(thetas):
            lhs = t.series(stau, sz)
            rhs = pref * sum(e2pi(-2 * m * t.a * tb.a) * vals[k]
                             for k, tb in enumerate(thetas))
            worst_s = max(worst_s, abs(lhs - rhs))
            lhs_t = t.series(tau + 1, z)
            rhs_t = e2pi(m * t.a * t.a) * vals[i]
            worst_t = max(worst_t, abs(lhs_t - rhs_t))
    return {"S_law": worst_s, "T_law": worst_t}


def theta_t_law_exact(m: int, truncation=20) -> bool:
    """The T law is a phase identity on coefficients: e(r^2/4m) = e(m a^2)
    on the support; checked with exact rational arithmetic."""
    for i in range(2 * m):
        th = theta_series(m, Fraction(i, 2 * m), truncation)
        for alpha, rho, _ in th.series.terms():
            if (alpha - m * th.a * th.a) % 1 != 0:
                return False
    return True


class VVForm:
    """Vector of 2m component q-series indexed by characteristics,
    with weight, multiplier chi'' and representation rho''."""

    def __init__(self, components, weight, m: int,
                 multiplier: MultiplierSystem, rep=None):
        if len(components) != 2 * m:
            raise ValueError(f"need 2m = {2*m} components, got {len(components)}")
        self.components = list(components)
        self.weight = weight
        self.m = int(m)
        self.multiplier = multiplier
        self.rep = rep if rep is not None else build_generators(m)

    @property
    def dim(self) -> int:
        return 2 * self.m

    def __call__(self, tau: complex) -> np.ndarray:
        return np.array([f(tau) for f in self.components])

    def eval_with_tail(self, tau: complex):
        pairs = [f.eval_with_tail(tau) for f in self.components]
        return (np.array([p.value for p in pairs]),
                float(max(p.tail for p in pairs)))

    def _t_phases(self) -> np.ndarray:
        """Diagonal of chi''(T) rho''(T) = e^{2 pi i kappa_a}."""
        return complex(self.multiplier(GroupElement.T())) * \
            np.diagonal(self.rep.matrix(GroupElement.T()))

    def component_kappas(self) -> list:
        """kappa_a in [0,1) with chi''(T) rho''(T) = diag(e^{2 pi i kappa_a})."""
        return [float(np.angle(p) / (2 * np.pi)) % 1.0 for p in self._t_phases()]

    def kappa_consistency(self, tol: float = 1e-12) -> bool:
        """Every component's q-support must sit in kappa_a + Z."""
        for f, phase in zip(self.components, self._t_phases()):
            for e in f.exponents():
                if abs(e2pi(e) - phase) > tol:
                    return False
        return True

    def is_cuspidal(self) -> bool:
        return all(f.is_zero() or f.valuation() > 0 for f in self.components)

    def conjugate_coefficients(self) -> "VVForm":
        """Coefficient-conjugated form.  For the Weil-type data shipped
        here (symmetric gen_S, diagonal gen_T, order-two chi'') this
        stays in the same transformation space, so the data is kept."""
        return VVForm([f.conjugate_coeffs() for f in self.components],
                      self.weight, self.m, self.multiplier, self.rep)

    def scale(self, s: complex) -> "VVForm":
        return VVForm([f.scale(s) for f in self.components], self.weight,
                      self.m, self.multiplier, self.rep)

    def __repr__(self):
        return (f"VVForm(weight={self.weight}, m={self.m}, "
                f"components={[len(f) for f in self.components]})")


def decompose(phi: JacobiForm) -> VVForm:
    """Theta decomposition: f_mu(tau) = sum_N C_mu(N) q^(N/4m) with
    C_mu(N) = c((N + r^2)/4m, r) for any r = mu (mod 2m).

    Fails loudly if c(n, r) depends on r beyond its residue class, since
    that violates the elliptic invariance hypothesis.
    """
    m = phi.m
    ser = phi.series
    if any(rho.denominator != 1 for _, rho, _ in ser.terms()):
        raise ValueError("elliptic invariance requires integer zeta exponents")
    buckets: list[dict] = [dict() for _ in range(2 * m)]
    for alpha, rho, c in ser.terms():
        r = int(rho)
        mu = r % (2 * m)
        n_val = 4 * m * alpha - r * r
        seen = buckets[mu].get(n_val)
        if seen is None:
            buckets[mu][n_val] = (c, alpha, r)
        elif abs(seen[0] - c) > 1e-12 * max(1.0, abs(c)):
            raise ValueError(
                f"coefficient at (alpha={alpha}, r={r}) disagrees with class "
                f"representative at (alpha={seen[1]}, r={seen[2]}): "
                f"{c} vs {seen[0]}; elliptic invariance violated")
    components = []
    for mu in range(2 * m):
        rmin = min(mu % (2 * m), (-mu) % (2 * m))
        trunc = ser.truncation - Fraction(rmin * rmin, 4 * m)
        terms = {Fraction(n, 4 * m): c for n, (c, _, _) in buckets[mu].items()}
        components.append(FourierSeries.from_exponents(terms, trunc))
    chi2 = chi_double_prime(phi.multiplier, "odd")
    return VVForm(components, phi.weight - Fraction(1, 2), m, chi2,
                  build_generators(m))


def recompose(F: VVForm, truncation=None) -> JacobiSeries:
    """sum_a f_a theta_a as a JacobiSeries; the output q-order is
    min_a (f_a order + leading theta exponent)."""
    m = F.m
    if truncation is None:
        truncation = min(
            f.truncation + Fraction(min(i, 2 * m - i) ** 2, 4 * m)
            for i, f in enumerate(F.components))
    total = JacobiSeries.zero(truncation, m)
    for i, f in enumerate(F.components):
        if f.is_zero():
            continue
        th = theta_series(m, Fraction(i, 2 * m), truncation)
        prod = JacobiSeries.from_fourier(f, 0) * th.series
        total = total + prod.truncate(min(truncation, prod.truncation))
    return total.truncate(truncation)


def vv_transform_check(F: VVForm, gamma: GroupElement, taus) -> float:
    """Residual of (F |_{k, chi'', rho''} gamma) = F at the samples,
    with the slash chi(g)^{-1} (c tau + d)^{-k} rho^{-1}(g) F(g tau)."""
    k = float(F.weight)
    chi_g = complex(F.multiplier(gamma))
    rho_inv = F.rep.matrix_inverse(gamma)
    worst = 0.0
    for tau in taus:
        moved = F(gamma.moebius(tau))
        lhs = (1 / chi_g) * principal_power(gamma.j_factor(tau), -k) * (rho_inv @ moved)
        rhs = F(tau)
        scale = max(float(np.max(np.abs(rhs))), 1e-12)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    return worst
