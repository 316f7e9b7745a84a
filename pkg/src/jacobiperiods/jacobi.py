"""Jacobi forms of real weight and integer index on the full Jacobi
group SL(2,Z) x Z^2: slash operators, a certified desk-scale cusp form,
and cuspidality checks.

The elliptic slash acts on truncated series by exact coefficient
reindexing; the modular slash acts pointwise on evaluables with the
principal branch of (c tau + d)^{-k}.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
from fractions import Fraction

from .modgroup import GroupElement, MultiplierSystem, principal_power
from .series import FourierSeries, JacobiSeries, e2pi, eta_series

TWO_PI_I = 2j * 3.141592653589793


@dataclass(frozen=True)
class LatticeElement:
    """X = (lam, mu) in Z^2, the translation part of the Jacobi group."""
    lam: int
    mu: int

    def act_right(self, gamma: GroupElement) -> "LatticeElement":
        """(lam, mu) . gamma, the row-vector action used in the
        composition law of the Jacobi group."""
        return LatticeElement(self.lam * gamma.a + self.mu * gamma.c,
                              self.lam * gamma.b + self.mu * gamma.d)

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        return LatticeElement(self.lam + other.lam, self.mu + other.mu)


def compose_jacobi(g1: GroupElement, x1: LatticeElement,
                   g2: GroupElement, x2: LatticeElement):
    """(g1, x1)(g2, x2) = (g1 g2, x1.g2 + x2)."""
    return g1 * g2, x1.act_right(g2) + x2


def slash_elliptic(phi, x: LatticeElement, m=None):
    """Action of X = (lam, mu):
    (phi | X)(tau, z) = e(m(lam^2 tau + 2 lam z + mu lam)) phi(tau, z + lam tau + mu).

    On a JacobiSeries this reindexes each monomial q^alpha zeta^rho to
    q^(alpha + rho lam + m lam^2) zeta^(rho + 2 m lam) with the exact
    phase e(mu (m lam + rho)); on a callable it is the pointwise formula.
    """
    lam, mu = x.lam, x.mu
    if isinstance(phi, JacobiSeries):
        mm = phi.m if m is None else Fraction(m)
        terms = []
        for alpha, rho, c in phi.terms():
            phase = e2pi(mu * (mm * lam + rho))
            terms.append((alpha + rho * lam + mm * lam * lam,
                          rho + 2 * mm * lam,
                          phase * c))
        # the reindexing shifts which exponents are certified: a tail term
        # (alpha > T, rho on cusp-form support) lands at (sqrt(alpha) -
        # sqrt(m)|lam|)^2 at worst, so the certified order drops to that
        # floor (bounded below rationally via a ceiling square root)
        trunc = phi.truncation + _min_exp_shift(phi, lam, mm)
        if lam != 0 and mm > 0:
            s = math.isqrt(math.ceil(mm * phi.truncation)) + 1
            floor = phi.truncation - 2 * abs(lam) * s + mm * lam * lam
            trunc = min(trunc, floor)
        return JacobiSeries.from_term_list(terms, trunc, mm)
    if m is None:
        raise ValueError("index m required to slash an evaluable")
    mf = float(m)

    def out(tau, z):
        pref = e2pi(mf * (lam * lam * tau + 2 * lam * z + mu * lam))
        return pref * phi(tau, z + lam * tau + mu)

    return out


def _min_exp_shift(phi: JacobiSeries, lam: int, m: Fraction) -> Fraction:
    if phi.is_zero() or lam == 0:
        return Fraction(0)
    shifts = [rho * lam + m * lam * lam for _, rho, _ in phi.terms()]
    return min(shifts)


def slash_modular(phi, gamma: GroupElement, weight, m, chi: MultiplierSystem):
    """(phi |_{k,m,chi} gamma)(tau, z) = (c tau + d)^{-k} conj(chi(gamma))
    e(-m c z^2 / (c tau + d)) phi(gamma tau, z / (c tau + d))."""
    k = float(weight)
    mf = float(m)
    a, b, c, d = gamma.entries()
    chibar = complex(chi(gamma)).conjugate()

    def out(tau, z):
        den = c * tau + d
        pref = principal_power(den, -k) * chibar * e2pi(-mf * c * z * z / den)
        return pref * phi((a * tau + b) / den, z / den)

    return out


def slash_jacobi(phi, gamma: GroupElement, x: LatticeElement,
                 weight, m, chi: MultiplierSystem):
    """Full Jacobi-group slash: first the modular, then the elliptic part."""
    return slash_elliptic(slash_modular(phi, gamma, weight, m, chi), x, m)


def check_cuspidal(series: JacobiSeries, m=None):
    """(is_cuspidal, witness): true iff every retained coefficient has
    positive discriminant 4 alpha - rho^2 / m; the witness is the minimal
    discriminant on the support (None for the zero series)."""
    mm = Fraction(series.m if m is None else m)
    if mm <= 0:
        raise ValueError("positive index required")
    witness = None
    for alpha, rho, _ in series.terms():
        disc = 4 * alpha - rho * rho / mm
        if witness is None or disc < witness:
            witness = disc
    if witness is None:
        return True, None
    return witness > 0, witness


@dataclass
class JacobiForm:
    """A truncated Jacobi form with its transformation data."""
    series: JacobiSeries
    weight: Fraction
    m: int
    multiplier: MultiplierSystem
    cuspidal: bool

    def __call__(self, tau, z):
        return self.series(tau, z)

    @property
    def kappa_infinity(self) -> Fraction:
        """kappa with chi(T) = e^{2 pi i kappa}, matching the q-support."""
        e = self.multiplier.exponent(GroupElement.T())
        if e is None:
            raise ValueError("multiplier has no exact T-phase")
        return e

    def modular_residual(self, gamma: GroupElement, samples) -> float:
        """Max |(phi|gamma) - phi| over (tau, z) samples, normalized."""
        slashed = slash_modular(self.series, gamma, self.weight, self.m,
                                self.multiplier)
        worst = 0.0
        for tau, z in samples:
            lhs = slashed(tau, z)
            rhs = self.series(tau, z)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-12))
        return worst

    def elliptic_residual(self, x: LatticeElement) -> float:
        """Coefficient-level residual of (phi|X) = phi, compared on the
        common certified exponent range (exact reindexing on both sides)."""
        moved = slash_elliptic(self.series, x)
        hi = min(self.series.truncation, moved.truncation)
        worst = 0.0
        for alpha, rho, c in self.series.terms():
            if alpha <= hi:
                worst = max(worst, abs(moved.coeff(alpha, rho) - c))
        for alpha, rho, c in moved.terms():
            if alpha <= hi:
                worst = max(worst, abs(self.series.coeff(alpha, rho) - c))
        return worst


def theta_block_a(truncation) -> JacobiSeries:
    """The odd theta block A(tau, z) = sum_n (-1)^n q^((2n+1)^2/8) zeta^(n + 1/2),
    a weight-1/2, index-1/2 building block."""
    truncation = Fraction(truncation)
    terms = []
    n = 0
    while True:
        grew = False
        for nn in (n, -n - 1) if n >= 0 else ():
            e = Fraction((2 * nn + 1) ** 2, 8)
            if e <= truncation:
                terms.append((e, Fraction(2 * nn + 1, 2), (-1.0) ** (nn % 2)))
                grew = True
        if not grew:
            break
        n += 1
    return JacobiSeries.from_term_list(terms, truncation, Fraction(1, 2))


def build_testform(truncation=40) -> JacobiForm:
    """The desk-scale Jacobi cusp form eta^7 A^2 of weight 9/2, index 1,
    multiplier eta^13; leading term q^(13/24) (zeta - 2 + zeta^{-1}).

    Cuspidal by the discriminant bound: 4 alpha - rho^2 >= 7/6 on the
    support of the leading band and grows from there.
    """
    truncation = Fraction(truncation)
    a = theta_block_a(truncation)
    a2 = a * a
    eta7 = eta_series(7, truncation)
    series = a2 * JacobiSeries.from_fourier(eta7)
    cusp, _ = check_cuspidal(series, 1)
    return JacobiForm(series=series, weight=Fraction(9, 2), m=1,
                      multiplier=MultiplierSystem.eta_power(13),
                      cuspidal=cusp)
