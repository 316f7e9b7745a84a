"""Vector-valued Eichler integrals and their period cocycles.

For a cusp form g of weight k+2 (component series with strictly positive
exponents) the Eichler integral is

    G(tau) = conj( integral_{i oo}^{tau} g(w) (w - conj(tau))^k dw ),

computed term by term: a coefficient a(alpha) e^(2 pi i alpha w)
contributes

    -i^(k+1) a(alpha) e^(2 pi i alpha tau) e^(4 pi alpha v)
        (2 pi alpha)^(-(k+1)) Gamma(k+1, 4 pi alpha v),

before the outer conjugation (v = Im tau).  The scaled incomplete gamma
e^x Gamma(s, x) keeps the product stable for large alpha v.

The family g_gamma = (G | gamma) - G is a cocycle for the slash of
weight -k with the *conjugates* of the form's multiplier and
representation; `PeriodCocycle` carries that data.  Cusp-to-cusp
quadrature (path split at gamma^{-1}(i), lower piece mapped to a
neighborhood of i oo by modularity) provides the independent route.
"""

from __future__ import annotations

import cmath
import math
import sys
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .modgroup import GroupElement, MultiplierSystem, principal_power
from .thetadec import VVForm

_EPS = sys.float_info.epsilon
_TINY = sys.float_info.min / _EPS


def _lower_gamma_series(s: float, x: float, accuracy: float, max_iter: int = 500):
    # P-series of Numerical Recipes; returns gamma_lower(s,x) * e^x * x^{-s}
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(max_iter):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * accuracy:
            return total
    raise ArithmeticError("incomplete gamma series did not converge")


def _upper_gamma_cf(s: float, x: float, accuracy: float, max_iter: int = 500):
    # Lentz continued fraction; returns Gamma(s,x) * e^x * x^{-s}
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < accuracy:
            return h
    raise ArithmeticError("incomplete gamma continued fraction did not converge")


def incomplete_gamma_upper(s: float, x: float, scaled: bool = False,
                           accuracy: float = 1e-15) -> float:
    """Upper incomplete gamma Gamma(s, x) for s > 0, x > 0.

    Series representation below the crossover x < s + 1, Lentz continued
    fraction above; relative accuracy ~1e-13 on the tested range.  With
    scaled=True returns e^x Gamma(s, x), finite for arbitrarily large x.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        if scaled:
            return math.gamma(s)
        return math.gamma(s)
    if x < s + 1.0:
        p = _lower_gamma_series(s, x, accuracy)  # gamma_l(s,x) e^x x^-s
        full = math.gamma(s)
        val = full - p * math.exp(-x + s * math.log(x))
        return val * math.exp(x) if scaled else val
    h = _upper_gamma_cf(s, x, accuracy)  # Gamma(s,x) e^x x^-s
    if scaled:
        return h * math.exp(s * math.log(x))
    return h * math.exp(-x + s * math.log(x))


class PElement:
    """A vector-valued function on the upper half-plane, dimension 2m,
    with an optional fitted growth certificate (K, rho, sigma) for
    |p_j(tau)| < K(|tau|^rho + v^-sigma)."""

    def __init__(self, fn, dim: int, description: str = "",
                 growth_params=None, zero: bool = False):
        self._fn = fn
        self.dim = dim
        self.description = description
        self.growth_params = growth_params  # None means "unchecked"
        self._zero = zero

    @classmethod
    def zero_element(cls, dim: int) -> "PElement":
        return cls(lambda tau: np.zeros(dim, dtype=complex), dim,
                   description="0", growth_params=(0.0, 1.0, 1.0), zero=True)

    def is_zero(self) -> bool:
        return self._zero

    def __call__(self, tau: complex) -> np.ndarray:
        return np.asarray(self._fn(tau), dtype=complex)

    def __add__(self, other: "PElement") -> "PElement":
        if self._zero:
            return other
        if other._zero:
            return self
        return PElement(lambda tau: self(tau) + other(tau), self.dim,
                        f"({self.description})+({other.description})")

    def __sub__(self, other: "PElement") -> "PElement":
        return self + other.scale(-1)

    def scale(self, s: complex) -> "PElement":
        if self._zero or s == 0:
            return PElement.zero_element(self.dim)
        return PElement(lambda tau: s * self(tau), self.dim,
                        f"{s}*({self.description})")

    def __repr__(self):
        g = self.growth_params or "unchecked"
        return f"PElement({self.description or '?'}, dim={self.dim}, growth={g})"


def slash_p(p: PElement, gamma: GroupElement, weight, chi: MultiplierSystem,
            rep) -> PElement:
    """(p |_{w, chi, rho} gamma)(tau) = chi(g)^{-1} (c tau+d)^{-w}
    rho^{-1}(g) p(g tau); for period work w = -k so the power is ^{+k}."""
    if p.is_zero():
        return PElement.zero_element(p.dim)
    w = float(weight)
    chi_val = complex(chi(gamma))
    rho_inv = rep.matrix_inverse(gamma)

    def out(tau):
        return (principal_power(gamma.j_factor(tau), -w) / chi_val) * \
            (rho_inv @ p(gamma.moebius(tau)))

    return PElement(out, p.dim, f"({p.description})|{gamma}")


def eichler_integral(F: VVForm) -> PElement:
    """Term-wise Eichler integral of a vector-valued cusp form.

    Refuses non-cuspidal input: a non-positive exponent makes the
    integral from i oo divergent.
    """
    if not F.is_cuspidal():
        bad = [i for i, f in enumerate(F.components)
               if not f.is_zero() and f.valuation() <= 0]
        raise ValueError(f"non-cuspidal components {bad}: integral diverges")
    k = float(F.weight) - 2.0
    ikp1 = cmath.exp(1j * cmath.pi * (k + 1) / 2)  # principal i^(k+1)
    comp_terms = []
    for f in F.components:
        comp_terms.append([(float(e), f.coeff(e)) for e in f.exponents()])

    def fn(tau):
        v = tau.imag
        out = np.zeros(len(comp_terms), dtype=complex)
        for j, terms in enumerate(comp_terms):
            acc = 0j
            for alpha, a in terms:
                x = 4 * math.pi * alpha * v
                scaled = incomplete_gamma_upper(k + 1, x, scaled=True)
                damped = math.exp(-2 * math.pi * alpha * v) * scaled
                acc += (-ikp1 * a * cmath.exp(2j * math.pi * alpha * tau.real)
                        * damped * (2 * math.pi * alpha) ** (-(k + 1)))
            out[j] = acc.conjugate()
        return out

    return PElement(fn, F.dim, description="eichler integral")


def eichler_integral_quadrature(F: VVForm, tau: complex, rtol=1e-11,
                                upper: float = 60.0) -> np.ndarray:
    """Oracle: direct adaptive quadrature of conj(int_{i oo}^tau
    g(w)(w - conj(tau))^k dw) along the vertical ray above tau."""
    k = float(F.weight) - 2.0
    v = tau.imag
    ikp1 = cmath.exp(1j * cmath.pi * (k + 1) / 2)

    out = np.zeros(F.dim, dtype=complex)
    for j, f in enumerate(F.components):
        def integrand(t, part):
            val = f(tau + 1j * t) * (2 * v + t) ** k
            return val.real if part == 0 else val.imag

        re = quad(integrand, 0.0, upper, args=(0,), epsabs=1e-13,
                  epsrel=rtol, limit=400)[0]
        im = quad(integrand, 0.0, upper, args=(1,), epsabs=1e-13,
                  epsrel=rtol, limit=400)[0]
        out[j] = (-ikp1 * (re + 1j * im)).conjugate()
    return out


def period_integral_quadrature(F: VVForm, gamma: GroupElement, tau: complex,
                               rtol=1e-11, upper: float = 60.0) -> np.ndarray:
    """Oracle: conj(int_{gamma^{-1}(i oo)}^{i oo} g(w)(w - conj(tau))^k dw)
    by cusp-to-cusp quadrature, integer k only.

    The path is split at w0 = gamma^{-1}(i); the piece from the cusp
    -d/c to w0 is mapped by w = gamma^{-1} w' onto the vertical ray from
    i to i oo, where the form is evaluated through its modularity.
    """
    k_real = float(F.weight) - 2.0
    k = int(round(k_real))
    if abs(k - k_real) > 1e-12:
        raise ValueError("cusp-to-cusp quadrature requires integer k")
    if gamma.c == 0:
        return np.zeros(F.dim, dtype=complex)
    delta = gamma.inverse()
    w0 = delta.moebius(1j)
    taubar = tau.conjugate()

    # piece 2: from w0 straight up to i oo
    def upper_piece():
        out = np.zeros(F.dim, dtype=complex)
        for j, f in enumerate(F.components):
            def integrand(t, part):
                w = w0 + 1j * t
                val = f(w) * (w - taubar) ** k * 1j
                return val.real if part == 0 else val.imag
            re = quad(integrand, 0.0, upper, args=(0,), epsabs=1e-13,
                      epsrel=rtol, limit=400)[0]
            im = quad(integrand, 0.0, upper, args=(1,), epsabs=1e-13,
                      epsrel=rtol, limit=400)[0]
            out[j] = re + 1j * im
        return out

    # piece 1: from -d/c to w0; substitute w = delta(w'), w' = i(1+t)
    chi_d = complex(F.multiplier(delta))
    rho_d = F.rep.matrix(delta)
    cd, dd = delta.c, delta.d

    def lower_piece():
        def integrand_vec(t):
            wp = 1j * (1 + t)
            jf = cd * wp + dd
            pref = chi_d * jf ** k * (delta.moebius(wp) - taubar) ** k * 1j
            return pref * (rho_d @ F(wp))

        out = np.zeros(F.dim, dtype=complex)
        for j in range(F.dim):
            def integrand(t, part):
                val = integrand_vec(t)[j]
                return val.real if part == 0 else val.imag
            re = quad(integrand, 0.0, upper, args=(0,), epsabs=1e-13,
                      epsrel=rtol, limit=400)[0]
            im = quad(integrand, 0.0, upper, args=(1,), epsabs=1e-13,
                      epsrel=rtol, limit=400)[0]
            out[j] = -(re + 1j * im)  # orientation: w' runs i oo -> i
        return out

    total = upper_piece() + lower_piece()
    return total.conjugate()


class PeriodCocycle:
    """gamma -> (G | gamma) - G for the Eichler integral G of a
    vector-valued cusp form F.

    The slash data is the conjugate of F's: weight -k, multiplier
    conj(chi), representation conj(rho).  Translations gamma = +-T^n
    give the zero element exactly (the base point i oo is fixed).
    """

    def __init__(self, F: VVForm):
        from .weilrep import ConjugateRep
        self.form = F
        self.k = float(F.weight) - 2.0
        self.G = eichler_integral(F)
        self.chi = F.multiplier.conjugate()
        self.rep = (F.rep.base if isinstance(F.rep, ConjugateRep)
                    else ConjugateRep(F.rep))
        self.weight = -self.k
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.form.dim

    def __call__(self, gamma: GroupElement) -> PElement:
        key = gamma.entries()
        got = self._cache.get(key)
        if got is None:
            if gamma.c == 0:
                got = PElement.zero_element(self.dim)
            else:
                got = slash_p(self.G, gamma, self.weight, self.chi, self.rep) - self.G
                got.description = f"g_[{gamma}]"
            self._cache[key] = got
        return got

    def quadrature_value(self, gamma: GroupElement, tau: complex, **kw) -> np.ndarray:
        return period_integral_quadrature(self.form, gamma, tau, **kw)

    def cocycle_residual(self, pairs, taus) -> float:
        """Max residual of g_{g1 g2} = (g_{g1} | g2) + g_{g2}."""
        worst = 0.0
        for g1, g2 in pairs:
            lhs = self(g1 * g2)
            rhs = slash_p(self(g1), g2, self.weight, self.chi, self.rep) + self(g2)
            for tau in taus:
                a, b = lhs(tau), rhs(tau)
                scale = max(float(np.max(np.abs(a))), 1.0)
                worst = max(worst, float(np.max(np.abs(a - b))) / scale)
        return worst


def coboundary_residual(cocycle, p: PElement, gammas, taus,
                        weight, chi, rep) -> float:
    """max over gammas, taus of |g_gamma - ((p|gamma) - p)|; zero means
    the cocycle class is numerically trivialized by the witness p."""
    worst = 0.0
    for g in gammas:
        g_val = cocycle(g)
        diff = slash_p(p, g, weight, chi, rep) - p
        for tau in taus:
            worst = max(worst, float(np.max(np.abs(g_val(tau) - diff(tau)))))
    return worst


def cauchy_riemann_residual(p: PElement, taus, h: float = 1e-5) -> float:
    """|d p / d conj(tau)| estimated by central differences, normalized;
    small values certify holomorphy on the sample grid."""
    worst = 0.0
    for tau in taus:
        fu = (p(tau + h) - p(tau - h)) / (2 * h)
        fv = (p(tau + 1j * h) - p(tau - 1j * h)) / (2 * h)
        dbar = 0.5 * (fu + 1j * fv)
        scale = max(float(np.max(np.abs(fu))), float(np.max(np.abs(fv))), 1e-9)
        worst = max(worst, float(np.max(np.abs(dbar))) / scale)
    return worst


def fit_growth(p: PElement, grid=None, caps=(1e8, 12.0, 12.0)):
    """Fit constants (K, rho, sigma) with |p_j(tau)| < K(|tau|^rho + v^-sigma)
    on the grid; None if no fit within the caps.  Grid-fitted, not proved."""
    if grid is None:
        grid = [complex(u, v)
                for u in np.linspace(-5, 5, 9)
                for v in np.geomspace(0.05, 10, 12)]
    mags = np.array([float(np.max(np.abs(p(tau)))) for tau in grid])
    kcap, rcap, scap = caps
    best = None
    best_rank = None
    for rho in (0.5, 1.0, 2.0, 4.0, 8.0, rcap):
        for sigma in (0.25, 0.5, 1.0, 2.0, 4.0, scap):
            bound = np.array([abs(t) ** rho + t.imag ** -sigma for t in grid])
            K = float(np.max(mags / bound)) * 1.0000001
            if K > kcap:
                continue
            # prefer the smallest growth class, then the smallest constant
            rank = (max(rho, sigma), rho + sigma, K)
            if best is None or rank < best_rank:
                best, best_rank = (K, rho, sigma), rank
    return best
