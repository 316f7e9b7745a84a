"""Truncated Fourier series with exact rational exponents.

One-variable series live on an exponent lattice (n + kappa)/lam with
kappa in [0,1) and lam a positive integer; two-variable series add a
second exponent r/zeta_den for the elliptic variable.  Exponents are
exact ``fractions.Fraction`` values throughout; only coefficients are
floating complex.  Truncation orders are carried as data and propagated
pessimistically through products, so every evaluation can report an
honest tail estimate.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple

import numpy as np

# Exponent denominators past this point indicate runaway lattice merges,
# not legitimate forms; fail loudly instead of grinding on.
_LATTICE_CAP = 10**9

DEFAULT_IM_FLOOR = 0.05


class EvalResult(NamedTuple):
    value: complex
    tail: float


def _window_tail(weighted_exponents, truncation, valuation,
                 spacing, decay_rate) -> float:
    """Geometric tail estimate: the damped mass of the last retained
    exponent window, continued with the window's own decay ratio.  An
    estimate (factor-2 padded), not a proof."""
    width = max(5 * spacing, 0.2 * max(truncation - valuation, spacing))
    lo = truncation - width
    window = 0.0
    for e, mag in weighted_exponents:
        if e > lo:
            window += mag * math.exp(-2 * math.pi * e * decay_rate)
    rho = math.exp(-2 * math.pi * decay_rate * width)
    if rho >= 1:
        return math.inf
    return 2.0 * window * rho / (1 - rho)


def e2pi(x) -> complex:
    """e^(2*pi*i*x), reducing exact rationals mod 1 before rounding."""
    if isinstance(x, Fraction):
        x = x - math.floor(x)
    if isinstance(x, complex):
        return cmath.exp(2j * cmath.pi * x)
    return cmath.exp(2j * cmath.pi * float(x))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    return Fraction(x)


def _check_lattice(lam: int) -> None:
    if lam <= 0:
        raise ValueError("lattice denominator must be positive")
    if lam > _LATTICE_CAP:
        raise OverflowError(f"exponent lattice denominator {lam} exceeds cap")


class FourierSeries:
    """q-expansion sum_n c(n) q^((n+kappa)/lam), truncated.

    The coefficient dict is keyed by the integer n; every retained key
    satisfies (n + kappa)/lam <= truncation.
    """

    __slots__ = ("kappa", "lam", "coeffs", "truncation")

    def __init__(self, kappa, lam: int, coeffs: dict, truncation):
        kappa = _as_fraction(kappa)
        if not (0 <= kappa < 1):
            raise ValueError("kappa must lie in [0, 1)")
        _check_lattice(lam)
        truncation = _as_fraction(truncation)
        self.kappa = kappa
        self.lam = int(lam)
        self.truncation = truncation
        clean = {}
        for n, c in coeffs.items():
            n = int(n)
            if (n + kappa) / lam <= truncation:
                c = complex(c)
                if c != 0:
                    clean[n] = c
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, truncation, kappa=0, lam: int = 1) -> "FourierSeries":
        return cls(kappa, lam, {}, truncation)

    @classmethod
    def one(cls, truncation) -> "FourierSeries":
        return cls(0, 1, {0: 1.0}, truncation)

    @classmethod
    def from_exponents(cls, terms: dict, truncation) -> "FourierSeries":
        """Build from a map {Fraction exponent: coefficient}.

        The lattice step 1/lam is the gcd of exponent differences, so
        a single-coset support keeps its natural kappa.
        """
        exps = sorted(_as_fraction(e) for e in terms)
        if not exps:
            return cls.zero(truncation)
        e0 = exps[0]
        lam = 1
        for e in exps[1:]:
            lam = lcm(lam, (e - e0).denominator)
        _check_lattice(lam)
        kappa = (e0 * lam) % 1
        coeffs = {}
        for e, c in terms.items():
            e = _as_fraction(e)
            n = e * lam - kappa
            assert n.denominator == 1
            coeffs[int(n)] = coeffs.get(int(n), 0) + complex(c)
        return cls(kappa, lam, coeffs, truncation)

    # -- basic queries -------------------------------------------------

    def exponent(self, n: int) -> Fraction:
        return (Fraction(n) + self.kappa) / self.lam

    def exponents(self) -> list:
        return sorted(self.exponent(n) for n in self.coeffs)

    def coeff(self, e) -> complex:
        """Coefficient at exact exponent e (zero if absent)."""
        e = _as_fraction(e)
        n = e * self.lam - self.kappa
        if n.denominator != 1:
            return 0j
        return self.coeffs.get(int(n), 0j)

    def valuation(self) -> Fraction:
        """Smallest retained exponent; the truncation order when empty."""
        if not self.coeffs:
            return self.truncation
        return self.exponent(min(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return (f"FourierSeries(kappa={self.kappa}, lam={self.lam}, "
                f"{len(self.coeffs)} terms, trunc={self.truncation})")

    # -- arithmetic ----------------------------------------------------

    def _as_exponent_dict(self) -> dict:
        return {self.exponent(n): c for n, c in self.coeffs.items()}

    def __neg__(self) -> "FourierSeries":
        return FourierSeries(self.kappa, self.lam,
                             {n: -c for n, c in self.coeffs.items()},
                             self.truncation)

    def scale(self, s: complex) -> "FourierSeries":
        return FourierSeries(self.kappa, self.lam,
                             {n: s * c for n, c in self.coeffs.items()},
                             self.truncation)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        trunc = min(self.truncation, other.truncation)
        merged = self._as_exponent_dict()
        for e, c in other._as_exponent_dict().items():
            merged[e] = merged.get(e, 0j) + c
        out = FourierSeries.from_exponents(merged, trunc)
        return out

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + (-other)

    def __mul__(self, other: "FourierSeries") -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            if isinstance(other, (int, float, complex)):
                return self.scale(other)
            return NotImplemented
        trunc = min(self.truncation + other.valuation(),
                    other.truncation + self.valuation())
        lam = lcm(self.lam, other.lam)
        _check_lattice(lam)
        offset = self.kappa / self.lam + other.kappa / other.lam
        kappa = (offset * lam) % 1
        shift = offset * lam - kappa
        assert shift.denominator == 1
        coeffs: dict = {}
        a_items = sorted(self.coeffs.items())
        b_items = sorted(other.coeffs.items())
        sa = lam // self.lam
        sb = lam // other.lam
        for na, ca in a_items:
            base = na * sa + int(shift)
            ea = (na + self.kappa) / self.lam
            if ea + other.valuation() > trunc:
                break
            for nb, cb in b_items:
                eb = (nb + other.kappa) / other.lam
                if ea + eb > trunc:
                    break
                k = base + nb * sb
                coeffs[k] = coeffs.get(k, 0j) + ca * cb
        return FourierSeries(kappa, lam, coeffs, trunc)

    __rmul__ = __mul__

    def truncate(self, order) -> "FourierSeries":
        order = _as_fraction(order)
        if order > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return FourierSeries(self.kappa, self.lam, self.coeffs, order)

    def prune(self, floor: float) -> "FourierSeries":
        """Drop coefficients below `floor` in magnitude (explicit opt-in);
        the truncation order is kept."""
        kept = {n: c for n, c in self.coeffs.items() if abs(c) >= floor}
        return FourierSeries(self.kappa, self.lam, kept, self.truncation)

    def conjugate_coeffs(self) -> "FourierSeries":
        """Series with complex-conjugated coefficients (same exponents)."""
        return FourierSeries(self.kappa, self.lam,
                             {n: c.conjugate() for n, c in self.coeffs.items()},
                             self.truncation)

    def shift_exponents(self, delta) -> "FourierSeries":
        """Multiply by q^delta (exact exponent shift)."""
        delta = _as_fraction(delta)
        terms = {e + delta: c for e, c in self._as_exponent_dict().items()}
        return FourierSeries.from_exponents(terms, self.truncation + delta)

    # -- evaluation ----------------------------------------------------

    def eval_with_tail(self, tau: complex, im_floor: float = DEFAULT_IM_FLOOR) -> EvalResult:
        v = tau.imag
        if v < im_floor:
            raise ValueError(
                f"Im tau = {v:.4g} below evaluation floor {im_floor}; "
                "tail bound would be meaningless")
        total = 0j
        if not self.coeffs:
            return EvalResult(0j, 0.0)
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            e = float((n + self.kappa) / self.lam)
            total += c * cmath.exp(2j * cmath.pi * e * tau)
        tail = _window_tail(
            ((float((n + self.kappa) / self.lam), abs(c))
             for n, c in self.coeffs.items()),
            float(self.truncation), float(self.valuation()),
            1.0 / self.lam, v)
        return EvalResult(total, tail)

    def __call__(self, tau: complex, im_floor: float = DEFAULT_IM_FLOOR) -> complex:
        return self.eval_with_tail(tau, im_floor).value


class JacobiSeries:
    """Two-variable expansion sum c(n,r) q^((n+kappa)/lam) zeta^(r/zeta_den).

    `m` is the index of the form the series represents (a Fraction for
    intermediate factors such as half-index theta blocks; products add
    indices).  Finitely many r occur per n by construction.
    """

    __slots__ = ("kappa", "lam", "zeta_den", "m", "coeffs", "truncation")

    def __init__(self, kappa, lam: int, zeta_den: int, m, coeffs: dict, truncation):
        kappa = _as_fraction(kappa)
        if not (0 <= kappa < 1):
            raise ValueError("kappa must lie in [0, 1)")
        _check_lattice(lam)
        _check_lattice(zeta_den)
        truncation = _as_fraction(truncation)
        self.kappa = kappa
        self.lam = int(lam)
        self.m = _as_fraction(m)
        self.truncation = truncation
        clean = {}
        for (n, r), c in coeffs.items():
            if (int(n) + kappa) / lam <= truncation:
                c = complex(c)
                if c != 0:
                    clean[(int(n), int(r))] = c
        # canonicalize the zeta lattice: divide out the common factor of
        # the r keys so equal series share a representation
        g = 0
        for _, r in clean:
            g = gcd(g, r)
        if g > 1 and zeta_den % 1 == 0:
            red = gcd(g, int(zeta_den))
            if red > 1:
                clean = {(n, r // red): c for (n, r), c in clean.items()}
                zeta_den = int(zeta_den) // red
        self.zeta_den = int(zeta_den)
        self.coeffs = clean

    @classmethod
    def zero(cls, truncation, m=0) -> "JacobiSeries":
        return cls(0, 1, 1, m, {}, truncation)

    @classmethod
    def from_fourier(cls, f: FourierSeries, m=0) -> "JacobiSeries":
        return cls(f.kappa, f.lam, 1, m,
                   {(n, 0): c for n, c in f.coeffs.items()}, f.truncation)

    @classmethod
    def from_term_list(cls, terms: Iterable, truncation, m=0) -> "JacobiSeries":
        """terms: iterable of (q_exponent, zeta_exponent, coefficient)."""
        terms = [(_as_fraction(a), _as_fraction(b), complex(c)) for a, b, c in terms]
        if not terms:
            return cls.zero(truncation, m)
        e0 = min(a for a, _, _ in terms)
        lam = 1
        zden = 1
        for a, b, _ in terms:
            lam = lcm(lam, (a - e0).denominator)
            zden = lcm(zden, b.denominator)
        _check_lattice(lam)
        _check_lattice(zden)
        kappa = (e0 * lam) % 1
        coeffs: dict = {}
        for a, b, c in terms:
            n = a * lam - kappa
            r = b * zden
            assert n.denominator == 1 and r.denominator == 1
            key = (int(n), int(r))
            coeffs[key] = coeffs.get(key, 0j) + c
        return cls(kappa, lam, zden, m, coeffs, truncation)

    # -- queries ---------------------------------------------------------

    def q_exponent(self, n: int) -> Fraction:
        return (Fraction(n) + self.kappa) / self.lam

    def z_exponent(self, r: int) -> Fraction:
        return Fraction(r, self.zeta_den)

    def coeff(self, qe, ze) -> complex:
        qe, ze = _as_fraction(qe), _as_fraction(ze)
        n = qe * self.lam - self.kappa
        r = ze * self.zeta_den
        if n.denominator != 1 or r.denominator != 1:
            return 0j
        return self.coeffs.get((int(n), int(r)), 0j)

    def valuation(self) -> Fraction:
        if not self.coeffs:
            return self.truncation
        return min(self.q_exponent(n) for n, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self):
        """Iterate (q_exponent, zeta_exponent, coefficient)."""
        for (n, r), c in sorted(self.coeffs.items()):
            yield self.q_exponent(n), self.z_exponent(r), c

    def __repr__(self) -> str:
        return (f"JacobiSeries(m={self.m}, kappa={self.kappa}, lam={self.lam}, "
                f"zeta_den={self.zeta_den}, {len(self.coeffs)} terms, "
                f"trunc={self.truncation})")

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "JacobiSeries":
        return JacobiSeries(self.kappa, self.lam, self.zeta_den, self.m,
                            {k: -c for k, c in self.coeffs.items()},
                            self.truncation)

    def scale(self, s: complex) -> "JacobiSeries":
        return JacobiSeries(self.kappa, self.lam, self.zeta_den, self.m,
                            {k: s * c for k, c in self.coeffs.items()},
                            self.truncation)

    def __add__(self, other: "JacobiSeries") -> "JacobiSeries":
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        if self.m != other.m:
            raise ValueError("cannot add Jacobi series of different index")
        trunc = min(self.truncation, other.truncation)
        terms = [(a, b, c) for a, b, c in self.terms()]
        terms += [(a, b, c) for a, b, c in other.terms()]
        return JacobiSeries.from_term_list(terms, trunc, self.m)

    def __sub__(self, other: "JacobiSeries") -> "JacobiSeries":
        return self + (-other)

    def __mul__(self, other) -> "JacobiSeries":
        if isinstance(other, FourierSeries):
            other = JacobiSeries.from_fourier(other)
        if not isinstance(other, JacobiSeries):
            if isinstance(other, (int, float, complex)):
                return self.scale(other)
            return NotImplemented
        trunc = min(self.truncation + other.valuation(),
                    other.truncation + self.valuation())
        lam = lcm(self.lam, other.lam)
        zden = lcm(self.zeta_den, other.zeta_den)
        _check_lattice(lam)
        _check_lattice(zden)
        offset = self.kappa / self.lam + other.kappa / other.lam
        kappa = (offset * lam) % 1
        shift = int(offset * lam - kappa)
        sa, sb = lam // self.lam, lam // other.lam
        za, zb = zden // self.zeta_den, zden // other.zeta_den
        a_items = sorted(self.coeffs.items())
        b_items = sorted(other.coeffs.items())
        coeffs: dict = {}
        bval = other.valuation()
        for (na, ra), ca in a_items:
            ea = (na + self.kappa) / self.lam
            if ea + bval > trunc:
                break
            for (nb, rb), cb in b_items:
                eb = (nb + other.kappa) / other.lam
                if ea + eb > trunc:
                    break
                key = (na * sa + nb * sb + shift, ra * za + rb * zb)
                coeffs[key] = coeffs.get(key, 0j) + ca * cb
        return JacobiSeries(kappa, lam, zden, self.m + other.m, coeffs, trunc)

    __rmul__ = __mul__

    def truncate(self, order) -> "JacobiSeries":
        order = _as_fraction(order)
        if order > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return JacobiSeries(self.kappa, self.lam, self.zeta_den, self.m,
                            self.coeffs, order)

    # -- evaluation -------------------------------------------------------

    def certified_y_bound(self, v: float) -> float:
        """Largest |Im z| for which the tail at the truncation order is
        dominated by the q-decay (index growth e^{2 pi m y^2 / v})."""
        if self.m <= 0:
            return math.inf
        return 0.25 * v * math.sqrt(float(self.truncation) / float(self.m))

    def eval_with_tail(self, tau: complex, z: complex,
                       im_floor: float = DEFAULT_IM_FLOOR) -> EvalResult:
        v = tau.imag
        if v < im_floor:
            raise ValueError(
                f"Im tau = {v:.4g} below evaluation floor {im_floor}")
        y = z.imag
        ybound = self.certified_y_bound(v)
        if abs(y) > ybound:
            raise ValueError(
                f"|Im z| = {abs(y):.4g} outside certified region "
                f"(bound {ybound:.4g} at truncation {self.truncation})")
        if not self.coeffs:
            return EvalResult(0j, 0.0)
        total = 0j
        weighted = []
        for (n, r), c in self.coeffs.items():
            qe = float((n + self.kappa) / self.lam)
            ze = r / self.zeta_den
            term = c * cmath.exp(2j * cmath.pi * (qe * tau + ze * z))
            total += term
            weighted.append((qe, abs(c) * math.exp(2 * math.pi * abs(ze * y))))
        # r grows like 2 sqrt(m alpha) on Jacobi-form support, so the
        # effective decay rate per unit q-exponent near the truncation is
        # v - |y| sqrt(m/T); inside the certified region this is >= 3v/4
        growth = 0.0
        if self.m > 0 and self.truncation > 0:
            growth = abs(y) * math.sqrt(float(self.m) / float(self.truncation))
        rate = v - growth
        if rate <= 0:
            return EvalResult(total, math.inf)
        tail = _window_tail(weighted, float(self.truncation),
                            float(self.valuation()), 1.0 / self.lam, rate)
        return EvalResult(total, tail)

    def __call__(self, tau: complex, z: complex,
                 im_floor: float = DEFAULT_IM_FLOOR) -> complex:
        return self.eval_with_tail(tau, z, im_floor).value


# -- named series -------------------------------------------------------


def euler_product_coeffs(order: int) -> np.ndarray:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^order, via the
    pentagonal number theorem (exact integers)."""
    out = np.zeros(order + 1)
    j = 0
    while True:
        for jj in (j, -j) if j else (0,):
            g = jj * (3 * jj - 1) // 2
            if g <= order:
                out[g] += (-1) ** (jj % 2)
        j += 1
        if j * (3 * j - 1) // 2 > order and j * (3 * j + 1) // 2 > order:
            break
    return out


def eta_series(h: int, truncation) -> FourierSeries:
    """q-expansion of eta(tau)^h = q^(h/24) prod (1-q^n)^h.

    kappa = h/24 mod 1 is handled exactly; integer parts of h/24 shift
    the coefficient keys.
    """
    if h < 1:
        raise ValueError("power must be a positive integer")
    truncation = _as_fraction(truncation)
    if truncation < Fraction(h, 24):
        raise ValueError("truncation below the leading exponent h/24")
    order = math.floor(truncation - Fraction(h, 24))
    phi = euler_product_coeffs(order)
    acc = np.zeros(order + 1)
    acc[0] = 1.0
    base = phi
    e = h
    while e:
        if e & 1:
            acc = np.convolve(acc, base)[: order + 1]
        e >>= 1
        if e:
            base = np.convolve(base, base)[: order + 1]
    kappa = Fraction(h, 24) % 1
    shift = (Fraction(h, 24) - kappa)
    assert shift.denominator == 1
    coeffs = {n + int(shift): complex(acc[n]) for n in range(order + 1) if acc[n] != 0}
    return FourierSeries(kappa, 1, coeffs, truncation)


# -- serialization ------------------------------------------------------


def _frac_pair(x: Fraction) -> list:
    return [x.numerator, x.denominator]


def series_to_json(s) -> dict:
    """Schema: {kind, kappa, lambda, zeta_den?, truncation, coeffs:
    [[n, r?, re, im] ...]}; rationals as exact integer pairs."""
    if isinstance(s, FourierSeries):
        return {
            "kind": "fourier",
            "kappa": _frac_pair(s.kappa),
            "lambda": s.lam,
            "truncation": _frac_pair(s.truncation),
            "coeffs": [[n, c.real, c.imag] for n, c in sorted(s.coeffs.items())],
        }
    if isinstance(s, JacobiSeries):
        return {
            "kind": "jacobi",
            "kappa": _frac_pair(s.kappa),
            "lambda": s.lam,
            "zeta_den": s.zeta_den,
            "m": _frac_pair(s.m),
            "truncation": _frac_pair(s.truncation),
            "coeffs": [[n, r, c.real, c.imag]
                       for (n, r), c in sorted(s.coeffs.items())],
        }
    raise TypeError(f"not a series: {type(s)!r}")


def series_from_json(doc: dict):
    kappa = Fraction(*doc["kappa"])
    trunc = Fraction(*doc["truncation"])
    if doc["kind"] == "fourier":
        coeffs = {int(n): complex(re, im) for n, re, im in doc["coeffs"]}
        return FourierSeries(kappa, doc["lambda"], coeffs, trunc)
    if doc["kind"] == "jacobi":
        coeffs = {(int(n), int(r)): complex(re, im)
                  for n, r, re, im in doc["coeffs"]}
        return JacobiSeries(kappa, doc["lambda"], doc["zeta_den"],
                            Fraction(*doc["m"]), coeffs, trunc)
    raise ValueError(f"unknown series kind {doc['kind']!r}")
