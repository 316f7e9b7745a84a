"""Coset enumeration over lower rows, the classical Eisenstein series,
vector-valued generalized Poincare series, and the Eichler-integral
construction F = -Phi*/psi from a parabolic cocycle.

The coset set L holds one element per coprime lower row (c, d) with
|c|, |d| <= bound, normalized so that Re(V(i v0)) lies in [-1/2, 1/2).
Terms of all the series here depend only on the row, so the choice of
representative is irrelevant; the normalization is kept for
reproducibility.  Summation order is sorted by (|c|, |d|, c, d).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .modgroup import GroupElement, MultiplierSystem, principal_power
from .periods import PElement, fit_growth, slash_p


def coprime_rows(bound: int) -> np.ndarray:
    """All coprime (c, d) with |c|, |d| <= bound, both signs, excluding
    (0, 0); sorted by (|c|, |d|, c, d)."""
    c, d = np.meshgrid(np.arange(-bound, bound + 1),
                       np.arange(-bound, bound + 1), indexing="ij")
    c, d = c.ravel(), d.ravel()
    keep = np.gcd(c, d) == 1
    c, d = c[keep], d[keep]
    order = np.lexsort((d, c, np.abs(d), np.abs(c)))
    return np.stack([c[order], d[order]], axis=1)


class CosetSet:
    """One group element per lower row, found by breadth-first right
    multiplication by T, T^-1, S (the Euclidean moves on rows), with
    representation matrices carried incrementally when requested."""

    def __init__(self, bound: int, elements, rep_matrices=None):
        self.bound = bound
        self.elements = elements
        self.rep_matrices = rep_matrices

    @classmethod
    def from_bound(cls, bound: int, rep=None, v0: float = 2.0) -> "CosetSet":
        S = GroupElement.S()
        T = GroupElement.T(1)
        Tinv = GroupElement.T(-1)
        gen_mats = None
        if rep is not None:
            gen_mats = {"T": rep.matrix(T), "T^-1": rep.matrix(Tinv),
                        "S": rep.matrix(S)}
        start = GroupElement.identity()
        seen = {(0, 1): (start, np.eye(rep.dim, dtype=complex) if rep else None)}
        frontier = [(0, 1)]
        while frontier:
            new = []
            for row in frontier:
                V, mat = seen[row]
                for name, step in (("T", T), ("T^-1", Tinv), ("S", S)):
                    W = V * step
                    r = (W.c, W.d)
                    if abs(r[0]) > bound or abs(r[1]) > bound or r in seen:
                        continue
                    wmat = mat @ gen_mats[name] if rep is not None else None
                    seen[r] = (W, wmat)
                    new.append(r)
            frontier = new
        elements = []
        mats = {} if rep is not None else None
        for row in sorted(seen, key=lambda r: (abs(r[0]), abs(r[1]), r[0], r[1])):
            V, mat = seen[row]
            # translate so the representative maps i v0 near the imaginary axis
            shift = -math.floor(V.moebius(1j * v0).real + 0.5)
            if shift:
                V = GroupElement.T(shift) * V
                if rep is not None:
                    mat = rep.matrix(GroupElement.T(shift)) @ mat
            elements.append(V)
            if rep is not None:
                mats[(V.c, V.d)] = mat
        return cls(bound, elements, mats)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def eisenstein_psi(tau: complex, r: int, bound: int):
    """psi(tau; r) = sum over rows (c tau + d)^{-r} for even r > 2;
    returns (value, tail_estimate) with the tail O(bound^{2-r})."""
    if r <= 2 or r % 2:
        raise ValueError("psi requires an even exponent r > 2")
    rows = coprime_rows(bound)
    j = rows[:, 0] * tau + rows[:, 1]
    value = complex(np.sum(j.astype(complex) ** (-r)))
    v = tau.imag
    # |c tau + d|^2 >= v^2 (c^2 + d^2) / (1 + 4 |tau|^2); sum over the
    # discarded rows is bounded by a 2d integral of radius^{-r}
    lo = (v * v / (1 + 4 * abs(tau) ** 2)) ** (r / 2)
    tail = 2 * math.pi * bound ** (2 - r) / ((r - 2) * lo)
    return value, tail


@dataclass
class CocycleInput:
    """A parabolic cocycle given on the generators, with g_T = 0 (the
    base-point normalization the Poincare series requires) and g_S an
    explicit PElement; values on arbitrary V are produced by folding the
    cocycle relation along V's S,T word."""
    g_S: PElement
    k: float                      # the slash weight is -k
    chi: MultiplierSystem
    rep: object
    growth: tuple = None

    def __post_init__(self):
        if self.growth is None:
            fitted = fit_growth(self.g_S)
            self.growth = fitted if fitted else (math.inf, 12.0, 12.0)

    @property
    def dim(self):
        return self.g_S.dim

    @property
    def convergence_exponent(self) -> float:
        _, rho, sigma = self.growth
        return max(rho / 2, sigma + self.k / 2)

    def _fold_plan(self, V: GroupElement):
        """Cached fold structure: for each S letter of V's word, the
        suffix element with its multiplier value and inverse rep matrix
        (T letters drop out since g_T = 0)."""
        if not hasattr(self, "_plans"):
            self._plans = {}
        key = V.entries()
        plan = self._plans.get(key)
        if plan is not None:
            return plan
        letters = []
        for g, p in V.word():
            if g == "T":
                letters.append(GroupElement.T(p))
            else:
                letters.extend([GroupElement.S()] * p)
        suffix = GroupElement.identity()
        suffixes = [None] * len(letters)
        for idx in range(len(letters) - 1, -1, -1):
            suffixes[idx] = suffix
            suffix = letters[idx] * suffix
        plan = []
        for idx, letter in enumerate(letters):
            if letter.c == 0:
                continue
            delta = suffixes[idx]
            plan.append((delta, complex(self.chi(delta)),
                         self.rep.matrix_inverse(delta)))
        self._plans[key] = plan
        return plan

    def value(self, V: GroupElement, taus) -> np.ndarray:
        """g_V at each tau, shape (len(taus), dim): the sum of
        (g_S | suffix) over the S letters of V's word."""
        taus = list(taus)
        out = np.zeros((len(taus), self.dim), dtype=complex)
        for delta, chi_val, rho_inv in self._fold_plan(V):
            if delta.is_identity():
                for i, tau in enumerate(taus):
                    out[i] += self.g_S(tau)
                continue
            a, b, c, d = delta.entries()
            for i, tau in enumerate(taus):
                den = c * tau + d
                jf = principal_power(den, self.k)
                out[i] += (jf / chi_val) * \
                    (rho_inv @ self.g_S((a * tau + b) / den))
        return out

    @classmethod
    def from_coboundary(cls, p: PElement, k: float, chi, rep) -> "CocycleInput":
        """g_gamma := (p | gamma) - p for a T-invariant witness p, so
        that g_T = 0 holds on the nose."""
        pT = slash_p(p, GroupElement.T(1), -k, chi, rep)
        probe = [1j, 0.7 + 1.3j]
        worst = max(float(np.max(np.abs(pT(t) - p(t)))) for t in probe)
        if worst > 1e-10:
            raise ValueError(f"witness is not T-invariant (residual {worst:.2e})")
        g_S = slash_p(p, GroupElement.S(), -k, chi, rep) - p
        g_S.description = "(p|S)-p"
        return cls(g_S=g_S, k=k, chi=chi, rep=rep)


def generalized_poincare(cocycle: CocycleInput, r: int, taus, bound: int,
                         _coset: CosetSet | None = None) -> np.ndarray:
    """Phi(tau; r) = sum_{V in L} g_V(tau) / (c tau + d)^r for even r
    above the convergence gate r > 2e + 4 (e fitted from the cocycle's
    growth certificate); shape (len(taus), dim)."""
    if r % 2:
        raise ValueError("the generalized Poincare series needs even r")
    e = cocycle.convergence_exponent
    if r <= 2 * e + 4:
        raise ValueError(
            f"r = {r} below the convergence gate 2e+4 = {2 * e + 4:.2f} "
            f"for fitted growth exponent e = {e:.2f}")
    taus = list(taus)
    cs = _coset if _coset is not None else CosetSet.from_bound(bound)
    total = np.zeros((len(taus), cocycle.dim), dtype=complex)
    for V in cs:
        g_vals = cocycle.value(V, taus)
        for i, tau in enumerate(taus):
            total[i] += g_vals[i] * V.j_factor(tau) ** (-r)
    return total


def construct_F(cocycle: CocycleInput, r: int, bound: int,
                psi_floor: float = 1e-8):
    """F(tau) = -Phi(tau; r) / psi(tau; r): an Eichler integral with
    (F|gamma) - F = g_gamma.  Returns an evaluator over tau batches;
    sample points too near a zero of psi are flagged, not repaired."""
    coset = CosetSet.from_bound(bound)

    def evaluate(taus):
        taus = list(taus)
        phi = generalized_poincare(cocycle, r, taus, bound, _coset=coset)
        out = np.empty((len(taus), cocycle.dim), dtype=complex)
        flags = []
        for i, tau in enumerate(taus):
            psi, _ = eisenstein_psi(tau, r, bound)
            if abs(psi) < psi_floor:
                flags.append(tau)
                out[i] = np.nan
            else:
                out[i] = -phi[i] / psi
        return out, flags

    return evaluate


def construct_F_residual(cocycle: CocycleInput, r: int, bound: int,
                         gammas, taus) -> dict:
    """Residuals of (F|gamma) - F = g_gamma at the samples, per gamma;
    all required F values are computed in a single coset pass."""
    F = construct_F(cocycle, r, bound)
    taus = list(taus)
    batch = list(taus)
    offsets = {}
    for gamma in gammas:
        offsets[gamma.entries()] = len(batch)
        batch.extend(gamma.moebius(tau) for tau in taus)
    values, flags = F(batch)
    report = {}
    for gamma in gammas:
        if flags:
            report[str(gamma)] = math.nan
            continue
        off = offsets[gamma.entries()]
        worst = 0.0
        g_vals = cocycle.value(gamma, taus)
        for i, tau in enumerate(taus):
            jf = principal_power(gamma.j_factor(tau), cocycle.k)
            lhs = (jf / complex(cocycle.chi(gamma))) * \
                (cocycle.rep.matrix_inverse(gamma) @ values[off + i]) - values[i]
            worst = max(worst, float(np.max(np.abs(lhs - g_vals[i]))))
        report[str(gamma)] = worst
    return report


def km_poincare(rep, chi: MultiplierSystem, r: float, m_idx: int, j_comp: int,
                taus, bound: int, _coset: CosetSet | None = None) -> np.ndarray:
    """Knopp-Mason Poincare series

        P(tau) = 1/2 sum_{M in Gamma_oo \\ Gamma}
                 e^(2 pi i (m + kappa_j) M tau) / (chi(M) (c tau + d)^r)
                 rho^{-1}(M) e_j,

    with kappa_j read from the diagonal of chi(T) rho(T); rows are
    enumerated with representation matrices carried incrementally."""
    if r <= 2:
        raise ValueError("convergence requires r > 2")
    T = GroupElement.T(1)
    phases = complex(chi(T)) * np.diagonal(rep.matrix(T))
    kappa = float(np.angle(phases[j_comp]) / (2 * math.pi)) % 1.0
    expo = m_idx + kappa
    if expo <= 0:
        raise ValueError("m + kappa_j must be positive for decay at i oo")
    cs = _coset if _coset is not None else CosetSet.from_bound(bound, rep=rep)
    taus = list(taus)
    out = np.zeros((len(taus), rep.dim), dtype=complex)
    ej = np.zeros(rep.dim, dtype=complex)
    ej[j_comp] = 1.0
    for M in cs:
        mat = cs.rep_matrices[(M.c, M.d)]
        vec = mat.conj().T @ ej  # rho^{-1}(M) e_j
        chi_val = complex(chi(M))
        for i, tau in enumerate(taus):
            mtau = M.moebius(tau)
            out[i] += (cmath.exp(2j * math.pi * expo * mtau) /
                       (chi_val * principal_power(M.j_factor(tau), r))) * vec
    return 0.5 * out


def km_transformation_residual(rep, chi, r, m_idx, j_comp, gamma,
                               taus, bound: int) -> float:
    """Residual of (P |_{r, chi, rho} gamma) = P at the samples."""
    cs = CosetSet.from_bound(bound, rep=rep)
    taus = list(taus)
    moved = [gamma.moebius(tau) for tau in taus]
    base = km_poincare(rep, chi, r, m_idx, j_comp, taus, bound, _coset=cs)
    at_moved = km_poincare(rep, chi, r, m_idx, j_comp, moved, bound, _coset=cs)
    rho_inv = rep.matrix_inverse(gamma)
    chi_val = complex(chi(gamma))
    worst = 0.0
    for i, tau in enumerate(taus):
        lhs = (principal_power(gamma.j_factor(tau), -r) / chi_val) * \
            (rho_inv @ at_moved[i])
        scale = max(float(np.max(np.abs(base[i]))), 1e-12)
        worst = max(worst, float(np.max(np.abs(lhs - base[i]))) / scale)
    return worst
