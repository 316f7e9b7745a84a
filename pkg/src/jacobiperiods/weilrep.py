"""The 2m-dimensional Weil-type representation on theta characteristics.

For index m the characteristic set is N = {0, 1/2m, ..., (2m-1)/2m}.  The
generator matrices are

    rho(T) e_a = e^{-2 pi i m a^2} e_a,
    rho(S) e_a = i^{1/2} / sqrt(2m) * sum_b e^{2 pi i 2m a b} e_b,

with i^{1/2} = e^{i pi/4}.  The bare rho is only a metaplectic (double
cover) representation; twisting the generators by an eta-power
multiplier of weight 1/2 yields a genuine representation of SL(2,Z),
evaluated here on arbitrary elements through their S,T words.  Word
independence of the result is the executable content of the
homomorphism lemma, and is exposed as an optional runtime check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .modgroup import GroupElement, MultiplierSystem
from .series import e2pi


class RepresentationSpec:
    """Generator data for the representation of index m.

    Only index rank one is realizable on this characteristic set (the
    module (Z/2mZ, x^2/4m) has odd signature), so j = 1 is required;
    the even-j branch of the surrounding formulas survives only in
    `chi_double_prime`.
    """

    def __init__(self, m: int, j: int = 1, chi_prime: MultiplierSystem | None = None):
        if m < 1:
            raise ValueError("index m must be a positive integer")
        if j != 1:
            raise NotImplementedError(
                "only j = 1 is realizable on the 2m-point characteristic set; "
                "higher rank is a documented extension point")
        self.m = int(m)
        self.j = int(j)
        self.dim = 2 * self.m
        self.chi_prime = chi_prime if chi_prime is not None else MultiplierSystem.eta_power(j)
        self.characteristics = [Fraction(i, 2 * self.m) for i in range(self.dim)]
        self.gen_T = self._build_T()
        self.gen_S = self._build_S()
        self._cache: dict = {}

    @property
    def parity(self) -> str:
        return "odd" if self.j % 2 else "even"

    def _build_T(self) -> np.ndarray:
        phases = [e2pi(-self.m * a * a) for a in self.characteristics]
        return np.diag(phases).astype(complex)

    def _build_S(self) -> np.ndarray:
        n = self.dim
        mat = np.empty((n, n), dtype=complex)
        root = e2pi(Fraction(self.j, 8)) / np.sqrt(n)
        for i, a in enumerate(self.characteristics):
            for k, b in enumerate(self.characteristics):
                mat[k, i] = root * e2pi(2 * self.m * a * b)
        return mat

    def z_matrix(self) -> np.ndarray:
        """rho~(Z) with Z the center generator: e_a -> i^j e_{-a}."""
        n = self.dim
        mat = np.zeros((n, n), dtype=complex)
        phase = 1j ** self.j
        for i in range(n):
            mat[(n - i) % n, i] = phase
        return mat

    # -- evaluation on group elements -----------------------------------

    def _word_product(self, word, twist: MultiplierSystem | None) -> np.ndarray:
        """Product of generator matrices along an S,T word; `twist`
        multiplies each letter by its multiplier value (rho' = chi' rho~)."""
        out = np.eye(self.dim, dtype=complex)
        diag_T = np.diagonal(self.gen_T).copy()
        for g, p in word:
            if g == "T":
                phases = diag_T ** p
                if twist is not None:
                    phases = phases * twist(GroupElement.T(1)) ** p
                out = out * phases  # right-multiply by diagonal
            else:
                step = self.gen_S
                if twist is not None:
                    step = twist(GroupElement.S()) * step
                for _ in range(p):
                    out = out @ step
        return out

    def matrix(self, gamma: GroupElement, check: bool = False,
               tol: float = 1e-12) -> np.ndarray:
        """rho''(gamma) by word evaluation (j odd: eta-twisted letters).

        With check=True the element is re-evaluated along a second,
        distinct word; disagreement beyond `tol` raises, since it would
        falsify the homomorphism property.
        """
        key = gamma.entries()
        cached = self._cache.get(key)
        if cached is not None and not check:
            return cached
        twist = self.chi_prime if self.j % 2 else None
        mat = self._word_product(gamma.word(), twist)
        if check:
            alt = (gamma * GroupElement.S()).word() + [("S", 3)]
            mat2 = self._word_product(alt, twist)
            if np.max(np.abs(mat - mat2)) > tol:
                raise ArithmeticError(
                    "word-independence violated: representation evaluation "
                    f"differs by {np.max(np.abs(mat - mat2)):.3g} on {gamma}")
        self._cache.setdefault(key, mat)
        return mat

    def matrix_inverse(self, gamma: GroupElement) -> np.ndarray:
        return self.matrix(gamma).conj().T  # unitary

    def __repr__(self):
        return f"RepresentationSpec(m={self.m}, j={self.j})"


class ConjugateRep:
    """Entrywise complex conjugate of a representation (again unitary)."""

    def __init__(self, base: RepresentationSpec):
        self.base = base
        self.m = base.m
        self.dim = base.dim

    def matrix(self, gamma: GroupElement, **kw) -> np.ndarray:
        return self.base.matrix(gamma, **kw).conj()

    def matrix_inverse(self, gamma: GroupElement) -> np.ndarray:
        return self.matrix(gamma).conj().T

    def __repr__(self):
        return f"ConjugateRep({self.base!r})"


def build_generators(m: int, j: int = 1) -> RepresentationSpec:
    return RepresentationSpec(m, j)


def rep_element(spec: RepresentationSpec, gamma: GroupElement,
                check: bool = False) -> np.ndarray:
    return spec.matrix(gamma, check=check)


@dataclass
class RelationReport:
    m: int
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def __str__(self):
        lines = [f"relation residuals (m={self.m}):"]
        for k, v in self.residuals.items():
            lines.append(f"  {k}: {v:.3e}")
        return "\n".join(lines)


def relation_check(spec: RepresentationSpec) -> RelationReport:
    """Residuals of S~^2 = Z, (S~ T~)^3 = Z, Z^2 = -1 (odd j), Z^4 = 1,
    and generator unitarity, all on the bare metaplectic matrices."""
    S, T = spec.gen_S, spec.gen_T
    Z = spec.z_matrix()
    eye = np.eye(spec.dim)
    ST = S @ T

    def nrm(x):
        return float(np.linalg.norm(x))

    res = {
        "S^2 - Z": nrm(S @ S - Z),
        "(ST)^3 - Z": nrm(ST @ ST @ ST - Z),
        "Z^4 - I": nrm(np.linalg.matrix_power(Z, 4) - eye),
        "S unitary": nrm(S @ S.conj().T - eye),
        "T unitary": nrm(T @ T.conj().T - eye),
    }
    if spec.j % 2:
        res["Z^2 + I"] = nrm(Z @ Z + eye)
    return RelationReport(spec.m, res)


def homomorphism_residual(spec: RepresentationSpec, pairs) -> float:
    worst = 0.0
    for g1, g2 in pairs:
        lhs = spec.matrix(g1) @ spec.matrix(g2)
        rhs = spec.matrix(g1 * g2)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def unitarity_residual(spec: RepresentationSpec, gammas) -> float:
    eye = np.eye(spec.dim)
    worst = 0.0
    for g in gammas:
        mat = spec.matrix(g)
        worst = max(worst, float(np.max(np.abs(mat @ mat.conj().T - eye))))
    return worst


def chi_double_prime(chi: MultiplierSystem, parity: str,
                     chi_prime: MultiplierSystem | None = None) -> MultiplierSystem:
    """chi'' paired with rho'': chi itself for even j, chi * conj(chi')
    for odd j.  The product chi''(g) rho''(g) does not depend on the
    choice of chi'."""
    if parity == "even":
        return chi
    if parity != "odd":
        raise ValueError("parity must be 'even' or 'odd'")
    if chi_prime is None:
        chi_prime = MultiplierSystem.eta_power(1)
    return chi * chi_prime.conjugate()


def matrices_to_json(mats: dict) -> dict:
    """Matrices as nested [re, im] pairs, keyed by 'a,b,c,d'."""
    out = {}
    for key, mat in mats.items():
        out[key] = [[[z.real, z.imag] for z in row] for row in np.asarray(mat)]
    return out
