"""SL(2,Z) bookkeeping: S,T words, Moebius action, Dedekind sums and
multiplier systems (in particular the eta multiplier, with exact phases).

Branch convention used everywhere in this package: (c tau + d)^k means
exp(k Log(c tau + d)) with Log the principal logarithm.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

from .series import e2pi


def principal_power(w: complex, k) -> complex:
    """w^k with the principal branch of the logarithm."""
    if w == 0:
        raise ZeroDivisionError("principal_power at 0")
    return cmath.exp(k * cmath.log(w))


class GroupElement:
    """Integer matrix (a b; c d) with det = 1.

    The S,T word is computed on demand by a continued-fraction descent
    and cached; multiplying the word back reproduces the matrix exactly.
    """

    __slots__ = ("a", "b", "c", "d", "_word")

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c != 1:
            raise ValueError(f"det {a * d - b * c} != 1 for ({a},{b};{c},{d})")
        self.a, self.b, self.c, self.d = int(a), int(b), int(c), int(d)
        self._word = None

    # -- constructors / named elements ---------------------------------

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def S(cls) -> "GroupElement":
        return cls(0, -1, 1, 0)

    @classmethod
    def T(cls, n: int = 1) -> "GroupElement":
        return cls(1, n, 0, 1)

    @classmethod
    def from_string(cls, s: str) -> "GroupElement":
        parts = [int(x) for x in s.replace(";", ",").split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'a,b,c,d', got {s!r}")
        return cls(*parts)

    @classmethod
    def from_word(cls, word) -> "GroupElement":
        """word: string like 'S T^3 S T^-2' or a list of (gen, power)."""
        if isinstance(word, str):
            toks = []
            for piece in word.split():
                if "^" in piece:
                    g, p = piece.split("^")
                    toks.append((g, int(p)))
                else:
                    toks.append((piece, 1))
            word = toks
        out = cls.identity()
        for g, p in word:
            if g == "S":
                for _ in range(p % 4):  # S^4 = I, so S^-1 acts as S^3
                    out = out * cls.S()
            elif g == "T":
                out = out * cls.T(p)
            else:
                raise ValueError(f"unknown generator {g!r}")
        return out

    # -- group structure -------------------------------------------------

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupElement) and
                (self.a, self.b, self.c, self.d) ==
                (other.a, other.b, other.c, other.d))

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        return f"GroupElement({self.a},{self.b},{self.c},{self.d})"

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"

    def entries(self):
        return self.a, self.b, self.c, self.d

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    # -- actions -----------------------------------------------------------

    def moebius(self, tau: complex) -> complex:
        den = self.c * tau + self.d
        return (self.a * tau + self.b) / den

    def j_factor(self, tau: complex) -> complex:
        return self.c * tau + self.d

    def mu_norm(self) -> int:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def cusp_at_infinity_preimage(self) -> "Cusp":
        """gamma^{-1}(i oo) as a cusp (= -d/c, or oo when c = 0)."""
        if self.c == 0:
            return Cusp.infinity()
        return Cusp.from_rational(-self.d, self.c)

    # -- word decomposition --------------------------------------------

    def word(self):
        """Word in S and T^n with exact product equal to self.

        Returned as a list of ('S', 1) / ('T', n) runs; S^{-1} is
        rendered as S^3 through the relation S^2 = -I, S^4 = I.
        Length is O(log max |entry|) runs.
        """
        if self._word is None:
            self._word = _decompose(self)
            check = GroupElement.identity()
            for g, p in self._word:
                if g == "S":
                    for _ in range(p):
                        check = check * GroupElement.S()
                else:
                    check = check * GroupElement.T(p)
            if check != self:
                raise AssertionError("word decomposition failed to remultiply")
        return list(self._word)

    def word_string(self) -> str:
        parts = []
        for g, p in self.word():
            parts.append(g if p == 1 else f"{g}^{p}")
        return " ".join(parts) if parts else "I"


def _decompose(g: GroupElement):
    """Continued-fraction style descent: left-multiplications by T^-n and
    S reduce |c|; the accumulated word is returned in product order."""
    a, b, c, d = g.entries()
    prefix = []  # letters applied on the left, innermost last
    while c != 0:
        n = a // c  # floor division: |a - n c| < |c| for either sign of c
        # left-multiply by T^{-n}: a -> a - n c
        a, b = a - n * c, b - n * d
        prefix.append(("T", n))
        # left-multiply by S: (a b; c d) -> (-c, -d; a, b)
        a, b, c, d = -c, -d, a, b
        prefix.append(("S", 1))
    # gamma = L1^-1 L2^-1 ... Lk^-1 R with prefix = [L1, ..., Lk] the
    # left-applied letters (Li = T^{-n} or S) and R = +-T^k the residue
    word = []
    for gname, p in prefix:
        if gname == "T":
            word.append(("T", p))  # (T^{-n})^{-1}
        else:
            word.append(("S", 3))  # S^{-1} = S^3
    if a == 1:
        if b != 0:
            word.append(("T", b))
    else:
        # (-1, b; 0, -1) = S^2 T^{-b}
        word.append(("S", 2))
        if b != 0:
            word.append(("T", -b))
    # merge adjacent runs and drop empties
    merged = []
    for gname, p in word:
        if gname == "T" and p == 0:
            continue
        if merged and merged[-1][0] == gname == "T":
            q = merged[-1][1] + p
            merged.pop()
            if q:
                merged.append(("T", q))
        elif merged and merged[-1][0] == gname == "S":
            q = (merged[-1][1] + p) % 4
            merged.pop()
            if q:
                merged.append(("S", q))
        else:
            merged.append((gname, p))
    return merged


def decompose_word(g: GroupElement):
    """Module-level alias for GroupElement.word()."""
    return g.word()


class Cusp:
    """A point of P^1(Q): either infinity or p/q in lowest terms, q > 0."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        self.p, self.q = p, q

    @classmethod
    def infinity(cls) -> "Cusp":
        return cls(1, 0)

    @classmethod
    def from_rational(cls, p: int, q: int) -> "Cusp":
        if q == 0:
            return cls.infinity()
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        return cls(p, q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("cusp at infinity has no rational value")
        return Fraction(self.p, self.q)

    def __eq__(self, other):
        return isinstance(other, Cusp) and (self.p, self.q) == (other.p, other.q)

    def __repr__(self):
        return "Cusp(oo)" if self.is_infinity else f"Cusp({self.p}/{self.q})"


# -- Dedekind sums ---------------------------------------------------------


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum_naive(d: int, c: int) -> Fraction:
    """Direct definition sum_{k=1}^{c-1} ((k/c))((kd/c)); O(c), exact."""
    if c <= 0:
        raise ValueError("c must be positive")
    if gcd(d, c) != 1:
        raise ValueError("gcd(d, c) must be 1")
    total = Fraction(0)
    for k in range(1, c):
        total += _sawtooth(Fraction(k, c)) * _sawtooth(Fraction(k * d, c))
    return total


def dedekind_sum(d: int, c: int) -> Fraction:
    """s(d, c) as an exact rational, via reciprocity in O(log c) steps."""
    if c <= 0:
        raise ValueError("c must be positive")
    if gcd(d, c) != 1:
        raise ValueError("gcd(d, c) must be 1")
    sign = 1
    d %= c
    total = Fraction(0)
    while c > 1:
        # s(d,c) + s(c,d) = -1/4 + (d^2 + c^2 + 1)/(12 d c) for d, c > 0
        if d == 0:
            break
        total += sign * (Fraction(-1, 4) +
                         Fraction(d * d + c * c + 1, 12 * d * c))
        sign = -sign
        c, d = d, c % d
    return total


# -- multiplier systems -----------------------------------------------------


def eta_multiplier_exponent(g: GroupElement) -> Fraction:
    """t with eta(g tau) = e^{2 pi i t} (c tau + d)^{1/2} eta(tau),
    principal branch; exact rational, reduced mod 1.

    c > 0 uses the Dedekind-sum formula; c < 0 reduces through -I, which
    costs a quarter turn at weight 1/2; c = 0 is read off the q-product.
    """
    a, b, c, d = g.entries()
    if c < 0:
        return (Fraction(1, 4) + eta_multiplier_exponent(-g)) % 1
    if c == 0:
        if d == 1:
            return Fraction(b, 24) % 1
        # (-1, b; 0, -1): g tau = tau - b, and (-1)^{1/2} = i
        return (Fraction(-b, 24) - Fraction(1, 4)) % 1
    t = Fraction(a + d, 24 * c) - dedekind_sum(d, c) / 2 - Fraction(1, 8)
    return t % 1


def eta_multiplier(g: GroupElement) -> complex:
    return e2pi(eta_multiplier_exponent(g))


class MultiplierSystem:
    """Unit-modulus function on SL(2,Z) with an attached weight.

    `frac` optionally gives the exact phase exponent (value = e^{2 pi i
    frac(g)}), which keeps root-of-unity arithmetic exact.
    """

    def __init__(self, weight, fn=None, frac=None, name=""):
        if fn is None and frac is None:
            raise ValueError("need a value function or an exact exponent")
        self.weight = weight
        self._fn = fn
        self._frac = frac
        self.name = name
        self._cache: dict = {}

    def __call__(self, g: GroupElement) -> complex:
        key = (g.a, g.b, g.c, g.d)
        got = self._cache.get(key)
        if got is None:
            if self._frac is not None:
                got = e2pi(self._frac(g))
            else:
                got = self._fn(g)
            self._cache[key] = got
        return got

    def exponent(self, g: GroupElement):
        """Exact phase exponent in [0,1) if available, else None."""
        return self._frac(g) % 1 if self._frac is not None else None

    @classmethod
    def trivial(cls, weight: int = 0) -> "MultiplierSystem":
        if weight % 2 != 0:
            raise ValueError("the trivial multiplier is consistent only "
                             "at even integer weights")
        return cls(weight, frac=lambda g: Fraction(0), name="1")

    @classmethod
    def eta_power(cls, h: int) -> "MultiplierSystem":
        return cls(Fraction(h, 2),
                   frac=lambda g, h=h: (h * eta_multiplier_exponent(g)) % 1,
                   name=f"eta^{h}")

    def conjugate(self) -> "MultiplierSystem":
        """Complex conjugate system; a multiplier of weight -weight."""
        if self._frac is not None:
            return MultiplierSystem(-self.weight,
                                    frac=lambda g, f=self._frac: (-f(g)) % 1,
                                    name=f"conj({self.name})")
        return MultiplierSystem(-self.weight,
                                fn=lambda g, f=self._fn: f(g).conjugate(),
                                name=f"conj({self.name})")

    def __mul__(self, other: "MultiplierSystem") -> "MultiplierSystem":
        if self._frac is not None and other._frac is not None:
            return MultiplierSystem(
                self.weight + other.weight,
                frac=lambda g, f1=self._frac, f2=other._frac: (f1(g) + f2(g)) % 1,
                name=f"{self.name}*{other.name}")
        return MultiplierSystem(
            self.weight + other.weight,
            fn=lambda g, s=self, o=other: s(g) * o(g),
            name=f"{self.name}*{other.name}")

    def __repr__(self):
        return f"MultiplierSystem({self.name or '?'}, weight={self.weight})"


def multiplier_consistency_check(chi: MultiplierSystem, pairs, taus) -> float:
    """Max normalized residual of the weight-k consistency condition
    chi(g1 g2) j(g1 g2, tau)^k = chi(g1) chi(g2) j(g1, g2 tau)^k j(g2, tau)^k
    over the supplied (g1, g2) pairs and tau samples."""
    k = float(chi.weight)
    worst = 0.0
    for g1, g2 in pairs:
        g3 = g1 * g2
        v3 = chi(g3)
        v1, v2 = chi(g1), chi(g2)
        for tau in taus:
            lhs = v3 * principal_power(g3.j_factor(tau), k)
            rhs = (v1 * v2 *
                   principal_power(g1.j_factor(g2.moebius(tau)), k) *
                   principal_power(g2.j_factor(tau), k))
            scale = max(abs(lhs), 1e-30)
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def mu_norm(g: GroupElement) -> int:
    return g.mu_norm()


def act_moebius(g: GroupElement, tau: complex) -> complex:
    return g.moebius(tau)


def random_group_element(rng, max_entry: int = 5, max_len: int = 8) -> GroupElement:
    """Random word in S, T^{+-1}, rejected until all entries fit the cap.
    Deterministic given the generator state."""
    while True:
        g = GroupElement.identity()
        for _ in range(int(rng.integers(1, max_len + 1))):
            pick = int(rng.integers(0, 3))
            if pick == 0:
                g = g * GroupElement.S()
            elif pick == 1:
                g = g * GroupElement.T(1)
            else:
                g = g * GroupElement.T(-1)
        if max(abs(e) for e in g.entries()) <= max_entry:
            return g
