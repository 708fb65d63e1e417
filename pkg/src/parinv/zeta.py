"""Exact multizeta ring.

Words are tuples (s1,...,sr) of positive integers, s1 attached to the
outermost (largest) summation variable:

    Ze^{s1,...,sr} = sum_{n1 > n2 > ... > nr > 0}  n1^-s1 ... nr^-sr .

A word is convergent iff it is empty or s1 >= 2.  Words are treated as a
free basis: no relations between convergent words are applied here (see
zreduce for the display-basis reduction).  The product is the stuffle
(contracting shuffle on indices), under which Ze is symmetrel.

Divergent words (leading 1s) are normalized by the one-parameter scheme
Ze^1 := gamma - c together with the unique symmetrel extension; the offset
G := gamma - c is kept as a formal generator (power ``gpow`` in each term).
The recommended choice c = gamma makes G = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .rat import R1, RAT, rat_str
from .words import she_counts

Word = tuple  # tuple of positive ints

EULER_GAMMA = 0.5772156649015328606

# ---------------------------------------------------------------------------
# words


def word_weight(word: Word) -> int:
    return sum(word)


def is_convergent(word: Word) -> bool:
    """True iff the sum defining Ze^word converges (r = 0 or s1 >= 2)."""
    return (not word) or word[0] >= 2


def term_sort_key(key):
    """Canonical term order: weight, then offset power, depth, word lex."""
    gpow, word = key
    return (word_weight(word) + gpow, gpow, len(word), word)


@dataclass(frozen=True)
class NormalizationConfig:
    """Choice of the constant c in Ze^1 := gamma - c.

    c = "gamma" (default): G = 0, divergent words drop to convergent combos.
    c = "zero": G = gamma numerically.
    c = "symbolic": G kept formal; numeric evaluation refuses gpow > 0.
    """

    c: str = "gamma"

    def offset_value(self) -> float:
        if self.c == "gamma":
            return 0.0
        if self.c == "zero":
            return EULER_GAMMA
        raise ValueError("offset is formal under symbolic normalization")


DEFAULT_NORMALIZATION = NormalizationConfig()


# ---------------------------------------------------------------------------
# exact expressions


class ZetaExpr:
    """Finite rational combination of G^k * Ze^word, word convergent or not.

    Internally ``terms`` maps (gpow, word) -> nonzero rational.  Instances
    are treated as immutable by all public code paths.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "ZetaExpr":
        return cls()

    @classmethod
    def one(cls) -> "ZetaExpr":
        return cls({(0, ()): R1})

    @classmethod
    def word(cls, word, coeff=R1) -> "ZetaExpr":
        if not coeff:
            return cls()
        return cls({(0, tuple(word)): RAT(coeff)})

    @classmethod
    def offset(cls, power: int = 1, coeff=R1) -> "ZetaExpr":
        """coeff * G^power with G = gamma - c."""
        if not coeff:
            return cls()
        return cls({(power, ()): RAT(coeff)})

    # basic structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZetaExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def max_weight(self) -> int:
        return max((word_weight(w) + g for (g, w) in self.terms), default=0)

    def words(self):
        return {w for (_, w) in self.terms}

    # arithmetic -----------------------------------------------------------
    def _iadd_term(self, key, coeff) -> None:
        cur = self.terms.get(key)
        if cur is None:
            if coeff:
                self.terms[key] = coeff
            return
        cur = cur + coeff
        if cur:
            self.terms[key] = cur
        else:
            del self.terms[key]

    def _iadd_scaled(self, other: "ZetaExpr", coeff=R1) -> None:
        if not coeff:
            return
        for key, c in other.terms.items():
            self._iadd_term(key, c * coeff)

    def __add__(self, other: "ZetaExpr") -> "ZetaExpr":
        out = ZetaExpr(self.terms)
        out._iadd_scaled(other)
        return out

    def __sub__(self, other: "ZetaExpr") -> "ZetaExpr":
        out = ZetaExpr(self.terms)
        out._iadd_scaled(other, -R1)
        return out

    def __neg__(self) -> "ZetaExpr":
        return ZetaExpr({k: -c for k, c in self.terms.items()})

    def scale(self, coeff) -> "ZetaExpr":
        coeff = RAT(coeff)
        if not coeff:
            return ZetaExpr()
        return ZetaExpr({k: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other):
        """Stuffle product; scalars multiply through."""
        if not isinstance(other, ZetaExpr):
            return self.scale(other)
        out = ZetaExpr()
        for (g1, w1), c1 in self.terms.items():
            for (g2, w2), c2 in other.terms.items():
                c = c1 * c2
                g = g1 + g2
                for w, mult in she_counts(w1, w2).items():
                    out._iadd_term((g, w), c * mult)
        return out

    __rmul__ = __mul__

    # normalization --------------------------------------------------------
    def normalize(self, cfg: NormalizationConfig = DEFAULT_NORMALIZATION) -> "ZetaExpr":
        """Rewrite all divergent words via the symmetrel extension of Ze^1 = G.

        Under c = "gamma" the offset G is 0 and gpow > 0 terms are dropped.
        """
        out = ZetaExpr()
        for (g, w), c in self.terms.items():
            if is_convergent(w):
                out._iadd_term((g, w), c)
            else:
                for (dg, cw), cc in _normalize_word(w).terms.items():
                    out._iadd_term((g + dg, cw), c * cc)
        if cfg.c == "gamma":
            out = ZetaExpr({k: c for k, c in out.terms.items() if k[0] == 0})
        return out

    # numerics -------------------------------------------------------------
    def eval_numeric(self, tol: float = 1e-12,
                     cfg: NormalizationConfig = DEFAULT_NORMALIZATION) -> float:
        """Float value; words evaluated by truncated sums with EM tails."""
        total = 0.0
        for (g, w), c in self.terms.items():
            if not is_convergent(w):
                raise ValueError(f"divergent word {w}: normalize first")
            v = float(c) * zeta_word_numeric(w, tol)
            if g:
                v *= cfg.offset_value() ** g
            total += v
        return total

    # rendering ------------------------------------------------------------
    def render(self) -> str:
        """Plain-text form like "5 Ze^{10} - 7/3 Ze^{8,2}"."""
        if not self.terms:
            return "0"
        parts = []
        for (g, w), c in self.sorted_terms():
            mag = rat_str(abs(c))
            body = []
            if g:
                body.append("(gamma-c)" + (f"^{g}" if g > 1 else ""))
            if w:
                body.append("Ze^{" + ",".join(map(str, w)) + "}")
            if not body or mag != "1":
                body.insert(0, mag)
            frag = " ".join(body)
            if not parts:
                parts.append(frag if c > 0 else "-" + frag)
            else:
                parts.append(("+ " if c > 0 else "- ") + frag)
        return " ".join(parts)

    def __repr__(self):
        return f"ZetaExpr({self.render()})"

    # JSON -----------------------------------------------------------------
    def to_json(self):
        return [
            {"word": list(w), "gpow": g, "coeff": rat_str(c)}
            for (g, w), c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data) -> "ZetaExpr":
        out = cls()
        for t in data:
            out._iadd_term((t.get("gpow", 0), tuple(t["word"])),
                           RAT(Fraction(t["coeff"])))
        return out


@lru_cache(maxsize=None)
def _normalize_word(word: Word) -> ZetaExpr:
    """Ze^word for a divergent word, as G-powers times convergent words.

    Peels leading 1s with the symmetrel identity
    Ze^1 Ze^{w'} = sum over she((1), w') of Ze^v, in which the original word
    appears with multiplicity (leading-1 run of w') + 1; all other v have a
    strictly shorter leading-1 run, so the recursion terminates.
    """
    if is_convergent(word):
        return ZetaExpr.word(word)
    rest = word[1:]
    mult = 0
    # G * Ze^{rest}: shift every offset power of the normalized rest by one
    acc = ZetaExpr({(g + 1, w): c
                    for (g, w), c in _normalize_word(rest).terms.items()})
    for v, n in she_counts((1,), rest).items():
        if v == word:
            mult = n
            continue
        acc._iadd_scaled(_normalize_word(v), -RAT(n))
    assert mult > 0
    return acc.scale(R1 / mult)


def stuffle_product(u: Word, v: Word) -> ZetaExpr:
    """Ze^u * Ze^v expanded in the word basis (symmetrel linearization)."""
    out = ZetaExpr()
    for w, mult in she_counts(tuple(u), tuple(v)).items():
        out._iadd_term((0, w), RAT(mult))
    return out


# ---------------------------------------------------------------------------
# numeric evaluation of single words


def _em_tail(s: int, N: int) -> float:
    """sum_{n > N} n^-s by Euler-Maclaurin through the third correction."""
    x = float(N + 1)
    t = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s) + s / 12.0 * x ** (-s - 1)
    t -= s * (s + 1) * (s + 2) / 720.0 * x ** (-s - 3)
    return t


@lru_cache(maxsize=4096)
def _word_numeric_at(word: Word, N: int) -> float:
    """Truncated nested sum with EM outer tail, cutoff N on every index."""
    r = len(word)
    n = np.arange(1, N + 1, dtype=np.float64)
    # H_k[m-1] = sum over m > n_k > ... > n_r >= 1, built innermost first
    H = np.ones(N, dtype=np.float64)
    for k in range(r - 1, 0, -1):
        vals = n ** (-float(word[k])) * H
        H = np.concatenate(([0.0], np.cumsum(vals)[:-1]))
    outer = n ** (-float(word[0])) * H
    total = math.fsum(outer)
    # Outer tail: inner partial sums H(n) grow like a polynomial in log n
    # when the inner indices contain 1s.  Fit H ~ cubic in L = log(n/(N+1))
    # on four sample points and integrate each power of L against n^-s
    # (int_A x^-s log^k(x/A) dx = k! A^{1-s}/(s-1)^{k+1}).
    s = word[0]
    samples = [N // 8, N // 4, N // 2, N - 1]
    L = np.log((np.array(samples, dtype=np.float64) + 1.0) / (N + 1))
    a3, a2, a1, a0 = np.polyfit(L, H[samples], 3)
    X = float(N + 1) ** (1 - s)
    total += a0 * _em_tail(s, N)
    total += X * (a1 / (s - 1) ** 2 + 2.0 * a2 / (s - 1) ** 3
                  + 6.0 * a3 / (s - 1) ** 4)
    return total


def zeta_word_numeric(word: Word, tol: float = 1e-12) -> float:
    """Numeric Ze^word for a convergent word.

    Plain cutoff + Euler-Maclaurin outer tail.  For words with inner 1s the
    inner partial sums grow like log and the tail model is cruder; the
    doubling check below guards the requested tolerance either way.
    """
    word = tuple(word)
    if not word:
        return 1.0
    if not is_convergent(word):
        raise ValueError(f"divergent word {word}")
    if len(word) == 1:
        import mpmath

        return float(mpmath.zeta(word[0]))
    N = 20000
    v1 = _word_numeric_at(word, N)
    while True:
        v2 = _word_numeric_at(word, 2 * N)
        if abs(v2 - v1) <= 0.5 * tol:
            return v2
        if N >= 640000:
            if abs(v2 - v1) > 50 * tol:
                raise RuntimeError(
                    f"Ze^{word}: tolerance {tol} not reached "
                    f"(doubling residual {abs(v2 - v1):.2e})")
            return v2
        v1, N = v2, 2 * N


def zeta_word_mpmath(word: Word, N: int = 20000, dps: int = 30) -> float:
    """Numeric Ze^word by suffix recursion in mpmath working precision.

    Maintains the truncated suffix sums T_k(m) = sum over
    m > n_k > ... > n_r of prod n_i^{-s_i} via
    T_k(m+1) = T_k(m) + m^{-s_k} T_{k+1}(m), then closes the leading
    index with the exact zeta tail sum_{n > N} n^{-s_1} times the
    converged inner value.  Requires s_2 >= 2 so that the inner value
    converges; handles trailing 1s, where the cutoff evaluator's tail
    model is weakest.
    """
    import mpmath

    word = tuple(word)
    if not word:
        return 1.0
    if not is_convergent(word):
        raise ValueError(f"divergent word {word}")
    if len(word) > 1 and word[1] < 2:
        raise ValueError(f"second index must be >= 2 for the tail closure, "
                         f"got {word}")
    d = len(word)
    with mpmath.workdps(dps):
        T = [mpmath.mpf(0)] * d + [mpmath.mpf(1)]
        head = mpmath.mpf(0)
        for m in range(1, N + 1):
            mm = mpmath.mpf(m)
            p0 = mm ** (-word[0])
            for k in range(d):
                T[k] += (p0 if k == 0 else mm ** (-word[k])) * T[k + 1]
            head += p0
        tail = T[1] * (mpmath.zeta(word[0]) - head)
        return float(T[0] + tail)
