"""Multitangent families: bilateral nested sums and their monotangent reduction.

The objects are mould-valued functions of an index word (s_1, ..., s_r),
s_i >= 1:

    Te^{s1..sr}(z)   = sum_{n1 > ... > nr, ni in Z} prod (n_i + z)^{-s_i}
    Ta^{s1..sr}(z)   = weak-order variant with 1/r_j! cluster factors
    Ten = logmu(Te)       Tan = logmu(Ta) = Ten o (E - 1)
    invTe            = multiplicative inverse of Te
    Se+ / invSe-     = one-sided halves (positive resp. non-positive n)

Te is symmetrel, Ta symmetral, Ten alternel, Tan alternal.  The sum
converges iff s_1 >= 2 and s_r >= 2; divergent words are handled in
normalized mode, where the zeta coefficients they produce pass through the
symmetrel normalization of `zeta`.

Main results implemented here:

  * reduce_Te: partial-fraction reduction of any multitangent into
    monotangents Te^sigma with exact multizeta coefficients,
        Te^{s1..sr} = sum_sigma Teze^{s1..sr}_sigma Te^sigma.
  * expand_Tan_in_Te: the generic expansion of the alternal Tan^{n1..nr} as
    a rational combination of Te words (permutations and contractions of
    the slots), obtained by she-linearizing every product inside logmu.
  * reduce_Tan: composition of the two, giving Tanze coefficients.
  * Fourier data: each monotangent is a geometric series in e^{2 pi i z}
    on either half-plane, with exact mode coefficients
        Te^sigma_omega = sign(Im omega) 2 pi i omega^{sigma-1}/(sigma-1)!,
    omega = 2 pi i n; hence every reduced multitangent has exact Fourier
    coefficients in Q[multizetas] (2 pi i)^sigma.
  * numeric evaluators for all families (truncated sums with fitted
    power-log tails), and check_bb12, the product identity
        Te = Se+ x invSe-  (split of the bilateral sum at the sign boundary).
"""

from __future__ import annotations

import cmath
import itertools
import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rat import R0, R1, RAT, rat_str
from .words import she
from .zeta import (DEFAULT_NORMALIZATION, NormalizationConfig, ZetaExpr,
                   stuffle_product, word_weight)

Word = tuple

TWO_PI_I = 2j * math.pi


def tangent_convergent(word: Word) -> bool:
    """True iff the bilateral sum converges (s1 >= 2 and sr >= 2)."""
    return len(word) >= 1 and word[0] >= 2 and word[-1] >= 2


def _check_word(word: Word) -> Word:
    word = tuple(int(s) for s in word)
    if not word:
        raise ValueError("empty index word")
    if any(s < 1 for s in word):
        raise ValueError(f"indices must be >= 1, got {word}")
    return word


# ---------------------------------------------------------------------------
# frequencies and exact (2 pi i)-power expressions


@dataclass(frozen=True)
class Frequency:
    """Fourier frequency omega = 2 pi i n, n a nonzero integer.

    n > 0 lies on the upper imaginary axis (Omega+), n < 0 on the lower
    (Omega-).  Northern expansions (Im z > 0) run over Omega-, southern
    over Omega+.
    """

    n: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("frequency index must be nonzero")

    @property
    def value(self) -> complex:
        return TWO_PI_I * self.n

    @property
    def sign(self) -> int:
        return 1 if self.n > 0 else -1


def _freq_index(freq) -> int:
    n = freq.n if isinstance(freq, Frequency) else int(freq)
    if n == 0:
        raise ValueError("frequency index must be nonzero")
    return n


class PiExpr:
    """Finite sum  sum_k  c_k * (2 pi i)^k  with ZetaExpr coefficients c_k.

    The exact value type for Fourier coefficients of reduced multitangents
    and for the invariants built from them.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls) -> "PiExpr":
        return cls()

    @classmethod
    def single(cls, power: int, coeff: ZetaExpr) -> "PiExpr":
        return cls({power: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PiExpr) and self.terms == other.terms

    def __add__(self, other: "PiExpr") -> "PiExpr":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZetaExpr.zero()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PiExpr(out)

    def __sub__(self, other: "PiExpr") -> "PiExpr":
        return self + other.scale(-R1)

    def scale(self, coeff) -> "PiExpr":
        if not coeff:
            return PiExpr()
        return PiExpr({k: v.scale(coeff) for k, v in self.terms.items()})

    def map_coeffs(self, fn) -> "PiExpr":
        return PiExpr({k: fn(v) for k, v in self.terms.items()})

    def eval_numeric(self, tol: float = 1e-12) -> complex:
        total = 0j
        for k, v in self.terms.items():
            total += v.eval_numeric(tol) * TWO_PI_I ** k
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        frags = []
        for k in sorted(self.terms):
            body = self.terms[k].render()
            if "+" in body or "-" in body[1:]:
                body = "(" + body + ")"
            frags.append(f"(2 pi i)^{k} {body}" if k != 1 else f"(2 pi i) {body}")
        return " + ".join(frags)

    def __repr__(self):
        return f"PiExpr({self.render()})"

    def to_json(self):
        return [{"pipow": k, "coeff": self.terms[k].to_json()}
                for k in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "PiExpr":
        return cls({t["pipow"]: ZetaExpr.from_json(t["coeff"]) for t in data})


# ---------------------------------------------------------------------------
# monotangent combinations


class MonotangentCombo:
    """Finite combination  sum_sigma  c_sigma * Te^sigma,  c_sigma in Q[Ze].

    ``terms`` maps the monotangent index sigma >= 1 to its ZetaExpr
    coefficient; ``constant`` holds a z-independent part (zero for every
    convergent reduction, reserved for normalized-divergent output).

    Grading: in the reduction of a weight-w multitangent every zeta word u
    in the sigma-coefficient satisfies  weight(u) + sigma = w.
    """

    __slots__ = ("terms", "constant")

    def __init__(self, terms=None, constant=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.constant = constant if constant is not None else ZetaExpr.zero()

    @classmethod
    def zero(cls) -> "MonotangentCombo":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms and self.constant.is_zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonotangentCombo)
                and self.terms == other.terms
                and self.constant == other.constant)

    def sigmas(self):
        return sorted(self.terms)

    def coefficient(self, sigma: int) -> ZetaExpr:
        return self.terms.get(sigma, ZetaExpr.zero())

    def __add__(self, other: "MonotangentCombo") -> "MonotangentCombo":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZetaExpr.zero()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MonotangentCombo(out, self.constant + other.constant)

    def scale(self, coeff) -> "MonotangentCombo":
        if not coeff:
            return MonotangentCombo()
        return MonotangentCombo({k: v.scale(coeff) for k, v in self.terms.items()},
                                self.constant.scale(coeff))

    def map_coeffs(self, fn) -> "MonotangentCombo":
        return MonotangentCombo({k: fn(v) for k, v in self.terms.items()},
                                fn(self.constant))

    def grading_weights(self) -> set:
        """Set of sigma + weight(term) over all stored terms (should be a
        singleton equal to the multitangent weight)."""
        out = set()
        for sigma, expr in self.terms.items():
            for (g, w) in expr.terms:
                out.add(sigma + word_weight(w) + g)
        return out

    def eval_numeric(self, z: complex, tol: float = 1e-10) -> complex:
        total = complex(self.constant.eval_numeric(tol)) if self.constant else 0j
        for sigma, expr in self.terms.items():
            total += expr.eval_numeric(tol) * eval_monotangent(sigma, z)
        return total

    def render_rows(self, label: str) -> list[str]:
        """Rows "label_sigma = coefficient", highest sigma first."""
        rows = []
        for sigma in sorted(self.terms, reverse=True):
            rows.append(f"{label}_{sigma} = {self.terms[sigma].render()}")
        if self.constant:
            rows.append(f"{label}_const = {self.constant.render()}")
        return rows

    def __repr__(self):
        body = ", ".join(f"{s}: {e.render()}" for s, e in sorted(self.terms.items()))
        return f"MonotangentCombo({{{body}}})"

    def to_json(self):
        out = {"terms": [{"sigma": s, "coeff": self.terms[s].to_json()}
                         for s in self.sigmas()]}
        if self.constant:
            out["constant"] = self.constant.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "MonotangentCombo":
        terms = {t["sigma"]: ZetaExpr.from_json(t["coeff"])
                 for t in data.get("terms", [])}
        const = ZetaExpr.from_json(data["constant"]) if "constant" in data else None
        return cls(terms, const)


# ---------------------------------------------------------------------------
# reduction Te -> monotangents


def _compositions_weak(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions_weak(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _reduce_te_products(word: Word):
    """Raw reduction rows, before any zeta-product linearization.

    Returns {sigma: {(u, v): coeff}} meaning
        Te^word = sum_sigma sum_(u,v) coeff * Ze^u * Ze^v * Te^sigma,
    where v is already stored reversed with the (-1)^{sum} of the mirrored
    word folded into coeff.  One row per slot i and distribution of the
    excess s_i - sigma onto the other slots (each slot j != i receiving
    sigma_j >= s_j, with total weight preserved).
    """
    word = _check_word(word)
    r = len(word)
    rows: dict[int, dict] = {}
    for i, si in enumerate(word):
        for sigma in range(1, si + 1):
            excess = si - sigma
            for d in _compositions_weak(excess, r - 1):
                svec = list(word)
                svec[i] = sigma
                coeff = R1 if (excess % 2 == 0) else -R1
                for (j, dj) in zip((j for j in range(r) if j != i), d):
                    svec[j] += dj
                    coeff *= math.comb(svec[j] - 1, word[j] - 1)
                left = tuple(svec[:i])
                right = tuple(svec[i + 1:])
                if sum(right) % 2:
                    coeff = -coeff
                key = (left, tuple(reversed(right)))
                bucket = rows.setdefault(sigma, {})
                val = bucket.get(key, R0) + coeff
                if val:
                    bucket[key] = val
                else:
                    bucket.pop(key, None)
    return {s: b for s, b in rows.items() if b}


_reduce_te_cache: dict = {}


def reduce_Te(word: Word, normalized: bool = False,
              cfg: NormalizationConfig = DEFAULT_NORMALIZATION) -> MonotangentCombo:
    """Exact monotangent reduction Te^word = sum_sigma Teze_sigma Te^sigma.

    For convergent words every zeta coefficient is automatically a
    combination of convergent words.  Divergent words (edge index 1)
    require normalized=True; their coefficients are then rewritten through
    the symmetrel normalization of Ze^1.
    """
    word = _check_word(word)
    if not tangent_convergent(word) and not normalized:
        raise ValueError(f"divergent word {word}: pass normalized=True")
    key = (word, cfg.c)
    hit = _reduce_te_cache.get(key)
    if hit is not None:
        return hit
    needs_norm = not tangent_convergent(word)
    terms: dict[int, ZetaExpr] = {}
    for sigma, bucket in _reduce_te_products(word).items():
        acc = ZetaExpr.zero()
        for (u, v), c in bucket.items():
            acc._iadd_scaled(stuffle_product(u, v), c)
        if needs_norm:
            acc = acc.normalize(cfg)
        if acc:
            terms[sigma] = acc
    combo = MonotangentCombo(terms)
    _reduce_te_cache[key] = combo
    return combo


# ---------------------------------------------------------------------------
# generic expansion of Tan in terms of Te


def _consecutive_splits(seq: tuple, parts: int):
    """All ways to cut seq into `parts` nonempty consecutive factors."""
    n = len(seq)
    for cuts in itertools.combinations(range(1, n), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(seq[bounds[k]:bounds[k + 1]] for k in range(parts))


@lru_cache(maxsize=None)
def _she_or_counts(u: tuple, v: tuple) -> dict:
    """Contracting shuffles of bitmask words; contraction = disjoint union."""
    counts: dict[tuple, int] = {}
    for w in she(u, v, operator.or_):
        counts[w] = counts.get(w, 0) + 1
    return counts


def _she_fold(parts) -> dict:
    """she-product of several bitmask words, with multiplicities."""
    acc = {parts[0]: 1}
    for p in parts[1:]:
        nxt: dict[tuple, int] = {}
        for w, m in acc.items():
            for w2, m2 in _she_or_counts(w, p).items():
                nxt[w2] = nxt.get(w2, 0) + m * m2
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _alternel_log_pattern(k: int) -> dict:
    """logmu of a symmetrel mould over k distinct formal letters.

    Letters are bitmasks 1<<j; every product of factors is linearized
    through the contracting shuffle (valid by symmetrelity), so the result
    is a plain combination {word of bitmasks: rational}.
    """
    letters = tuple(1 << j for j in range(k))
    out: dict[tuple, RAT] = {}
    for j in range(1, k + 1):
        c = RAT((-1) ** (j - 1), j)
        for parts in _consecutive_splits(letters, j):
            for w, m in _she_fold(parts).items():
                val = out.get(w, R0) + c * m
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
    return out


@dataclass(frozen=True)
class FormalTerm:
    """coeff * Te^{masks}: each mask is a bitmask of slots, slot i = n_{i+1}."""

    coeff: RAT
    masks: tuple

    def substitute(self, word: Word) -> Word:
        return tuple(sum(word[i] for i in range(len(word)) if m >> i & 1)
                     for m in self.masks)

    def render(self, names=None) -> str:
        r = max(m.bit_length() for m in self.masks)
        names = names or [f"n{i+1}" for i in range(r)]
        body = ",".join("+".join(names[i] for i in range(r) if m >> i & 1)
                        for m in self.masks)
        return f"{rat_str(self.coeff)} Te^{{{body}}}"


def _formal_term_key(term: FormalTerm):
    return (-len(term.masks), term.masks)


EXPANSION_LENGTH_CAP = 7


@lru_cache(maxsize=None)
def expand_Tan_in_Te(r: int) -> tuple:
    """Tan^{n1..nr} as a rational combination of Te over slot groupings.

    Returns FormalTerms in canonical order (longer words first, then by
    mask tuple).  Every term's masks partition {n1..nr}; entries are sums
    over the indicated slots.  Computed as logmu o (E-1) in formal mode:
    the outer composition contributes consecutive slot blocks with
    coefficient prod 1/m_i!, the inner logarithm is she-linearized.
    """
    if not 1 <= r <= EXPANSION_LENGTH_CAP:
        raise ValueError(f"length {r} outside 1..{EXPANSION_LENGTH_CAP}")
    acc: dict[tuple, RAT] = {}
    for cuts in itertools.product(*[range(2)] * (r - 1)):
        blocks = []
        mask, pos = 1, 0
        for c in cuts:
            if c:
                blocks.append(mask << pos)
                pos += mask.bit_length()
                mask = 1
            else:
                mask = (mask << 1) | 1
        blocks.append(mask << pos)
        coeff0 = R1
        for b in blocks:
            coeff0 /= math.factorial(b.bit_count())
        for w, c in _alternel_log_pattern(len(blocks)).items():
            ww = tuple(_or_blocks(letter, blocks) for letter in w)
            val = acc.get(ww, R0) + coeff0 * c
            if val:
                acc[ww] = val
            else:
                acc.pop(ww, None)
    terms = [FormalTerm(c, w) for w, c in acc.items()]
    terms.sort(key=_formal_term_key)
    return tuple(terms)


def _or_blocks(letter: int, blocks: list) -> int:
    out = 0
    for j, b in enumerate(blocks):
        if letter >> j & 1:
            out |= b
    return out


@lru_cache(maxsize=None)
def tan_te_words(word: Word, part: str = "alternal") -> tuple:
    """Concrete Te words (with rational weights) entering Tan^word.

    Substitutes the indices into the generic expansion and merges mask
    groupings that collide on equal index sums.  part="alternal" keeps only
    the uncontracted terms (plain permutations of the word, weighted by the
    Eulerian idempotent coefficients); part="log" keeps the whole mould
    logarithm, contracted groupings included.
    """
    word = _check_word(word)
    if part not in ("alternal", "log"):
        raise ValueError(f"part must be 'alternal' or 'log', got {part!r}")
    out: dict[Word, RAT] = {}
    for term in expand_Tan_in_Te(len(word)):
        if part == "alternal" and any(m.bit_count() != 1 for m in term.masks):
            continue
        w = term.substitute(word)
        val = out.get(w, R0) + term.coeff
        if val:
            out[w] = val
        else:
            out.pop(w, None)
    return tuple(sorted(out.items()))


_reduce_tan_cache: dict = {}


def reduce_Tan(word: Word, normalized: bool = False,
               cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
               part: str = "alternal") -> MonotangentCombo:
    """Exact monotangent reduction for the alternal multitangent Tan^word.

    Goes through expand_Tan_in_Te + reduce_Te.  Permuted Te words may be
    divergent even for convergent input (interior 1s moved to an edge), so
    the inner reductions always run in normalized mode.

    part="alternal" (default) reduces the alternal projection of Te^word,
    i.e. the permutation terms of the expansion only.  This is the tabulated
    convention: every monotangent index stays <= max(word) and obeys the
    parity rule sigma == sum(word) - len(word) + 1 (mod 2).  part="log"
    reduces the full mould logarithm; the contracted groupings contribute
    additional depth-1 coefficients in even zeta values, including indices
    above max(word).  Both results are alternal; they describe different
    functions of z, matching eval_tan_projection resp. eval_tan.
    """
    word = _check_word(word)
    if not tangent_convergent(word) and not normalized:
        raise ValueError(f"divergent word {word}: pass normalized=True")
    key = (word, cfg.c, part)
    hit = _reduce_tan_cache.get(key)
    if hit is not None:
        return hit
    combo = MonotangentCombo.zero()
    for w, c in tan_te_words(word, part):
        combo = combo + reduce_Te(w, normalized=True, cfg=cfg).scale(c)
    _reduce_tan_cache[key] = combo
    return combo


def reduce_family(family: str, word: Word, normalized: bool = False,
                  cfg: NormalizationConfig = DEFAULT_NORMALIZATION,
                  part: str = "alternal") -> MonotangentCombo:
    if family == "Te":
        return reduce_Te(word, normalized, cfg)
    if family == "Tan":
        return reduce_Tan(word, normalized, cfg, part)
    raise ValueError(f"unknown reduction family {family!r} (Te or Tan)")


# ---------------------------------------------------------------------------
# summand counting (the two stages of the reduction)


def _tan_products(word: Word, part: str = "alternal") -> dict:
    """Raw product rows of reduce_Tan, merged across the Te words."""
    rows: dict[int, dict] = {}
    for w, c in tan_te_words(word, part):
        for sigma, bucket in _reduce_te_products(w).items():
            tgt = rows.setdefault(sigma, {})
            for key, coeff in bucket.items():
                val = tgt.get(key, R0) + c * coeff
                if val:
                    tgt[key] = val
                else:
                    tgt.pop(key, None)
    return {s: b for s, b in rows.items() if b}


def reduction_counts(family: str, word: Word, count_sigma_one: bool = True,
                     part: str = "alternal") -> tuple:
    """(#red1, #red2): stored summands before and after stuffle linearization.

    red1 counts distinct (sigma, zeta-word-pair) products with nonzero
    rational coefficient; red2 counts the basis terms of the linearized
    Teze/Tanze coefficients.  count_sigma_one=False drops the sigma=1 rows
    (whose coefficients vanish numerically for convergent words).
    """
    word = _check_word(word)
    prods = (_reduce_te_products(word) if family == "Te"
             else _tan_products(word, part))
    combo = reduce_family(family, word, normalized=True, part=part)
    red1 = sum(len(bucket) for sigma, bucket in prods.items()
               if count_sigma_one or sigma != 1)
    red2 = sum(len(expr.terms) for sigma, expr in combo.terms.items()
               if count_sigma_one or sigma != 1)
    return red1, red2


# ---------------------------------------------------------------------------
# Fourier data


def monotangent_fourier(sigma: int, freq) -> PiExpr:
    """Exact Fourier mode of Te^sigma at omega = 2 pi i n:

        Te^sigma_omega = sign(n) * n^{sigma-1}/(sigma-1)! * (2 pi i)^sigma
    """
    if sigma < 1:
        raise ValueError("monotangent index must be >= 1")
    n = _freq_index(freq)
    coeff = RAT(n ** (sigma - 1), math.factorial(sigma - 1))
    if n < 0:
        coeff = -coeff
    return PiExpr.single(sigma, ZetaExpr.one().scale(coeff))


def monotangent_constant(sigma: int, half_plane: str = "north") -> PiExpr:
    """Constant term of Te^sigma on a half-plane: -pi i north / +pi i south
    for sigma = 1, zero for sigma >= 2."""
    if sigma != 1:
        return PiExpr.zero()
    sign = {"north": -R1, "south": R1}[half_plane]
    return PiExpr.single(1, ZetaExpr.one().scale(sign / 2))


def multitangent_fourier(combo: MonotangentCombo, freq) -> PiExpr:
    """Exact Fourier mode of a reduced multitangent: sum_sigma c_sigma Te^sigma_omega."""
    n = _freq_index(freq)
    out = PiExpr.zero()
    for sigma, expr in combo.terms.items():
        coeff = RAT(n ** (sigma - 1), math.factorial(sigma - 1))
        if n < 0:
            coeff = -coeff
        out = out + PiExpr.single(sigma, expr.scale(coeff))
    return out


# ---------------------------------------------------------------------------
# numeric evaluation
#
# One-sided sums get an outer tail by fitting the inner partial sums with a
# cubic in log (they grow polynomially in log n when inner indices contain
# 1s) and integrating mode by mode, as for the zeta words.  Bilateral sums
# are summed over |n_i| <= M at a ladder of cutoffs and the two power-log
# tails (exponents s1 - 1 and sr - 1) are removed by least squares.


def _em_tail_int(s: int, N: int) -> float:
    """sum_{n > N} n^{-s} by Euler-Maclaurin through the third correction."""
    x = float(N + 1)
    t = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s) + s / 12.0 * x ** (-s - 1)
    t -= s * (s + 1) * (s + 2) / 720.0 * x ** (-s - 3)
    return t


def _em_tail_shifted(s: int, N: int, z: complex) -> complex:
    """sum_{n > N} (n + z)^{-s} by Euler-Maclaurin (expansion point N+1)."""
    a = N + 1 + z
    t = a ** (1 - s) / (s - 1) + 0.5 * a ** (-s) + s / 12.0 * a ** (-s - 1)
    t -= s * (s + 1) * (s + 2) / 720.0 * a ** (-s - 3)
    t += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 * a ** (-s - 5)
    return t


def eval_monotangent(sigma: int, z: complex, N: int = 4096) -> complex:
    """Te^sigma(z) = sum_{n in Z} (n+z)^{-sigma}; pi/tan(pi z) for sigma=1."""
    if sigma == 1:
        return math.pi / cmath.tan(math.pi * z)
    n = np.arange(-N, N + 1, dtype=np.float64)
    total = complex(np.sum((n + z) ** (-sigma)))
    total += _em_tail_shifted(sigma, N, z)
    total += (-1) ** sigma * _em_tail_shifted(sigma, N, -z)
    return total


@lru_cache(maxsize=4096)
def _one_sided_at(word: Word, z: complex, base: int, N: int) -> complex:
    """sum_{N >= n1 > ... > nr >= base} prod (n_i+z)^{-s_i}, with fitted outer tail."""
    r = len(word)
    n = np.arange(base, N + 1, dtype=np.float64)
    shifted = n + z
    H = np.ones(len(n), dtype=np.complex128)
    for k in range(r - 1, 0, -1):
        vals = shifted ** (-word[k]) * H
        H = np.concatenate(([0.0], np.cumsum(vals)[:-1]))
    outer = shifted ** (-word[0]) * H
    total = complex(np.sum(outer))
    # tail: fit F(n) = H(n) ((n+z)/n)^{-s1} as a cubic in L = log(n/(N+1)),
    # then sum a_k n^{-s1} L^k using int_A x^-s log^k(x/A) = k! A^{1-s}/(s-1)^{k+1}
    s = word[0]
    idx = [len(n) // 8, len(n) // 4, len(n) // 2, len(n) - 1]
    ns = n[idx]
    L = np.log((ns + 0.0) / (N + 1))
    F = H[idx] * ((ns + z) / ns) ** (-s)
    a3, a2, a1, a0 = np.polyfit(L, F, 3)
    X = float(N + 1) ** (1 - s)
    total += a0 * _em_tail_int(s, N)
    total += X * (a1 / (s - 1) ** 2 + 2.0 * a2 / (s - 1) ** 3
                  + 6.0 * a3 / (s - 1) ** 4)
    return total


def nested_sum(word: Word, z: complex, base: int = 1, tol: float = 1e-10) -> complex:
    """One-sided nested sum over n1 > ... > nr >= base, accelerated.

    Requires s1 >= 2 (outer convergence); inner indices may be 1.
    """
    word = _check_word(word)
    if word[0] < 2:
        raise ValueError(f"outer index must be >= 2 for convergence: {word}")
    z = complex(z)
    N = 20000
    v1 = _one_sided_at(word, z, base, N)
    while True:
        v2 = _one_sided_at(word, z, base, 2 * N)
        if abs(v2 - v1) <= 0.5 * tol:
            return v2
        if N >= 320000:
            if abs(v2 - v1) > 50 * tol:
                raise RuntimeError(
                    f"nested sum {word} at z={z}: tolerance {tol} not reached "
                    f"(doubling residual {abs(v2 - v1):.2e})")
            return v2
        v1, N = v2, 2 * N


def eval_se_plus(word: Word, z: complex, tol: float = 1e-10) -> complex:
    """Se+^word(z) = sum_{0 < nr < ... < n1} prod (n_i+z)^{-s_i}."""
    if not word:
        return 1.0 + 0j
    return nested_sum(word, z, base=1, tol=tol)


def eval_inv_se_minus(word: Word, z: complex, tol: float = 1e-10) -> complex:
    """invSe-^word(z) = sum_{nr < ... < n1 <= 0} prod (n_i+z)^{-s_i}.

    Substituting n -> -n turns this into a one-sided sum from 0 with the
    word reversed and z negated, up to the sign (-1)^{sum s_i}.
    """
    if not word:
        return 1.0 + 0j
    val = nested_sum(tuple(reversed(word)), -complex(z), base=0, tol=tol)
    return -val if sum(word) % 2 else val


def _bilateral_at(word: Word, z: complex, M: int) -> complex:
    """sum over M >= n1 > ... > nr >= -M of prod (n_i+z)^{-s_i}."""
    n = np.arange(-M, M + 1, dtype=np.float64)
    shifted = n + z
    H = np.ones(len(n), dtype=np.complex128)
    for k in range(len(word) - 1, 0, -1):
        vals = shifted ** (-word[k]) * H
        H = np.concatenate(([0.0], np.cumsum(vals)[:-1]))
    return complex(np.sum(shifted ** (-word[0]) * H))


def _power_log_extrapolate(Ms, Ss, alphas) -> complex:
    """Fit S(M) = S_inf - sum_j c_j phi_j(M) with phi in {M^-a log^k M}
    (k <= 2, plus one subleading order) and return S_inf."""
    Ms = np.asarray(Ms, dtype=np.float64)
    L = np.log(Ms)
    cols = [np.ones_like(Ms)]
    for a in sorted(set(alphas)):
        for k in range(3):
            cols.append(-(Ms ** (-a)) * L ** k)
        for k in range(2):
            cols.append(-(Ms ** (-a - 1)) * L ** k)
    A = np.column_stack(cols)
    scale = np.abs(A).max(axis=0)
    x, *_ = np.linalg.lstsq(A / scale, np.asarray(Ss, dtype=np.complex128),
                            rcond=None)
    return complex(x[0] / scale[0])


@lru_cache(maxsize=1024)
def _eval_te_cached(word: Word, z: complex, N: int) -> complex:
    Ms = sorted({max(64, int(N * (2.0 / 3.0) ** k)) for k in range(12)})
    Ss = [_bilateral_at(word, z, M) for M in Ms]
    alphas = {word[0] - 1, word[-1] - 1}
    full = _power_log_extrapolate(Ms, Ss, alphas)
    check = _power_log_extrapolate(Ms[:-1], Ss[:-1], alphas)
    if abs(full - check) > 1e-7 * max(1.0, abs(full)):
        raise RuntimeError(f"Te^{word}({z}): unstable tail fit "
                           f"({abs(full - check):.2e})")
    return full


def eval_te(word: Word, z: complex, tol: float = 1e-9, N: int = 131072) -> complex:
    """Direct bilateral evaluation of Te^word(z) (no product splitting)."""
    word = _check_word(word)
    if not tangent_convergent(word):
        raise ValueError(f"divergent word {word}")
    if len(word) == 1:
        return eval_monotangent(word[0], z)
    return _eval_te_cached(word, complex(z), N)


def _all_consecutive_splits(word: Word):
    for parts in range(1, len(word) + 1):
        yield from _consecutive_splits(word, parts)


def eval_ta(word: Word, z: complex, tol: float = 1e-9) -> complex:
    """Ta^word(z) via the cluster contraction Ta = Te o (E-1)."""
    word = _check_word(word)
    total = 0j
    for parts in _all_consecutive_splits(word):
        w = tuple(sum(p) for p in parts)
        coeff = 1.0
        for p in parts:
            coeff /= math.factorial(len(p))
        total += coeff * eval_te(w, z, tol)
    return total


def _logmu_numeric(eval_part, word: Word, z: complex, tol: float) -> complex:
    total = 0j
    for j in range(1, len(word) + 1):
        c = (-1.0) ** (j - 1) / j
        for parts in _consecutive_splits(word, j):
            prod = 1.0 + 0j
            for p in parts:
                prod *= eval_part(p, z, tol)
            total += c * prod
    return total


def eval_ten(word: Word, z: complex, tol: float = 1e-9) -> complex:
    """Ten^word(z) = logmu(Te)^word(z), products evaluated numerically."""
    return _logmu_numeric(eval_te, _check_word(word), z, tol)


def eval_tan(word: Word, z: complex, tol: float = 1e-9) -> complex:
    """Tan^word(z) = logmu(Ta)^word(z), products evaluated numerically.

    Independent of expand_Tan_in_Te: no shuffle linearization happens here.
    """
    return _logmu_numeric(eval_ta, _check_word(word), z, tol)


def eval_tan_projection(word: Word, z: complex, tol: float = 1e-9) -> complex:
    """Alternal projection of Te^word at z: sum over plain permutations of
    the word with the Eulerian idempotent weights.  This is the function the
    default reduce_Tan tables expand; it differs from eval_tan by even-zeta
    multiples of monotangents (the reductions of the contracted groupings).
    """
    word = _check_word(word)
    return sum(float(c) * eval_te(w, z, tol)
               for w, c in tan_te_words(word, "alternal"))


def eval_inv_te(word: Word, z: complex, tol: float = 1e-9) -> complex:
    """invTe^word(z) = sum over weak increasing n with sign (-1)^r.

    Equal-run contractions turn it into (-1)^r sum over consecutive splits
    of Te at the reversed block sums.
    """
    word = _check_word(word)
    total = 0j
    for parts in _all_consecutive_splits(word):
        w = tuple(reversed([sum(p) for p in parts]))
        total += eval_te(w, z, tol)
    return total if len(word) % 2 == 0 else -total


_FAMILY_EVAL = {
    "Te": eval_te,
    "Ta": eval_ta,
    "Ten": eval_ten,
    "Tan": eval_tan,
    "invTe": eval_inv_te,
    "Se+": eval_se_plus,
    "invSe-": eval_inv_se_minus,
}


def eval_numeric_family(family: str, word: Word, z: complex,
                        tol: float = 1e-9) -> complex:
    """Numeric value of the named family at concrete indices."""
    try:
        fn = _FAMILY_EVAL[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; "
                         f"one of {sorted(_FAMILY_EVAL)}") from None
    return fn(tuple(word), z, tol)


def check_bb12(word: Word, z: complex, tol: float = 1e-8) -> bool:
    """Product identity Te = Se+ x invSe-: the bilateral sum splits at the
    sign boundary of the summation indices.  Both sides are summed
    independently (bilateral vs one-sided)."""
    word = _check_word(word)
    lhs = eval_te(word, z, tol=min(tol, 1e-9))
    rhs = 0j
    for j in range(len(word) + 1):
        rhs += (eval_se_plus(word[:j], z, tol=min(tol, 1e-10))
                * eval_inv_se_minus(word[j:], z, tol=min(tol, 1e-10)))
    return abs(lhs - rhs) < tol
