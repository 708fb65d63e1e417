"""Collector expansions: from diffeo data to multitangent series.

Two schemes produce the collector as a combination of multitangent symbols
with coefficient clusters in the diffeo data:

* symmetric scheme: the infinitesimal collector p_*(z) expanded over
  Tan^{s} symbols with clusters in the generator coefficients g_*s,
  driven by the one-row delta coefficients
      sum_{sum l = r-1} delta^{l1..lr} x1^l1..xr^lr = x1 (x1+x2) ... (x1+..+x_{r-1})
  (variant: delta_1 with r factors, giving the z-derivative p'_*);
* direct scheme: p^{+-1}(z) - z expanded over Te^{s} symbols with clusters
  in the displacement-power coefficients g^{+-}_{n,s}, driven by the
  two-row delta coefficients
      sum delta^{l}_{n} x^l = x1^{n2} (x1+x2)^{n3} ... (x1+..+x_{r-1})^{nr}.

Cluster monomials are kept abstract (tuples of generator weights, or of
(n, s) pairs), so one expansion serves both symbolic tables and numeric
substitution.  Reduction substitutes the monotangent form of every
multitangent and regrades; truncation keeps a term iff its cluster weight
is <= W throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .poly import Poly, Var
from .rat import R1, RAT
from .series import FormalDiffeo, Generator, power_coefficients
from .tangent import reduce_family
from .zeta import DEFAULT_NORMALIZATION, NormalizationConfig, ZetaExpr, word_weight

DELTA_R_CAP = 9


# ---------------------------------------------------------------------------
# delta coefficient tables


def _expand_linear_factors(factors, r: int) -> dict:
    """Expand a product of linear forms sum_{i in S} x_i into exponent tuples."""
    terms = {(0,) * r: 1}
    for support in factors:
        nxt: dict = {}
        for expo, c in terms.items():
            for i in support:
                key = expo[:i] + (expo[i] + 1,) + expo[i + 1:]
                nxt[key] = nxt.get(key, 0) + c
        terms = nxt
    return terms


@lru_cache(maxsize=None)
def _delta_sym_table(r: int) -> dict:
    """delta^{l}: [x^l] of x1 (x1+x2) ... (x1+...+x_{r-1}); sum l = r-1."""
    if r > DELTA_R_CAP:
        raise ValueError(f"delta table capped at depth {DELTA_R_CAP}")
    return _expand_linear_factors([range(k + 1) for k in range(r - 1)], r)


@lru_cache(maxsize=None)
def _delta_sym1_table(r: int) -> dict:
    """delta_1^{l}: [x^l] of x1 (x1+x2) ... (x1+...+x_r); sum l = r."""
    if r > DELTA_R_CAP:
        raise ValueError(f"delta table capped at depth {DELTA_R_CAP}")
    return _expand_linear_factors([range(k + 1) for k in range(r)], r)


@lru_cache(maxsize=None)
def _delta_direct_table(rest: tuple, r: int) -> dict:
    """[x^l] of prod_j (x1+...+x_{j-1})^{n_j} for n = (n_1, rest...).

    Only n_2..n_r enter the polynomial; the displayed degree constraint of
    the source formula does not match this polynomial and is ignored — the
    polynomial itself is unambiguous.
    """
    if r > DELTA_R_CAP:
        raise ValueError(f"delta table capped at depth {DELTA_R_CAP}")
    factors = []
    for j, nj in enumerate(rest, start=2):
        factors.extend([range(j - 1)] * nj)
    return _expand_linear_factors(factors, r)


def delta_coefficients(kind: str, r: int, l, n=None) -> int:
    """Single delta coefficient; kind in {"sym", "sym1", "direct"}."""
    l = tuple(l)
    if len(l) != r:
        raise ValueError("exponent row must have length r")
    if kind == "sym":
        return _delta_sym_table(r).get(l, 0)
    if kind == "sym1":
        return _delta_sym1_table(r).get(l, 0)
    if kind == "direct":
        if n is None or len(n) != r:
            raise ValueError("direct delta needs the lower row n of length r")
        return _delta_direct_table(tuple(n)[1:], r).get(l, 0)
    raise ValueError(f"unknown delta kind {kind!r}")


# ---------------------------------------------------------------------------
# expansion container


def cluster_weight(mono: tuple) -> int:
    """Total weight of a cluster monomial (any of the three key styles)."""
    w = 0
    for x in mono:
        if isinstance(x, Var):
            w += x.weight
        elif isinstance(x, tuple):
            n, s = x
            w += s + n - 1
        else:
            w += x
    return w


@dataclass
class CollectorExpansion:
    """Weighted term list: (word, cluster monomial) -> ZetaExpr coefficient.

    ``family`` is the multitangent symbol family ("Tan" for the symmetric
    scheme, "Te" for the direct one); after reduction every word is a
    single monotangent index (sigma,).  Monomials are sorted tuples of
    generator weights (symmetric), of (n, s) pairs (direct), of Poly Vars
    (after symbolic substitution), or () (fully numeric substitution).
    """

    scheme: str
    family: str
    cap: int
    reduced: bool = False
    terms: dict = field(default_factory=dict)

    def add(self, word: tuple, mono: tuple, coeff: ZetaExpr) -> None:
        if not coeff:
            return
        key = (tuple(word), tuple(mono))
        cur = self.terms.get(key)
        cur = coeff if cur is None else cur + coeff
        if cur:
            self.terms[key] = cur
        else:
            del self.terms[key]

    def term_weight(self, key) -> int:
        return cluster_weight(key[1])

    def max_weight(self) -> int:
        return max((self.term_weight(k) for k in self.terms), default=0)

    def graded(self) -> dict:
        """weight -> {(word, mono): coeff}, weights ascending."""
        out: dict = {}
        for key, coeff in self.terms.items():
            out.setdefault(self.term_weight(key), {})[key] = coeff
        return dict(sorted(out.items()))

    def sigma_table(self) -> dict:
        """Reduced form regrouped as {(sigma, mono): coeff}."""
        if not self.reduced:
            raise ValueError("monotangent table requires a reduced expansion")
        return {(w[0], m): c for (w, m), c in self.terms.items()}

    # rendering ------------------------------------------------------------
    def render_rows(self) -> list:
        """Rows "Te^sigma [coeff] monomial", weight then lowest word first."""
        def mono_str(mono):
            parts = []
            for x in sorted(set(mono)):
                k = mono.count(x)
                if isinstance(x, Var):
                    base = str(x)
                elif isinstance(x, tuple):
                    base = "g[%d,%d]" % x
                else:
                    base = f"g*{x}"
                parts.append(base + (f"^{k}" if k > 1 else ""))
            return " ".join(parts)

        label = "Te" if self.reduced else self.family
        rows = []
        for key in sorted(self.terms,
                          key=lambda k: (self.term_weight(k), k[0], k[1])):
            word, mono = key
            sup = ",".join(map(str, word))
            row = f"{label}^{{{sup}}} [{self.terms[key].render()}]"
            ms = mono_str(mono)
            if ms:
                row += " " + ms
            rows.append(row)
        return rows

    # JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for key in sorted(self.terms,
                          key=lambda k: (self.term_weight(k), k[0], k[1])):
            word, mono = key
            terms.append({
                "word": list(word),
                "monomial": [list(x) if isinstance(x, tuple) else
                             (x.name if isinstance(x, Var) else x)
                             for x in mono],
                "weight": self.term_weight(key),
                "coeff": self.terms[key].to_json(),
            })
        return {"scheme": self.scheme, "family": self.family,
                "cap": self.cap, "reduced": self.reduced, "terms": terms}


# ---------------------------------------------------------------------------
# symmetric scheme


def _ordered_clusters(support: tuple, W: int):
    """Yield ordered tuples of generator weights with total <= W."""

    def rec(prefix, budget):
        yield prefix
        for s in support:
            if s <= budget:
                yield from rec(prefix + (s,), budget - s)

    for tup in rec((), W):
        if tup:
            yield tup


def collector_symmetric(gstar: Generator, W: int | None = None,
                        variant: str = "sym") -> CollectorExpansion:
    """Infinitesimal collector p_* over Tan symbols (variant "sym1": p'_*).

    Every ordered cluster (g_*w1 .. g_*wr) with total weight <= W meets
    every delta row l of its depth; the attached multitangent word is
    s_i = (w_i - 1) + l_i and the rational coefficient is
    (-1)^{r-1} delta^l prod (s_i - 1)! / (w_i - 2)!.
    """
    W = gstar.cap if W is None else W
    if variant not in ("sym", "sym1"):
        raise ValueError("variant must be 'sym' or 'sym1'")
    table = _delta_sym_table if variant == "sym" else _delta_sym1_table
    base_sign = 0 if variant == "sym" else 1
    out = CollectorExpansion(scheme=variant, family="Tan", cap=W)
    support = tuple(sorted(gstar.coeffs))
    if not support:
        return out
    for gw in _ordered_clusters(support, W):
        r = len(gw)
        d = tuple(w - 1 for w in gw)
        sign = RAT((-1) ** (r - 1 + base_sign))
        for l, delta in table(r).items():
            word = tuple(d[i] + l[i] for i in range(r))
            c = sign * delta
            for i in range(r):
                c = c * RAT(math.factorial(word[i] - 1),
                            math.factorial(d[i] - 1))
            out.add(word, tuple(sorted(gw)), ZetaExpr.word((), c))
    return out


# ---------------------------------------------------------------------------
# direct scheme


def collector_direct(g: FormalDiffeo, sign: str = "+",
                     W: int | None = None) -> CollectorExpansion:
    """Collector p^{+-1}(z) - z over Te symbols with (n, s) pair clusters.

    Clusters record which displacement-power coefficients g^{+-}_{n,s}
    multiply each term; substitute with ``direct_cluster_values``.  The
    cluster weight of g^{+-}_{n,s} is s + n - 1 (its total degree in the
    diffeo coefficients).

    The composite substitution operator acts on the test function z, and
    the innermost slot applies its derivatives to z directly, so only its
    linear part survives: the first entry of every ordered cluster has
    displacement power n_1 = 1.  Each later slot's derivative count n_i
    distributes over the earlier factors, which is what the direct delta
    table encodes; in particular sum l_i = n_2 + ... + n_r, so every term
    satisfies cluster weight - word weight = 1.  The operator's 1/n_i!
    combines with the integer delta multinomial into the split
    coefficient, hence the prod 1/n_i! normalization here.

    The inverse iterate composes the site operators in the opposite
    order, so the "-" scheme is the mirror image: same data, emitted with
    reversed words (the linear slot sits last).  Both facts are pinned by
    the exponential relation between the schemes: exp(+-p_* d/dz).z must
    reproduce p^{+-1} weight by weight, which the test suite checks
    exactly in the Te-word algebra.
    """
    W = g.cap if W is None else W
    out = CollectorExpansion(scheme="direct" + sign, family="Te", cap=W)
    pw = {}
    n = 1
    while 2 * n <= W:
        row = power_coefficients(g, sign, n, W - n + 1)
        if row:
            pw[n] = sorted(row)
        n += 1
    if not pw:
        return out
    # ordered tuples of (n_i, s_i) with total cluster weight <= W and
    # n_1 = 1 in the leading slot
    pairs = [(n, s) for n in pw for s in pw[n]]
    first = [(n, s) for (n, s) in pairs if n == 1]

    def rec(prefix, budget):
        yield prefix
        for (n2, s2) in pairs:
            wgt = s2 + n2 - 1
            if wgt <= budget:
                yield from rec(prefix + ((n2, s2),), budget - wgt)

    def clusters():
        for (n1, s1) in first:
            yield from rec(((n1, s1),), W - s1)

    for cluster in clusters():
        r = len(cluster)
        if not r:
            continue
        ns = tuple(p[0] for p in cluster)
        sigma = tuple(p[1] for p in cluster)
        dtable = _delta_direct_table(ns[1:], r)
        base = RAT((-1) ** (sum(ns) - 1))
        for n2 in ns[1:]:
            base = base / math.factorial(n2)
        for l, delta in dtable.items():
            word = tuple(sigma[i] + l[i] - 1 for i in range(r))
            c = base * delta
            for i in range(r):
                c = c * RAT(math.factorial(word[i] - 1),
                            math.factorial(sigma[i] - 2))
            if sign == "-":
                word = word[::-1]
            out.add(word, tuple(sorted(cluster)), ZetaExpr.word((), c))
    return out


def direct_cluster_values(g: FormalDiffeo, sign: str = "+",
                          W: int | None = None) -> dict:
    """(n, s) -> g^{+-}_{n,s} for substitution into the direct scheme."""
    W = g.cap if W is None else W
    vals: dict = {}
    n = 1
    while 2 * n <= W:
        for s, v in power_coefficients(g, sign, n, W - n + 1).items():
            vals[(n, s)] = v
        n += 1
    return vals


# ---------------------------------------------------------------------------
# reduction and substitution


def reduce_collector(e: CollectorExpansion, part: str = "log",
                     cfg: NormalizationConfig = DEFAULT_NORMALIZATION
                     ) -> CollectorExpansion:
    """Monotangent form: substitute the reduction of every multitangent.

    Words with an edge index 1 (possible when weight-2 data is present)
    reduce in normalized mode.  Coefficients multiply as zeta expressions;
    the grading sigma + zeta-weight = cluster weight - 1 holds termwise
    for the symmetric scheme.

    The default Tan convention here is the full mould logarithm
    (part="log"): the infinitesimal collector is a derivation, and with
    this convention (only) the even single-zeta rows cancel from the
    reduced tables.  The alternal projection (part="alternal", the default
    of reduce_Tan's own tables) differs by depth-one even-zeta terms.
    """
    if e.reduced:
        return e
    out = CollectorExpansion(scheme=e.scheme, family=e.family,
                             cap=e.cap, reduced=True)
    for (word, mono), coeff in e.terms.items():
        combo = reduce_family(e.family, word, normalized=True, cfg=cfg,
                              part=part)
        for sigma, zc in combo.terms.items():
            out.add((sigma,), mono, (coeff * zc).normalize(cfg))
        if combo.constant:
            raise ValueError(
                f"constant term in reduction of {e.family}^{word}")
    return out


def substitute_generator(e: CollectorExpansion,
                         gstar: Generator) -> CollectorExpansion:
    """Replace abstract generator-weight monomials by g_* coefficient values.

    Rational values fold into the zeta coefficient (empty monomial); Poly
    values re-key terms by their symbol monomials, exactly.
    """
    out = CollectorExpansion(scheme=e.scheme, family=e.family,
                             cap=e.cap, reduced=e.reduced)
    for (word, mono), coeff in e.terms.items():
        val = R1
        for s in mono:
            val = val * gstar.coeff(s)
        if isinstance(val, Poly):
            for vmono, c in val.terms.items():
                out.add(word, vmono, coeff.scale(c))
        elif val:
            out.add(word, (), coeff.scale(val))
    return out


def substitute_clusters(e: CollectorExpansion, values: dict) -> CollectorExpansion:
    """Replace (n, s) pair clusters by concrete values (direct scheme)."""
    out = CollectorExpansion(scheme=e.scheme, family=e.family,
                             cap=e.cap, reduced=e.reduced)
    for (word, mono), coeff in e.terms.items():
        val = R1
        for pair in mono:
            val = val * values.get(pair, 0)
        if isinstance(val, Poly):
            for vmono, c in val.terms.items():
                out.add(word, vmono, coeff.scale(c))
        elif val:
            out.add(word, (), coeff.scale(val))
    return out


def check_grading(e: CollectorExpansion) -> bool:
    """Exact weight bookkeeping of every reduced term.

    In every scheme, sigma + zeta weight == cluster weight - 1: the
    symmetric delta polynomial has degree r - 1, and in the direct scheme
    sum l_i = n_2 + ... + n_r while the leading slot carries n_1 = 1.
    """
    for (word, mono), coeff in e.terms.items():
        w = cluster_weight(mono)
        for (g, zw) in coeff.terms:
            if w - (word[0] + word_weight(zw) + g) != 1:
                return False
    return True
