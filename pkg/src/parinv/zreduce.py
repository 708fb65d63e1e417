"""Exact reduction of multizeta words onto a display basis.

Every convergent zeta word of weight <= 12 is rewritten as a rational
polynomial in a small generator set:

    z2, z3, z5, z7, z9, z11,  z(6,2), z(8,2), z(10,2),  and one extra
    depth-3 generator at weight 11 and one at weight 12,

matching the dimensions 1,1,1,2,2,3,4,5,7,9,12 of the graded pieces in
weights 2..12.  The linear relations imposed are the double-shuffle
family: for convergent u, v the quasi-shuffle (sum) and shuffle
(iterated-integral) linearizations of the product agree, and for the
single divergent letter 1 the two linearizations of 1 * v differ only in
divergent words, which cancel.  The builder performs exact Gaussian
elimination per weight, checks the expected dimensions, and verifies that
the chosen generator monomials form a basis.

Tables are built once by ``scripts/gen_zeta_reduction.py`` and shipped as
package data; runtime use loads the JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .rat import R0, R1, RAT, rat, rat_str
from .zeta import ZetaExpr, stuffle_product, word_weight, zeta_word_numeric

EXPECTED_DIMS = {0: 1, 1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 3,
                 8: 4, 9: 5, 10: 7, 11: 9, 12: 12}

# generator words, ascending weight; higher-depth completions are chosen by
# the builder from these candidates (first that completes a basis wins).
# New irreducibles at weight w and depth d only occur for w + d even, so the
# weight-12 completion must have depth 4 (depth 2 is already covered by
# z(10,2)); weight 11 admits a depth-3 completion.
BASE_GENERATORS = [(2,), (3,), (5,), (6, 2), (7,), (9,), (8, 2), (11,),
                   (10, 2)]
COMPLETION_CANDIDATES = {
    11: [(6, 3, 2), (5, 3, 3), (8, 2, 1)],
    12: [(6, 4, 1, 1), (8, 2, 1, 1), (5, 4, 2, 1), (4, 4, 2, 2)],
}

DATA_RESOURCE = "zeta_reduction.json"


# ---------------------------------------------------------------------------
# word combinatorics


def convergent_words(w: int) -> list:
    """All compositions of w with first part >= 2 (outer index largest)."""
    if w == 0:
        return [()]

    def rec(rest, first):
        if rest == 0:
            yield ()
            return
        lo = 2 if first else 1
        for s in range(lo, rest + 1):
            for tail in rec(rest - s, False):
                yield (s,) + tail

    return [t for t in rec(w, True)]


def _encode(word: tuple) -> tuple:
    """Composition -> binary letters (0 = x, 1 = y), outermost first."""
    bits = []
    for s in word:
        bits.extend([0] * (s - 1))
        bits.append(1)
    return tuple(bits)


def _decode(bits: tuple) -> tuple:
    word = []
    run = 0
    for b in bits:
        if b:
            word.append(run + 1)
            run = 0
        else:
            run += 1
    if run:
        raise ValueError("binary word does not end with y")
    return tuple(word)


@lru_cache(maxsize=None)
def _shuffle_bits(a: tuple, b: tuple) -> tuple:
    """Shuffle product of two binary words, as ((word, mult), ...)."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict = {}
    for w, m in _shuffle_bits(a[:-1], b):
        out[w + a[-1:]] = out.get(w + a[-1:], 0) + m
    for w, m in _shuffle_bits(a, b[:-1]):
        out[w + b[-1:]] = out.get(w + b[-1:], 0) + m
    return tuple(out.items())


def shuffle_words(u: tuple, v: tuple) -> dict:
    """Shuffle linearization of Ze^u Ze^v as {word: integer multiplicity}."""
    out: dict = {}
    for bits, m in _shuffle_bits(_encode(u), _encode(v)):
        w = _decode(bits)
        out[w] = out.get(w, 0) + m
    return out


def stuffle_words(u: tuple, v: tuple) -> dict:
    expr = stuffle_product(u, v)
    out = {}
    for (g, w), c in expr.terms.items():
        if g:
            raise ValueError("unexpected offset power in stuffle")
        out[w] = out.get(w, R0) + c
    return out


def double_shuffle_relation(u: tuple, v: tuple) -> dict:
    """stuffle(u,v) - shuffle(u,v): a relation among convergent words."""
    rel = {w: RAT(c) for w, c in stuffle_words(u, v).items()}
    for w, m in shuffle_words(u, v).items():
        c = rel.get(w, R0) - m
        if c:
            rel[w] = c
        else:
            rel.pop(w, None)
    return rel


def regularized_relation(v: tuple) -> dict:
    """The two linearizations of 1 * v agree up to divergent words.

    Both the quasi-shuffle and the shuffle of the single letter 1 with a
    convergent v contain the same divergent (leading-1) words; their
    difference is a nontrivial relation among convergent words (for
    v = (2,) it is Euler's Ze^3 = Ze^{2,1}).
    """
    rel = double_shuffle_relation((1,), v)
    bad = [w for w in rel if w and w[0] == 1]
    if bad:
        raise AssertionError(f"divergent words survive regularization: {bad}")
    return rel


# ---------------------------------------------------------------------------
# exact linear algebra over sparse rational rows


def _row_sub(row: dict, f, prow: dict) -> None:
    for c, v in prow.items():
        nv = row.get(c, R0) - f * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def rref(rows, keyorder=None) -> dict:
    """Reduced row echelon form of sparse rows; returns {pivot_key: row}.

    Pivot columns are chosen minimal in ``keyorder``; each stored pivot
    row then only involves larger columns, so one descending pass of
    back-substitution fully reduces the system.
    """
    kf = keyorder if keyorder is not None else (lambda k: k)
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row, key=kf)
            if c in pivots:
                _row_sub(row, row[c], pivots[c])
            else:
                inv = R1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
    for c in sorted(pivots, key=kf, reverse=True):
        prow = pivots[c]
        for c2 in [k for k in list(prow) if k != c and k in pivots]:
            if c2 in prow:
                _row_sub(prow, prow[c2], pivots[c2])
    return pivots


def _solve_square(rows: list, rhs_dim_keys: list) -> list:
    """Invert the matrix whose i-th row is the sparse dict rows[i].

    Returns inv as list of dicts: inv[j][i] = (M^{-1})_{ji}, with column
    keys taken from rhs_dim_keys.
    """
    n = len(rows)
    if n != len(rhs_dim_keys):
        raise ValueError("matrix is not square")
    aug = []
    for i, row in enumerate(rows):
        r = {("c", k): v for k, v in row.items()}
        r[("e", i)] = R1
        aug.append(r)
    piv = rref(aug, keyorder=lambda k: (k[0] != "c", k[1]))
    inv = [None] * n
    kidx = {k: j for j, k in enumerate(rhs_dim_keys)}
    for key, prow in piv.items():
        if key[0] != "c":
            raise ValueError("matrix is singular")
        # row-reducing [M | I] leaves [I | M^-1]
        inv[kidx[key[1]]] = {k[1]: v for k, v in prow.items() if k[0] == "e"}
    if any(r is None for r in inv):
        raise ValueError("matrix is singular")
    return inv


# ---------------------------------------------------------------------------
# per-weight reduction builder


def _monomials(generators: list, w: int) -> list:
    """Multisets of generator words with total weight w, as sorted tuples."""
    gens = [g for g in generators if word_weight(g) <= w]

    def rec(i, rest):
        if rest == 0:
            yield ()
            return
        for j in range(i, len(gens)):
            gw = word_weight(gens[j])
            if gw <= rest:
                for tail in rec(j, rest - gw):
                    yield (gens[j],) + tail

    return [m for m in rec(0, w)]


def _monomial_words(mono: tuple) -> dict:
    """Expand a product of generator words into words via quasi-shuffle."""
    expr = ZetaExpr.word(())
    for g in mono:
        expr = expr * ZetaExpr.word(g)
    return {w: c for (gp, w), c in expr.terms.items()}


def weight_pivots(w: int, verbose=False):
    """Eliminate the relation rows at one weight: (pivot rows, free words)."""
    words = convergent_words(w)
    rows = []
    for a in range(2, w - 1):
        b = w - a
        if b < a or b < 2:
            continue
        ua = convergent_words(a)
        ub = convergent_words(b)
        for i, u in enumerate(ua):
            for v in (ub if a != b else ub[i:]):
                rows.append(double_shuffle_relation(u, v))
    for v in convergent_words(w - 1):
        rows.append(regularized_relation(v))
    piv = rref(rows)
    free = [wd for wd in words if wd not in piv]
    dim = len(free)
    if dim != EXPECTED_DIMS.get(w, dim):
        raise AssertionError(
            f"weight {w}: relation corank {dim}, expected {EXPECTED_DIMS[w]}")
    if verbose:
        print(f"weight {w}: {len(words)} words, dim {dim}, "
              f"{len(rows)} relations", flush=True)
    return piv, free


def build_weight(w: int, generators: list, pivots=None, verbose=False):
    """Reduction table for one weight: word -> {monomial: coeff}."""
    words = convergent_words(w)
    if w == 0:
        return {(): {(): R1}}
    piv, free = pivots if pivots is not None else weight_pivots(w, verbose)
    dim = len(free)

    def free_coords(word):
        if word in piv:
            return {f: -c for f, c in piv[word].items() if f != word}
        return {word: R1}

    monos = _monomials(generators, w)
    if len(monos) != dim:
        raise AssertionError(
            f"weight {w}: {len(monos)} display monomials for dimension {dim}")
    mrows = []
    for m in monos:
        coords: dict = {}
        for word, c in _monomial_words(m).items():
            for f, cf in free_coords(word).items():
                nv = coords.get(f, R0) + c * cf
                if nv:
                    coords[f] = nv
                else:
                    coords.pop(f, None)
        mrows.append(coords)
    inv = _solve_square(mrows, free)  # inv[j]: free[j] over monomial indices
    fidx = {f: j for j, f in enumerate(free)}
    table = {}
    for word in words:
        out: dict = {}
        for f, cf in free_coords(word).items():
            for mi, c in inv[fidx[f]].items():
                nv = out.get(mi, R0) + cf * c
                if nv:
                    out[mi] = nv
                else:
                    out.pop(mi, None)
        table[word] = {monos[mi]: c for mi, c in out.items()}
    return table


def build_tables(max_weight: int = 12, verbose=False):
    """Reduction tables and the chosen generator list, all weights <= cap."""
    generators = [g for g in BASE_GENERATORS if word_weight(g) <= max_weight]
    tables = {0: {(): {(): R1}}}
    for w in range(2, max_weight + 1):
        pivots = weight_pivots(w, verbose=verbose)
        cands = [None]
        if EXPECTED_DIMS.get(w, 0) > len(_monomials(generators, w)):
            cands = COMPLETION_CANDIDATES.get(w, [])
            if not cands:
                raise AssertionError(f"no completion candidate at weight {w}")
        last_err = None
        for cand in cands:
            gens = generators + [cand] if cand else generators
            try:
                tables[w] = build_weight(w, sorted(gens, key=word_weight),
                                         pivots=pivots)
                generators = gens
                last_err = None
                if verbose and cand:
                    print(f"weight {w}: completed basis with "
                          f"zeta{cand}", flush=True)
                break
            except (AssertionError, ValueError) as e:
                last_err = e
        if last_err is not None:
            raise last_err
    return sorted(generators, key=word_weight), tables


# ---------------------------------------------------------------------------
# display combinations


def generator_name(word: tuple) -> str:
    return "z" + "_".join(map(str, word))


def _mono_render(mono: tuple) -> str:
    parts = []
    for g in sorted(set(mono)):
        k = mono.count(g)
        base = "zeta(%s)" % ",".join(map(str, g))
        parts.append(base + (f"^{k}" if k > 1 else ""))
    return " ".join(parts)


@dataclass
class DisplayCombo:
    """Rational combination of display-basis monomials.

    Keys are sorted tuples of generator words; () is the rational part.
    """

    terms: dict = field(default_factory=dict)

    def add(self, mono: tuple, coeff) -> None:
        coeff = rat(coeff)
        cur = self.terms.get(mono, R0) + coeff
        if cur:
            self.terms[mono] = cur
        else:
            self.terms.pop(mono, None)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DisplayCombo):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = DisplayCombo(dict(self.terms))
        for m, c in other.terms.items():
            out.add(m, c)
        return out

    def scale(self, c) -> "DisplayCombo":
        c = rat(c)
        if not c:
            return DisplayCombo()
        return DisplayCombo({m: v * c for m, v in self.terms.items()})

    def weight(self) -> int:
        return max((sum(word_weight(g) for g in m) for m in self.terms),
                   default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(word_weight(g) for g in kv[0]),
                                      kv[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mag = rat_str(abs(c))
            ms = _mono_render(mono)
            if ms and mag == "1":
                body = ms
            else:
                body = mag + (" " + ms if ms else "")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self):
        return [{"monomial": [list(g) for g in m], "coeff": rat_str(c)}
                for m, c in self.sorted_terms()]

    def eval_numeric(self, values: dict) -> float:
        tot = 0.0
        for m, c in self.terms.items():
            x = float(c)
            for g in m:
                x *= values[g]
            tot += x
        return tot


@dataclass(frozen=True)
class ReductionTable:
    generators: tuple
    tables: dict          # weight -> word -> {mono: RAT}
    numeric: dict         # generator word -> float (may be partial)

    @property
    def max_weight(self) -> int:
        return max(self.tables)

    def reduce_word(self, word: tuple) -> DisplayCombo:
        w = word_weight(word)
        try:
            tab = self.tables[w]
            return DisplayCombo(dict(tab[tuple(word)]))
        except KeyError:
            raise KeyError(f"word {word} not covered (weight cap "
                           f"{self.max_weight})") from None

    def to_display(self, expr: ZetaExpr) -> DisplayCombo:
        """Rewrite a zeta expression over the display basis, exactly."""
        out = DisplayCombo()
        for (g, word), c in expr.terms.items():
            if g:
                raise ValueError("offset power in zeta expression; "
                                 "normalize first")
            for m, cm in self.reduce_word(word).terms.items():
                out.add(m, c * cm)
        return out

    def generator_values(self, tol: float = 1e-12) -> dict:
        vals = dict(self.numeric)
        for g in self.generators:
            if g not in vals:
                vals[g] = zeta_word_numeric(g, tol)
        return vals

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "numeric": {generator_name(g): repr(v)
                        for g, v in self.numeric.items()},
            "tables": {
                str(w): {
                    ",".join(map(str, word)): [
                        [[list(g) for g in m], rat_str(c)]
                        for m, c in tab[word].items()
                    ] for word in tab
                } for w, tab in self.tables.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReductionTable":
        gens = tuple(tuple(g) for g in data["generators"])
        name2g = {generator_name(g): g for g in gens}
        numeric = {name2g[k]: float(v) for k, v in data["numeric"].items()}
        tables = {}
        for ws, tab in data["tables"].items():
            t = {}
            for key, entries in tab.items():
                word = tuple(int(x) for x in key.split(",")) if key else ()
                t[word] = {tuple(tuple(g) for g in m): rat(c)
                           for m, c in entries}
            tables[int(ws)] = t
        return cls(generators=gens, tables=tables, numeric=numeric)


def save_tables(table: ReductionTable, path) -> None:
    Path(path).write_text(json.dumps(table.to_json()))


def load_tables(path=None) -> ReductionTable:
    if path is not None:
        return ReductionTable.from_json(json.loads(Path(path).read_text()))
    data = resources.files("parinv").joinpath("data", DATA_RESOURCE)
    return ReductionTable.from_json(json.loads(data.read_text()))


_DEFAULT: list = []


def default_table() -> ReductionTable:
    """The packaged weight-12 table, loaded once per process."""
    if not _DEFAULT:
        _DEFAULT.append(load_tables())
    return _DEFAULT[0]
