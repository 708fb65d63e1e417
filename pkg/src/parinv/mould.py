"""Mould operations.

A mould is a function of finite index sequences (tuples).  Operations:

    mul      (A x B)^w       = sum_{w = w'w''} A^{w'} B^{w''}
    compose  (A o B)^w       = sum_{w = w^1...w^s} A^{|w^1|,...,|w^s|} prod_i B^{w^i}
    logmu    log(M)          = N - N^2/2 + N^3/3 - ...   (N = M - 1, M^empty = 1)
    expmu    exp(N)          = 1 + N + N^2/2! + ...      (N^empty = 0)
    inverse  M^-1 w.r.t. mul

with |w^i| the sum of the entries of the factor.  Moulds are lazy: values
are computed on demand from a backing function and memoized, so derived
moulds (products, compositions, logs) cost nothing until evaluated.

Values may live in any commutative ring with +, -, * and scaling by
rationals; empty sums fall back to the ``zero`` attribute.

Symmetry types are checked via the shuffle sums:

    symmetral / alternal:  sum over sha(u,v) of M^w = M^u M^v  /  = 0
    symmetrel / alternel:  same with she(u,v)
"""

from __future__ import annotations

import math
from functools import lru_cache

from .rat import R0, R1, RAT
from .words import sha_counts, she_counts

# re-exported word combinatorics (they belong to this layer conceptually)
from .words import sha, she  # noqa: F401


def seq_weight(seq: tuple) -> int:
    return sum(seq)


class Mould:
    """Lazily evaluated, memoized mould."""

    __slots__ = ("_fn", "name", "zero", "_memo")

    def __init__(self, fn, name: str = "mould", zero=R0):
        self._fn = fn
        self.name = name
        self.zero = zero
        self._memo: dict = {}

    def __call__(self, seq):
        seq = tuple(seq)
        try:
            return self._memo[seq]
        except KeyError:
            val = self._fn(seq)
            self._memo[seq] = val
            return val

    @classmethod
    def from_table(cls, table: dict, name: str = "table", zero=R0) -> "Mould":
        tbl = {tuple(k): v for k, v in table.items()}
        return cls(lambda w: tbl.get(w, zero), name=name, zero=zero)

    def __repr__(self):
        return f"Mould({self.name})"


def _ksum(parts, zero):
    parts = list(parts)
    if not parts:
        return zero
    acc = parts[0]
    for p in parts[1:]:
        acc = acc + p
    return acc


def _kprod(factors):
    acc = None
    for f in factors:
        acc = f if acc is None else acc * f
    return acc


def _compositions(n: int, k: int):
    """Cut positions splitting range(n) into k nonempty consecutive parts."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def mould_mul(A: Mould, B: Mould, name: str | None = None) -> Mould:
    def fn(w):
        return _ksum((A(w[:k]) * B(w[k:]) for k in range(len(w) + 1)), A.zero)

    return Mould(fn, name or f"({A.name} x {B.name})", zero=A.zero)


def mould_compose(A: Mould, B: Mould, name: str | None = None) -> Mould:
    """A o B; requires B^empty = 0 (finitely many summands per sequence)."""

    def fn(w):
        if not w:
            return A(())
        r = len(w)
        parts = []
        for s in range(1, r + 1):
            for lens in _compositions(r, s):
                cuts, pos = [], 0
                for ln in lens:
                    cuts.append(w[pos:pos + ln])
                    pos += ln
                weights = tuple(seq_weight(p) for p in cuts)
                parts.append(_kprod([A(weights)] + [B(p) for p in cuts]))
        return _ksum(parts, A.zero)

    return Mould(fn, name or f"({A.name} o {B.name})", zero=A.zero)


def _mul_power_terms(M: Mould, w: tuple, kmax: int):
    """Yield (k, product over a k-part split of w) for 1 <= k <= kmax."""
    r = len(w)
    for k in range(1, min(kmax, r) + 1):
        for lens in _compositions(r, k):
            pos, factors = 0, []
            for ln in lens:
                factors.append(M(w[pos:pos + ln]))
                pos += ln
            yield k, _kprod(factors)


def mould_logmu(M: Mould, name: str | None = None) -> Mould:
    """log with respect to mul; requires M^empty = 1."""

    def fn(w):
        if not w:
            return M.zero
        parts = [prod * RAT((-1) ** (k - 1), k)
                 for k, prod in _mul_power_terms(M, w, len(w))]
        return _ksum(parts, M.zero)

    return Mould(fn, name or f"logmu({M.name})", zero=M.zero)


def mould_expmu(N: Mould, one=R1, name: str | None = None) -> Mould:
    """exp with respect to mul; requires N^empty = 0."""

    def fn(w):
        if not w:
            return one
        parts = [prod * RAT(1, math.factorial(k))
                 for k, prod in _mul_power_terms(N, w, len(w))]
        return _ksum(parts, N.zero)

    return Mould(fn, name or f"expmu({N.name})", zero=N.zero)


def mould_inverse(M: Mould, name: str | None = None) -> Mould:
    """Inverse w.r.t. mul; requires M^empty = 1 (ring one)."""
    inv = Mould(lambda w: None, name or f"inv({M.name})", zero=M.zero)

    def fn(w):
        if not w:
            return M(())
        parts = [inv(w[:k]) * M(w[k:]) for k in range(len(w))]
        return -_ksum(parts, M.zero)

    inv._fn = fn
    return inv


# ---------------------------------------------------------------------------
# built-in moulds


def unit_mould() -> Mould:
    """1^bullet: 1 on the empty sequence, 0 elsewhere (unit for mul)."""
    return Mould(lambda w: R1 if not w else R0, "1")


def ident_mould() -> Mould:
    """I^bullet: 1 on length-1 sequences, 0 elsewhere (unit for compose)."""
    return Mould(lambda w: R1 if len(w) == 1 else R0, "I")


def e_minus_one_mould() -> Mould:
    """(E-1): 0 on empty, 1/r! on length r >= 1."""
    return Mould(lambda w: RAT(1, math.factorial(len(w))) if w else R0, "E-1")


def d_mould(a) -> Mould:
    """Geometric mould: 0 on empty, a^{r-1} on length r."""
    a = RAT(a) if not isinstance(a, (float, complex)) else a
    return Mould(lambda w: a ** (len(w) - 1) if w else R0, f"D_{a}")


def je_mould(z) -> Mould:
    """Single-index mould z^{-s1} on length 1, else 0."""

    def fn(w):
        if len(w) == 1:
            return z ** (-w[0])
        return R0

    return Mould(fn, "Je")


@lru_cache(maxsize=None)
def _two_tan_half_coeffs(n: int) -> tuple:
    """Exact Taylor coefficients of 2*tan(t/2) through t^n."""
    half = RAT(1, 2)
    sin = [R0] * (n + 1)
    cos = [R0] * (n + 1)
    for k in range(0, n + 1):
        if k % 2 == 1:
            sin[k] = RAT((-1) ** ((k - 1) // 2)) * half ** k / math.factorial(k)
        else:
            cos[k] = RAT((-1) ** (k // 2)) * half ** k / math.factorial(k)
    quot = [R0] * (n + 1)  # tan(t/2) = sin/cos, triangular division
    for k in range(n + 1):
        acc = sin[k]
        for j in range(1, k + 1):
            acc = acc - cos[j] * quot[k - j]
        quot[k] = acc  # cos[0] = 1
    return tuple(2 * q for q in quot)


def k_mould(cap: int = 32) -> Mould:
    """Index-independent mould: value on length r is [t^r] 2*tan(t/2)."""
    coeffs = _two_tan_half_coeffs(cap)

    def fn(w):
        r = len(w)
        if r == 0 or r > cap:
            return R0
        return coeffs[r]

    return Mould(fn, "K")


# ---------------------------------------------------------------------------
# symmetry checks

_SHUFFLES = {
    "symmetral": (sha_counts, True),
    "alternal": (sha_counts, False),
    "symmetrel": (she_counts, True),
    "alternel": (she_counts, False),
}


def symmetry_defect(M: Mould, kind: str, u: tuple, v: tuple):
    """sum over shuffles of M^w minus the target (M^u M^v or 0)."""
    counts_fn, is_sym = _SHUFFLES[kind]
    u, v = tuple(u), tuple(v)
    parts = [M(w) * RAT(n) for w, n in counts_fn(u, v).items()]
    lhs = _ksum(parts, M.zero)
    if is_sym:
        return lhs - M(u) * M(v)
    return lhs


def check_symmetry(M: Mould, kind: str, pairs, tol: float = 0.0) -> bool:
    """True if all symmetry defects vanish (exactly, or below tol)."""
    for u, v in pairs:
        d = symmetry_defect(M, kind, u, v)
        if tol:
            if abs(complex(d)) > tol:
                return False
        else:
            if d != M.zero and bool(d):
                return False
    return True


def weight_pairs(max_weight: int, max_len: int = 3):
    """Nonempty index-pair inventory for symmetry tests (entries >= 1)."""

    def seqs():
        out = [()]
        for _ in range(max_len):
            out = out + [s + (k,) for s in out
                         for k in range(1, max_weight + 1)
                         if seq_weight(s) + k <= max_weight]
        return [s for s in out if s]

    all_seqs = seqs()
    return [(u, v) for u in all_seqs for v in all_seqs
            if seq_weight(u) + seq_weight(v) <= max_weight]
