"""Identity-tangent diffeomorphism series.

A diffeo is g(z) = z + sum_{s>=2} g_s z^{1-s}; its infinitesimal generator
is g_*(z) = sum_{s>=2} g_*s z^{1-s}, related by g = exp(g_* d/dz) . z.
Coefficients live in any commutative ring (exact rationals, floats, or
Poly symbols); the index s is the weight and truncation is by weight.

Also provides the iterator recursion: for f = (unit shift) o g with
vanishing iterative residue, the normalized iterator
f^*(z) = z + sum_{n>=1} a_n z^{-n} solves f^*(f(z)) = f^*(z) + 1 with no
constant term, and a_n is computed by an order-by-order triangular solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .rat import R0, R1, RAT, rat_str

# ---------------------------------------------------------------------------
# tails: finite series sum_{k>=1} c_k z^-k as dict {k: coeff}; absent = 0.
# No typed zeros are ever stored, so mixed coefficient rings stay clean.


def _tail_iadd(acc: dict, t: dict, scalar=None) -> None:
    for k, c in t.items():
        v = c if scalar is None else scalar * c
        cur = acc.get(k)
        cur = v if cur is None else cur + v
        if cur:
            acc[k] = cur
        elif k in acc:
            del acc[k]


def _tail_mul(a: dict, b: dict, omax: int) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            if k > omax:
                continue
            v = c1 * c2
            cur = out.get(k)
            cur = v if cur is None else cur + v
            if cur:
                out[k] = cur
            elif k in out:
                del out[k]
    return out


def _tail_deriv(t: dict) -> dict:
    """d/dz of sum c_k z^-k."""
    return {k + 1: -k * c for k, c in t.items()}


def _binom_int(e: int, j: int) -> RAT:
    """Binomial C(e, j) for integer e (possibly negative)."""
    if e >= 0:
        return RAT(math.comb(e, j)) if j <= e else R0
    return RAT((-1) ** j * math.comb(-e + j - 1, j))


def _one_plus_pow(v: dict, e: int, omax: int) -> dict:
    """(1 + v)^e truncated; v a tail with positive valuation; order 0 kept."""
    out = {0: R1}
    if not v or omax < 1:
        return out
    val = min(v)
    vj = v
    j = 1
    while j * val <= omax:
        _tail_iadd(out, vj, _binom_int(e, j))
        j += 1
        if j * val > omax:
            break
        vj = _tail_mul(vj, v, omax)
    return out


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class FormalDiffeo:
    """g(z) = z + sum g_s z^{1-s}; coeffs maps s >= 2 to its coefficient."""

    coeffs: dict = field(default_factory=dict)
    cap: int = 12

    def __post_init__(self):
        clean = {s: c for s, c in self.coeffs.items() if c and s <= self.cap}
        if any(s < 2 for s in clean):
            raise ValueError("diffeo coefficients start at weight 2")
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, s: int):
        return self.coeffs.get(s, R0)

    def is_identity(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class Generator:
    """g_*(z) = sum g_*s z^{1-s}; coeffs maps s >= 2 to g_*s."""

    coeffs: dict = field(default_factory=dict)
    cap: int = 12

    def __post_init__(self):
        clean = {s: c for s, c in self.coeffs.items() if c and s <= self.cap}
        if any(s < 2 for s in clean):
            raise ValueError("generator coefficients start at weight 2")
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, s: int):
        return self.coeffs.get(s, R0)

    def residue(self):
        """Iterative residue rho = -g_*2."""
        return -self.coeffs.get(2, R0)

    def is_reflexive(self) -> bool:
        """True iff only even degrees d = s-1 appear (odd weights s)."""
        return all(s % 2 == 1 for s in self.coeffs)

    def scaled(self, t) -> "Generator":
        return Generator({s: t * c for s, c in self.coeffs.items()}, self.cap)


@dataclass(frozen=True)
class IteratorSeries:
    """f^*(z) = z + sum_{n=1}^{order} a_n z^-n (constant-free)."""

    coeffs: tuple = ()
    order: int = 0

    def a(self, n: int):
        return self.coeffs[n - 1]


# ---------------------------------------------------------------------------
# core operations


def _disp(g) -> dict:
    """Displacement tail {s-1: g_s} of a diffeo or generator."""
    return {s - 1: c for s, c in g.coeffs.items()}


def _from_disp(t: dict, W: int) -> FormalDiffeo:
    return FormalDiffeo({k + 1: c for k, c in t.items() if k + 1 <= W}, W)


def compose_diffeos(g: FormalDiffeo, h: FormalDiffeo,
                    W: int | None = None) -> FormalDiffeo:
    """g o h, exact through weight W (default: the smaller cap)."""
    W = min(g.cap, h.cap) if W is None else W
    omax = W - 1
    v = {s: c for s, c in h.coeffs.items()}  # h(z) = z (1 + v(z))
    out = {k: c for k, c in _disp(h).items() if k <= omax}
    for s, gs in sorted(g.coeffs.items()):
        if s - 1 > omax:
            continue
        p = _one_plus_pow(v, 1 - s, omax - (s - 1))
        _tail_iadd(out, {k + s - 1: gs * c for k, c in p.items()})
    return _from_disp(out, W)


def identity_diffeo(W: int = 12) -> FormalDiffeo:
    return FormalDiffeo({}, W)


def inverse_diffeo(g: FormalDiffeo, W: int | None = None) -> FormalDiffeo:
    """Compositional inverse through weight W by Newton iteration.

    h <- h - (g(h(z)) - z) / g'(h(z)); the residual valuation doubles each
    pass, so a handful of iterations suffice at these caps.
    """
    W = g.cap if W is None else W
    omax = W - 1
    h = FormalDiffeo({s: -c for s, c in g.coeffs.items()}, W)
    for _ in range(max(4, W.bit_length() + 2)):
        res = _disp(compose_diffeos(g, h, W))  # g(h(z)) - z
        if not res:
            return h
        vh = {s: c for s, c in h.coeffs.items()}
        t: dict = {}  # g'(h(z)) - 1 = sum (1-s) g_s h(z)^-s
        for s, gs in g.coeffs.items():
            if s > omax:
                continue
            p = _one_plus_pow(vh, -s, omax - s)
            _tail_iadd(t, {k + s: gs * c for k, c in p.items()},
                       RAT(1 - s))
        delta = _tail_mul(res, _one_plus_pow(t, -1, omax), omax)
        new = dict(_disp(h))
        _tail_iadd(new, delta, -R1)
        h = _from_disp(new, W)
    raise RuntimeError("inverse iteration failed to stabilize")


def diffeo_from_generator(gstar: Generator, W: int | None = None) -> FormalDiffeo:
    """exp(g_* d/dz) . z: iterated derivation, truncated by weight."""
    W = gstar.cap if W is None else W
    omax = W - 1
    u = {k: c for k, c in _disp(gstar).items() if k <= omax}
    acc = dict(u)
    cur = u
    j = 1
    while cur:
        j += 1
        cur = _tail_mul(u, _tail_deriv(cur), omax)
        _tail_iadd(acc, cur, RAT(1, math.factorial(j)))
    return _from_disp(acc, W)


def generator_from_diffeo(g: FormalDiffeo, W: int | None = None) -> Generator:
    """Order-by-order inverse of diffeo_from_generator (exact roundtrip).

    g_*s enters the exponential linearly at weight s and only above s in
    the nonlinear terms, so each weight is corrected once, lowest first.
    """
    W = g.cap if W is None else W
    coeffs: dict = {}
    for s in range(2, W + 1):
        e = diffeo_from_generator(Generator(coeffs, W), W)
        want = g.coeffs.get(s)
        got = e.coeffs.get(s)
        if want is None and got is None:
            continue
        delta = (want - got if got is not None else want) \
            if want is not None else -got
        if delta:
            coeffs[s] = delta
    return Generator(coeffs, W)


def power_coefficients(g: FormalDiffeo, sign: str, n: int,
                       W: int | None = None) -> dict:
    """Coefficients of (g^{±1}(z) - z)^n = sum_s g^±_{n,s} z^{-s+1}."""
    if n < 1:
        raise ValueError("power must be >= 1")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    W = g.cap if W is None else W
    base = g if sign == "+" else inverse_diffeo(g, W)
    t = {k: c for k, c in _disp(base).items() if k <= W - 1}
    p = dict(t)
    for _ in range(n - 1):
        p = _tail_mul(p, t, W - 1)
    return {k + 1: c for k, c in p.items()}


def iterator_coefficients(g: FormalDiffeo, N: int) -> IteratorSeries:
    """Solve f^*(f(z)) = f^*(z) + 1 for f = (z -> z+1) o g, through z^-N.

    Triangular order-by-order solve: with P_m = f(z)^-m computed by the
    sparse division P_m * f = P_{m-1}, the order-(m+1) coefficient equation
    determines a_m, and the known part of higher orders is accumulated as
    each a_m lands.  Cost O(N^2) plus O(N * #coeffs) per power.
    """
    c = {s - 1: v for s, v in g.coeffs.items()}
    if 1 in c:
        raise ValueError(
            "nonzero iterative residue (weight-2 coefficient); "
            "no constant-free iterator exists")
    M = N + 1
    ck = sorted(c.items())
    # running equation residual: orders of (f - z - 1) + sum a_n (P_n - z^-n)
    resid = [0] * (M + 1)
    for k, v in c.items():
        if k <= M:
            resid[k] = v
    # P_0 = 1
    P = [0] * (M + 1)
    P[0] = 1
    a = []
    for m in range(1, N + 1):
        # P_m from P_{m-1}: q_{j+1} = p_j - q_j - sum_k c_k q_{j-k}
        q = [0] * (M + 1)
        for j in range(m - 1, M):
            acc = P[j] - q[j]
            for k, v in ck:
                if k > j:
                    break
                if q[j - k]:
                    acc = acc - v * q[j - k]
            q[j + 1] = acc
        P = q
        am = resid[m + 1] / m if resid[m + 1] else 0
        a.append(am)
        if am:
            for j in range(m + 2, M + 1):
                resid[j] = resid[j] + am * P[j]
    return IteratorSeries(tuple(a), N)


def iterator_residual_tail(g: FormalDiffeo, it: IteratorSeries,
                           omax: int) -> dict:
    """Tail of f^*(f(z)) - f^*(z) - 1 through order omax in z^-1.

    Zero at all orders <= N + 1 when ``it`` solves the iterator equation
    for f = (z -> z+1) o g through z^-N.
    """
    c = {s - 1: v for s, v in g.coeffs.items()}
    # f(z) = z + 1 + sum c_k z^-k = z (1 + w(z))
    w = {k + 1: v for k, v in c.items()}
    w[1] = w.get(1, R0) + R1
    res = dict(c)
    for n in range(1, it.order + 1):
        if n > omax:
            break
        an = it.coeffs[n - 1]
        if not an:
            continue
        fn = {k + n: cc for k, cc in _one_plus_pow(w, -n, omax - n).items()}
        fn[n] = fn[n] - R1  # subtract z^-n
        if not fn[n]:
            del fn[n]
        _tail_iadd(res, fn, an)
    return {k: v for k, v in res.items() if k <= omax and v}


def iterator_eval(it: IteratorSeries, z, terms: int | None = None):
    """z + sum_{n<=terms} a_n z^-n (plain truncation)."""
    terms = it.order if terms is None else min(terms, it.order)
    w = 1 / z
    acc = z
    p = w
    for n in range(terms):
        acc = acc + it.coeffs[n] * p
        p = p * w
    return acc


def diffeo_eval(g: FormalDiffeo, z):
    """Numeric g(z) (polynomial in 1/z)."""
    acc = z
    for s, c in g.coeffs.items():
        acc = acc + c * z ** (1 - s)
    return acc


# ---------------------------------------------------------------------------
# JSON interface


def diffeo_to_json(obj) -> dict:
    kind = "gstar" if isinstance(obj, Generator) else "g"
    out = {}
    for s, c in sorted(obj.coeffs.items()):
        if hasattr(c, "numerator"):
            out[str(s)] = rat_str(c)
        elif isinstance(c, float):
            out[str(s)] = c
        else:
            raise TypeError(f"coefficient {c!r} has no JSON form")
    return {"kind": kind, "coeffs": out, "cap": obj.cap}


def diffeo_from_json(data: dict):
    coeffs = {}
    for s, c in data["coeffs"].items():
        coeffs[int(s)] = RAT(Fraction(c)) if isinstance(c, str) else c
    cap = data.get("cap", max(coeffs, default=2))
    if data.get("kind", "g") == "gstar":
        return Generator(coeffs, cap)
    return FormalDiffeo(coeffs, cap)
