"""Exact polynomials in weighted formal symbols.

Coefficient ring for symbolic work with diffeomorphism data: the symbols
stand for Taylor coefficients (g_s) or generator coefficients (g_*s) kept
formal.  Every variable carries an integer weight; the total weight of a
monomial drives truncation downstream.  Coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rat import R0, R1, RAT, rat_str

NUMERIC = (int, float, complex, type(R0))


@dataclass(frozen=True, order=True)
class Var:
    """Formal symbol with a truncation weight (ordered by weight, name)."""

    weight: int
    name: str

    def __str__(self):
        return self.name


def gen_var(s: int) -> Var:
    """Generator coefficient symbol g_*s (weight s)."""
    return Var(s, f"g*{s}")


def diffeo_var(s: int) -> Var:
    """Diffeo coefficient symbol g_s (weight s)."""
    return Var(s, f"g{s}")


def mono_weight(mono: tuple) -> int:
    return sum(v.weight for v in mono)


class Poly:
    """Rational-coefficient polynomial in Var symbols.

    ``terms`` maps a sorted tuple of Vars (with repetition) to a nonzero
    rational.  Instances are immutable by convention.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, c) -> "Poly":
        c = RAT(c)
        return cls({(): c} if c else None)

    @classmethod
    def var(cls, v: Var, coeff=R1) -> "Poly":
        coeff = RAT(coeff)
        return cls({(v,): coeff} if coeff else None)

    # structure ------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, NUMERIC):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_weight(self) -> int:
        return max((mono_weight(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({mono_weight(m) for m in self.terms}) <= 1

    def truncate(self, W: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items()
                     if mono_weight(m) <= W})

    # arithmetic -----------------------------------------------------------
    def _iadd_term(self, mono, coeff) -> None:
        cur = self.terms.get(mono)
        if cur is None:
            if coeff:
                self.terms[mono] = coeff
            return
        cur = cur + coeff
        if cur:
            self.terms[mono] = cur
        else:
            del self.terms[mono]

    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, NUMERIC):
            return Poly.const(x)
        return None

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        out = Poly(self.terms)
        for m, c in other.terms.items():
            out._iadd_term(m, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NUMERIC):
            c = RAT(other)
            if not c:
                return Poly()
            return Poly({m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = Poly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._iadd_term(tuple(sorted(m1 + m2)), c1 * c2)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (R1 / RAT(other))

    def __pow__(self, n: int):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # evaluation -----------------------------------------------------------
    def substitute(self, values: dict):
        """Numeric value with each Var replaced from ``values``."""
        total = 0
        for m, c in self.terms.items():
            v = c
            for var in m:
                v = v * values[var]
            total = total + v
        return total

    # rendering ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (mono_weight(kv[0]), kv[0]))

    def render(self, var_fmt=str) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            body = []
            for v in sorted(set(m)):
                k = m.count(v)
                body.append(var_fmt(v) + (f"^{k}" if k > 1 else ""))
            mag = rat_str(abs(c))
            if not body or mag != "1":
                body.insert(0, mag)
            frag = " ".join(body)
            if not parts:
                parts.append(frag if c > 0 else "-" + frag)
            else:
                parts.append(("+ " if c > 0 else "- ") + frag)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.render()})"
