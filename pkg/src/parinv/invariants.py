"""Analytic invariants of identity-tangent diffeomorphisms.

The two collector schemes expand the same dynamics: the direct scheme
gives the iterate corrections p^{+-1}(z) - z over Te symbols, the
symmetric scheme the infinitesimal generator p_*(z) over Tan symbols.
Their Fourier modes at the nonzero frequencies omega = 2*pi*i*n are the
connector coefficients pi+-_omega and pi*_omega, and the invariants
follow by the sign correspondence

    n < 0 (northern modes):  A+ = pi+,  A- = pi-,  A = pi* / (2 pi i)
    n > 0 (southern modes):  A- = pi+,  A+ = pi-,  A = -pi* / (2 pi i)

Values are exact polynomials in 2*pi*i with multizeta coefficients
(PiExpr); numeric evaluation goes through the display-basis reduction
table.  Because p^{+-1} = exp(+-p_* d/dz).z and products of the series
only feed the harmonics |n| >= 2, the leading modes satisfy
pi+ = pi* = -pi- exactly, weight by weight; ``first_harmonic_displays``
exposes both sides in a canonical form (zeta(2) folded into powers of
2*pi*i) where the equality is literal.

The collectors admit a second, Borel-side reading: replacing Te^sigma by
z^-sigma turns them into power series whose Borel transforms have simple
poles over 2*pi*i*n; ``borel_values`` evaluates the polar coefficient,
related to the Fourier modes by sign(Im omega) * 2*pi*i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .collector import (CollectorExpansion, cluster_weight, collector_direct,
                        collector_symmetric, direct_cluster_values,
                        reduce_collector, substitute_clusters,
                        substitute_generator)
from .rat import RAT
from .series import FormalDiffeo, Generator, generator_from_diffeo
from .tangent import (TWO_PI_I, MonotangentCombo, PiExpr,
                      multitangent_fourier)
from .zreduce import ReductionTable, default_table

__all__ = [
    "as_monotangent", "sigma_display", "pstar_combo", "direct_combo",
    "connector_fourier", "pi_numeric", "pi_canonical",
    "invariant_modes", "InvariantMode", "invariants_numeric", "InvariantSet",
    "borel_pole_value", "borel_values", "first_harmonic_displays",
]


def as_monotangent(expansion: CollectorExpansion) -> MonotangentCombo:
    """Collapse a reduced, fully substituted expansion to sum c_sigma Te^sigma."""
    if not expansion.reduced:
        raise ValueError("expansion must be reduced to monotangents first")
    combo = MonotangentCombo.zero()
    for (word, mono), coeff in expansion.terms.items():
        if mono != ():
            raise ValueError(f"unsubstituted cluster monomial {mono}")
        combo = combo + MonotangentCombo({word[0]: coeff})
    return combo


def sigma_display(expansion: CollectorExpansion, table=None) -> dict:
    """sigma -> DisplayCombo for a reduced, substituted expansion."""
    table = table or default_table()
    out = {}
    for sigma, coeff in sorted(as_monotangent(expansion).terms.items()):
        dc = table.to_display(coeff)
        if dc:
            out[sigma] = dc
    return out


def _slices(reduced: CollectorExpansion, substitute) -> dict:
    """Cluster weight -> MonotangentCombo for a reduced expansion."""
    byw: dict = {}
    for (word, mono), coeff in reduced.terms.items():
        w = cluster_weight(mono)
        part = byw.setdefault(w, CollectorExpansion(
            scheme=reduced.scheme, family=reduced.family,
            cap=reduced.cap, reduced=True))
        part.add(word, mono, coeff)
    return {w: as_monotangent(substitute(part))
            for w, part in sorted(byw.items())}


def pstar_slices(gstar: Generator, W: int) -> dict:
    """Weight -> monotangent piece of the generator collector, <= W."""
    red = reduce_collector(collector_symmetric(gstar, W))
    return _slices(red, lambda e: substitute_generator(e, gstar))


def direct_slices(g: FormalDiffeo, sign: str, W: int) -> dict:
    """Weight -> monotangent piece of the +-1 iterate correction, <= W."""
    red = reduce_collector(collector_direct(g, sign, W))
    values = direct_cluster_values(g, sign, W)
    return _slices(red, lambda e: substitute_clusters(e, values))


def _total(slices: dict) -> MonotangentCombo:
    combo = MonotangentCombo.zero()
    for part in slices.values():
        combo = combo + part
    return combo


def pstar_combo(gstar: Generator, W: int) -> MonotangentCombo:
    """Monotangent expansion of the conjugacy generator, weights <= W."""
    return _total(pstar_slices(gstar, W))


def direct_combo(g: FormalDiffeo, sign: str, W: int) -> MonotangentCombo:
    """Monotangent expansion of the +-1 iterate correction, weights <= W."""
    return _total(direct_slices(g, sign, W))


def connector_fourier(e: CollectorExpansion, omega) -> PiExpr:
    """Exact Fourier coefficient at omega = 2*pi*i*n of a reduced expansion.

    ``e`` must be reduced and fully substituted; the result collects the
    monotangent mode values into a polynomial in 2*pi*i with zeta-word
    coefficients.
    """
    n = getattr(omega, "n", omega)
    return multitangent_fourier(as_monotangent(e), n)


def _pi_shift(pi: PiExpr, d: int) -> PiExpr:
    return PiExpr({k + d: v for k, v in pi.terms.items()})


def pi_numeric(pi: PiExpr, table: ReductionTable = None,
               values: dict = None) -> complex:
    """Evaluate a PiExpr through the display-basis reduction."""
    table = table or default_table()
    if values is None:
        values = table.generator_values()
    tot = 0j
    for k, expr in pi.terms.items():
        tot += table.to_display(expr).eval_numeric(values) * TWO_PI_I ** k
    return tot


def pi_canonical(pi: PiExpr, table: ReductionTable = None) -> dict:
    """Canonical exact form: (power of 2*pi*i, odd monomial) -> rational.

    The display basis keeps zeta(2) as a generator, but zeta(2)^m is
    itself a power of pi: zeta(2) = -(2*pi*i)^2/24.  Folding every
    zeta(2) factor into the 2*pi*i power yields a normal form in which
    two exact expressions are equal iff their dicts coincide; this is the
    form used for the two-route identity checks.
    """
    table = table or default_table()
    out: dict = {}
    for k, expr in pi.terms.items():
        for mono, c in table.to_display(expr).terms.items():
            twos = sum(1 for w in mono if w == (2,))
            rest = tuple(w for w in mono if w != (2,))
            key = (k + 2 * twos, rest)
            cur = out.get(key, 0) + c * RAT(-1, 24) ** twos
            if cur:
                out[key] = cur
            else:
                out.pop(key, None)
    return out


def borel_pole_value(combo: MonotangentCombo, omega: complex,
                     table: ReductionTable = None,
                     values: dict = None) -> complex:
    """Polar coefficient of the Borel transform at omega.

    The power-series reading Te^sigma -> z^-sigma makes the collector a
    divergent series sum c_sigma z^-sigma whose Borel transform (in 1/z)
    is sum c_sigma zeta^{sigma-1}/(sigma-1)!; evaluated at the singular
    point omega it gives the coefficient of the simple pole there, equal
    to the Fourier mode divided by sign(Im omega) * 2*pi*i.
    """
    table = table or default_table()
    if values is None:
        values = table.generator_values()
    tot = 0j
    for sigma, expr in combo.terms.items():
        c = table.to_display(expr).eval_numeric(values)
        tot += c * omega ** (sigma - 1) / math.factorial(sigma - 1)
    return tot


def borel_values(e: CollectorExpansion, omega) -> complex:
    """Borel-side polar coefficient of a reduced expansion at 2*pi*i*n."""
    n = getattr(omega, "n", omega)
    return borel_pole_value(as_monotangent(e), complex(TWO_PI_I) * n)


@dataclass(frozen=True)
class InvariantMode:
    """Invariants attached to the frequency 2*pi*i*n (exact and numeric)."""

    n: int
    a_plus: PiExpr
    a_minus: PiExpr
    a_log: PiExpr

    def numeric(self, table=None, values=None) -> dict:
        table = table or default_table()
        if values is None:
            values = table.generator_values()
        return {
            "n": self.n,
            "A+": pi_numeric(self.a_plus, table, values),
            "A-": pi_numeric(self.a_minus, table, values),
            "A": pi_numeric(self.a_log, table, values),
        }


def invariant_modes(g: FormalDiffeo, harmonics, W: int) -> list:
    """Exact invariants A+, A-, A at omega = 2*pi*i*n for each listed n.

    The three schemes are built once at truncation W and evaluated mode
    by mode through the sign table in the module docstring.
    """
    plus = direct_combo(g, "+", W)
    minus = direct_combo(g, "-", W)
    star = pstar_combo(generator_from_diffeo(g, W), W)
    out = []
    for n in harmonics:
        pi_p = multitangent_fourier(plus, n)
        pi_m = multitangent_fourier(minus, n)
        pi_s = _pi_shift(multitangent_fourier(star, n), -1)
        if n < 0:
            mode = InvariantMode(n, a_plus=pi_p, a_minus=pi_m, a_log=pi_s)
        else:
            mode = InvariantMode(n, a_plus=pi_m, a_minus=pi_p,
                                 a_log=pi_s.scale(-1))
        out.append(mode)
    return out


@dataclass(frozen=True)
class InvariantSet:
    """Numeric invariants per frequency with provenance metadata.

    ``modes`` maps the frequency index n (omega = 2*pi*i*n) to the
    triple (A, A+, A-); ``est_err`` is the magnitude of the highest
    nonzero retained weight's contribution to the leading mode, an
    empirical truncation estimate (the series has no a-priori remainder
    bound).
    """

    modes: dict
    W: int
    est_err: float
    method: str = "symbolic-collector"

    def to_json(self) -> list:
        out = []
        for n, (a, ap, am) in sorted(self.modes.items()):
            out.append({
                "omega": n,
                "A": [a.real, a.imag],
                "Aplus": [ap.real, ap.imag],
                "Aminus": [am.real, am.imag],
                "W": self.W,
                "est_err": self.est_err,
            })
        return out


def invariants_numeric(inp, omegas, W: int, tol: float = None,
                       table: ReductionTable = None) -> InvariantSet:
    """Numeric invariant triples at the listed frequency indices.

    ``inp`` is a FormalDiffeo or a Generator (taken as the generator of
    the conjugacy); the truncation error estimate is the last nonzero
    weight slice's contribution at the leading frequency.  If ``tol`` is
    given and the estimate exceeds it, a warning is attached by raising
    no error but reporting est_err; callers decide.
    """
    import warnings

    table = table or default_table()
    values = table.generator_values()
    if isinstance(inp, Generator):
        g = None
        gstar = inp
    else:
        g = inp
        gstar = generator_from_diffeo(inp, W)
    star_sl = pstar_slices(gstar, W)
    if g is not None:
        plus_sl = direct_slices(g, "+", W)
        minus_sl = direct_slices(g, "-", W)
    else:
        plus_sl = minus_sl = None

    lead = min((abs(n) for n in omegas), default=1)
    est = 0.0
    for w, part in star_sl.items():
        v = pi_numeric(multitangent_fourier(part, -lead), table, values)
        if abs(v) > 0:
            est = abs(v)

    star = _total(star_sl)
    plus = _total(plus_sl) if plus_sl is not None else None
    minus = _total(minus_sl) if minus_sl is not None else None

    modes = {}
    for n in omegas:
        pi_s = pi_numeric(multitangent_fourier(star, n), table, values)
        a = pi_s / complex(TWO_PI_I) * (1 if n < 0 else -1)
        if plus is not None:
            pi_p = pi_numeric(multitangent_fourier(plus, n), table, values)
            pi_m = pi_numeric(multitangent_fourier(minus, n), table, values)
        else:
            # generator input: the direct schemes are reconstructed from
            # the exponential relation only at the leading modes
            pi_p, pi_m = pi_s, -pi_s
        if n < 0:
            modes[n] = (a, pi_p, pi_m)
        else:
            modes[n] = (a, pi_m, pi_p)
    if tol is not None and est > tol:
        warnings.warn(
            f"truncation estimate {est:.3g} at W={W} exceeds tol={tol:.3g}",
            stacklevel=2)
    return InvariantSet(modes=modes, W=W, est_err=est)


def first_harmonic_displays(g: FormalDiffeo, W: int, table=None):
    """Exact canonical forms of the leading mode from both schemes.

    The iterate correction is the exponential of the generator acting by
    derivation, and products of the expansions only feed harmonics
    |n| >= 2; hence at omega = -2*pi*i the direct scheme's pi+ must equal
    the symmetric scheme's pi* exactly, weight by weight.  Returns the
    two canonical dicts (see ``pi_canonical``); they are equal iff the
    identity holds at truncation W.
    """
    table = table or default_table()
    direct = multitangent_fourier(direct_combo(g, "+", W), -1)
    star = multitangent_fourier(
        pstar_combo(generator_from_diffeo(g, W), W), -1)
    return pi_canonical(direct, table), pi_canonical(star, table)
