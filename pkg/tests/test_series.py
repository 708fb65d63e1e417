"""Diffeo series: generator conversion, inverse, powers, iterator."""

import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from parinv.poly import Poly, diffeo_var, gen_var
from parinv.rat import R1, RAT
from parinv.series import (
    FormalDiffeo,
    Generator,
    compose_diffeos,
    diffeo_eval,
    diffeo_from_generator,
    diffeo_from_json,
    diffeo_to_json,
    generator_from_diffeo,
    identity_diffeo,
    inverse_diffeo,
    iterator_coefficients,
    iterator_eval,
    iterator_residual_tail,
    power_coefficients,
)

W = 12

rational = st.fractions(min_value=-3, max_value=3, max_denominator=9).map(RAT)


def rand_diffeo(draw_coeffs):
    return FormalDiffeo({s + 2: c for s, c in enumerate(draw_coeffs) if c}, W)


small_diffeos = st.lists(rational, min_size=0, max_size=5).map(rand_diffeo)


# ---------------------------------------------------------------------------
# poly coefficient ring


def test_poly_ring_basics():
    x, y = gen_var(2), gen_var(3)
    p = (Poly.var(x) + Poly.var(y)) ** 2
    assert p.terms == {(x, x): R1, (x, y): RAT(2), (y, y): R1}
    assert p.max_weight() == 6 and not p.is_homogeneous()
    assert p.truncate(5).terms == {(x, x): R1, (x, y): RAT(2)}
    assert p.substitute({x: 2.0, y: 1.0}) == 9.0
    assert (p - p) == 0 and not (p - p)
    assert Poly.var(x).render() == "g*2"
    assert (Poly.var(x) * RAT(-1, 2)).render() == "-1/2 g*2"


def test_poly_mixed_scalars():
    x = diffeo_var(2)
    p = Poly.var(x)
    assert (RAT(1, 3) * p) == (p / 3)
    assert (2 * p - p - p) == 0
    assert (p + 0) == p and (0 + p) == p


# ---------------------------------------------------------------------------
# generator <-> diffeo


def test_sqrt_law():
    # g_* = a z^-1 integrates to g(z) = z (1 + 2a z^-2)^{1/2}
    a = RAT(1, 10)
    g = diffeo_from_generator(Generator({2: a}, 10))
    want = {}
    for j in range(1, 6):
        c = R1
        for i in range(j):
            c = c * (RAT(1, 2) - i) / (i + 1)
        want[2 * j] = c * (2 * a) ** j
    assert g.coeffs == want


def test_cbrt_law():
    # g_* = a z^-2 integrates to g(z) = z (1 + 3a z^-3)^{1/3}
    a = RAT(1, 10)
    g = diffeo_from_generator(Generator({3: a}, 13))
    want = {}
    for j in range(1, 5):
        c = R1
        for i in range(j):
            c = c * (RAT(1, 3) - i) / (i + 1)
        want[3 * j] = c * (3 * a) ** j
    assert g.coeffs == want


def test_generator_of_simple_cubic():
    a = RAT(1, 7)
    gs = generator_from_diffeo(FormalDiffeo({3: a}, 12))
    assert gs.coeffs[3] == a and gs.coeffs[6] == a * a
    assert all(s % 3 == 0 for s in gs.coeffs)


def test_symbolic_generator_of_general_quadratic():
    # g = z + g2 z^-1 with g2 formal; low generator coefficients
    v = diffeo_var(2)
    gs = generator_from_diffeo(FormalDiffeo({2: Poly.var(v)}, 8))
    assert gs.coeffs[2] == Poly.var(v)
    assert gs.coeffs[4] == Poly.var(v) ** 2 / 2
    assert gs.coeffs[6] == Poly.var(v) ** 3 / 2
    assert 3 not in gs.coeffs and 5 not in gs.coeffs


@given(small_diffeos)
@settings(max_examples=30, deadline=None)
def test_generator_roundtrip(g):
    assert diffeo_from_generator(generator_from_diffeo(g, W), W).coeffs == g.coeffs


@given(small_diffeos)
@settings(max_examples=15, deadline=None)
def test_flow_group_law(g):
    gs = generator_from_diffeo(g, W)
    half = diffeo_from_generator(gs.scaled(RAT(1, 2)), W)
    assert compose_diffeos(half, half, W).coeffs == g.coeffs


def test_generator_flags():
    gs = Generator({3: R1, 5: RAT(2)}, 8)
    assert gs.is_reflexive() and gs.residue() == 0
    assert not Generator({2: R1}, 8).is_reflexive()
    assert Generator({2: RAT(3)}, 8).residue() == -3


# ---------------------------------------------------------------------------
# composition and inverse


@given(small_diffeos)
@settings(max_examples=30, deadline=None)
def test_inverse_two_sided(g):
    inv = inverse_diffeo(g, W)
    assert compose_diffeos(g, inv, W).is_identity()
    assert compose_diffeos(inv, g, W).is_identity()


@given(small_diffeos)
@settings(max_examples=15, deadline=None)
def test_inverse_flips_generator(g):
    inv = inverse_diffeo(g, W)
    gs = generator_from_diffeo(g, W)
    gsi = generator_from_diffeo(inv, W)
    assert gsi.coeffs == {s: -c for s, c in gs.coeffs.items()}


def test_identity_cases():
    assert inverse_diffeo(identity_diffeo(W)).is_identity()
    assert diffeo_from_generator(Generator({}, W)).is_identity()
    assert not generator_from_diffeo(identity_diffeo(W)).coeffs


# ---------------------------------------------------------------------------
# displacement powers


def test_power_coefficients():
    a = RAT(1, 5)
    g = FormalDiffeo({3: a}, 12)
    assert power_coefficients(g, "+", 1, 12) == dict(g.coeffs)
    assert power_coefficients(g, "+", 2, 12) == {5: a * a}
    assert power_coefficients(identity_diffeo(8), "+", 3, 8) == {}


@given(small_diffeos, st.integers(min_value=1, max_value=4))
@settings(max_examples=20, deadline=None)
def test_power_weight_floor(g, n):
    if not g.coeffs:
        return
    smin = min(g.coeffs)
    pc = power_coefficients(g, "+", n, W)
    floor = n * (smin - 1) + 1
    if floor <= W:
        assert pc[floor] == g.coeffs[smin] ** n
    assert all(s >= floor for s in pc)


def test_power_minus_sign():
    a = RAT(1, 5)
    g = FormalDiffeo({3: a}, 12)
    pm = power_coefficients(g, "-", 1, 12)
    assert pm == dict(inverse_diffeo(g, 12).coeffs)


# ---------------------------------------------------------------------------
# iterator


def test_iterator_identity_and_residue_guard():
    assert iterator_coefficients(identity_diffeo(10), 6).coeffs == (0,) * 6
    with pytest.raises(ValueError):
        iterator_coefficients(FormalDiffeo({2: RAT(1)}, 8), 6)


def test_iterator_leading_coefficient():
    a = RAT(1, 10)
    it = iterator_coefficients(FormalDiffeo({3: a}, 12), 4)
    assert it.a(1) == a


def test_iterator_functional_equation_exact():
    # substituting the solution back leaves only orders above N + 1
    a = RAT(1, 11)
    g = FormalDiffeo({3: a, 4: -a}, 12)
    N = 14
    it = iterator_coefficients(g, N)
    res = iterator_residual_tail(g, it, N + 4)
    assert res and min(res) == N + 2


def test_iterator_eval_matches_composition():
    a = 0.05
    g = FormalDiffeo({3: a, 4: -a}, 12)
    it = iterator_coefficients(g, 30)
    z = 40.0
    fz = diffeo_eval(g, z) + 1.0
    res = iterator_eval(it, fz) - iterator_eval(it, z) - 1.0
    assert abs(res) < 1e-13  # roundoff-level at this scale


def test_iterator_factorial_growth():
    # 4-step smoothed ratio tends to 1/(2 pi): singularities at +-2 pi i
    g = FormalDiffeo({3: mpmath.mpf("0.1")}, 12)
    it = iterator_coefficients(g, 244)
    n = 240
    r4 = (abs(it.coeffs[n + 3]) / abs(it.coeffs[n - 1])) ** 0.25 / (n + 1.5)
    assert abs(float(r4) * 2 * math.pi - 1) < 1e-3


# ---------------------------------------------------------------------------
# JSON


def test_json_roundtrip():
    g = FormalDiffeo({3: RAT(1, 20), 5: RAT(-2, 7)}, 10)
    d = diffeo_to_json(g)
    assert d == {"kind": "g", "coeffs": {"3": "1/20", "5": "-2/7"}, "cap": 10}
    assert diffeo_from_json(d).coeffs == g.coeffs
    gs = Generator({2: RAT(1, 4)}, 9)
    back = diffeo_from_json(diffeo_to_json(gs))
    assert isinstance(back, Generator) and back.coeffs == gs.coeffs
