"""Zeta ring: stuffle algebra, normalization, numeric evaluation."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from parinv.rat import RAT
from parinv.zeta import (
    DEFAULT_NORMALIZATION,
    NormalizationConfig,
    ZetaExpr,
    is_convergent,
    stuffle_product,
    word_weight,
    zeta_word_numeric,
)

conv_words = st.lists(st.integers(min_value=2, max_value=5),
                      min_size=1, max_size=3).map(tuple)


def test_word_basics():
    assert word_weight((3, 1, 2)) == 6
    assert is_convergent((2, 1)) and not is_convergent((1, 2))


def test_stuffle_small():
    out = stuffle_product((2,), (3,))
    assert out.terms == {(0, (2, 3)): RAT(1), (0, (3, 2)): RAT(1),
                         (0, (5,)): RAT(1)}


@given(conv_words, conv_words)
@settings(max_examples=25, deadline=None)
def test_stuffle_commutative(u, v):
    assert stuffle_product(u, v) == stuffle_product(v, u)


def test_stuffle_homomorphism_numeric():
    # product of values equals value of the stuffle expansion
    for u, v in [((2,), (3,)), ((2, 2), (3,)), ((4,), (2, 3))]:
        lhs = zeta_word_numeric(u) * zeta_word_numeric(v)
        rhs = stuffle_product(u, v).eval_numeric(1e-12)
        assert abs(lhs - rhs) < 1e-10


def test_euler_relation():
    # Ze^{2,1} = Ze^3 (classical)
    assert abs(zeta_word_numeric((2, 1)) - zeta_word_numeric((3,))) < 1e-10


def test_single_values():
    assert abs(zeta_word_numeric((2,)) - math.pi ** 2 / 6) < 1e-12
    assert abs(zeta_word_numeric((4,)) - math.pi ** 4 / 90) < 1e-12


def test_expr_mul_matches_numeric():
    a = ZetaExpr.word((2,)).scale(RAT(2))
    b = ZetaExpr.word((3,)) + ZetaExpr.word((2, 2))
    prod = a * b
    lhs = a.eval_numeric(1e-12) * b.eval_numeric(1e-12)
    assert abs(prod.eval_numeric(1e-12) - lhs) < 1e-9


def test_normalization_divergent_words():
    # leading 1s peel off against the offset symbol; with c = gamma the
    # offset value is 0 and normalized divergent words become combinations
    # of convergent ones
    e = ZetaExpr.word((1, 2))
    n = e.normalize(DEFAULT_NORMALIZATION)
    assert all(is_convergent(w) for (g, w) in n.terms)
    # Ze^{1,2} = G Ze^2 - Ze^3 - Ze^{2,1},  G = 0
    want = -zeta_word_numeric((3,)) - zeta_word_numeric((2, 1))
    assert abs(n.eval_numeric(1e-12) - want) < 1e-9


def test_normalization_is_stuffle_compatible():
    # normalize(a * b) == normalize(a) * normalize(b) for divergent a
    a = ZetaExpr.word((1,))
    b = ZetaExpr.word((1, 3))
    lhs = (a * b).normalize()
    rhs = a.normalize() * b.normalize()
    assert not (lhs - rhs.normalize()).terms


def test_normalization_config_offset():
    cfg = NormalizationConfig(c="zero")
    assert abs(cfg.offset_value() - 0.5772156649015329) < 1e-12
    assert DEFAULT_NORMALIZATION.offset_value() == 0.0


def test_render_and_json():
    e = ZetaExpr.word((8, 2)).scale(RAT(-7, 3)) + ZetaExpr.word((10,)).scale(RAT(5))
    assert e.render() == "5 Ze^{10} - 7/3 Ze^{8,2}"
    back = ZetaExpr.from_json(e.to_json())
    assert not (back - e).terms


def test_depth_two_numeric_against_reference():
    # Ze^{4,2} = Ze^3^2 - 4/3 Ze^6 (classical closed form); Ze^{6,2} from an
    # independent 30-digit summation
    assert abs(zeta_word_numeric((6, 2)) - 0.0178197404168359884) < 1e-11
    assert abs(zeta_word_numeric((4, 2)) - 0.0884833824543687143) < 1e-11


def test_numeric_raises_on_divergent():
    with pytest.raises(ValueError):
        zeta_word_numeric((1, 2))
