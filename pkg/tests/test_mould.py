"""Mould algebra laws, built-in moulds, symmetry checks."""

from parinv.mould import (
    Mould,
    check_symmetry,
    d_mould,
    e_minus_one_mould,
    ident_mould,
    je_mould,
    k_mould,
    mould_compose,
    mould_expmu,
    mould_inverse,
    mould_logmu,
    mould_mul,
    seq_weight,
    symmetry_defect,
    unit_mould,
    weight_pairs,
)
from parinv.rat import R0, R1, RAT
from parinv.zeta import zeta_word_numeric

WORDS = [(), (1,), (3,), (1, 2), (2, 2), (1, 1, 2), (3, 1, 2), (1, 2, 1, 1)]


def poly_mould(seed: int, empty=R1) -> Mould:
    """Deterministic dense test mould with genuine sequence dependence."""

    def fn(w):
        if not w:
            return empty
        acc = R1
        for i, s in enumerate(w):
            acc = acc * RAT(s + i + seed, s + 1)
        return acc

    return Mould(fn, f"P{seed}")


def test_mul_unit_and_assoc():
    A, B, C = poly_mould(1), poly_mould(2), poly_mould(3)
    one = unit_mould()
    left = mould_mul(mould_mul(A, B), C)
    right = mould_mul(A, mould_mul(B, C))
    for w in WORDS:
        assert mould_mul(one, A)(w) == A(w)
        assert mould_mul(A, one)(w) == A(w)
        assert left(w) == right(w)


def test_compose_units_and_assoc():
    A = poly_mould(1)
    B, C = poly_mould(2, empty=R0), poly_mould(3, empty=R0)
    I = ident_mould()
    left = mould_compose(mould_compose(A, B), C)
    right = mould_compose(A, mould_compose(B, C))
    for w in WORDS:
        assert mould_compose(I, B)(w) == B(w)
        assert mould_compose(A, I)(w) == A(w)
        assert left(w) == right(w)


def test_inverse_two_sided():
    A = poly_mould(2)
    inv = mould_inverse(A)
    for w in WORDS:
        want = R1 if not w else R0
        assert mould_mul(A, inv)(w) == want
        assert mould_mul(inv, A)(w) == want


def test_logmu_expmu_roundtrip():
    A = poly_mould(3)
    N = mould_logmu(A)
    assert N(()) == R0
    back = mould_expmu(N)
    for w in WORDS:
        assert back(w) == A(w)
    # other order: exp then log
    M = mould_expmu(poly_mould(1, empty=R0))
    assert M(()) == R1
    again = mould_logmu(M)
    P = poly_mould(1, empty=R0)
    for w in WORDS:
        assert again(w) == P(w)


def test_e_minus_one_symmetry():
    # 1/r! satisfies the shuffle relations exactly
    S = mould_mul(unit_mould(), e_minus_one_mould())  # = E, empty term 1
    assert check_symmetry(S, "symmetral", weight_pairs(5))
    # its logarithm is alternal
    assert check_symmetry(mould_logmu(S), "alternal", weight_pairs(5))


def test_expmu_of_alternal_is_symmetral():
    # a mould supported on length-1 sequences is alternal; expmu lands in
    # the symmetral group
    N = Mould(lambda w: RAT(1, w[0]) if len(w) == 1 else R0, "N")
    assert check_symmetry(N, "alternal", weight_pairs(5))
    assert check_symmetry(mould_expmu(N), "symmetral", weight_pairs(5))


ZPAIRS = [((2,), (3,)), ((2, 2), (3,)), ((2,), (2, 2)), ((4,), (3, 2))]


def test_zeta_values_symmetrel_numeric():
    # multizeta values obey the contracting shuffle product (stuffle
    # homomorphism) within quadrature accuracy
    Z = Mould(lambda w: zeta_word_numeric(w, 1e-12) if all(
        s >= 2 for s in w[:1]) else 0.0, "Znum", zero=0.0)
    assert check_symmetry(Z, "symmetrel", ZPAIRS, tol=1e-10)
    # and logmu lands in the alternel Lie side
    L = mould_logmu(Z)
    for u, v in ZPAIRS:
        assert abs(symmetry_defect(L, "alternel", u, v)) < 1e-9


def test_k_mould_coefficients():
    K = k_mould()
    vals = [K(tuple(1 for _ in range(r))) for r in range(1, 8)]
    assert vals == [R1, R0, RAT(1, 12), R0, RAT(1, 120), R0, RAT(17, 20160)]


def test_geometric_and_single_index_moulds():
    D = d_mould(RAT(1, 2))
    assert D(()) == R0 and D((5,)) == R1 and D((1, 7)) == RAT(1, 2)
    J = je_mould(2.0)
    assert J((3,)) == 0.125 and J((1, 1)) == R0


def test_weight_pairs_inventory():
    pairs = weight_pairs(3, max_len=2)
    assert all(seq_weight(u) + seq_weight(v) <= 3 for u, v in pairs)
    assert ((1,), (2,)) in pairs and ((1, 1), (1,)) in pairs


def test_symmetry_defect_detects_failure():
    flat = Mould(lambda w: R1 if w else R1, "flat")
    assert symmetry_defect(flat, "symmetral", (1,), (2,)) != R0
    assert not check_symmetry(flat, "alternal", [((1,), (2,))])
