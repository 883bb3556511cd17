from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert import exact
from latcert.catalog import (
    exp_b,
    gamma_mod_w,
    golay,
    golay_hex_rows,
    is_code_automorphism,
    is_leech_root,
    m24_generators,
    make,
    period_vector,
    perm_isometry_on_leech,
    weyl_vector,
)
from latcert.errors import NotCodeAutomorphism, UnknownName
from latcert.lattice import RationalSubspace, is_positive_subspace, is_primitive_vector


def test_golay_weight_enumerator():
    dist = Counter(bin(w).count("1") for w in golay().words())
    assert dict(dist) == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_golay_self_dual():
    words = golay().words()
    basis = [sum(b << i for i, b in enumerate(row)) for row in golay().generator]
    assert all(bin(w & b).count("1") % 2 == 0 for w in words for b in basis)


def test_golay_hex_rows():
    assert len(golay_hex_rows()) == 12
    assert all(len(h) == 6 for h in golay_hex_rows())


def test_identity_preserves_code():
    assert is_code_automorphism(tuple(range(24)))


def test_make_u():
    u = make("U")
    assert u.gram_rows() == [[0, 1], [1, 0]]
    assert u.signature() == (1, 1, 0)


def test_make_mukai():
    m = make("Mukai")
    assert m.signature() == (4, 20, 0)
    assert m.is_even() and m.det() == 1


def test_make_leech():
    n = make("Leech")
    assert n.rank == 24 and n.is_even() and abs(n.det()) == 1
    assert n.signature() == (0, 24, 0)


def test_make_niemeier_a1():
    n = make("NiemeierA1")
    assert n.rank == 24 and n.is_even() and abs(n.det()) == 1
    assert n.signature() == (0, 24, 0)


def test_make_unknown():
    with pytest.raises(UnknownName):
        make("E7")


def test_m24_generators_preserve_code():
    gens = m24_generators()
    assert len(gens) >= 2
    for g in gens:
        assert is_code_automorphism(g)


def test_perm_isometry_identity():
    assert perm_isometry_on_leech(tuple(range(24))) == exact.identity(24)


def test_perm_isometry_generator():
    g = make("Leech").gram_rows()
    x = perm_isometry_on_leech(m24_generators()[0])
    assert exact.mat_mul(exact.mat_mul(x, g), exact.transpose(x)) == g


def test_perm_isometry_rejects_transposition():
    swap = list(range(24))
    swap[0], swap[1] = swap[1], swap[0]
    assert not is_code_automorphism(tuple(swap))
    with pytest.raises(NotCodeAutomorphism):
        perm_isometry_on_leech(tuple(swap))


def test_weyl_vector_isotropic_primitive():
    gam = make("Gamma")
    w = weyl_vector()
    assert gam.norm(w) == 0
    assert is_primitive_vector(w, gam)


def test_leech_root_example():
    # d = f - e has norm -2 and pairs to 1 with w = e
    d = [0] * 26
    d[24], d[25] = -1, 1
    assert is_leech_root(d)
    assert not is_leech_root(weyl_vector())


def test_gamma_mod_w_is_leech():
    assert gamma_mod_w().gram == make("Leech").gram


def test_exp_b_zero_is_identity():
    assert exp_b([0] * 22) == exact.identity(24)


def test_exp_b_image_of_unit():
    beta = [1] + [0] * 21
    x = exp_b(beta)
    bb = exact.dot(beta, beta, make("K3").gram_rows())
    assert x[0] == [1] + beta + [bb // 2]


small_betas = st.lists(st.integers(-2, 2), min_size=22, max_size=22)


@given(small_betas, small_betas)
@settings(max_examples=25, deadline=None)
def test_exp_b_is_homomorphism(b1, b2):
    lhs = exact.mat_mul(exp_b(b1), exp_b(b2))
    rhs = exp_b([x + y for x, y in zip(b1, b2)])
    assert lhs == rhs


def test_period_vector_pure_alpha():
    alpha = [Fraction(1)] + [Fraction(0)] * 21
    re, im = period_vector([0] * 22, alpha)
    aa = exact.dot(alpha, alpha, make("K3").gram_rows())
    assert re == [Fraction(1)] + [Fraction(0)] * 22 + [-Fraction(aa, 2)]
    assert im == [Fraction(0)] + alpha + [Fraction(0)]


def test_period_vector_positive_plane():
    m = make("Mukai")
    # alpha with (alpha.alpha) > 0: use a U-summand vector e + f
    alpha = [0] * 22
    alpha[16], alpha[17] = 1, 1
    assert exact.dot(alpha, alpha, make("K3").gram_rows()) == 2
    re, im = period_vector([0] * 22, alpha)
    plane = RationalSubspace(m, [re, im])
    assert is_positive_subspace(plane)
    # alpha with negative square gives a non-positive plane
    alpha2 = [1] + [0] * 21
    re2, im2 = period_vector([0] * 22, alpha2)
    assert not is_positive_subspace(RationalSubspace(m, [re2, im2]))
