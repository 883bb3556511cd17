from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert.catalog import make
from latcert.discforms import (
    TRIVIAL_FORM,
    FiniteQuadraticForm,
    direct_sum_forms,
    disc_form,
    ell,
    ell_p,
    find_isomorphism,
    form_to_obj,
    iso_form_small,
    negate,
    signature_mod8,
    splits_off_a1,
)
from latcert.errors import OddLattice
from latcert.lattice import Lattice, direct_sum, orth_complement, rescale, sublattice

A1NEG_FORM = FiniteQuadraticForm(invariant_factors=(2,), q_matrix=((Fraction(3, 2),),))
A1POS_FORM = FiniteQuadraticForm(invariant_factors=(2,), q_matrix=((Fraction(1, 2),),))
A2NEG = Lattice(gram=[[-2, -1], [-1, -2]])


def test_disc_form_unimodular_trivial():
    assert disc_form(make("U")) == TRIVIAL_FORM
    assert disc_form(make("E8neg")) == TRIVIAL_FORM


def test_disc_form_a1neg():
    f = disc_form(make("A1neg"))
    assert f.invariant_factors == (2,)
    assert f.q((1,)) == Fraction(3, 2)


def test_disc_form_a2neg():
    f = disc_form(A2NEG)
    assert f.invariant_factors == (3,)
    assert f.q((1,)) in (Fraction(4, 3),)


def test_disc_form_rejects_odd():
    with pytest.raises(OddLattice):
        disc_form(Lattice(gram=[[1]]))


def test_ell_counts():
    assert ell(TRIVIAL_FORM) == 0
    f = FiniteQuadraticForm(
        invariant_factors=(2, 2, 2),
        q_matrix=tuple(
            tuple(Fraction(1, 2) if i == j else Fraction(0) for j in range(3))
            for i in range(3)
        ),
    )
    assert ell(f) == 3 and ell_p(f, 2) == 3 and ell_p(f, 3) == 0
    g = FiniteQuadraticForm(
        invariant_factors=(2, 12),
        q_matrix=(
            (Fraction(1, 2), Fraction(0)),
            (Fraction(0), Fraction(1, 12)),
        ),
    )
    assert ell(g) == 2 and ell_p(g, 2) == 2 and ell_p(g, 3) == 1


def test_signature_mod8_examples():
    assert signature_mod8(TRIVIAL_FORM) == 0
    assert signature_mod8(A1NEG_FORM) == 7
    assert signature_mod8(A1POS_FORM) == 1


def test_negate():
    assert negate(A1NEG_FORM) == A1POS_FORM
    assert negate(TRIVIAL_FORM) == TRIVIAL_FORM


def test_splits_off_a1_examples():
    assert splits_off_a1(A1NEG_FORM)
    assert not splits_off_a1(TRIVIAL_FORM)
    both = direct_sum_forms(A1NEG_FORM, disc_form(A2NEG))
    assert splits_off_a1(both)
    assert not splits_off_a1(A1POS_FORM)
    assert splits_off_a1(A1POS_FORM, positive=True)


def test_iso_form_small_examples():
    assert iso_form_small(A1NEG_FORM, A1NEG_FORM)
    assert not iso_form_small(A1NEG_FORM, A1POS_FORM)


def test_disc_complement_anti_isometric():
    # a root in E8(-1) + U: S vs S-perp have opposite discriminant forms
    amb = direct_sum(make("E8neg"), make("U"))
    v = [1] + [0] * 9
    s = sublattice(amb, [v])
    c = orth_complement(s)
    assert iso_form_small(disc_form(s), negate(disc_form(c)))


def test_find_isomorphism_witness():
    w = find_isomorphism(A1NEG_FORM, A1NEG_FORM)
    assert w == [(1,)]
    assert find_isomorphism(A1NEG_FORM, A1POS_FORM) is None


def test_direct_sum_forms_chain():
    f = direct_sum_forms(disc_form(A2NEG), A1NEG_FORM)
    assert f.invariant_factors == (6,)
    assert signature_mod8(f) == (signature_mod8(disc_form(A2NEG)) + 7) % 8


def test_form_json():
    obj = form_to_obj(A1NEG_FORM)
    assert obj == {"factors": [2], "q": [["3/2"]]}


def _random_even_gram(draw):
    n = draw(st.integers(1, 4))
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = 2 * draw(st.integers(-6, 6))
        for j in range(i):
            entries[i][j] = entries[j][i] = draw(st.integers(-4, 4))
    return entries


@st.composite
def small_even_lattices(draw):
    g = _random_even_gram(draw)
    from latcert import exact

    if exact.det(g) == 0 or abs(exact.det(g)) > 3000:
        return None
    return Lattice(gram=g)


@given(small_even_lattices())
@settings(max_examples=60, deadline=None)
def test_milgram_property(lat):
    if lat is None:
        return
    pos, neg, _ = lat.signature()
    assert signature_mod8(disc_form(lat)) == (pos - neg) % 8


@given(small_even_lattices())
@settings(max_examples=40, deadline=None)
def test_rescale_negates_form(lat):
    if lat is None:
        return
    f = disc_form(lat)
    assert ell(f) <= lat.rank
    assert disc_form(rescale(lat, -1)) == negate(f)
