import json

import pytest

from latcert import exact
from latcert.actions import (
    GroupAction,
    closure,
    coinvariant_lattice,
    disc_action_is_trivial,
    extend_by_identity,
    invariant_lattice,
    restrict_action,
)
from latcert.catalog import m24_element, make, perm_isometry_on_leech
from latcert.errors import NotIntegral, NotStable, ResourceCap
from latcert.lattice import Lattice, direct_sum, sublattice
from latcert.shortvec import roots

A1NEG2 = direct_sum(make("A1neg"), make("A1neg"))
SWAP = [[0, 1], [1, 0]]


def test_rejects_non_isometry():
    with pytest.raises(AssertionError):
        GroupAction(lattice=make("U"), generators=([[1, 1], [0, 1]],))


def test_closure_trivial():
    a = GroupAction(lattice=make("U"), generators=(exact.identity(2),))
    assert closure(a) == [exact.identity(2)]


def test_closure_minus_identity():
    a = GroupAction(lattice=make("U"), generators=([[-1, 0], [0, -1]],))
    assert len(closure(a)) == 2


def test_closure_swap():
    a = GroupAction(lattice=A1NEG2, generators=(SWAP,))
    assert len(closure(a)) == 2


def test_closure_cap():
    g = perm_isometry_on_leech(m24_element("tri_6_6"))
    a = GroupAction(lattice=make("Leech"), generators=(g,))
    assert len(closure(a)) == 3
    with pytest.raises(ResourceCap):
        closure(a, cap=2)


def test_invariant_trivial_group():
    a = GroupAction(lattice=make("U"), generators=())
    assert invariant_lattice(a).rank == 2
    assert coinvariant_lattice(a).rank == 0


def test_invariant_minus_identity():
    a = GroupAction(lattice=make("U"), generators=([[-1, 0], [0, -1]],))
    assert invariant_lattice(a).rank == 0
    assert coinvariant_lattice(a).rank == 2


def test_swap_invariant_coinvariant():
    a = GroupAction(lattice=A1NEG2, generators=(SWAP,))
    inv = invariant_lattice(a)
    coinv = coinvariant_lattice(a)
    assert inv.gram_rows() == [[-4]]
    assert coinv.gram_rows() == [[-4]]
    assert inv.basis_rows() == [[1, 1]]


def test_m24_involution_ranks():
    g = perm_isometry_on_leech(m24_element("inv_8_8"))
    a = GroupAction(lattice=make("Leech"), generators=(g,))
    inv = invariant_lattice(a)
    coinv = coinvariant_lattice(a)
    assert inv.rank == 16
    assert coinv.rank == 8
    # coinvariant of the 1^8 2^8 involution: even negative definite, det 2^8
    assert coinv.is_even() and coinv.is_negative_definite()
    assert abs(coinv.det()) == 2**8
    assert roots(coinv) == []


def test_m24_triality_ranks():
    g = perm_isometry_on_leech(m24_element("tri_6_6"))
    a = GroupAction(lattice=make("Leech"), generators=(g,))
    inv = invariant_lattice(a)
    coinv = coinvariant_lattice(a)
    assert inv.rank == 12
    assert coinv.rank == 12
    assert coinv.is_even() and coinv.is_negative_definite()
    assert abs(coinv.det()) == 3**6
    assert roots(coinv) == []


def test_disc_action_trivial_examples():
    neg = GroupAction(lattice=make("A1neg"), generators=([[-1]],))
    whole = sublattice(make("A1neg"), [[1]])
    assert disc_action_is_trivial(neg, whole)

    a2 = Lattice(gram=[[-2, -1], [-1, -2]])
    neg2 = GroupAction(lattice=a2, generators=([[-1, 0], [0, -1]],))
    whole2 = sublattice(a2, [[1, 0], [0, 1]])
    assert not disc_action_is_trivial(neg2, whole2)


def test_disc_action_on_coinvariants():
    for name in ("inv_8_8", "tri_6_6"):
        g = perm_isometry_on_leech(m24_element(name))
        a = GroupAction(lattice=make("Leech"), generators=(g,))
        coinv = coinvariant_lattice(a)
        assert disc_action_is_trivial(a, coinv)


def test_restrict_action_not_stable():
    a = GroupAction(lattice=A1NEG2, generators=(SWAP,))
    first = sublattice(A1NEG2, [[1, 0]])
    with pytest.raises(NotStable):
        restrict_action(a, first)


def test_extend_identity_on_sub():
    anti = sublattice(A1NEG2, [[1, -1]])
    ident = GroupAction(lattice=Lattice(gram=anti.gram_rows()), generators=(exact.identity(1),))
    ext = extend_by_identity(ident, anti, A1NEG2)
    assert ext.generators[0] == ((1, 0), (0, 1))


def test_extend_swap_from_antidiagonal():
    # swap acts as -id on the antidiagonal and id on the diagonal
    anti = sublattice(A1NEG2, [[1, -1]])
    neg = GroupAction(lattice=Lattice(gram=anti.gram_rows()), generators=([[-1]],))
    ext = extend_by_identity(neg, anti, A1NEG2)
    assert [list(r) for r in ext.generators[0]] == SWAP


def test_extend_obstruction():
    # -I on a primitive A2(-1) inside E8(-1): disc action on Z/3 nontrivial
    e8n = make("E8neg")
    a2 = sublattice(e8n, [[1] + [0] * 7, [0, 0, 1] + [0] * 5])
    assert a2.gram_rows() == [[-2, 1], [1, -2]]  # an A2(-1) copy
    neg = GroupAction(
        lattice=Lattice(gram=a2.gram_rows()), generators=([[-1, 0], [0, -1]],)
    )
    with pytest.raises(NotIntegral):
        extend_by_identity(neg, a2, e8n)


def test_orthogonality_and_rank_sum():
    for name in ("inv_8_8", "tri_6_6"):
        g = perm_isometry_on_leech(m24_element(name))
        a = GroupAction(lattice=make("Leech"), generators=(g,))
        inv, coinv = invariant_lattice(a), coinvariant_lattice(a)
        assert inv.rank + coinv.rank == 24
        pair = exact.mat_mul(
            exact.mat_mul(inv.basis_rows(), make("Leech").gram_rows()),
            exact.transpose(coinv.basis_rows()),
        )
        assert exact.is_zero_matrix(pair)
        # both stable: restriction succeeds
        restrict_action(a, inv)
        restrict_action(a, coinv)
