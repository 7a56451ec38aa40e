from fractions import Fraction

import pytest

from qfusion.oracles import character, weyl_dimension
from qfusion.roots import CartanError, RootData

from conftest import W


def test_positive_roots():
    a1 = RootData.of("A1")
    assert a1.positive_roots == [(1,)] and a1.d == [1]
    a2 = RootData.of("A2")
    assert sorted(a2.positive_roots) == [(0, 1), (1, 0), (1, 1)]
    b2 = RootData.of("B2")
    assert len(b2.positive_roots) == 4
    # the short simple root has (alpha|alpha) = 2
    assert sorted(b2.d) == [1, 2]
    assert len(RootData.of("G2").positive_roots) == 6


def test_rejects_bad_matrices():
    with pytest.raises(CartanError):
        RootData([[2, -3], [-3, 2]])
    with pytest.raises(CartanError):
        RootData.of("Q7")


def test_pairings():
    a2 = RootData.of("A2")
    rho = W(1, 1)
    assert a2.pair(rho, (1, 0)) == 1
    assert a2.pair(a2.shifted(W(0, Fraction(1, 3)), (0, 0)) + rho, (1, 1)) == Fraction(7, 3)
    a1 = RootData.of("A1")
    assert a1.pair(W(3) + W(1), (1,)) == 4


def test_reflection_and_dot():
    a1 = RootData.of("A1")
    lam = W(5)
    assert a1.act((), lam) == lam
    # s.lam = lam - n alpha with n = <lam + rho, a> = 6; alpha = 2 omega
    assert a1.dot_action((0,), lam) == W(5 - 12)


def test_enumerate_qplus():
    assert RootData.of("A1").enumerate_qplus(3) == [(1,), (2,), (3,)]
    assert RootData.of("A2").enumerate_qplus(2) == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert RootData.of("A2").enumerate_qplus(0) == []


def test_kostant_partition():
    assert RootData.of("A1").kostant_partition((4,)) == 1
    a2 = RootData.of("A2")
    assert a2.kostant_partition((1, 1)) == 2
    assert a2.kostant_partition((2, 1)) == 2


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("B2", (1, 1)), ("G2", (1, 0)), ("A3", (1, 0, 1))])
def test_weyl_dimension_matches_kostant(name, lam):
    rd = RootData.of(name)
    w = W(*lam)
    assert sum(character(rd, w).values()) == weyl_dimension(rd, w)
