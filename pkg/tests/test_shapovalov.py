import pytest

from qfusion.scalars import ONE, ZERO, qint
from qfusion.shapovalov import (FamilyKernelError, gram_block, kernel_block, kernel_generation_check,
                                pairing_pi, shapovalov)
from qfusion.uqg_core import UqAlgebra

from conftest import W


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sl2_first_entry(n):
    U = UqAlgebra("A1", 2, weights=[W(n)])
    block = gram_block(U, W(n), (1,))
    expected = U.q(-n) * qint(n, 1, U.D) if n else ZERO
    assert block.matrix == [[expected]]
    assert (len(block.kernel_basis) == 1) == (n == 0)


def test_sl2_generic_inverse():
    lam = W("1/3")
    U = UqAlgebra("A1", 2, weights=[lam])
    block = gram_block(U, lam, (1,))
    assert block.kernel_basis == []
    assert block.inv_quotient == [[block.matrix[0][0].inverse()]]


def test_pairing_examples():
    lam = W(2)
    U = UqAlgebra("A1", 2, weights=[lam])
    assert pairing_pi(U, lam, U.one(), U.one()) == ONE
    # sigma(e) f = -k^-1 e f
    expected = -U.q(-2) * (U.q(2) - U.q(-2)) * U.qd(0).inverse()
    assert pairing_pi(U, lam, U.e(0), U.f(0)) == expected
    A = UqAlgebra("A2", 2)
    assert pairing_pi(A, W(0, 0), A.e(0), A.f(1)) == ZERO


def test_shapovalov_matches_template():
    lam = W(1, 0)
    U = UqAlgebra("A2", 3, weights=[lam])
    for beta in ((1, 1), (2, 1)):
        block = gram_block(U, lam, beta)
        words = block.words
        for i, wi in enumerate(words):
            for j, wj in enumerate(words):
                assert block.matrix[i][j] == shapovalov(U, lam, U.fword(wi), U.fword(wj))


def test_shapovalov_is_symmetric_generic():
    lam = W("1/2", "1/3")
    U = UqAlgebra("A2", 3, weights=[lam])
    M = gram_block(U, lam, (2, 1)).matrix
    assert all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))


def test_zero_degree_block(sl2):
    block = gram_block(sl2, W(1), (0,))
    assert block.matrix == [[ONE]] and block.kernel_basis == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fn_in_kernel_on_hyperplane(n):
    lam = W(n - 1)
    U = UqAlgebra("A1", n + 1, weights=[lam])
    K = kernel_block(U, lam, (n,))
    assert len(K) == 1 and K[0] == U.f(0) ** n
    for m in range(1, n):
        assert kernel_block(U, lam, (m,)) == []


def test_generic_kernel_empty():
    lam = W("1/2", "1/3")
    U = UqAlgebra("A2", 3, weights=[lam])
    for beta in U.rd.enumerate_qplus(3):
        assert kernel_block(U, lam, beta) == []
    assert all(r["relation"] == "equal" for r in kernel_generation_check(U, lam, [], 3))


def test_family_kernel_refused():
    lam = W(1, direction=(1,))
    U = UqAlgebra("A1", 2, weights=[lam])
    with pytest.raises(FamilyKernelError):
        kernel_block(U, lam, (1,))


def test_sl2_generation_by_fn():
    lam = W(2)
    U = UqAlgebra("A1", 5, weights=[lam])
    rep = kernel_generation_check(U, lam, [U.f(0) ** 3], 5)
    assert [r["relation"] for r in rep] == ["equal"] * 5


def test_generation_detects_proper_subset():
    lam = W(1, 0)
    U = UqAlgebra("A2", 3, weights=[lam])
    rep = kernel_generation_check(U, lam, [U.f(1)], 3)
    assert any(r["relation"] == "generated-proper-subset" for r in rep)
