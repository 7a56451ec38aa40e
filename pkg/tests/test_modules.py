from fractions import Fraction

import pytest

from qfusion import linalg
from qfusion.modules import (ModuleError, check_relations, finite_dim, irreducible, singular_vectors, tensor,
                             verma)
from qfusion.oracles import character
from qfusion.scalars import ONE, ZERO
from qfusion.uqg_core import UqAlgebra

from conftest import W


def unit_vec(n, k):
    return [ONE if j == k else ZERO for j in range(n)]


def test_verma_highest_vector():
    lam = W(3)
    U = UqAlgebra("A1", 3, weights=[lam])
    M = verma(U, lam)
    v0 = unit_vec(M.dim, 0)
    assert all(c.is_zero() for c in M.act(U.e(0), v0))
    assert M.act(U.t(0), v0) == [U.qchar_t(lam, (1,)) * c for c in v0]
    # e f 1 = [<lam, a>] 1
    fv = M.act(U.f(0), v0)
    assert M.act(U.e(0), fv) == [U.qint(3, 0) * c for c in v0]


def test_verma_commutator_below_top():
    lam = W("1/2", "1/3")
    U = UqAlgebra("A2", 3, weights=[lam])
    M = verma(U, lam)
    lhs = linalg.sp_add(linalg.sp_mul(M.E[0], M.F[0]), linalg.sp_mul(M.F[0], M.E[0]), -ONE)
    rhs = linalg.sp_scale(linalg.sp_add(M.k_matrix(0), M.k_matrix(0, -1), -ONE), U.qd(0).inverse())
    top = {n for n, (beta, _) in enumerate(M.labels) if sum(beta) == 3}
    for n in range(M.dim):
        if n not in top:
            col = lambda A: {r: row[n] for r, row in A.items() if n in row}
            assert col(lhs) == col(rhs)


def test_irreducible_generic_equals_verma():
    lam = W("1/3")
    U = UqAlgebra("A1", 3, weights=[lam])
    assert irreducible(U, lam).dim == verma(U, lam).dim


@pytest.mark.parametrize("c,dim", [(0, 1), (1, 2)])
def test_irreducible_sl2_integral(c, dim):
    U = UqAlgebra("A1", 4)
    assert irreducible(U, W(c)).dim == dim


@pytest.mark.parametrize("name,lam", [("A1", (1,)), ("A1", (2,)), ("A2", (1, 1)), ("B2", (1, 0)), ("B2", (0, 1))])
def test_finite_dim_character(name, lam):
    U = UqAlgebra(name, sum(lam) * 6)
    V = finite_dim(U, W(*lam))
    assert V.weight_multiplicities() == character(U.rd, W(*lam))
    assert check_relations(V) == []


def test_finite_dim_needs_dominant_and_depth():
    U = UqAlgebra("A1", 1)
    with pytest.raises(ModuleError):
        finite_dim(U, W(2))
    with pytest.raises(ModuleError):
        finite_dim(UqAlgebra("A1", 4, weights=[W("1/2")]), W("1/2"))


def test_adjoint_zero_multiplicity():
    U = UqAlgebra("A2", 5)
    V = finite_dim(U, W(1, 1))
    assert V.dim == 8 and len(V.zero_space()) == 2


def test_singular_vectors():
    U = UqAlgebra("A1", 3)
    V = finite_dim(U, W(2))
    assert len(singular_vectors(V, W(2))) == 1
    assert singular_vectors(V, W(4)) == []
    T = tensor(finite_dim(U, W(1)), finite_dim(U, W(1)))
    assert check_relations(T) == []
    singlet = singular_vectors(T, W(0))
    assert len(singlet) == 1
    # the singlet is a q-deformed antisymmetric combination
    v = singlet[0]
    nz = [c for c in v if not c.is_zero()]
    assert len(nz) == 2 and nz[0] != -nz[1]
