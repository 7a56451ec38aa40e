import itertools

import pytest

from qfusion.funcalg import (CarrierRegistry, arrow, coarrow, evaluate, invariant_subspace, is_invariant,
                             matrix_coefficient, product, unit)
from qfusion.modules import finite_dim
from qfusion.scalars import ONE, ZERO
from qfusion.shapovalov import kernel_block
from qfusion.uqg_core import UqAlgebra

from conftest import W


@pytest.fixture
def setup():
    U = UqAlgebra("A1", 4, weights=[W("1/2")])
    reg = CarrierRegistry(U)
    V2 = reg.register(finite_dim(U, W(1)), "L(1)")
    V3 = reg.register(finite_dim(U, W(2)), "L(2)")
    return U, reg, V2, V3


def samples(U):
    return [U.one(), U.e(0), U.f(0), U.k(0), U.k(0, -1), U.e(0) * U.f(0), U.f(0) ** 2]


def by_coproduct(U, f1, f2, x):
    total = ZERO
    for (m1, m2), c in U.coproduct(x).terms.items():
        total = total + c * evaluate(f1, U.element({m1: ONE})) * evaluate(f2, U.element({m2: ONE}))
    return total


def test_evaluation_basics(setup):
    U, reg, V2, _ = setup
    f = matrix_coefficient(reg, V2, 0, 0)
    assert evaluate(f, U.one()) == ONE
    assert evaluate(f, U.k(0)) == U.q(1)
    assert evaluate(matrix_coefficient(reg, V2, 1, 0), U.f(0)) == ONE


def test_arrow_laws(setup):
    U, reg, _, V3 = setup
    xs = samples(U)
    for p, j in itertools.product(range(3), repeat=2):
        f = matrix_coefficient(reg, V3, p, j)
        assert arrow(U.one(), f) == f and coarrow(f, U.one()) == f
        # vector j has weight c * omega, and k acts by q^c
        assert arrow(U.k(0), f) == f * U.q(V3.weights[j].c[0])
        for a, x in itertools.product(xs[:4], xs):
            assert evaluate(arrow(a, f), x) == evaluate(f, x * a)
            assert evaluate(coarrow(f, a), x) == evaluate(f, a * x)
        for a, b in itertools.product(xs[:4], repeat=2):
            assert arrow(b, coarrow(f, a)) == coarrow(arrow(b, f), a)


def test_product_matches_coproduct(setup):
    U, reg, V2, V3 = setup
    f1 = matrix_coefficient(reg, V2, 1, 0)
    f2 = matrix_coefficient(reg, V3, 0, 2)
    g = product(f1, f2)
    for x in samples(U):
        assert evaluate(g, x) == by_coproduct(U, f1, f2, x)
    # e_i against the explicit coproduct formula
    e = U.e(0)
    assert evaluate(g, e) == evaluate(f1, e) * evaluate(f2, U.one()) + evaluate(f1, U.k(0)) * evaluate(f2, e)
    u = unit(reg)
    assert product(u, f1) == f1 and product(f1, u) == f1


def test_two_by_two_tensor_action(setup):
    U, reg, V2, _ = setup
    for p1, j1, p2, j2 in itertools.product(range(2), repeat=4):
        f1, f2 = matrix_coefficient(reg, V2, p1, j1), matrix_coefficient(reg, V2, p2, j2)
        g = product(f1, f2)
        assert g.carrier.dim == 4
        for x in samples(U)[:5]:
            assert evaluate(g, x) == by_coproduct(U, f1, f2, x)


@pytest.mark.parametrize("c,expected", [(0, 0), (1, 3), ("1/3", 3)])
def test_invariant_subspace_sizes(c, expected):
    lam = W(c)
    U = UqAlgebra("A1", 4, weights=[lam])
    reg = CarrierRegistry(U)
    V3 = reg.register(finite_dim(U, W(2)))
    B = invariant_subspace(reg, lam, V3)
    assert len(B) == expected
    for f in B:
        assert is_invariant(U, lam, f)
        for beta in U.rd.enumerate_qplus(2):
            for y in kernel_block(U, lam, beta):
                assert arrow(y, f).is_zero() and arrow(U.theta(y), f).is_zero()
