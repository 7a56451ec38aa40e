import pytest

from qfusion.funcalg import CarrierRegistry, invariant_subspace, unit
from qfusion.fusion import (PreconditionError, fusion_family, fusion_reduced, kostant_probe, regularity_probe,
                            star, star_limit_check)
from qfusion.modules import finite_dim
from qfusion.scalars import ONE, eval_z1
from qfusion.shapovalov import gram_block
from qfusion.uqg_core import UqAlgebra

from conftest import W


def test_height_zero_is_identity():
    U = UqAlgebra("A2", 2)
    F = fusion_reduced(U, W(1, 0), 0)
    assert F.blocks == {(0, 0): ([()], [[ONE]])}
    assert F.as_tensor() == F.as_tensor(0)


def test_sl2_generic_first_block():
    lam = W("1/3")
    U = UqAlgebra("A1", 3, weights=[lam])
    F = fusion_reduced(U, lam, 3)
    tags, inv = F.block((1,))
    assert tags == [(0,)]
    assert inv == [[gram_block(U, lam, (1,)).matrix[0][0].inverse()]]
    assert F.theta_y((0,)) == -U.e(0)


def test_sl2_integral_blocks():
    lam = W(1)
    U = UqAlgebra("A1", 3, weights=[lam])
    F = fusion_reduced(U, lam, 3)
    assert len(F.block((1,))[0]) == 1
    assert F.block((2,)) == ([], [])
    assert F.block((3,)) == ([], [])


def test_family_poles_sl2():
    lam = W(1, direction=(1,))
    U = UqAlgebra("A1", 3, weights=[lam])
    F = fusion_family(U, W(1), W(1), 3)
    poles = F.pole_orders()
    assert poles[(1,)] <= 0 and poles[(2,)] == 1
    assert fusion_family(U, W(1), W(1), 0).pole_orders() == {(0,): 0}


def test_generic_family_limit_matches_reduced():
    lam0 = W("1/3")
    U = UqAlgebra("A1", 3, weights=[W("1/3", direction=(1,))])
    limits = fusion_family(U, lam0, W(1), 3).eval_z1()
    reduced = fusion_reduced(U, lam0, 3).blocks
    assert limits == reduced


def test_degenerate_line_refused():
    # lambda0 + t nu with nu = 0 stays on the hyperplane
    U = UqAlgebra("A1", 2)
    with pytest.raises(PreconditionError):
        fusion_family(U, W(0), W(0), 2)


@pytest.fixture
def star_setup():
    lam = W("1/2")
    U = UqAlgebra("A1", 4, weights=[lam])
    reg = CarrierRegistry(U)
    V = reg.register(finite_dim(U, W(2)))
    return U, reg, V, fusion_reduced(U, lam, 4), invariant_subspace(reg, lam, V)


def test_star_unit_and_associativity(star_setup):
    U, reg, V, F, B = star_setup
    u = unit(reg)
    for f in B:
        assert star(F, u, f) == f and star(F, f, u) == f
    a, b, c = B[0], B[1], B[2]
    assert star(F, star(F, a, b), c) == star(F, a, star(F, b, c))


def test_star_rejects_non_invariant():
    lam = W(1)
    U = UqAlgebra("A1", 4, weights=[lam])
    reg = CarrierRegistry(U)
    V = reg.register(finite_dim(U, W(2)))
    from qfusion.funcalg import matrix_coefficient
    bad = matrix_coefficient(reg, V, 0, 0)
    with pytest.raises(PreconditionError):
        star(fusion_reduced(U, lam, 4), bad, bad)


def test_regularity_sl2():
    lam0, nu = W(1), W(1)
    U = UqAlgebra("A1", 4, weights=[W(1, direction=(1,))])
    reg = CarrierRegistry(U)
    V = reg.register(finite_dim(U, W(2)))
    rep = regularity_probe(U, lam0, nu, V)
    assert rep["verdict"] == "PASS"
    controls = [r for r in rep["rows"] if r["control"]]
    assert controls and controls[0]["pole_order"] == 1
    assert star_limit_check(U, reg, lam0, nu, V)["verdict"] == "PASS"


def test_kostant_vacuous_at_zero():
    U = UqAlgebra("A1", 4, weights=[W(0, direction=(1,))])
    reg = CarrierRegistry(U)
    V = reg.register(finite_dim(U, W(2)))
    assert invariant_subspace(reg, W(0), V) == []
    rep = kostant_probe(U, W(0), W(1), V)
    assert rep["rows"] == [] and rep["verdict"] == "PASS"


def test_kostant_generic():
    lam0 = W("1/3")
    U = UqAlgebra("A1", 4, weights=[W("1/3", direction=(1,))])
    reg = CarrierRegistry(U)
    V = reg.register(finite_dim(U, W(2)))
    rep = kostant_probe(U, lam0, W(1), V)
    assert rep["rows"] and rep["verdict"] == "PASS"
