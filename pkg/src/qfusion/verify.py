"""The acceptance suite: twelve exact checks, each returning a Verdict."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
import time

from . import linalg
from .funcalg import CarrierRegistry, coarrow, invariant_subspace, product, unit
from .fusion import (fusion_reduced, k_equals_ktilde, kostant_probe, regularity_probe, star,
                     star_limit_check, star_terms, theta_coefficients, xi_defect)
from .modules import finite_dim, irreducible
from .oracles import character, weyl_dimension, weyl_group
from .roots import RootData, Weight, height
from .scalars import ONE
from .shapovalov import gram_block, kernel_block, kernel_generation_check, kernel_inclusion
from .uqg_core import UqAlgebra


@dataclass
class Verdict:
    number: int
    name: str
    passed: bool
    details: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.name} (tolerance 0, {self.seconds:.2f}s)"


def W(*c, direction=None):
    return Weight(tuple(Fraction(x) for x in c), direction)


# 1 ---------------------------------------------------------------------------------

def check_pbw(N=6):
    details = []
    ok = True
    for name in ("A2", "B2"):
        alg = UqAlgebra(name, N)
        for beta in alg.rd.enumerate_qplus(N):
            got, want = alg.basis(beta).dim, alg.rd.kostant_partition(beta)
            if got != want:
                ok = False
                details.append(f"{name} beta={beta}: dim {got} != partition {want}")
        details.append(f"{name}: {len(alg.rd.enumerate_qplus(N))} degrees checked")
    return ok, details


# 2 ---------------------------------------------------------------------------------

def hopf_monomials(alg, max_height, tvecs):
    out = []
    words = {0: [()]}
    for beta in alg.rd.enumerate_qplus(max_height):
        words.setdefault(height(beta), []).extend(alg.basis(beta).words)
    for hf in range(max_height + 1):
        for he in range(max_height + 1 - hf):
            for F, E in iproduct(words[hf], words[he]):
                for T in tvecs:
                    out.append(alg.element({(F, T, E): ONE}))
    return out


def hopf_failures(alg, x):
    bad = []
    D = alg.coproduct(x)
    if D.map_leg(0, alg.coproduct) != D.map_leg(1, alg.coproduct):
        bad.append("coassociativity")
    if D.map_leg(0, alg.counit).multiply_legs() != x:
        bad.append("left counit")
    if D.map_leg(1, alg.counit).multiply_legs() != x:
        bad.append("right counit")
    eps = alg.one() * alg.counit(x)
    if D.map_leg(0, alg.antipode).multiply_legs() != eps:
        bad.append("left antipode")
    if D.map_leg(1, alg.antipode).multiply_legs() != eps:
        bad.append("right antipode")
    return bad


def check_hopf(max_height=3):
    alg = UqAlgebra("A2", 2 * max_height)
    tvecs = [(0, 0), (1, 0), (0, -1), (1, -1)]
    mons = hopf_monomials(alg, max_height, tvecs)
    details = [f"{len(mons)} normal monomials (height <= {max_height}, t-points {tvecs})"]
    ok = True
    for x in mons:
        bad = hopf_failures(alg, x)
        if bad:
            ok = False
            details.append(f"{x}: {bad}")
    return ok, details


# 3 ---------------------------------------------------------------------------------

def check_prop1(N=6):
    ok = True
    details = []
    generic = [W("1/2"), W("-5/3"), W("2/7")]
    lams = [W(n - 1) for n in (1, 2, 3)]
    alg = UqAlgebra("A1", N, weights=generic + lams)
    for n, lam in zip((1, 2, 3), lams):
        beta = (n,)
        K = [y.neg_vector(beta) for y in kernel_block(alg, lam, beta)]
        fn = (alg.f(0) ** n).neg_vector(beta)
        inside = linalg.in_span(K, fn)
        ok &= inside
        details.append(f"<lam+rho,a> = {n}: f^{n} in K[-{n}a]: {inside}")
    for lam in generic:
        dims = [len(kernel_block(alg, lam, (h,))) for h in range(1, N + 1)]
        empty = not any(dims)
        ok &= empty
        details.append(f"generic lam = {lam}: kernel dims {dims}")
    return ok, details


# 4 ---------------------------------------------------------------------------------

def check_vanishing_locus(nmax=4):
    on = {n: [W(k - 1) for k in range(1, n + 1)] for n in range(1, nmax + 1)}
    off = [W("1/2"), W("-1/3"), W("3/4"), W("-2"), W("7/5")]
    weights = [w for ws in on.values() for w in ws] + off + [W(n) for n in range(1, nmax + 1)]
    alg = UqAlgebra("A1", nmax, weights=weights)
    ok = True
    details = []
    for n in range(1, nmax + 1):
        for lam in on[n]:
            d = gram_block(alg, lam, (n,)).det()
            ok &= d.is_zero()
            details.append(f"n={n} lam={lam} (on): det = {d}")
        for lam in off + [W(n)]:
            d = gram_block(alg, lam, (n,)).det()
            ok &= not d.is_zero()
            details.append(f"n={n} lam={lam} (off): det nonzero: {not d.is_zero()}")
    return ok, details


# 5 ---------------------------------------------------------------------------------

def check_kernel_generation(N=5):
    lam = W(1, 0)
    alg = UqAlgebra("A2", N, weights=[lam])
    rep = kernel_generation_check(alg, lam, [alg.f(0) ** 2, alg.f(1)], N)
    ok = all(r["relation"] == "equal" for r in rep)
    details = [f"beta={r['beta']}: kernel {r['kernel_dim']}, generated {r['generated_dim']}, {r['relation']}" for r in rep]
    return ok, details


# 6 ---------------------------------------------------------------------------------

def check_weyl_invariance():
    ok = True
    details = []
    cases = [("A1", W(2)), ("A1", W(3)), ("A2", W(1, 0)), ("A2", W(1, 1))]
    for name, mu in cases:
        rd = RootData.of(name)
        alg = UqAlgebra(rd, rd.depth(mu) + 1)
        V = finite_dim(alg, mu)
        mult = V.weight_multiplicities()
        oracle = character(rd, mu)
        dim_ok = V.dim == weyl_dimension(rd, mu) == sum(oracle.values())
        char_ok = mult == oracle
        w_ok = True
        for word, _ in weyl_group(rd):
            for c, m in mult.items():
                if mult.get(rd.act(word, Weight(c)).c, 0) != m:
                    w_ok = False
        ok &= dim_ok and char_ok and w_ok
        zero = mult.get(tuple(Fraction(0) for _ in range(rd.rank)), 0)
        details.append(f"{name} mu={mu}: dim {V.dim}, weight-0 multiplicity {zero}, "
                       f"oracle match {char_ok}, W-invariant {w_ok}")
    # the stated A2 adjoint values
    alg = UqAlgebra("A2", 5)
    V = finite_dim(alg, W(1, 1))
    adj = V.dim == 8 and V.weight_multiplicities()[(0, 0)] == 2
    ok &= adj
    details.append(f"A2 adjoint: dim 8 and weight-0 multiplicity 2: {adj}")
    return ok, details


# 7 ---------------------------------------------------------------------------------

def sl2_setup(lam_values, N=6, direction=None):
    weights = [W(x) for x in lam_values]
    if direction is not None:
        weights += [W(x, direction=(Fraction(direction),)) for x in lam_values]
    alg = UqAlgebra("A1", N, weights=weights)
    reg = CarrierRegistry(alg)
    V = reg.register(finite_dim(alg, W(2)), "L(2)")
    return alg, reg, V


def check_star_laws():
    lam = W("1/2")
    alg, reg, V = sl2_setup(["1/2"])
    F = fusion_reduced(alg, lam, 4)
    B = invariant_subspace(reg, lam, V)
    one = unit(reg)
    details = [f"invariant basis size {len(B)} on the 3-dim carrier"]
    unit_ok = all(star(F, one, f) == f and star(F, f, one) == f for f in B)
    zero = (0,)
    deg0_ok = all(star_terms(F, a, b)[zero] == product(a, b) for a in B for b in B)
    assoc_bad = [(i, j, k) for (i, a), (j, b), (k, c) in iproduct(enumerate(B), repeat=3)
                 if star(F, star(F, a, b), c) != star(F, a, star(F, b, c))]
    nontrivial = any(star(F, a, b) != product(a, b) for a in B for b in B)
    eq_bad = []
    gens = [alg.e(0), alg.f(0), alg.t(0), alg.t(0, -1)]
    for g in gens:
        D = alg.coproduct(g)
        for i, a in enumerate(B):
            for j, b in enumerate(B):
                lhs = coarrow(star(F, a, b), g)
                rhs = None
                for (k1, k2), c in D.terms.items():
                    term = star(F, coarrow(a, alg.element({k1: c})), coarrow(b, alg.element({k2: ONE})), check=False)
                    rhs = term if rhs is None else rhs + term
                if lhs != rhs:
                    eq_bad.append((str(g), i, j))
    details += [f"unit law: {unit_ok}", f"beta = 0 term equals the plain product: {deg0_ok}",
                f"associativity failures on {len(B) ** 3} triples: {assoc_bad}",
                f"star differs from the plain product somewhere: {nontrivial}",
                f"<- equivariance failures (e, f, t, t^-1): {eq_bad}"]
    return unit_ok and deg0_ok and not assoc_bad and not eq_bad and nontrivial, details


# 8 ---------------------------------------------------------------------------------

def check_round_trip(N=5):
    ok = True
    details = []
    for lam_s in ("1", "1/3"):
        lam = W(lam_s)
        alg, reg, V = sl2_setup([lam_s], N=N + 1)
        F = fusion_reduced(alg, lam, N)
        L = irreducible(alg, lam, N)
        B = invariant_subspace(reg, lam, V)
        for n, f in enumerate(B):
            coeffs, xi = theta_coefficients(F, L, f, N)
            bad = xi_defect(F, L, xi, N)
            lead = xi[0] == f and coeffs[((0,), 0)] == f
            ok &= not bad and lead
            details.append(f"lam={lam} f#{n}: singular up to height {N}: {not bad}, beta=0 coefficient is f: {lead}")
    return ok, details


# 9 ---------------------------------------------------------------------------------

def check_regularity_sl2():
    lam0, nu = W(1), W(1)
    alg, reg, V = sl2_setup(["1"], direction=1)
    rep = regularity_probe(alg, lam0, nu, V)
    inv_rows = [r for r in rep["rows"] if not r["control"]]
    ctrl = [r for r in rep["rows"] if r["control"]]
    rows_ok = bool(inv_rows) and all(r["pole_order"] <= 0 and r["limits_match"] for r in inv_rows)
    ctrl_ok = len(ctrl) == 1 and ctrl[0]["pole_order"] == 1
    lim = star_limit_check(alg, reg, lam0, nu, V)
    details = [f"invariant rows: {[(r['pole_order'], r['limits_match']) for r in inv_rows]}",
               f"control row pole order: {[r['pole_order'] for r in ctrl]}",
               f"family block pole orders: {rep['family_block_poles']}",
               f"star limit at z = 1 on {lim['pairs']} pairs: {lim['verdict']}"]
    return rows_ok and ctrl_ok and lim["verdict"] == "PASS", details


# 10 --------------------------------------------------------------------------------

A2_LAM0 = ("0", "1/3")
A2_NU = (1, 0)
A2_LAM_PRIME = ("0", "5/7")


def a2_setup(N=5):
    lam0 = W(*A2_LAM0)
    fam = W(*A2_LAM0, direction=A2_NU)
    alg = UqAlgebra("A2", N, weights=[lam0, fam, W(*A2_LAM_PRIME)])
    reg = CarrierRegistry(alg)
    V = reg.register(finite_dim(alg, W(1, 1)), "L(1,1)")
    return alg, reg, V, lam0, W(*A2_NU)


def check_regularity_a2():
    alg, reg, V, lam0, nu = a2_setup()
    rd = alg.rd
    hyp = [(beta, rd.pair(Weight(tuple(x + 1 for x in lam0.c)), beta)) for beta in rd.positive_roots]
    rep = regularity_probe(alg, lam0, nu, V)
    inv_rows = [r for r in rep["rows"] if not r["control"]]
    rows_ok = bool(inv_rows) and all(r["verdict"] == "PASS" for r in inv_rows)
    lp = W(*A2_LAM_PRIME)
    inc = kernel_inclusion(alg, lp, lam0, 4)
    inc_ok = all(r["included"] for r in inc)
    details = [f"<lam0 + rho, beta^vee> over positive roots: {[(b, str(p)) for b, p in hyp]}",
               f"invariant rows: {[(r['pole_order'], r['limits_match']) for r in inv_rows]}",
               f"K_lam' in K_lam0 for lam' = {lp} up to height 4: "
               f"{[(r['beta'], r['dim1'], r['dim0'], r['included']) for r in inc]}"]
    return rows_ok and inc_ok, details


# 11 --------------------------------------------------------------------------------

def check_kostant():
    ok = True
    details = []
    alg, reg, V = sl2_setup(["1"], direction=1)
    cases = [("sl2 lam0=1", alg, V, W(1), W(1))]
    alg2, reg2, V2, lam0, nu = a2_setup()
    cases.append((f"A2 lam0={lam0}", alg2, V2, lam0, nu))
    for name, a, Vc, l0, n in cases:
        eq = k_equals_ktilde(a, l0, Vc)
        rep = kostant_probe(a, l0, n, Vc)
        row_ok = bool(rep["rows"]) and rep["verdict"] == "PASS"
        ok &= eq["equal"] and row_ok
        details.append(f"{name}: V[0]^K dim {eq['dim_K']}, V[0]^Ktilde dim {eq['dim_Kt']}, equal {eq['equal']}; "
                       f"lifts {[r['verdict'] for r in rep['rows']]} (carrier-restricted evidence)")
    return ok, details


# 12 --------------------------------------------------------------------------------

def alternative_complement(block):
    """Another complement of the kernel: each default tag word plus the sum of the kernel vectors."""
    from .scalars import ZERO
    shift = [ZERO] * block.dim
    for v in block.kernel_basis:
        shift = [a + b for a, b in zip(shift, v)]
    out = []
    for t in block.complement_tags:
        vec = list(shift)
        vec[t] = vec[t] + ONE
        out.append(vec)
    return out


def check_representative_independence():
    alg, reg, V, lam0, _ = a2_setup()
    beta = (1, 1)
    block = gram_block(alg, lam0, beta)
    if not block.kernel_basis or not block.complement_tags:
        return False, [f"block {beta} has no kernel to move the complement along"]
    alt = alternative_complement(block)
    F0 = fusion_reduced(alg, lam0, 2)
    F1 = fusion_reduced(alg, lam0, 2, complement={beta: alt})
    B = invariant_subspace(reg, lam0, V)
    bad = [(i, j) for i, a in enumerate(B) for j, b in enumerate(B) if star(F0, a, b) != star(F1, a, b)]
    touched = any(star_terms(F0, a, b).get(beta) is not None for a in B for b in B)
    changed = F0.as_tensor() != F1.as_tensor()
    details = [f"block {beta}: default complement words {[block.words[t] for t in block.complement_tags]}, "
               f"alternative vectors {[[str(c) for c in v] for v in alt]}",
               f"block contributes to some star: {touched}",
               f"the two representatives differ in U (x) U: {changed}",
               f"star mismatches on {len(B) ** 2} pairs: {bad}"]
    return not bad and touched and changed, details


CRITERIA = [
    (1, "PBW dimensions for A2, B2 up to height 6", check_pbw, "pbw"),
    (2, "Hopf axioms on A2 normal monomials of height <= 3", check_hopf, "hopf"),
    (3, "f^n lies in the kernel on the hyperplane; generic kernels vanish", check_prop1, "kernel"),
    (4, "sl2 Gram determinant vanishing locus, n <= 4", check_vanishing_locus, "gram"),
    (5, "A2 lambda = w1 kernel generated by f1^2, f2 up to height 5", check_kernel_generation, "generation"),
    (6, "finite-dimensional characters and W-invariance", check_weyl_invariance, "weyl"),
    (7, "star product laws at <lambda, a> = 1/2", check_star_laws, "star"),
    (8, "Theta round trip, sl2 lambda = w and generic", check_round_trip, "theta"),
    (9, "regularity and limit coherence, sl2 lambda0 = w", check_regularity_sl2, "regularity"),
    (10, "regularity at A2 (0, 1/3) and kernel inclusion", check_regularity_a2, "inclusion"),
    (11, "K = K~ on V[0] and Kostant lifts at both regular weights", check_kostant, "kostant"),
    (12, "star is independent of the complement choice", check_representative_independence, "complement"),
]


def run(number):
    for n, name, fn, _ in CRITERIA:
        if n == number:
            t = time.perf_counter()
            ok, details = fn()
            return Verdict(n, name, bool(ok), details, time.perf_counter() - t)
    raise KeyError(number)


def run_suite(names=None):
    out = []
    for n, name, fn, key in CRITERIA:
        if names and key not in names and str(n) not in names:
            continue
        out.append(run(n))
    return out
