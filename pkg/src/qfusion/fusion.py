"""Reduced fusion elements, the star product, Theta coefficients, weight
families over k(z) and the regularity / Kostant probes."""

from . import linalg
from .funcalg import arrow, invariant_vectors, is_invariant, product
from .linalg import sp_apply
from .modules import quotient_data, verma
from .roots import Weight, height
from .scalars import ONE, ZERO, PoleError, eval_z1, pole_order_at_one
from .shapovalov import gram_block


class PreconditionError(ValueError):
    pass


class FusionElement:
    """Block data {beta: (tags, inverse block)} of J^red(lambda), built lazily.

    For a fixed weight the tags are complement tags and the inverse is the
    inverse quotient block; for a family every basis word is tagged and the
    block is the full Gram inverse over k(z).
    """

    def __init__(self, alg, lam, N, complement=None):
        self.alg = alg
        self.lam = lam
        self.N = N
        self.complement = dict(complement or {})
        self._blocks = {}
        self._theta = {}
        self._ys = {}

    @property
    def is_family(self):
        return self.lam.direction is not None

    def block(self, beta):
        beta = tuple(beta)
        if beta in self._blocks:
            return self._blocks[beta]
        if not any(beta):
            out = ([()], [[ONE]])
        else:
            gb = gram_block(self.alg, self.lam, beta)
            if self.is_family:
                out = (list(gb.words), gb.inverse)
            elif beta in self.complement:
                choice = list(self.complement[beta])
                if len(choice) != len(gb.complement_tags):
                    raise ValueError(f"complement at {beta} must have {len(gb.complement_tags)} elements")
                if all(isinstance(t, int) for t in choice):
                    out = ([gb.words[t] for t in choice], gb.quotient(choice))
                else:
                    # coefficient vectors over the basis words
                    tags = []
                    for k, vec in enumerate(choice):
                        key = ("vec", beta, k)
                        self._ys[key] = self.alg.from_vector(beta, vec)
                        tags.append(key)
                    out = (tags, gb.quotient_vectors(choice))
            else:
                out = ([gb.words[t] for t in gb.complement_tags], gb.inv_quotient)
        self._blocks[beta] = out
        return out

    @property
    def blocks(self):
        return {beta: self.block(beta) for beta in self.degrees(self.N)}

    def degrees(self, N):
        return [(0,) * self.alg.r] + self.alg.rd.enumerate_qplus(N)

    def y(self, tag):
        """The U^- element behind a tag: a basis word or a registered complement vector."""
        if tag in self._ys:
            return self._ys[tag]
        return self.alg.fword(tag) if tag else self.alg.one()

    def theta_y(self, word):
        if word not in self._theta:
            self._theta[word] = self.alg.theta(self.y(word))
        return self._theta[word]

    def as_tensor(self, N=None):
        """Sum of inv_ij y_i (x) theta(y_j) as a Tensor in U (x) U."""
        from .uqg_core import Tensor
        out = Tensor(self.alg, 2)
        for beta in self.degrees(self.N if N is None else N):
            tags, inv = self.block(beta)
            for i, wi in enumerate(tags):
                for j, wj in enumerate(tags):
                    if not inv[i][j].is_zero():
                        out = out + Tensor.from_pairs(self.alg, [(self.y(wi), self.theta_y(wj), inv[i][j])])
        return out

    def eval_z1(self):
        """Blockwise z = 1 limits; raises PoleError on a pole."""
        out = {}
        for beta, (tags, inv) in self.blocks.items():
            out[beta] = (tags, [[eval_z1(c) for c in row] for row in inv])
        return out

    def pole_orders(self):
        out = {}
        for beta, (tags, inv) in self.blocks.items():
            orders = [pole_order_at_one(c) for row in inv for c in row if not c.is_zero()]
            out[beta] = max(orders) if orders else None
        return out


def fusion_reduced(alg, lam, N, complement=None):
    if lam.direction is not None:
        raise ValueError("fusion_reduced needs a fixed weight; use fusion_family")
    alg.check_weight(lam)
    F = FusionElement(alg, lam, N, complement)
    F.blocks
    return F


def line_in_degeneracy_locus(rd, lam0, nu):
    """Positive roots whose integrality hyperplane contains the whole line lam0 + t nu."""
    bad = []
    for beta, n in rd.integral_roots(lam0):
        if rd.pair(Weight(nu), beta) == 0:
            bad.append((beta, n))
    return bad


def fusion_family(alg, lam0, nu, N):
    nu = tuple(nu.c if isinstance(nu, Weight) else nu)
    bad = line_in_degeneracy_locus(alg.rd, lam0, nu)
    if bad:
        raise PreconditionError(f"the line lies in the hyperplanes of {[b for b, _ in bad]}; no generic fiber")
    lam = Weight(lam0.c, nu)
    alg.check_weight(lam)
    F = FusionElement(alg, lam, N)
    F.blocks
    return F


# -- star product -----------------------------------------------------------------

def star_depth(f1, f2):
    return min(f1.carrier.down_depth(), f2.carrier.up_depth())


def star_terms(F, f1, f2, N=None, check=True):
    """Per-degree contributions {beta: sum_ij inv_ij (->y_i f1)(->theta(y_j) f2)}."""
    alg = F.alg
    if check:
        base = F.lam.base() if F.is_family else F.lam
        for f in (f1, f2):
            if not is_invariant(alg, base, f):
                raise PreconditionError("star inputs must lie in F[0]^{K + theta(K)}")
    need = star_depth(f1, f2)
    N = need if N is None else max(N, need)
    terms = {}
    for beta in F.degrees(N):
        tags, inv = F.block(beta)
        A = [arrow(F.y(w), f1) for w in tags]
        if all(a.is_zero() for a in A):
            continue
        B = [arrow(F.theta_y(w), f2) for w in tags]
        out = None
        for i, a in enumerate(A):
            if a.is_zero():
                continue
            acc = None
            for j, b in enumerate(B):
                c = inv[i][j]
                if c.is_zero() or b.is_zero():
                    continue
                acc = b * c if acc is None else acc + b * c
            if acc is not None:
                term = product(a, acc)
                out = term if out is None else out + term
        if out is not None:
            terms[beta] = out
    return terms


def star(F, f1, f2, N=None, check=True):
    """f1 *_lambda f2 = sum inv_ij (->y_i f1)(->theta(y_j) f2); exact once N covers the carriers."""
    terms = star_terms(F, f1, f2, N, check)
    zero = (0,) * F.alg.r
    out = terms.pop(zero, None)
    if out is None:
        out = product(f1, f2) * ZERO
    for t in terms.values():
        out = out + t
    return out


# -- Theta coefficients -------------------------------------------------------------

def theta_coefficients(F, L, f, N=None, check=True):
    """Coefficients f^{beta,i} and the vector xi in L (x) F.

    L is irreducible(lambda, N); xi is a list of FunctionElements aligned
    with L's basis.  Returns (coeffs, xi) with coeffs keyed by (beta, i).
    """
    alg = F.alg
    if check and not is_invariant(alg, F.lam, f):
        raise PreconditionError("theta_coefficients needs f in F[0]^{K + theta(K)}")
    N = L_height(L) if N is None else N
    if f.carrier.up_depth() > N:
        raise PreconditionError(f"truncation {N} is shallower than the carrier depth {f.carrier.up_depth()}")
    coeffs = {}
    zero_f = f * ZERO
    xi = [zero_f] * L.dim
    pos = _layer_positions(L)
    for beta in F.degrees(N):
        tags, inv = F.block(beta)
        B = [arrow(F.theta_y(w), f) for w in tags]
        for i in range(len(tags)):
            acc = zero_f
            for j, b in enumerate(B):
                if not inv[i][j].is_zero() and not b.is_zero():
                    acc = acc + b * inv[i][j]
            coeffs[(beta, i)] = acc
            n = pos.get((beta, i))
            if n is not None:
                xi[n] = acc
    return coeffs, xi


def L_height(L):
    return max(height(b) for b, _ in L.labels)


def _layer_positions(L):
    out = {}
    count = {}
    for n, (beta, _) in enumerate(L.labels):
        k = count.get(beta, 0)
        out[(beta, k)] = n
        count[beta] = k + 1
    return out


def singularity_defect(L, xi, act, N):
    """(e_i (x) 1 + k_i (x) e_i) xi on layers of height < N.

    ``act(i, item)`` applies e_i on the second leg; items support + and
    scalar *, and are zero-tested with ``is_zero``.  Returns the list of
    (i, basis index) where the result is nonzero.
    """
    bad = []
    for i in range(L.alg.r):
        K = L.k_matrix(i)
        res = {}
        for m, row in L.E[i].items():
            for n, c in row.items():
                term = _scale(xi[n], c)
                res[m] = term if m not in res else _plus(res[m], term)
        for n in range(L.dim):
            term = _scale(act(i, xi[n]), K[n][n])
            res[n] = term if n not in res else _plus(res[n], term)
        for n, val in res.items():
            if height(L.labels[n][0]) < N and not _is_zero(val):
                bad.append((i, n))
    return bad


def _scale(x, c):
    if isinstance(x, list):
        return [a * c for a in x]
    return x * c


def _plus(x, y):
    if isinstance(x, list):
        return [a + b for a, b in zip(x, y)]
    return x + y


def _is_zero(x):
    if isinstance(x, list):
        return all(a.is_zero() for a in x)
    return x.is_zero()


def xi_defect(F, L, xi, N):
    e = [F.alg.e(i) for i in range(F.alg.r)]
    return singularity_defect(L, xi, lambda i, f: arrow(e[i], f), N)


# -- vector-level fusion on carriers --------------------------------------------------

def apply_pair(F, V, W, v, w, N):
    """J(v (x) w) = sum inv_ij (y_i v) (x) (theta(y_j) w) as a dense vector on V (x) W."""
    nw = W.dim
    out = [ZERO] * (V.dim * nw)
    for beta in F.degrees(N):
        tags, inv = F.block(beta)
        A = [sp_apply(V.rho(F.y(t)), v) for t in tags]
        if all(_is_zero(a) for a in A):
            continue
        B = [sp_apply(W.rho(F.theta_y(t)), w) for t in tags]
        for i, a in enumerate(A):
            if _is_zero(a):
                continue
            b = [ZERO] * nw
            for j, bj in enumerate(B):
                if not inv[i][j].is_zero():
                    b = [x + inv[i][j] * y for x, y in zip(b, bj)]
            for p, ap in enumerate(a):
                if ap.is_zero():
                    continue
                for k, bk in enumerate(b):
                    if not bk.is_zero():
                        out[p * nw + k] = out[p * nw + k] + ap * bk
    return out


def _max_pole(vec):
    orders = [pole_order_at_one(c) for c in vec if not c.is_zero()]
    return max(orders) if orders else None


def _unit_vector(n, k):
    return [ONE if j == k else ZERO for j in range(n)]


def _is_killed(alg, lam, V, vec):
    from .funcalg import annihilator_rows
    return all(_is_zero(sp_apply(R, vec)) for R in annihilator_rows(alg, lam, V, "K", V.span_height()))


def regularity_probe(alg, lam0, nu, V, N=None):
    """Pole orders of J(lam0 + t nu) on pairs (f, g) with f in F[0]^{K_lam0}, and z = 1 limits.

    The covector side of a matrix coefficient is inert under the arrows,
    so rows are indexed by vectors v of V[0] killed by K_lam0.  Pole orders
    run over the whole standard basis of V on the second leg; limits are
    compared on second legs from the same invariant space, where the
    reduced element is independent of the complement choice.
    """
    N = max(N or 0, V.span_height())
    Ff = fusion_family(alg, lam0, nu, N)
    Fr = fusion_reduced(alg, lam0, N)
    rows = []
    basis = [_unit_vector(V.dim, k) for k in range(V.dim)]
    inv = invariant_vectors(alg, lam0, V, sides=("K",))
    for v in inv:
        rows.append(_probe_row(Ff, Fr, V, v, basis, inv, N, control=False))
    control = next((b for b in basis if not _is_killed(alg, lam0, V, b)), None)
    if control is not None:
        rows.append(_probe_row(Ff, Fr, V, control, basis, [], N, control=True))
    ok = all(r["verdict"] == "PASS" for r in rows)
    return {"lambda0": lam0, "direction": nu, "height": N, "rows": rows, "verdict": "PASS" if ok else "FAIL",
            "family_block_poles": Ff.pole_orders()}


def _probe_row(Ff, Fr, V, v, basis, partners, N, control):
    worst = None
    witness = None
    for k, w in enumerate(basis):
        p = _max_pole(apply_pair(Ff, V, V, v, w, N))
        if p is not None and (worst is None or p > worst):
            worst, witness = p, k
    limits_ok = None
    if not control and (worst is None or worst <= 0):
        limits_ok = True
        for k, w in enumerate(partners):
            lim = [eval_z1(c) for c in apply_pair(Ff, V, V, v, w, N)]
            if lim != apply_pair(Fr, V, V, v, w, N):
                limits_ok = False
                witness = ("partner", k)
    if control:
        verdict = "PASS" if worst == 1 else "FAIL"
    else:
        verdict = "PASS" if (worst is None or worst <= 0) and limits_ok else "FAIL"
    return {"control": control, "vector": v, "pole_order": worst if worst is not None else 0,
            "limits_match": limits_ok, "witness": witness, "verdict": verdict}


def star_limit_check(alg, reg, lam0, nu, V, N=None):
    """star over k(z) at z = 1 against star at lam0 on all invariant basis pairs of V."""
    from .funcalg import invariant_subspace
    basis = invariant_subspace(reg, lam0, V)
    N = max(N or 0, V.down_depth(), V.up_depth())
    Ff = fusion_family(alg, lam0, nu, N)
    Fr = fusion_reduced(alg, lam0, N)
    bad = []
    for a, f1 in enumerate(basis):
        for b, f2 in enumerate(basis):
            fam = star(Ff, f1, f2, check=False)
            try:
                lim = fam.eval_z1()
            except PoleError:
                bad.append((a, b, "pole"))
                continue
            if lim != star(Fr, f1, f2, check=False):
                bad.append((a, b, "mismatch"))
    return {"pairs": len(basis) ** 2, "failures": bad, "verdict": "PASS" if not bad else "FAIL"}


def kostant_probe(alg, lam0, nu, V, N=None):
    """Lift each invariant g to Z = lim J(lam)(1_lam (x) g) and check the round trip."""
    N = max(N or 0, V.up_depth() + 1)
    Ff = fusion_family(alg, lam0, nu, N)
    M = verma(alg, lam0, N)
    mpos = _layer_positions(M)
    rows = []
    for g in invariant_vectors(alg, lam0, V):
        rows.append(_kostant_row(alg, lam0, Ff, M, mpos, V, g, N))
    ok = all(r["verdict"] == "PASS" for r in rows)
    return {"lambda0": lam0, "direction": nu, "height": N, "rows": rows,
            "verdict": "PASS" if ok else "FAIL", "evidence": "carrier-restricted"}


def _kostant_row(alg, lam0, Ff, M, mpos, V, g, N):
    Z = [[ZERO] * V.dim for _ in range(M.dim)]
    pole = 0
    for beta in Ff.degrees(N):
        tags, inv = Ff.block(beta)
        B = [sp_apply(V.rho(Ff.theta_y(t)), g) for t in tags]
        for i in range(len(tags)):
            acc = [ZERO] * V.dim
            for j, b in enumerate(B):
                if not inv[i][j].is_zero():
                    acc = [x + inv[i][j] * y for x, y in zip(acc, b)]
            p = _max_pole(acc)
            if p is not None and p > 0:
                pole = max(pole, p)
                continue
            Z[mpos[(beta, i)]] = [eval_z1(c) for c in acc]
    if pole:
        return {"vector": g, "verdict": "FAIL", "reason": f"pole of order {pole} in the lift"}
    act = lambda i, vec: sp_apply(V.E[i], vec)
    verma_bad = singularity_defect(M, Z, act, N)
    # project onto L(lam0) layer by layer
    zero = (0,) * alg.r
    proj = [Z[mpos[(zero, 0)]]]
    for beta in alg.rd.enumerate_qplus(N):
        tags, P = quotient_data(alg, lam0, beta)
        layer = [Z[mpos[(beta, k)]] for k in range(alg.basis(beta).dim)]
        for row in P:
            acc = [ZERO] * V.dim
            for c, vec in zip(row, layer):
                if not c.is_zero():
                    acc = [x + c * y for x, y in zip(acc, vec)]
            proj.append(acc)
    from .modules import irreducible
    L = irreducible(alg, lam0, N)
    l_bad = singularity_defect(L, proj, act, N)
    Fr = fusion_reduced(alg, lam0, N)
    expected = _theta_vectors(Fr, L, V, g, N)
    ok = not verma_bad and not l_bad and proj[0] == g and proj == expected
    return {"vector": g, "verma_defect": verma_bad, "quotient_defect": l_bad,
            "leading_equals_g": proj[0] == g, "matches_theta": proj == expected,
            "verdict": "PASS" if ok else "FAIL"}


def _theta_vectors(F, L, V, g, N):
    """Vector-level Theta coefficients aligned with L's basis."""
    pos = _layer_positions(L)
    out = [[ZERO] * V.dim for _ in range(L.dim)]
    for beta in F.degrees(N):
        tags, inv = F.block(beta)
        B = [sp_apply(V.rho(F.theta_y(t)), g) for t in tags]
        for i in range(len(tags)):
            acc = [ZERO] * V.dim
            for j, b in enumerate(B):
                if not inv[i][j].is_zero():
                    acc = [x + inv[i][j] * y for x, y in zip(acc, b)]
            n = pos.get((beta, i))
            if n is not None:
                out[n] = acc
    return out


def k_equals_ktilde(alg, lam0, V):
    """Carrier-restricted check that V[0]^{K} and V[0]^{theta(K)} coincide."""
    a = invariant_vectors(alg, lam0, V, sides=("K",))
    b = invariant_vectors(alg, lam0, V, sides=("Kt",))
    same = len(a) == len(b) and all(linalg.in_span(a, v) for v in b)
    return {"dim_K": len(a), "dim_Kt": len(b), "equal": same}
