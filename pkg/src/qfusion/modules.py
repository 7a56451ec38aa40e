"""Weight modules: Verma modules, their irreducible quotients, finite-dimensional
modules and tensor products, all with sparse exact action tables."""

from fractions import Fraction

from . import linalg
from .linalg import sp_add, sp_diag, sp_identity, sp_kron, sp_mul
from .roots import Weight, height
from .scalars import ONE, ZERO
from .shapovalov import gram_block


class ModuleError(ValueError):
    pass


class WeightModule:
    """A module with a weight basis and sparse matrices for e_i, f_i.

    ``weights[n]`` is the weight of basis vector n, ``labels[n]`` its
    (beta, word) tag for highest weight modules.
    """

    def __init__(self, alg, kind, weights, E, F, labels=None, highest_weight=None, factors=(), truncated=False):
        self.alg = alg
        self.kind = kind
        self.weights = weights
        self.dim = len(weights)
        self.E = E
        self.F = F
        self.labels = labels or [None] * self.dim
        self.highest_weight = highest_weight
        self.factors = tuple(factors)
        self.truncated = truncated
        self._coords = [alg.rd.simple_coords(w) for w in weights]
        self._rho = {}

    def __repr__(self):
        return f"WeightModule({self.kind}, dim={self.dim})"

    # -- action -----------------------------------------------------------------
    def t_matrix(self, tv):
        alg = self.alg
        d = alg.rd.d
        vals = []
        for p in self._coords:
            e = sum(d[i] * tv[i] * p[i] for i in range(alg.r))
            vals.append(alg.q(e) if e else ONE)
        return sp_diag(vals)

    def k_matrix(self, i, p=1):
        return self.t_matrix(tuple(p * x for x in self.alg.kvec[i]))

    def word_matrix(self, word, side):
        key = (side, word)
        if key in self._rho:
            return self._rho[key]
        gens = self.F if side == "f" else self.E
        if not word:
            M = sp_identity(self.dim)
        else:
            M = sp_mul(gens[word[0]], self.word_matrix(word[1:], side))
        self._rho[key] = M
        return M

    def rho(self, x):
        """Sparse matrix of the AlgebraElement x."""
        out = {}
        for (Fw, T, Ew), c in x.terms.items():
            key = ("m", Fw, T, Ew)
            M = self._rho.get(key)
            if M is None:
                M = sp_mul(sp_mul(self.word_matrix(Fw, "f"), self.t_matrix(T)), self.word_matrix(Ew, "e"))
                self._rho[key] = M
            out = sp_add(out, M, c)
        return out

    def act(self, x, vec):
        return linalg.sp_apply(self.rho(x), vec)

    # -- weights ------------------------------------------------------------------
    def weight_indices(self, mu):
        mu = tuple(Fraction(c) for c in (mu.c if isinstance(mu, Weight) else mu))
        return [n for n, w in enumerate(self.weights) if w.c == mu]

    def weight_multiplicities(self):
        out = {}
        for w in self.weights:
            out[w.c] = out.get(w.c, 0) + 1
        return out

    def down_depth(self, mu=None):
        """Largest ht beta with mu - beta a weight of the module (mu defaults to 0)."""
        return self._depth(mu, -1)

    def up_depth(self, mu=None):
        return self._depth(mu, 1)

    def _depth(self, mu, sign):
        rd = self.alg.rd
        base = mu.c if mu is not None else (0,) * rd.rank
        best = 0
        for w in self.weights:
            diff = rd.simple_coords([sign * (a - b) for a, b in zip(w.c, base)])
            if all(x.denominator == 1 and x >= 0 for x in diff):
                best = max(best, int(sum(diff)))
        return best

    def span_height(self):
        """Largest ht(mu - mu') over pairs of weights differing by an element of Q+."""
        if not hasattr(self, "_span"):
            self._span = max(self.down_depth(w) for w in set(self.weights))
        return self._span

    def zero_space(self):
        return self.weight_indices((0,) * self.alg.r)


def verma(alg, lam, N=None):
    """M(lambda) truncated to layers of height <= N; f on the top layer is dropped."""
    N = alg.N if N is None else N
    alg.check_weight(lam)
    layers = [(0,) * alg.r] + alg.rd.enumerate_qplus(N)
    labels, index = [], {}
    for beta in layers:
        for w in alg.basis(beta).words if any(beta) else [()]:
            index[w] = len(labels)
            labels.append((beta, w))
    weights = [alg.rd.shifted(lam, beta) for beta, _ in labels]
    E = [dict() for _ in range(alg.r)]
    F = [dict() for _ in range(alg.r)]
    for n, (beta, w) in enumerate(labels):
        for i in range(alg.r):
            if height(beta) < N:
                for w2, c in alg.reduce_word((i,) + w).items():
                    linalg.sp_add_entry(F[i], index[w2], n, c)
            for (w2, T), c in alg.raise_mod_plus(i, {(w, alg.zero_t): ONE}).items():
                linalg.sp_add_entry(E[i], index[w2], n, c * alg.qchar_t(lam, T))
    return WeightModule(alg, "verma", weights, E, F, labels, lam, truncated=True)


def quotient_data(alg, lam, beta):
    """Complement words and the projection from the Verma layer onto them."""
    block = gram_block(alg, lam, beta)
    tags = block.complement_tags
    if not tags:
        return [], []
    S = block.matrix
    P = linalg.matmul(block.inv_quotient, [S[i] for i in tags])
    return tags, P


def irreducible(alg, lam, N=None):
    """L(lambda) truncated to height <= N: layers are the Gram complements."""
    if lam.direction is not None:
        raise ModuleError("irreducible quotients need a fixed weight")
    N = alg.N if N is None else N
    M = verma(alg, lam, N)
    return _quotient(alg, lam, M, N, "irreducible_truncated")


def _quotient(alg, lam, M, N, kind):
    zero = (0,) * alg.r
    layer_idx = {}
    for n, (beta, _) in enumerate(M.labels):
        layer_idx.setdefault(beta, []).append(n)
    keep = list(layer_idx[zero])
    proj = {zero: [[ONE]]}
    for beta in alg.rd.enumerate_qplus(N):
        tags, P = quotient_data(alg, lam, beta)
        if tags:
            keep.extend(layer_idx[beta][t] for t in tags)
            proj[beta] = P
    new_index = {n: k for k, n in enumerate(keep)}
    # verma index -> (beta, position in layer); quotient rows of each layer
    pos = {n: (beta, p) for beta, idx in layer_idx.items() for p, n in enumerate(idx)}
    qrows = {}
    for n in keep:
        qrows.setdefault(M.labels[n][0], []).append(new_index[n])

    def restrict(G):
        cols = linalg.sp_transpose(G)
        out = {}
        for n in keep:
            for m, c in cols.get(n, {}).items():
                beta, p = pos[m]
                P = proj.get(beta)
                if P is None:
                    continue
                for r, row in zip(qrows[beta], P):
                    if not row[p].is_zero():
                        linalg.sp_add_entry(out, r, new_index[n], row[p] * c)
        return out

    E = [restrict(G) for G in M.E]
    F = [restrict(G) for G in M.F]
    weights = [M.weights[n] for n in keep]
    labels = [M.labels[n] for n in keep]
    return WeightModule(alg, kind, weights, E, F, labels, lam, truncated=True)


def finite_dim(alg, mu):
    """L(mu) for dominant integral mu, complete."""
    rd = alg.rd
    if mu.direction is not None or not rd.is_dominant_integral(mu):
        raise ModuleError(f"finite_dim needs a dominant integral weight, got {mu}")
    depth = rd.depth(mu)
    if depth + 1 > alg.N:
        raise ModuleError(f"height bound {alg.N} is below depth {depth} + 1 of L({mu})")
    V = irreducible(alg, mu, depth + 1)
    if any(height(b) > depth for b, _ in V.labels):
        raise ModuleError("layer beyond the lowest weight survived; module is not finite dimensional")
    V.kind = "finite_dim"
    V.truncated = False
    return V


def tensor(*mods):
    """Tensor product carrier; the action goes through the coproduct."""
    if len(mods) == 1:
        return mods[0]
    V = mods[0]
    for W in mods[1:]:
        V = _tensor2(V, W)
    V.factors = tuple(m for m in mods)
    return V


def _tensor2(V, W):
    alg = V.alg
    nw = W.dim
    E, F = [], []
    Iv, Iw = sp_identity(V.dim), sp_identity(nw)
    for i in range(alg.r):
        # e_i -> e_i x 1 + k_i x e_i ; f_i -> f_i x k_i^-1 + 1 x f_i
        E.append(sp_add(sp_kron(V.E[i], Iw, nw), sp_kron(V.k_matrix(i), W.E[i], nw)))
        F.append(sp_add(sp_kron(V.F[i], W.k_matrix(i, -1), nw), sp_kron(Iv, W.F[i], nw)))
    weights = [a + b for a in V.weights for b in W.weights]
    labels = [(n, m) for n in range(V.dim) for m in range(nw)]
    return WeightModule(alg, "tensor", weights, E, F, labels, factors=(V, W),
                        truncated=V.truncated or W.truncated)


def trivial(alg):
    zero = Weight((0,) * alg.r)
    return WeightModule(alg, "finite_dim", [zero], [{} for _ in range(alg.r)], [{} for _ in range(alg.r)],
                        [((0,) * alg.r, ())], zero)


def singular_vectors(V, target):
    """Basis of {v in V[target] : e_i v = 0 for all i} as dense vectors."""
    idx = V.weight_indices(target)
    if not idx:
        return []
    rows = []
    for G in V.E:
        for i, row in G.items():
            rows.append([row.get(j, ZERO) for j in idx])
    null = linalg.nullspace(rows, len(idx)) if rows else linalg.nullspace([], len(idx))
    out = []
    for vec in null:
        full = [ZERO] * V.dim
        for j, c in zip(idx, vec):
            full[j] = c
        out.append(full)
    return out


def check_relations(V):
    """Defining relations as matrix identities; returns the list of failures."""
    alg = V.alg
    bad = []
    for i in range(alg.r):
        for j in range(alg.r):
            lhs = sp_add(sp_mul(V.E[i], V.F[j]), sp_mul(V.F[j], V.E[i]), -ONE)
            rhs = {}
            if i == j:
                inv = alg.qd(i).inverse()
                rhs = linalg.sp_scale(sp_add(V.k_matrix(i), V.k_matrix(i, -1), -ONE), inv)
            if not linalg.sp_equal(lhs, rhs):
                bad.append(("ef", i, j))
    for gen, sign in ((V.E, 1), (V.F, -1)):
        for i in range(alg.r):
            for j in range(alg.r):
                tv = tuple(int(m == j) for m in range(alg.r))
                lhs = sp_mul(sp_mul(V.t_matrix(tv), gen[i]), V.t_matrix(tuple(-x for x in tv)))
                rhs = linalg.sp_scale(gen[i], alg.q(sign * alg.rd.d[j] * (i == j)) if i == j else ONE)
                if not linalg.sp_equal(lhs, rhs):
                    bad.append(("t", i, j))
    for side, gen in (("e", alg.eword), ("f", alg.fword)):
        for rel in _serre_elements(alg, side):
            if V.rho(rel):
                bad.append(("serre", side))
    return bad


def _serre_elements(alg, side):
    out = []
    for beta_rels in (alg._serre_relations(b) for b in _serre_degrees(alg)):
        for rel in beta_rels:
            x = alg.element()
            for w, c in rel.items():
                word_el = alg.element({((w, alg.zero_t, ()) if side == "f" else ((), alg.zero_t, w)): ONE})
                x = x + word_el * c
            out.append(x)
    return out


def _serre_degrees(alg):
    A = alg.rd.A
    out = []
    for i in range(alg.r):
        for j in range(alg.r):
            if i != j:
                deg = [0] * alg.r
                deg[i] += 1 - A[i][j]
                deg[j] += 1
                out.append(tuple(deg))
    return out
