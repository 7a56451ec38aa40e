"""The pairing pi_lambda, Shapovalov Gram blocks and their kernels."""

from . import linalg
from .roots import height
from .scalars import ONE, ZERO


class FamilyKernelError(ValueError):
    pass


class GramBlock:
    """S_lambda restricted to U^-[-beta], with kernel and quotient data.

    For family weights only ``matrix`` and ``inverse`` are filled in.
    """

    def __init__(self, lam, beta, words, matrix, kernel_basis=None, complement_tags=None, inv_quotient=None):
        self.lam = lam
        self.beta = tuple(beta)
        self.words = words
        self.matrix = matrix
        self.kernel_basis = kernel_basis
        self.complement_tags = complement_tags
        self.inv_quotient = inv_quotient

    @property
    def dim(self):
        return len(self.words)

    @property
    def is_family(self):
        return self.lam.direction is not None

    def det(self):
        return linalg.det(self.matrix) if self.matrix else ONE

    def quotient(self, tags):
        """The quotient form on the complement spanned by ``tags``; raises if singular."""
        sub = [[self.matrix[i][j] for j in tags] for i in tags]
        return linalg.inverse(sub) if sub else []

    def quotient_vectors(self, vectors):
        """Inverse of the form restricted to the span of coefficient vectors."""
        C = [list(v) for v in vectors]
        sub = linalg.matmul(linalg.matmul(C, self.matrix), linalg.transpose(C))
        return linalg.inverse(sub) if sub else []

    def __repr__(self):
        return f"GramBlock(beta={self.beta}, dim={self.dim}, kernel={None if self.kernel_basis is None else len(self.kernel_basis)})"


def pairing_pi(alg, lam, x, y):
    """q^lambda((sigma(x) y)_0)."""
    return alg.qchar(lam, alg.zero_projection(alg.antipode(x) * y))


def shapovalov(alg, lam, x, y):
    """q^lambda((omega(x) y)_0) for arbitrary x, y in U^-."""
    return alg.qchar(lam, alg.zero_projection(alg.omega(x) * y))


def gram_template(alg, beta):
    """Lambda-free Gram data: entry (i, j) is (omega(y_i) y_j)_0 as {tvec: Scalar}."""
    cache = alg.__dict__.setdefault("_gram_templates", {})
    beta = tuple(beta)
    if beta in cache:
        return cache[beta]
    gb = alg.basis(beta)
    rows = []
    for wi in gb.words:
        om = alg.omega(alg.fword(wi))
        row = []
        for wj in gb.words:
            entry = {}
            for (F, T, E), c in om.terms.items():
                for T2, c2 in alg.zero_part(E, wj).items():
                    key = tuple(a + b for a, b in zip(T, T2))
                    val = entry.get(key, ZERO) + c * c2
                    if val.is_zero():
                        entry.pop(key, None)
                    else:
                        entry[key] = val
            row.append(entry)
        rows.append(row)
    cache[beta] = rows
    return rows


def gram_matrix(alg, lam, beta):
    out = []
    for row in gram_template(alg, beta):
        out.append([_eval_template(alg, lam, entry) for entry in row])
    return out


def _eval_template(alg, lam, entry):
    s = ZERO
    for T, c in entry.items():
        s = s + c * alg.qchar_t(lam, T)
    return s


def gram_block(alg, lam, beta):
    """The GramBlock of S_lambda at degree beta (cached per session)."""
    cache = alg.__dict__.setdefault("_gram_blocks", {})
    key = (lam, tuple(beta))
    if key in cache:
        return cache[key]
    alg.check_weight(lam)
    gb = alg.basis(beta)
    M = gram_matrix(alg, lam, beta)
    if lam.direction is not None:
        block = GramBlock(lam, beta, gb.words, M)
        block.inverse = linalg.inverse(M) if M else []
    else:
        kernel = linalg.nullspace(M, len(M)) if M else []
        _, piv = linalg.rref(M) if M else (None, [])
        block = GramBlock(lam, beta, gb.words, M, kernel, list(piv))
        block.inv_quotient = block.quotient(block.complement_tags)
    cache[key] = block
    return block


def kernel_block(alg, lam, beta):
    """Basis of K_lambda[-beta] as U^- elements."""
    if lam.direction is not None:
        raise FamilyKernelError("kernel extraction is refused for family weights; the rank can jump")
    block = gram_block(alg, lam, beta)
    return [alg.from_vector(beta, vec) for vec in block.kernel_basis]


def kernel_tilde_block(alg, lam, beta):
    """Basis of the theta-image of K_lambda[-beta] in U^+[beta]."""
    return [alg.theta(y) for y in kernel_block(alg, lam, beta)]


def _rows_of(alg, beta, elements):
    return [y.neg_vector(beta) for y in elements]


def generated_span(alg, gens, beta):
    """Rows spanning sum_g U^-[-(beta - deg g)] g inside U^-[-beta]."""
    beta = tuple(beta)
    rows = []
    for g in gens:
        deg = g.degree()
        if deg is None:
            raise ValueError("generators must be homogeneous elements of U^-")
        dg = deg[0]
        rest = tuple(b - d for b, d in zip(beta, dg))
        if any(x < 0 for x in rest):
            continue
        words = alg.basis(rest).words if any(rest) else [()]
        for w in words:
            y = alg.fword(w) * g if w else g
            rows.append(y.neg_vector(beta))
    return linalg.span_basis(rows, alg.basis(beta).dim)


def compare_spans(A, B, n):
    """Relation between the row spans of A and B in a space of dimension n."""
    ra = len(A)
    rb = len(B)
    both = linalg.rank(A + B) if (A or B) else 0
    if ra == rb == both:
        return "equal"
    if both == rb:
        return "first-proper-subset"
    if both == ra:
        return "second-proper-subset"
    return "incomparable"


def kernel_generation_check(alg, lam, gens, N):
    """Per beta with 1 <= ht beta <= N: compare K_lambda[-beta] with the left ideal generated by gens.

    Relations read ``kernel-proper-subset`` / ``generated-proper-subset``.
    """
    report = []
    names = {"first-proper-subset": "kernel-proper-subset", "second-proper-subset": "generated-proper-subset"}
    for beta in alg.rd.enumerate_qplus(N):
        n = alg.basis(beta).dim
        if n == 0:
            continue
        K = linalg.span_basis(gram_block(alg, lam, beta).kernel_basis, n)
        G = generated_span(alg, gens, beta)
        rel = compare_spans(K, G, n)
        report.append({"beta": beta, "kernel_dim": len(K), "generated_dim": len(G), "relation": names.get(rel, rel)})
    return report


def kernel_inclusion(alg, lam1, lam0, N):
    """Per beta: is K_lam1[-beta] contained in K_lam0[-beta]?"""
    report = []
    for beta in alg.rd.enumerate_qplus(N):
        if height(beta) == 0 or alg.basis(beta).dim == 0:
            continue
        K1 = gram_block(alg, lam1, beta).kernel_basis
        K0 = gram_block(alg, lam0, beta).kernel_basis
        ok = all(linalg.in_span(K0, v) for v in K1)
        report.append({"beta": beta, "dim1": len(K1), "dim0": len(K0), "included": ok})
    return report
