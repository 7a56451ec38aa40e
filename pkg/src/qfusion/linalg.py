"""Dense exact linear algebra over :class:`Scalar`.

Matrices are lists of rows.  Elimination always pivots on the first
nonzero column and the first nonzero row below, so pivot columns are the
lex-least independent columns and results are reproducible.
"""

from .scalars import ONE, ZERO, Scalar


class SingularMatrixError(ArithmeticError):
    pass


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = ONE
    return M


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * n
        for k, a in enumerate(row):
            if a.is_zero():
                continue
            for j, b in enumerate(B[k]):
                if not b.is_zero():
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def matvec(A, x):
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, x):
            if not a.is_zero() and not b.is_zero():
                s = s + a * b
        out.append(s)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def rref(A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [list(map(Scalar.coerce, row)) for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if not R[i][c].is_zero()), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A):
    return len(rref(A)[1]) if A else 0


def nullspace(A, ncols=None):
    """Basis of {x : A x = 0}; each vector has a 1 at its free column."""
    if not A:
        return [[ONE if i == j else ZERO for j in range(ncols)] for i in range(ncols)]
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        x = [ZERO] * n
        x[fc] = ONE
        for row, pc in zip(R, piv):
            x[pc] = -row[fc]
        basis.append(x)
    return basis


def inverse(A):
    n = len(A)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def det(A):
    M = [list(row) for row in A]
    n = len(M)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        piv = M[c][c]
        d = d * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def span_basis(vectors, n):
    """Row-reduced basis of the span of the given length-n vectors."""
    rows = [v for v in vectors if any(not x.is_zero() for x in v)]
    if not rows:
        return []
    R, piv = rref(rows)
    return R[: len(piv)]


def in_span(basis_rows, vec):
    if all(x.is_zero() for x in vec):
        return True
    if not basis_rows:
        return False
    return rank(basis_rows + [vec]) == rank(basis_rows)


def solve(A, b):
    """One solution x of A x = b, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for row, pc in zip(R, piv):
        x[pc] = row[n]
    return x


# -- sparse matrices: dict row -> dict col -> Scalar ----------------------------

def sp_add_entry(M, i, j, c):
    if c.is_zero():
        return
    row = M.setdefault(i, {})
    val = row.get(j)
    val = c if val is None else val + c
    if val.is_zero():
        row.pop(j, None)
        if not row:
            del M[i]
    else:
        row[j] = val


def sp_identity(n):
    return {i: {i: ONE} for i in range(n)}


def sp_diag(values):
    return {i: {i: c} for i, c in enumerate(values) if not c.is_zero()}


def sp_mul(A, B):
    out = {}
    for i, row in A.items():
        acc = {}
        for k, a in row.items():
            brow = B.get(k)
            if not brow:
                continue
            for j, b in brow.items():
                val = acc.get(j)
                acc[j] = a * b if val is None else val + a * b
        acc = {j: c for j, c in acc.items() if not c.is_zero()}
        if acc:
            out[i] = acc
    return out


def sp_add(A, B, scale=ONE):
    out = {i: dict(row) for i, row in A.items()}
    for i, row in B.items():
        for j, c in row.items():
            sp_add_entry(out, i, j, scale * c)
    return out


def sp_scale(A, s):
    if s.is_zero():
        return {}
    return {i: {j: s * c for j, c in row.items()} for i, row in A.items()}


def sp_transpose(A):
    out = {}
    for i, row in A.items():
        for j, c in row.items():
            out.setdefault(j, {})[i] = c
    return out


def sp_kron(A, B, nb):
    """Kronecker product; nb is the dimension of B."""
    out = {}
    for i1, r1 in A.items():
        for i2, r2 in B.items():
            row = {}
            for j1, a in r1.items():
                for j2, b in r2.items():
                    row[j1 * nb + j2] = a * b
            out[i1 * nb + i2] = row
    return out


def sp_apply(A, x):
    """A x for a dense vector x (list)."""
    n = len(x)
    out = [ZERO] * n
    for i, row in A.items():
        s = ZERO
        for j, c in row.items():
            if not x[j].is_zero():
                s = s + c * x[j]
        out[i] = s
    return out


def sp_dense(A, m, n):
    M = zeros(m, n)
    for i, row in A.items():
        for j, c in row.items():
            M[i][j] = c
    return M


def sp_equal(A, B):
    return sp_add(A, B, -ONE) == {}
