"""Matrix coefficients of finite-dimensional modules as elements of F.

A FunctionElement on a carrier V of dimension n stores sparse data M with
rows indexed by covectors and columns by vectors; it is the function
x -> sum_{p,j} M[p][j] rho(x)[p][j].  Products live on tensor carriers,
which the registry keeps flat (factor lists) so that bracketings agree.
"""

from . import linalg
from .linalg import sp_add, sp_kron, sp_mul, sp_transpose
from .modules import _tensor2, trivial
from .scalars import ONE, ZERO, Scalar, eval_z1, pole_order_at_one
from .shapovalov import kernel_block


class CarrierError(ValueError):
    pass


class CarrierRegistry:
    """Registered modules and their (flattened) tensor products."""

    def __init__(self, alg):
        self.alg = alg
        self._mods = {}
        self._factors = {}
        self._by_factors = {}
        self.unit = self.register(trivial(alg), name="1")

    def register(self, V, name=None):
        if id(V) in self._factors:
            return V
        self._mods[id(V)] = V
        self._factors[id(V)] = (id(V),)
        self._by_factors[(id(V),)] = V
        V.name = name or f"V{len(self._mods)}"
        return V

    def factors(self, V):
        try:
            return self._factors[id(V)]
        except KeyError:
            raise CarrierError(f"unregistered carrier {V!r}") from None

    def tensor(self, V, W):
        key = self.factors(V) + self.factors(W)
        if key in self._by_factors:
            return self._by_factors[key]
        prefix = self._by_factors[key[:-1]] if key[:-1] in self._by_factors else self.tensor_of(key[:-1])
        T = _tensor2(prefix, self._mods[key[-1]])
        T.name = "(x)".join(self._mods[k].name for k in key)
        self._mods[id(T)] = T
        self._factors[id(T)] = key
        self._by_factors[key] = T
        return T

    def tensor_of(self, key):
        if key in self._by_factors:
            return self._by_factors[key]
        V = self._mods[key[0]]
        for k in key[1:]:
            V = self.tensor(V, self._mods[k])
        return V

    def check(self, V):
        self.factors(V)
        return V


class FunctionElement:
    __slots__ = ("reg", "carrier", "data")

    def __init__(self, reg, carrier, data):
        self.reg = reg
        self.carrier = carrier
        self.data = {p: {j: c for j, c in row.items() if not c.is_zero()} for p, row in data.items()}
        self.data = {p: row for p, row in self.data.items() if row}

    def _same(self, other):
        if other.carrier is not self.carrier:
            raise CarrierError("functions live on different carriers")

    def __add__(self, other):
        self._same(other)
        return FunctionElement(self.reg, self.carrier, sp_add(self.data, other.data))

    def __sub__(self, other):
        self._same(other)
        return FunctionElement(self.reg, self.carrier, sp_add(self.data, other.data, -ONE))

    def __neg__(self):
        return self * (-ONE)

    def __mul__(self, s):
        if isinstance(s, FunctionElement):
            return product(self, s)
        return FunctionElement(self.reg, self.carrier, linalg.sp_scale(self.data, Scalar.coerce(s)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FunctionElement):
            return NotImplemented
        return other.carrier is self.carrier and self.data == other.data

    def __hash__(self):
        return hash((id(self.carrier), len(self.data)))

    def is_zero(self):
        return not self.data

    def atoms(self):
        """Sorted (covector, vector index, coefficient) triples."""
        return [(p, j, c) for p in sorted(self.data) for j, c in sorted(self.data[p].items())]

    def vector_weights(self):
        ws = {self.carrier.weights[j].c for row in self.data.values() for j in row}
        return ws

    def pole_order(self):
        orders = [pole_order_at_one(c) for row in self.data.values() for c in row.values()]
        return max(orders) if orders else None

    def eval_z1(self):
        return FunctionElement(self.reg, self.carrier,
                               {p: {j: eval_z1(c) for j, c in row.items()} for p, row in self.data.items()})

    def __str__(self):
        if not self.data:
            return "0"
        return " + ".join(f"[{c}] c({p},{j})" for p, j, c in self.atoms())

    __repr__ = __str__


def matrix_coefficient(reg, V, p, v):
    """The function x -> phi_p(x v) on carrier V; v is an index or a dense vector."""
    reg.check(V)
    if not 0 <= p < V.dim:
        raise CarrierError(f"covector index {p} out of range")
    if isinstance(v, int):
        row = {v: ONE}
    else:
        row = {j: c for j, c in enumerate(v) if not c.is_zero()}
    return FunctionElement(reg, V, {p: row})


def from_vectors(reg, V, pairs):
    """Sum of matrix coefficients c_{p, v} for (p, dense vector v) pairs."""
    data = {}
    for p, vec in pairs:
        for j, c in enumerate(vec):
            linalg.sp_add_entry(data, p, j, c)
    return FunctionElement(reg, V, data)


def unit(reg):
    return FunctionElement(reg, reg.unit, {0: {0: ONE}})


def evaluate(f, x):
    R = f.carrier.rho(x)
    s = ZERO
    for p, row in f.data.items():
        rrow = R.get(p)
        if not rrow:
            continue
        for j, c in row.items():
            r = rrow.get(j)
            if r is not None:
                s = s + c * r
    return s


def arrow(a, f):
    """(->a f)(x) = f(x a)."""
    return FunctionElement(f.reg, f.carrier, sp_mul(f.data, sp_transpose(f.carrier.rho(a))))


def coarrow(f, a):
    """(f<-a)(x) = f(a x)."""
    return FunctionElement(f.reg, f.carrier, sp_mul(sp_transpose(f.carrier.rho(a)), f.data))


def product(f1, f2):
    if f1.carrier is f1.reg.unit and f1.data == {0: {0: ONE}}:
        return f2
    if f2.carrier is f2.reg.unit and f2.data == {0: {0: ONE}}:
        return f1
    T = f1.reg.tensor(f1.carrier, f2.carrier)
    return FunctionElement(f1.reg, T, sp_kron(f1.data, f2.data, f2.carrier.dim))


def annihilator_rows(alg, lam, V, side, reach=None):
    """Matrices rho(y) for y spanning K_lambda (side 'K') or its theta image ('Kt') up to V's reach.

    The default reach covers V[0]; pass a larger one for other weight spaces.
    """
    if reach is None:
        reach = V.down_depth() if side == "K" else V.up_depth()
    mats = []
    for beta in alg.rd.enumerate_qplus(reach):
        for y in kernel_block(alg, lam, beta):
            mats.append(V.rho(y if side == "K" else alg.theta(y)))
    return mats


def invariant_vectors(alg, lam, V, sides=("K", "Kt")):
    """Basis of {v in V[0] : K v = 0 and/or theta(K) v = 0} as dense vectors."""
    if lam.direction is not None:
        raise ValueError("invariant vectors need a fixed weight")
    idx = V.zero_space()
    rows = []
    for side in sides:
        for R in annihilator_rows(alg, lam, V, side):
            for i, row in R.items():
                r = [row.get(j, ZERO) for j in idx]
                if any(not c.is_zero() for c in r):
                    rows.append(r)
    null = linalg.nullspace(rows, len(idx))
    out = []
    for vec in null:
        full = [ZERO] * V.dim
        for j, c in zip(idx, vec):
            full[j] = c
        out.append(full)
    return out


def invariant_subspace(reg, lam, V, sides=("K", "Kt")):
    """Basis of F[0]^{K + theta(K)} restricted to carrier V: c_{p, v} for every covector p."""
    reg.check(V)
    vecs = invariant_vectors(reg.alg, lam, V, sides)
    return [from_vectors(reg, V, [(p, v)]) for v in vecs for p in range(V.dim)]


def is_invariant(alg, lam, f):
    """Membership test for F[0]^{K + theta(K)} on the function's carrier."""
    V = f.carrier
    zero = tuple(0 for _ in range(alg.r))
    if any(w != zero for w in f.vector_weights()):
        return False
    for side in ("K", "Kt"):
        for R in annihilator_rows(alg, lam, V, side):
            if sp_mul(f.data, sp_transpose(R)):
                return False
    return True
