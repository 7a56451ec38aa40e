"""Finite-type Cartan data, weights, the dot action and Q+ enumeration.

Cartan matrices follow the convention ``a_ij = <alpha_j, alpha_i^vee>``.
Weights are stored in fundamental-weight coordinates ``c_i = <lambda, alpha_i^vee>``;
elements of Q+ and roots are tuples of simple-root coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import re


class CartanError(ValueError):
    pass


def _dynkin(n, edges):
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, aij, aji in edges:
        A[i][j] = aij
        A[j][i] = aji
    return A


def cartan_matrix(name):
    """Cartan matrix for a shorthand like ``A2``, ``B3``, ``G2``, or explicit ``2,-1;-1,2``."""
    name = name.strip()
    if ";" in name or "," in name or "[" in name:
        rows = [r for r in re.split(r"[;\]]", name.replace("[", "")) if r.strip(" ,")]
        return [[int(x) for x in r.replace(",", " ").split()] for r in rows]
    m = re.fullmatch(r"([A-Ga-g])(\d+)", name)
    if not m:
        raise CartanError(f"unknown Cartan type {name!r}")
    t, n = m.group(1).upper(), int(m.group(2))
    chain = [(i, i + 1, -1, -1) for i in range(n - 1)]
    if t == "A" and n >= 1:
        return _dynkin(n, chain)
    if t == "B" and n >= 2:
        return _dynkin(n, chain[:-1] + [(n - 2, n - 1, -1, -2)])
    if t == "C" and n >= 2:
        return _dynkin(n, chain[:-1] + [(n - 2, n - 1, -2, -1)])
    if t == "D" and n >= 4:
        return _dynkin(n, chain[:-1] + [(n - 3, n - 1, -1, -1)])
    if t == "E" and n in (6, 7, 8):
        edges = [(0, 2, -1, -1), (1, 3, -1, -1)] + [(i, i + 1, -1, -1) for i in range(2, n - 1)]
        return _dynkin(n, edges)
    if t == "F" and n == 4:
        return _dynkin(4, [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)])
    if t == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise CartanError(f"unknown Cartan type {name!r}")


def _symmetrizer(A):
    n = len(A)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or A[i][j] == 0:
                    continue
                if A[j][i] == 0:
                    raise CartanError("Cartan matrix is not symmetrizable")
                dj = d[i] * A[i][j] / A[j][i]
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
        den = lcm(*(x.denominator for x in (d[i] for i in comp)))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, x in zip(comp, ints):
            d[i] = x // g
    return [int(x) for x in d]


def _frac_inverse(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise CartanError("Cartan matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _frac_det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return d


def _frac(x):
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental coordinates, optionally a line ``c + t*direction``."""

    c: tuple
    direction: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(_frac(x) for x in self.c))
        if self.direction is not None:
            object.__setattr__(self, "direction", tuple(_frac(x) for x in self.direction))
            if len(self.direction) != len(self.c):
                raise ValueError("direction has the wrong rank")

    @classmethod
    def parse(cls, text, direction=None):
        c = [Fraction(x) for x in text.replace(" ", "").split(",") if x]
        d = None
        if direction:
            d = [Fraction(x) for x in direction.replace(" ", "").split(",") if x]
        return cls(tuple(c), tuple(d) if d else None)

    @property
    def rank(self):
        return len(self.c)

    @property
    def is_family(self):
        return self.direction is not None

    def base(self):
        return Weight(self.c)

    def at(self, t):
        """The member of the family at parameter t."""
        t = Fraction(t)
        return Weight(tuple(a + t * b for a, b in zip(self.c, self.direction)))

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.c, other.c)), self.direction)

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.c, other.c)), self.direction)

    def __str__(self):
        s = ",".join(str(x) for x in self.c)
        if self.direction is not None:
            s += " + t*(" + ",".join(str(x) for x in self.direction) + ")"
        return s


def height(beta):
    return sum(beta)


class RootData:
    """Roots, coroots, rho and the invariant form for a finite-type Cartan matrix."""

    def __init__(self, A, name=None):
        A = [list(map(int, row)) for row in A]
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise CartanError("Cartan matrix must be square and nonempty")
        if any(A[i][i] != 2 for i in range(n)):
            raise CartanError("Cartan matrix needs 2 on the diagonal")
        if any(A[i][j] > 0 for i in range(n) for j in range(n) if i != j):
            raise CartanError("off-diagonal Cartan entries must be <= 0")
        self.A = A
        self.rank = n
        self.name = name
        self.d = _symmetrizer(A)
        # (alpha_i | alpha_j) = d_i a_ij
        self.B = [[self.d[i] * A[i][j] for j in range(n)] for i in range(n)]
        for k in range(1, n + 1):
            if _frac_det([row[:k] for row in self.B[:k]]) <= 0:
                raise CartanError("Cartan matrix is not of finite type")
        self.inv_A = _frac_inverse(A)
        self.det = abs(int(_frac_det(A)))
        self.positive_roots = self._roots()
        self.rho = Weight(tuple(1 for _ in range(n)))

    @classmethod
    def of(cls, name):
        return cls(cartan_matrix(name), name=name if not re.search(r"[,;\[]", name) else None)

    def _roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = list(simple)
        known = set(roots)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in known:
                            p += 1
                        else:
                            break
                    q = p - self.coroot_pairing_root(beta, i)
                    if q > 0:
                        up = tuple(b + (j == i) for j, b in enumerate(beta))
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
            roots.extend(sorted(nxt))
            layer = nxt
        return sorted(roots, key=lambda b: (height(b), tuple(-x for x in b)))

    def coroot_pairing_root(self, beta, i):
        """<beta, alpha_i^vee> for beta in simple-root coordinates."""
        return sum(self.A[i][j] * beta[j] for j in range(self.rank))

    # -- forms and pairings ----------------------------------------------
    def form_roots(self, beta, gamma):
        """(beta | gamma) for root-lattice elements."""
        n = self.rank
        return sum(beta[i] * self.B[i][j] * gamma[j] for i in range(n) for j in range(n))

    def inner(self, lam, beta):
        """(lambda | beta) for a weight and a root-lattice element."""
        c = lam.c if isinstance(lam, Weight) else lam
        return sum(Fraction(beta[j]) * self.d[j] * c[j] for j in range(self.rank))

    def pair(self, lam, beta):
        """<lambda, beta^vee> with beta^vee = 2 beta / (beta|beta)."""
        return 2 * self.inner(lam, beta) / self.form_roots(beta, beta)

    def simple_coords(self, lam):
        """<lambda, u_i>: coordinates of lambda in the simple-root basis."""
        c = lam.c if isinstance(lam, Weight) else lam
        return tuple(sum(self.inv_A[i][j] * c[j] for j in range(self.rank)) for i in range(self.rank))

    def root_to_weight(self, beta):
        """Fundamental coordinates of a root-lattice element."""
        return Weight(tuple(self.coroot_pairing_root(beta, i) for i in range(self.rank)))

    def shifted(self, lam, beta):
        """lambda - beta as a Weight (direction kept)."""
        b = self.root_to_weight(beta)
        return Weight(tuple(x - y for x, y in zip(lam.c, b.c)), lam.direction)

    # -- Weyl group -------------------------------------------------------
    def reflect(self, i, lam):
        c = list(lam.c)
        ci = c[i]
        for j in range(self.rank):
            c[j] -= ci * self.A[j][i]
        return Weight(tuple(c), lam.direction)

    def act(self, word, lam):
        """w(lambda) for w = s_{word[0]} ... s_{word[-1]}."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def dot_action(self, word, lam):
        shifted = Weight(tuple(x + 1 for x in lam.c))
        w = self.act(word, shifted)
        return Weight(tuple(x - 1 for x in w.c), lam.direction)

    def lowest_weight(self, lam):
        """w0(lambda) for dominant lambda, by reflecting until antidominant."""
        cur = lam
        while True:
            i = next((j for j in range(self.rank) if cur.c[j] > 0), None)
            if i is None:
                return cur
            cur = self.reflect(i, cur)

    def weight_difference(self, lam, mu):
        """lambda - mu in simple-root coordinates (Fractions)."""
        diff = [a - b for a, b in zip(lam.c, mu.c)]
        return self.simple_coords(diff)

    # -- classification of weights ---------------------------------------
    def is_dominant_integral(self, lam):
        return all(x.denominator == 1 and x >= 0 for x in lam.c)

    def is_generic(self, lam):
        shifted = Weight(tuple(x + 1 for x in lam.c))
        for beta in self.positive_roots:
            p = self.pair(shifted, beta)
            if p.denominator == 1 and p >= 1:
                return False
        return True

    def integral_roots(self, lam):
        """Positive roots beta with <lambda + rho, beta^vee> in N, with that value."""
        shifted = Weight(tuple(x + 1 for x in lam.c))
        out = []
        for beta in self.positive_roots:
            p = self.pair(shifted, beta)
            if p.denominator == 1 and p >= 1:
                out.append((beta, int(p)))
        return out

    # -- Q+ -----------------------------------------------------------------
    def enumerate_qplus(self, N):
        """All beta in Q+ with 1 <= ht beta <= N, height-major then lex."""
        out = []
        for h in range(1, N + 1):
            out.extend(compositions(h, self.rank))
        return out

    def kostant_partition(self, beta):
        return _kostant(tuple(self.positive_roots), tuple(beta))

    def depth(self, lam):
        """ht(lambda - w0 lambda) for dominant integral lambda."""
        diff = self.weight_difference(lam, self.lowest_weight(lam))
        return int(sum(diff))


def compositions(h, r):
    """Vectors of r nonnegative integers summing to h, in lex order."""
    if r == 1:
        return [(h,)]
    out = []
    for first in range(h, -1, -1):
        for rest in compositions(h - first, r - 1):
            out.append((first,) + rest)
    return sorted(out, reverse=True)


@lru_cache(maxsize=None)
def _kostant(roots, beta, start=0):
    if all(b == 0 for b in beta):
        return 1
    if any(b < 0 for b in beta):
        return 0
    total = 0
    for k in range(start, len(roots)):
        rem = tuple(b - x for b, x in zip(beta, roots[k]))
        if all(x >= 0 for x in rem):
            total += _kostant(roots, rem, k)
    return total


def root_order(rd, weights=()):
    """Minimal D such that every exponent d_i <lambda, u_i> lies in (1/D)Z.

    The integral part |det A| * lcm(d) is always included.
    """
    D = rd.det * lcm(*rd.d)
    for lam in weights:
        for i, x in enumerate(rd.simple_coords(lam)):
            D = lcm(D, (rd.d[i] * x).denominator)
    return D


def family_order(rd, directions=()):
    D = 1
    for nu in directions:
        c = nu.c if isinstance(nu, Weight) else tuple(map(Fraction, nu))
        for i, x in enumerate(rd.simple_coords(c)):
            D = lcm(D, (rd.d[i] * x).denominator)
    return D
