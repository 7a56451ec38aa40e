"""Normal-form arithmetic in the quantized enveloping algebra U = U^- U^0 U^+.

Elements are sums of monomials ``(fword, tvec, eword)`` meaning
``f_fword * t^tvec * e_eword``.  Words are tuples of 0-based generator
indices and are always basis words of the graded pieces of U^-/U^+ (the
free algebra modulo the quantum Serre relations), chosen lex-least.
"""

from fractions import Fraction
import re

from . import linalg
from .roots import RootData, height, family_order as _family_order, root_order as _root_order
from .scalars import ONE, ZERO, Scalar, qbinomial, qint, vz


class HeightOverflow(ValueError):
    pass


class WeightDenominatorError(ValueError):
    pass


def word_degree(word, r):
    deg = [0] * r
    for i in word:
        deg[i] += 1
    return tuple(deg)


def _words_of_degree(beta):
    """All words with the given letter multiplicities, lex order."""
    out = []

    def rec(prefix, rem):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for i, c in enumerate(rem):
            if c:
                rem[i] -= 1
                prefix.append(i)
                rec(prefix, rem)
                prefix.pop()
                rem[i] += 1

    rec([], list(beta))
    return out


class GradedBasis:
    """Basis of the degree-beta piece of U^- (equivalently U^+ via theta).

    ``words`` are the lex-least independent words, ``all_words`` every word
    of degree beta, and ``reduction[w]`` expresses any word in the basis.
    """

    def __init__(self, beta, all_words, basis_words, reduction, ideal_rows):
        self.beta = beta
        self.all_words = all_words
        self.words = basis_words
        self.basis_words = basis_words
        self.index = {w: n for n, w in enumerate(basis_words)}
        self.reduction = reduction
        self.ideal_rows = ideal_rows

    @property
    def dim(self):
        return len(self.basis_words)

    def __repr__(self):
        return f"GradedBasis(beta={self.beta}, dim={self.dim})"


class UqAlgebra:
    """The algebra U together with its session constants.

    ``D`` is the root order (v = q^(1/D)), ``Dz`` the family order
    (z = q^(t/Dz)), and ``N`` the height bound for graded computations.
    """

    def __init__(self, rd, height_bound, root_order=None, family_order=None, weights=()):
        if isinstance(rd, str):
            rd = RootData.of(rd)
        if height_bound < 0:
            raise ValueError("height bound must be >= 0")
        self.rd = rd
        self.r = rd.rank
        self.N = height_bound
        weights = [w for w in weights if w is not None]
        minimal = _root_order(rd, weights)
        if root_order is None:
            root_order = minimal
        elif root_order % minimal != 0:
            raise ValueError(f"root order {root_order} is not a multiple of the minimal order {minimal}")
        if family_order is None:
            family_order = _family_order(rd, [w.direction for w in weights if w.direction is not None])
        self.D = root_order
        self.Dz = family_order
        self._bases = {}
        self._ideal = {}
        self._straight = {}
        self._single = {}
        self._mono = {}
        # k_i = prod_j t_j^(a_ji): column i of A
        self.kvec = [tuple(rd.A[j][i] for j in range(self.r)) for i in range(self.r)]
        self.zero_t = (0,) * self.r

    # -- scalars ------------------------------------------------------------
    def q(self, a, b=0):
        """q^(a + t*b) as v^(aD) z^(b Dz); a, b rational."""
        a, b = Fraction(a), Fraction(b)
        ea, eb = a * self.D, b * self.Dz
        if ea.denominator != 1 or eb.denominator != 1:
            raise WeightDenominatorError(
                f"exponent {a} (+ t*{b}) is not in (1/{self.D})Z (resp. (1/{self.Dz})Z); raise the root order")
        return vz(int(ea), int(eb))

    def qint(self, k, i):
        return qint(k, self.rd.d[i], self.D)

    def qd(self, i):
        """q_i - q_i^{-1}."""
        d = self.rd.d[i]
        return self.q(d) - self.q(-d)

    # -- graded bases ---------------------------------------------------------
    def _serre_relations(self, beta):
        """Serre relations of degree beta as dicts word -> Scalar."""
        rels = []
        A = self.rd.A
        for i in range(self.r):
            for j in range(self.r):
                if i == j:
                    continue
                n = 1 - A[i][j]
                deg = [0] * self.r
                deg[i] += n
                deg[j] += 1
                if tuple(deg) != beta:
                    continue
                rel = {}
                for m in range(n + 1):
                    c = qbinomial(n, m, self.rd.d[i], self.D)
                    if m % 2:
                        c = -c
                    w = (i,) * m + (j,) + (i,) * (n - m)
                    rel[w] = rel.get(w, ZERO) + c
                rels.append(rel)
        return rels

    def _ideal_rows(self, beta):
        """RREF rows (over words of degree beta, columns in descending lex) spanning I[beta]."""
        if beta in self._ideal:
            return self._ideal[beta]
        words = sorted(_words_of_degree(beta), reverse=True)
        col = {w: n for n, w in enumerate(words)}
        vectors = []
        for rel in self._serre_relations(beta):
            vec = [ZERO] * len(words)
            for w, c in rel.items():
                vec[col[w]] = vec[col[w]] + c
            vectors.append(vec)
        for i in range(self.r):
            if beta[i] == 0:
                continue
            sub = tuple(b - (j == i) for j, b in enumerate(beta))
            sub_words, sub_rows = self._ideal_rows(sub)
            for row in sub_rows:
                left = [ZERO] * len(words)
                right = [ZERO] * len(words)
                for w, c in zip(sub_words, row):
                    if c.is_zero():
                        continue
                    left[col[(i,) + w]] = c
                    right[col[w + (i,)]] = c
                vectors.append(left)
                vectors.append(right)
        rows = linalg.span_basis(vectors, len(words))
        self._ideal[beta] = (words, rows)
        return words, rows

    def basis(self, beta):
        """The GradedBasis of U^-[-beta]; raises HeightOverflow past the session bound."""
        beta = tuple(beta)
        if beta in self._bases:
            return self._bases[beta]
        if height(beta) > self.N:
            raise HeightOverflow(f"degree {beta} (height {height(beta)}) exceeds the height bound {self.N}")
        words, rows = self._ideal_rows(beta)
        pivots = {}
        for row in rows:
            p = next(n for n, c in enumerate(row) if not c.is_zero())
            pivots[p] = row
        basis_words = sorted(w for n, w in enumerate(words) if n not in pivots)
        reduction = {}
        for n, w in enumerate(words):
            if n in pivots:
                row = pivots[n]
                reduction[w] = {words[m]: -c for m, c in enumerate(row) if m != n and not c.is_zero()}
            else:
                reduction[w] = {w: ONE}
        gb = GradedBasis(beta, sorted(words), basis_words, reduction, rows)
        self._bases[beta] = gb
        return gb

    basis_neg = basis
    basis_pos = basis

    def reduce_word(self, word):
        return self.basis(word_degree(word, self.r)).reduction[word]

    # -- elements -------------------------------------------------------------
    def element(self, terms=None):
        return AlgebraElement(self, terms or {})

    def one(self):
        return self.element({((), self.zero_t, ()): ONE})

    def scalar(self, s):
        s = Scalar.coerce(s)
        return self.element({((), self.zero_t, ()): s} if s else {})

    def e(self, i):
        return self.element({((), self.zero_t, (i,)): ONE})

    def f(self, i):
        return self.element({((i,), self.zero_t, ()): ONE})

    def t(self, i, p=1):
        m = [0] * self.r
        m[i] = p
        return self.element({((), tuple(m), ()): ONE})

    def tvec(self, m):
        return self.element({((), tuple(m), ()): ONE})

    def k(self, i, p=1):
        return self.tvec(tuple(p * x for x in self.kvec[i]))

    def fword(self, word):
        return self.element({w: c for w, c in self._word_terms(word, "f").items()})

    def eword(self, word):
        return self.element({w: c for w, c in self._word_terms(word, "e").items()})

    def _word_terms(self, word, side):
        red = self.reduce_word(tuple(word)) if word else {(): ONE}
        if side == "f":
            return {(w, self.zero_t, ()): c for w, c in red.items()}
        return {((), self.zero_t, w): c for w, c in red.items()}

    def from_vector(self, beta, vec, side="f"):
        """Element of U^-[-beta] (or U^+[beta]) with coordinates over the basis words."""
        gb = self.basis(beta)
        terms = {}
        for w, c in zip(gb.basis_words, vec):
            if not c.is_zero():
                key = (w, self.zero_t, ()) if side == "f" else ((), self.zero_t, w)
                terms[key] = c
        return self.element(terms)

    # -- weights of words ------------------------------------------------------
    def _tshift(self, tv, deg, sign):
        """Scalar from commuting t^tv past a word of degree deg: q^(sign * sum d_i tv_i deg_i)."""
        e = sum(self.rd.d[i] * tv[i] * deg[i] for i in range(self.r))
        if e == 0:
            return ONE
        return self.q(sign * e)

    # -- normal ordering -------------------------------------------------------
    def _straighten_single(self, i, F):
        """e_i * f_F as {(F', T', E'): c} with E' in {(), (i,)}."""
        key = (i, F)
        if key in self._single:
            return self._single[key]
        out = {(F, self.zero_t, (i,)): ONE}
        d = self.rd.d[i]
        denom = self.qd(i).inverse()
        A = self.rd.A
        for p, j in enumerate(F):
            if j != i:
                continue
            left, right = F[:p], F[p + 1:]
            # k_i f_right = q^(-sum d_i a_ij) f_right k_i
            e = sum(d * A[i][jj] for jj in right)
            cplus = denom * (self.q(-e) if e else ONE)
            cminus = -denom * (self.q(e) if e else ONE)
            word = left + right
            red = self.reduce_word(word) if word else {(): ONE}
            kp = self.kvec[i]
            km = tuple(-x for x in kp)
            for w, c in red.items():
                for tv, cc in ((kp, cplus), (km, cminus)):
                    k2 = (w, tv, ())
                    val = out.get(k2, ZERO) + c * cc
                    if val.is_zero():
                        out.pop(k2, None)
                    else:
                        out[k2] = val
        self._single[key] = out
        return out

    def _straighten(self, E, F):
        """e_E * f_F in normal form."""
        if not E or not F:
            return {(F, self.zero_t, E): ONE}
        key = (E, F)
        if key in self._straight:
            return self._straight[key]
        i, rest = E[0], E[1:]
        inner = self._straighten(rest, F)
        out = {}
        for (F2, T2, E2), c in inner.items():
            for (F3, T3, E3), c3 in self._straighten_single(i, F2).items():
                if E3:
                    # F2 e_i T2 E2 = q^(-d_i T2_i) F2 T2 e_i E2
                    coef = c * c3 * self._tshift(T2, word_degree((i,), self.r), -1)
                    red = self.reduce_word((i,) + E2)
                    for w, cw in red.items():
                        _acc(out, (F3, T2, w), coef * cw)
                else:
                    tv = tuple(a + b for a, b in zip(T3, T2))
                    _acc(out, (F3, tv, E2), c * c3)
        self._straight[key] = out
        return out

    def raise_mod_plus(self, i, vec):
        """e_i * vec modulo the left ideal U U^+; vec maps (fword, tvec) -> Scalar."""
        out = {}
        for (F, T), c in vec.items():
            for (F3, T3, E3), c3 in self._straighten_single(i, F).items():
                if E3:
                    continue
                _acc(out, (F3, tuple(a + b for a, b in zip(T3, T))), c * c3)
        return out

    def zero_part(self, E, F):
        """(e_E f_F)_0 as a dict tvec -> Scalar."""
        vec = {(F, self.zero_t): ONE}
        for i in reversed(E):
            vec = self.raise_mod_plus(i, vec)
        return {T: c for (w, T), c in vec.items() if not w}

    def mul_monomials(self, m1, m2):
        key = (m1, m2)
        if key in self._mono:
            return self._mono[key]
        F1, T1, E1 = m1
        F2, T2, E2 = m2
        out = {}
        for (Fp, Tp, Ep), c in self._straighten(E1, F2).items():
            coef = c * self._tshift(T1, word_degree(Fp, self.r), -1) * self._tshift(T2, word_degree(Ep, self.r), -1)
            Fred = self.reduce_word(F1 + Fp) if F1 + Fp else {(): ONE}
            Ered = self.reduce_word(Ep + E2) if Ep + E2 else {(): ONE}
            tv = tuple(a + b + cc for a, b, cc in zip(T1, Tp, T2))
            for fw, cf in Fred.items():
                for ew, ce in Ered.items():
                    _acc(out, (fw, tv, ew), coef * cf * ce)
        self._mono[key] = out
        return out

    # -- maps defined on generators ----------------------------------------------
    def _gen_map(self, x, fimg, eimg, timg, anti):
        out = self.element()
        for (F, T, E), c in x.terms.items():
            factors = [fimg(j) for j in F] + [timg(T)] + [eimg(i) for i in E]
            if anti:
                factors.reverse()
            acc = self.scalar(c)
            for g in factors:
                acc = acc * g
            out = out + acc
        return out

    def theta(self, x):
        return self._gen_map(x, lambda j: -self.e(j), lambda i: -self.f(i),
                             lambda T: self.tvec(tuple(-a for a in T)), anti=False)

    def omega(self, x):
        return self._gen_map(x, lambda j: self.k(j, -1) * self.e(j), lambda i: self.f(i) * self.k(i),
                             lambda T: self.tvec(T), anti=True)

    def antipode(self, x):
        return self._gen_map(x, lambda j: -(self.f(j) * self.k(j)), lambda i: -(self.k(i, -1) * self.e(i)),
                             lambda T: self.tvec(tuple(-a for a in T)), anti=True)

    def counit(self, x):
        s = ZERO
        for (F, T, E), c in x.terms.items():
            if not F and not E:
                s = s + c
        return s

    def coproduct(self, x):
        out = Tensor(self, 2)
        for (F, T, E), c in x.terms.items():
            acc = Tensor.scalar(self, 2, c)
            for j in F:
                acc = acc * self._delta_f(j)
            acc = acc * Tensor.from_pairs(self, [((self.tvec(T)), self.tvec(T), ONE)])
            for i in E:
                acc = acc * self._delta_e(i)
            out = out + acc
        return out

    def _delta_e(self, i):
        return Tensor.from_pairs(self, [(self.e(i), self.one(), ONE), (self.k(i), self.e(i), ONE)])

    def _delta_f(self, i):
        return Tensor.from_pairs(self, [(self.f(i), self.k(i, -1), ONE), (self.one(), self.f(i), ONE)])

    # -- U^0 ---------------------------------------------------------------------
    def zero_projection(self, x):
        return self.element({k: c for k, c in x.terms.items() if not k[0] and not k[2]})

    def qchar_t(self, lam, tv):
        """q^lambda(t^tv); families give a z-power for the direction part."""
        p = self.rd.simple_coords(lam)
        a = sum(self.rd.d[i] * tv[i] * p[i] for i in range(self.r))
        b = 0
        if lam.direction is not None:
            pn = self.rd.simple_coords(lam.direction)
            b = sum(self.rd.d[i] * tv[i] * pn[i] for i in range(self.r))
        return self.q(a, b)

    def check_weight(self, lam):
        """Raise WeightDenominatorError unless q^lambda is defined on all of T."""
        for i in range(self.r):
            tv = tuple(int(i == j) for j in range(self.r))
            self.qchar_t(lam, tv)
        return lam

    def qchar(self, lam, u0):
        s = ZERO
        for (F, T, E), c in u0.terms.items():
            if F or E:
                raise ValueError("qchar needs an element of U^0")
            s = s + c * self.qchar_t(lam, T)
        return s

    def apply_highest(self, x, lam):
        """x . 1_lambda in M(lambda) = U^-: dict fword -> Scalar."""
        out = {}
        for (F, T, E), c in x.terms.items():
            if E:
                continue
            _acc(out, F, c * self.qchar_t(lam, T))
        return out

    # -- text ------------------------------------------------------------------
    def format_monomial(self, key):
        F, T, E = key
        parts = []
        if F:
            parts.append(_format_word(F, "f"))
        if any(T):
            parts.append("*".join(f"t{i + 1}^{m}" for i, m in enumerate(T) if m))
        if E:
            parts.append(_format_word(E, "e"))
        return " * ".join(parts) if parts else "1"

    def parse_monomial(self, text):
        """Parse ``f1^2*f2 * t1^-1 * e2``-style products (any order) into an element."""
        text = text.strip()
        acc = self.one()
        if text == "1":
            return acc
        for tok in re.split(r"\s*\*\s*", text):
            m = re.fullmatch(r"([eftk])(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad generator token {tok!r}")
            g, i, p = m.group(1), int(m.group(2)) - 1, int(m.group(3) or 1)
            if not 0 <= i < self.r:
                raise ValueError(f"generator index out of range in {tok!r}")
            if g == "t":
                acc = acc * self.t(i, p)
            elif g == "k":
                acc = acc * self.k(i, p)
            else:
                if p < 0:
                    raise ValueError(f"negative power of {g}{i + 1}")
                gen = self.e(i) if g == "e" else self.f(i)
                for _ in range(p):
                    acc = acc * gen
        return acc

    def parse_element(self, text):
        """Sum of ``[scalar] monomial`` terms joined by `` + ``."""
        from .scalars import parse_scalar
        out = self.element()
        for term in re.split(r"\s+\+\s+(?=\[|[eftk1])", text.strip()):
            m = re.fullmatch(r"\[(.*)\]\s*(.*)", term.strip())
            if m:
                coef, mono = parse_scalar(m.group(1)), m.group(2) or "1"
            else:
                coef, mono = ONE, term
            out = out + self.parse_monomial(mono) * coef
        return out


def _format_word(word, g):
    out = []
    n = 0
    while n < len(word):
        m = n
        while m < len(word) and word[m] == word[n]:
            m += 1
        p = m - n
        out.append(f"{g}{word[n] + 1}" + (f"^{p}" if p > 1 else ""))
        n = m
    return "*".join(out)


def _acc(d, key, c):
    if c.is_zero():
        return
    val = d.get(key)
    val = c if val is None else val + c
    if val.is_zero():
        d.pop(key, None)
    else:
        d[key] = val


class AlgebraElement:
    """Immutable normal-form element of U."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return AlgebraElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.alg.scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            s = Scalar.coerce(other)
            return AlgebraElement(self.alg, {k: c * s for k, c in self.terms.items()})
        out = {}
        mm = self.alg.mul_monomials
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                for k, c in mm(k1, k2).items():
                    _acc(out, k, c12 * c)
        return AlgebraElement(self.alg, out)

    def __rmul__(self, other):
        s = Scalar.coerce(other)
        return AlgebraElement(self.alg, {k: s * c for k, c in self.terms.items()})

    def __pow__(self, n):
        acc = self.alg.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        """(beta, gamma) of the terms if homogeneous, else None."""
        degs = {(word_degree(F, self.alg.r), word_degree(E, self.alg.r)) for F, T, E in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def neg_vector(self, beta):
        """Coordinates over basis_neg(beta) words; requires an element of U^-[-beta]."""
        gb = self.alg.basis(beta)
        vec = [ZERO] * gb.dim
        for (F, T, E), c in self.terms.items():
            if T != self.alg.zero_t or E or word_degree(F, self.alg.r) != tuple(beta):
                raise ValueError("element is not in U^-[-beta]")
            vec[gb.index[F]] = vec[gb.index[F]] + c
        return vec

    def __str__(self):
        if not self.terms:
            return "0"
        fm = self.alg.format_monomial
        items = sorted(self.terms.items(), key=lambda kc: kc[0])
        return " + ".join(f"[{c}] {fm(k)}" for k, c in items)

    __repr__ = __str__


class Tensor:
    """Element of U^(tensor n): dict (monomial, ..., monomial) -> Scalar."""

    __slots__ = ("alg", "legs", "terms")

    def __init__(self, alg, legs, terms=None):
        self.alg = alg
        self.legs = legs
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def scalar(cls, alg, legs, c):
        unit = ((), alg.zero_t, ())
        return cls(alg, legs, {(unit,) * legs: Scalar.coerce(c)})

    @classmethod
    def from_pairs(cls, alg, items):
        """Sum of c * (x tensor y) for AlgebraElements x, y."""
        out = {}
        for x, y, c in items:
            for k1, c1 in x.terms.items():
                for k2, c2 in y.terms.items():
                    _acc(out, (k1, k2), c * c1 * c2)
        return cls(alg, 2, out)

    @classmethod
    def product_of(cls, *elements):
        alg = elements[0].alg
        out = {(): ONE}
        for x in elements:
            nxt = {}
            for key, c in out.items():
                for k, cx in x.terms.items():
                    _acc(nxt, key + (k,), c * cx)
            out = nxt
        return cls(alg, len(elements), out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.alg, self.legs, out)

    def __neg__(self):
        return Tensor(self.alg, self.legs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            s = Scalar.coerce(other)
            return Tensor(self.alg, self.legs, {k: c * s for k, c in self.terms.items()})
        mm = self.alg.mul_monomials
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                partial = {(): ca * cb}
                for a, b in zip(ka, kb):
                    prod = mm(a, b)
                    nxt = {}
                    for key, c in partial.items():
                        for k, cp in prod.items():
                            _acc(nxt, key + (k,), c * cp)
                    partial = nxt
                for key, c in partial.items():
                    _acc(out, key, c)
        return Tensor(self.alg, self.legs, out)

    def __eq__(self, other):
        return self.legs == other.legs and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def map_leg(self, leg, fn):
        """Apply fn (monomial element -> AlgebraElement | Tensor | Scalar) to one leg."""
        alg = self.alg
        out = {}
        for key, c in self.terms.items():
            img = fn(alg.element({key[leg]: ONE}))
            if isinstance(img, AlgebraElement):
                for k, ci in img.terms.items():
                    _acc(out, key[:leg] + (k,) + key[leg + 1:], c * ci)
            elif isinstance(img, Tensor):
                for k, ci in img.terms.items():
                    _acc(out, key[:leg] + k + key[leg + 1:], c * ci)
            else:
                _acc(out, key[:leg] + key[leg + 1:], c * Scalar.coerce(img))
        legs = len(next(iter(out))) if out else self.legs
        return Tensor(alg, legs, out)

    def multiply_legs(self):
        """The multiplication map U^(tensor n) -> U."""
        alg = self.alg
        out = alg.element()
        for key, c in self.terms.items():
            acc = alg.scalar(c)
            for k in key:
                acc = acc * alg.element({k: ONE})
            out = out + acc
        return out

    def __str__(self):
        fm = self.alg.format_monomial
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}] " + " (x) ".join(fm(k) for k in key) for key, c in sorted(self.terms.items()))
