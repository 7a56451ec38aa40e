"""Exact scalars: rational functions in ``v = q^(1/D)`` and the family variable ``z``.

Scalars are reduced fractions ``num/den`` of polynomials in Q[v, z].  The
denominator is primitive (integer coefficients, content 1) with a positive
leading coefficient in lex order v > z, so equal scalars have identical
representations.  Laurent monomials such as ``v^-2`` are stored as ``1/v^2``.
"""

from fractions import Fraction
import re

import flint

CTX = flint.fmpq_mpoly_ctx.get(("v", "z"), "lex")
_V, _Z = CTX.gens()
_ONE_P = CTX.constant(1)
_ZERO_P = CTX.constant(0)
_ZM1 = _Z - 1


class ScalarError(ArithmeticError):
    pass


class PoleError(ScalarError):
    """Raised when a scalar has a pole at z = 1 where a finite value was required."""

    def __init__(self, order):
        super().__init__(f"pole of order {order} at z = 1")
        self.order = order


def _poly(x):
    if isinstance(x, int):
        return CTX.constant(x)
    if isinstance(x, Fraction):
        return CTX.constant(flint.fmpq(x.numerator, x.denominator))
    return CTX.constant(x)


def _content_scale(den):
    """Rational c such that c*den is primitive over Z with positive leading coefficient."""
    coeffs = den.coeffs()
    l = 1
    g = 0
    for c in coeffs:
        l = l * int(c.q) // _gcd(l, int(c.q))
    for c in coeffs:
        g = _gcd(g, int(c.p) * (l // int(c.q)))
    sign = 1 if coeffs[0] > 0 else -1
    return flint.fmpq(sign * l, g)


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


class Scalar:
    """Immutable element of Q(v, z)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _poly(num)
        if den is None:
            den = _ONE_P
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _poly(den)
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("scalar with zero denominator")
            if num.is_zero():
                num, den = _ZERO_P, _ONE_P
            elif den.is_constant():
                num = num / den.leading_coefficient()
                den = _ONE_P
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = divmod(num, g)[0]
                    den = divmod(den, g)[0]
                s = _content_scale(den)
                if s != 1:
                    num = num * s
                    den = den * s
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(_poly(x), _ONE_P, True)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_laurent(self):
        """True when the denominator is a monomial."""
        return len(self.den.coeffs()) == 1

    def has_z(self):
        return self.num.degrees()[1] > 0 or self.den.degrees()[1] > 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num + other.num, _ONE_P, True)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, _ONE_P, True)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num ** n, self.den ** n, True)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))
        return self._hash

    # -- z = 1 analysis ---------------------------------------------------
    def pole_order_at_one(self):
        """Order m with self = (z-1)^(-m) * u, u finite and nonzero at z = 1."""
        if self.num.is_zero():
            raise ScalarError("pole order of zero is undefined")
        return _mult_z1(self.den) - _mult_z1(self.num)

    def eval_z1(self):
        """Substitute z = 1; raises PoleError on a pole."""
        if self.num.is_zero():
            return ZERO
        m = self.pole_order_at_one()
        if m > 0:
            raise PoleError(m)
        if m < 0:
            return ZERO
        return Scalar(self.num.subs({"z": 1}), self.den.subs({"z": 1}))

    def subs_z(self, value):
        return Scalar(self.num.subs({"z": value}), self.den.subs({"z": value}))

    def to_fraction(self):
        """The value as a Fraction when the scalar is a rational constant."""
        if not (self.num.is_constant() and self.den.is_constant()):
            raise ScalarError(f"{self} is not a rational constant")
        c = self.num.leading_coefficient() if not self.num.is_zero() else flint.fmpq(0)
        return Fraction(int(c.p), int(c.q))

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _mult_z1(p):
    m = 0
    while not p.is_zero() and p.subs({"z": 1}).is_zero():
        p = divmod(p, _ZM1)[0]
        m += 1
    return m


ZERO = Scalar(_ZERO_P, _ONE_P, True)
ONE = Scalar(_ONE_P, _ONE_P, True)
V = Scalar(_V, _ONE_P, True)
Z = Scalar(_Z, _ONE_P, True)


def vz(a, b=0, c=1):
    """The Laurent monomial c * v^a * z^b."""
    c = Fraction(c)
    coef = flint.fmpq(c.numerator, c.denominator)
    if a >= 0 and b >= 0:
        return Scalar(CTX.from_dict({(a, b): coef}), _ONE_P, True)
    num = CTX.from_dict({(max(a, 0), max(b, 0)): coef})
    den = CTX.from_dict({(max(-a, 0), max(-b, 0)): 1})
    return Scalar(num, den, True)


def qint(k, d, D):
    """Quantum integer [k]_d = (q^(kd) - q^(-kd)) / (q^d - q^(-d)) with q = v^D."""
    if k < 1:
        raise ValueError("qint needs k >= 1")
    s = ZERO
    for j in range(k):
        s = s + vz(D * d * (k - 1 - 2 * j))
    return s


def qfactorial(k, d, D):
    s = ONE
    for j in range(1, k + 1):
        s = s * qint(j, d, D)
    return s


def qbinomial(n, m, d, D):
    return qfactorial(n, d, D) / (qfactorial(m, d, D) * qfactorial(n - m, d, D))


def pole_order_at_one(s):
    return Scalar.coerce(s).pole_order_at_one()


def eval_z1(s):
    return Scalar.coerce(s).eval_z1()


# -- text serialization ---------------------------------------------------

def _format_coef(c):
    c = Fraction(int(c.p), int(c.q))
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_terms(terms):
    """terms: list of ((a, b), fmpq) already in print order."""
    if not terms:
        return "0"
    out = []
    for n, ((a, b), c) in enumerate(terms):
        neg = c < 0
        body = _format_coef(-c if neg else c)
        if a:
            body += f"*v^{a}"
        if b:
            body += f"*z^{b}"
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_scalar(s):
    """Deterministic text form: ``N`` or ``(N) / (D)`` with Laurent exponents in N."""
    if s.num.is_zero():
        return "0"
    dd = s.den.to_dict()
    sv = min(k[0] for k in dd)
    sz = min(k[1] for k in dd)
    num_terms = [((a - sv, b - sz), c) for (a, b), c in s.num.to_dict().items()]
    num_terms.sort(key=lambda t: t[0], reverse=True)
    den_terms = [((a - sv, b - sz), c) for (a, b), c in dd.items()]
    den_terms.sort(key=lambda t: t[0], reverse=True)
    if len(den_terms) == 1:
        c = den_terms[0][1]
        num_terms = [(k, x / c) for k, x in num_terms]
        return _format_terms(num_terms)
    return f"({_format_terms(num_terms)}) / ({_format_terms(den_terms)})"


_TERM_SPLIT = re.compile(r"(?<![\^*/(])\s*([+-])\s*")


def _parse_sum(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1].strip()
    parts = _TERM_SPLIT.split(text)
    # parts = [first, sign, term, sign, term, ...]
    total = ZERO
    first = parts[0].strip()
    items = []
    if first:
        items.append(("+", first))
    for i in range(1, len(parts), 2):
        items.append((parts[i], parts[i + 1].strip()))
    for sign, term in items:
        val = _parse_term(term)
        total = total - val if sign == "-" else total + val
    return total


def _balanced(s):
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _parse_term(term):
    if not term:
        raise ValueError("empty term")
    coef = Fraction(1)
    a = b = 0
    for factor in term.split("*"):
        factor = factor.strip()
        m = re.fullmatch(r"([vz])(?:\^(-?\d+))?", factor)
        if m:
            e = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(1) == "v":
                a += e
            else:
                b += e
            continue
        m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
        if not m:
            raise ValueError(f"bad scalar factor {factor!r}")
        coef *= Fraction(int(m.group(1)), int(m.group(2) or 1))
    return vz(a, b, coef)


def parse_scalar(text):
    """Inverse of :func:`format_scalar` (also accepts looser hand-written input)."""
    text = text.strip()
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0 and text[:i].rstrip().endswith(")"):
            return _parse_sum(text[:i]) / _parse_sum(text[i + 1:])
    return _parse_sum(text)
