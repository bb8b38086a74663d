"""Exact scalar arithmetic: arbitrary-precision rationals, dense polynomials in
the formal parameter λ, reduced rational functions with monic denominators, and
truncated power series in ħ obtained by expanding at λ = ∞ (ħ = 1/λ)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import PoleAtInfinityError


def frac_to_str(x: Fraction) -> str:
    """Render a rational as "p/q", or just "p" when q = 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


class Polynomial:
    """Univariate polynomial over ℚ; coefficients ascending by power, trailing
    zeros stripped, so the last coefficient is the (nonzero) leading one.

    Coefficients are stored as plain ints while they stay integral (the common
    case, and int arithmetic is far cheaper than Fraction's per-op gcd), and as
    Fractions otherwise; the two mix exactly and compare/hash consistently."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            if type(c) is not int:
                if type(c) is Fraction:
                    if c.denominator == 1:
                        c = c.numerator
                else:
                    c = Fraction(c)
            cs.append(c)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        # degree of the zero polynomial is taken as -1
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return Polynomial(out)

    def scale(self, k):
        if not k:
            return ZERO_POLY
        if type(k) is Fraction and k.denominator == 1:
            k = k.numerator
        return Polynomial([c * k for c in self.coeffs])

    def shift(self, k):
        """Multiply by λ^k."""
        if self.is_zero:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def __pow__(self, n):
        out = ONE_POLY
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(Fraction(1) / self.lc)

    def divmod(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ZERO_POLY, self
        quo = [0] * (dq + 1)
        inv = Fraction(1) / other.lc
        if inv.denominator == 1:
            inv = inv.numerator
        for k in range(dq, -1, -1):
            c = rem[other.degree + k] * inv
            quo[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[i + k] -= c * oc
        return Polynomial(quo), Polynomial(rem)

    def exact_div(self, other):
        quo, rem = self.divmod(other)
        if not rem.is_zero:
            raise ArithmeticError("polynomial division was expected to be exact")
        return quo

    def render(self, var="λ"):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(frac_to_str(c))
                continue
            mag = "" if abs(c) == 1 else frac_to_str(abs(c)) + "*"
            body = var if i == 1 else f"{var}^{i}"
            parts.append(("-" if c < 0 else "+") + mag + body)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()})"

    def to_json(self):
        return [frac_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls([frac_from_str(c) for c in data])


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial([1])
LAMBDA = Polynomial([0, 1])


def _int_primitive(p: Polynomial):
    """Integer coefficient list of p scaled primitive, positive leading."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c.numerator * (den // c.denominator)) for c in p.coeffs]
    g = 0
    for c in ints:
        g = _int_gcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b on integer lists."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        top = r[db + k]
        r = [lb * c for c in r]
        for i in range(db + 1):
            r[i + k] -= top * b[i]
    del r[db:]
    while r and not r[-1]:
        r.pop()
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over ℚ via the subresultant PRS (keeps integer coefficients
    small without full-rational remainder blow-up)."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return ONE_POLY
    fa, fb = _int_primitive(a), _int_primitive(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    g = h = 1
    while True:
        delta = len(fa) - len(fb)
        r = _prem(fa, fb)
        if not r:
            break
        div = g * h**delta
        fa, fb = fb, [c // div for c in r]
        if len(fb) == 1:
            return ONE_POLY
        g = fa[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    sign = -1 if fb[-1] < 0 else 1
    cont = 0
    for c in fb:
        cont = _int_gcd(cont, abs(c))
    cont *= sign
    return Polynomial([Fraction(c, cont) for c in fb]).monic()


class RationalFunction:
    """Reduced ratio of polynomials in λ with monic denominator, so structural
    equality doubles as mathematical equality."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Polynomial([num])
        if den is None:
            den = ONE_POLY
        elif isinstance(den, (int, Fraction)):
            den = Polynomial([den])
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        if den.degree > 0 and num.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if den.lc != 1:
            inv = Fraction(1) / den.lc
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _reduced(cls, num, den):
        """Wrap an already coprime pair, normalizing only the leading coefficient."""
        self = object.__new__(cls)
        if num.is_zero:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return self
        if den.lc != 1:
            inv = Fraction(1) / den.lc
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den
        return self

    @property
    def is_zero(self):
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction._reduced(-self.num, self.den)

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return RF_ZERO
        na, da = self.num, self.den
        nb, db = other.num, other.den
        g1 = poly_gcd(na, db) if na.degree > 0 and db.degree > 0 else ONE_POLY
        if g1.degree > 0:
            na, db = na.exact_div(g1), db.exact_div(g1)
        g2 = poly_gcd(nb, da) if nb.degree > 0 and da.degree > 0 else ONE_POLY
        if g2.degree > 0:
            nb, da = nb.exact_div(g2), da.exact_div(g2)
        return RationalFunction._reduced(na * nb, da * db)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RationalFunction(other.den, other.num)

    def scale(self, k):
        if not k:
            return RF_ZERO
        return RationalFunction._reduced(self.num.scale(k), self.den)

    @property
    def order_at_infinity(self):
        """deg den - deg num; how fast the function decays at λ = ∞ (None if zero)."""
        if self.is_zero:
            return None
        return self.den.degree - self.num.degree

    def expand_at_infinity(self, n):
        return expand_at_infinity(self, n)

    def render(self, var="λ"):
        if self.den == ONE_POLY:
            return self.num.render(var)
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))


RF_ZERO = RationalFunction(0)
RF_ONE = RationalFunction(1)


class HbarSeries:
    """Truncated power series in ħ with exact rational coefficients (ħ⁰ … ħ^N)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(coeffs) != order + 1:
            raise ValueError("series needs exactly order+1 coefficients")
        self.order = order
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, HbarSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        n = min(self.order, other.order)
        return HbarSeries(n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __mul__(self, other):
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return HbarSeries(n, out)

    def scale(self, k):
        return HbarSeries(self.order, [c * k for c in self.coeffs])

    @classmethod
    def ratio(cls, num, den, order):
        """Power-series division of coefficient lists in ħ; den[0] must be nonzero."""
        num = [c if isinstance(c, Fraction) else Fraction(c) for c in num]
        den = [c if isinstance(c, Fraction) else Fraction(c) for c in den]
        if not den or not den[0]:
            raise ZeroDivisionError("series division needs an invertible denominator")
        inv0 = 1 / den[0]
        out = []
        for k in range(order + 1):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(acc * inv0)
        return cls(order, out)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(frac_to_str(c))
            else:
                h = "ħ" if i == 1 else f"ħ^{i}"
                terms.append(f"{frac_to_str(c)}*{h}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"HbarSeries({self})"


def expand_at_infinity(f: RationalFunction, n: int) -> HbarSeries:
    """First n+1 Taylor coefficients of f(1/ħ) at ħ = 0.

    Requires f regular at λ = ∞, i.e. deg num ≤ deg den."""
    if f.is_zero:
        return HbarSeries(n, [Fraction(0)] * (n + 1))
    dn, dd = f.num.degree, f.den.degree
    if dn > dd:
        raise PoleAtInfinityError(
            f"pole at infinity: numerator degree {dn} exceeds denominator degree {dd}"
        )
    # substitute λ = 1/ħ and clear ħ^dd from both numerator and denominator
    num = [f.num.coeffs[dd - k] if 0 <= dd - k <= dn else Fraction(0) for k in range(dd + 1)]
    den = [f.den.coeffs[dd - k] for k in range(dd + 1)]
    return HbarSeries.ratio(num, den, n)
