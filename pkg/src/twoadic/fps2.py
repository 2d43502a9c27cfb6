"""Polynomials and truncated power series over F_2, and quadratic roots in F_2[[X]].

Polynomials are stored as nonnegative integers: bit i is the coefficient of
X^i. A series additionally carries its precision, the number of leading
coefficients known to be correct.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class NonUnit(ArithmeticError):
    """Inverse of a series with zero constant term requested."""


class NotLiftable(ValueError):
    """Series Hensel lifting needs h(a0) = 0 mod X and b(0) = 1."""


class PrecisionExhausted(ValueError):
    """No coefficients available to resolve a root."""


class NotPrimitive(ValueError):
    """gcd(a, b, c) != 1."""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed F_2 polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _spread(a: int) -> int:
    """a(X) -> a(X^2), i.e. the square of a."""
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (2 * i)
        a >>= 1
        i += 1
    return r


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _divmod(a, b)[1]
    return a


def _val(a: int) -> int | None:
    if a == 0:
        return None
    return (a & -a).bit_length() - 1


@dataclass(frozen=True)
class F2Poly:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bit pattern must be nonnegative")

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def valuation(self) -> int | None:
        return _val(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: F2Poly) -> F2Poly:
        return F2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: F2Poly) -> F2Poly:
        return F2Poly(clmul(self.bits, other.bits))

    def __divmod__(self, other: F2Poly) -> tuple[F2Poly, F2Poly]:
        q, r = _divmod(self.bits, other.bits)
        return F2Poly(q), F2Poly(r)

    def __floordiv__(self, other: F2Poly) -> F2Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: F2Poly) -> F2Poly:
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> F2Poly:
        r, b = 1, self.bits
        while e:
            if e & 1:
                r = clmul(r, b)
            b = clmul(b, b)
            e >>= 1
        return F2Poly(r)

    def gcd(self, other: F2Poly) -> F2Poly:
        return F2Poly(_gcd(self.bits, other.bits))

    def sqrt(self) -> F2Poly | None:
        """A with A^2 = self, or None when an odd coefficient is set."""
        if self.bits & _odd_mask(self.bits.bit_length()):
            return None
        return F2Poly(_unspread(self.bits))

    def series(self, prec: int) -> F2Series:
        return F2Series(self.bits & ((1 << prec) - 1), prec)

    def __str__(self):
        return format_sparse(self.bits, "X")


def _odd_mask(n: int) -> int:
    return int("10" * ((n + 1) // 2), 2) if n > 0 else 0


def _unspread(a: int) -> int:
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << i
        a >>= 2
        i += 1
    return r


@dataclass(frozen=True)
class F2Series:
    bits: int
    prec: int

    def __post_init__(self):
        if self.prec < 0:
            raise ValueError("precision must be nonnegative")
        object.__setattr__(self, "bits", self.bits & ((1 << self.prec) - 1))

    def coeff(self, i: int) -> int:
        if i >= self.prec:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def coeffs(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.prec)]

    def truncate(self, prec: int) -> F2Series:
        if prec > self.prec:
            raise ValueError("cannot extend precision")
        return F2Series(self.bits, prec)

    def __add__(self, other: F2Series) -> F2Series:
        return F2Series(self.bits ^ other.bits, min(self.prec, other.prec))

    def __mul__(self, other: F2Series) -> F2Series:
        return ps_mul(self, other)

    def __str__(self):
        body = format_sparse(self.bits, "X")
        return f"{body} + O(X^{self.prec})" if self.bits else f"O(X^{self.prec})"


def ps_mul(x: F2Series, y: F2Series) -> F2Series:
    p = min(x.prec, y.prec)
    mask = (1 << p) - 1
    return F2Series(clmul(x.bits & mask, y.bits & mask) & mask, p)


def ps_inv(x: F2Series) -> F2Series:
    """Inverse by Newton iteration y <- x*y^2, doubling the precision."""
    if x.prec == 0:
        return F2Series(0, 0)
    if not x.bits & 1:
        raise NonUnit("constant term is zero")
    y = 1
    p = 1
    while p < x.prec:
        p = min(2 * p, x.prec)
        mask = (1 << p) - 1
        y = clmul(x.bits & mask, clmul(y, y) & mask) & mask
    return F2Series(y, x.prec)


def ps_sqrt(x: F2Series) -> F2Series | None:
    if x.bits & _odd_mask(x.prec):
        return None
    return F2Series(_unspread(x.bits), (x.prec + 1) // 2)


# -- quadratics over F_2[X] -------------------------------------------------


@dataclass(frozen=True)
class F2YQuad:
    """h(Y) = a(X) Y^2 + b(X) Y + c(X)."""

    a: F2Poly
    b: F2Poly
    c: F2Poly

    def __post_init__(self):
        if self.a.is_zero() and self.b.is_zero() and self.c.is_zero():
            raise ValueError("zero polynomial")

    @classmethod
    def from_bits(cls, a: int, b: int, c: int) -> F2YQuad:
        return cls(F2Poly(a), F2Poly(b), F2Poly(c))

    def is_primitive(self) -> bool:
        return self.a.gcd(self.b).gcd(self.c).bits == 1

    def constant_terms(self) -> tuple[int, int, int]:
        return self.a.coeff(0), self.b.coeff(0), self.c.coeff(0)

    def __str__(self):
        parts = []
        for p, mono in ((self.a, "Y^2"), (self.b, "Y"), (self.c, "")):
            if p.is_zero():
                continue
            if not mono:
                parts.append(str(p))
            elif p.bits == 1:
                parts.append(mono)
            elif p.bits & (p.bits - 1) == 0:
                parts.append(f"{p}{mono}")
            else:
                parts.append(f"({p}){mono}")
        return "+".join(parts)


def eval_quad(h: F2YQuad, y: F2Series) -> F2Series:
    p = y.prec
    mask = (1 << p) - 1
    v = clmul(h.a.bits & mask, clmul(y.bits, y.bits) & mask)
    v ^= clmul(h.b.bits & mask, y.bits)
    v ^= h.c.bits
    return F2Series(v & mask, p)


def hensel_lift_series(h: F2YQuad, a0: int, prec: int) -> F2Series:
    """The unique root alpha with alpha(0) = a0, to ``prec`` terms.

    With b(0) = 1, coefficient n of h(alpha) moves with coefficient n of
    alpha alone, so each new coefficient is read off the current residual.
    """
    a, b, c = h.a.bits, h.b.bits, h.c.bits
    if a0 not in (0, 1) or not b & 1 or ((a & 1) * a0 + a0 + (c & 1)) % 2:
        raise NotLiftable(f"{a0} does not lift for {h}")
    alpha = a0
    for n in range(1, prec):
        mask = (1 << (n + 1)) - 1
        r = clmul(a & mask, _spread(alpha)) ^ clmul(b & mask, alpha) ^ c
        if (r >> n) & 1:
            alpha |= 1 << n
    return F2Series(alpha, prec)


@dataclass(frozen=True)
class F2Roots:
    """Roots of a quadratic in F_2[[X]] and the case path that produced them."""

    roots: tuple[F2Series, ...]
    path: tuple[str, ...] = field(default=())
    # exact: the reduction works on polynomials, never on truncations
    rational: bool = False

    @property
    def label(self) -> str:
        return " -> ".join(self.path)


def roots_f2series(h: F2YQuad, prec: int) -> list[F2Series]:
    """Roots of h in F_2[[X]] to ``prec`` terms, in lexicographic coefficient order."""
    return list(classify_f2(h, prec).roots)


def classify_f2(h: F2YQuad, prec: int) -> F2Roots:
    if prec < 1:
        raise PrecisionExhausted("need at least one term")
    if not h.is_primitive():
        raise NotPrimitive(f"gcd(a, b, c) != 1 for {h}")
    path: list[str] = []
    found, rational = _roots(h.a.bits, h.b.bits, h.c.bits, prec, path, top=True)
    uniq = {r.bits: r for r in found}
    roots = sorted(uniq.values(), key=lambda s: [(s.bits >> i) & 1 for i in range(s.prec)])
    return F2Roots(tuple(roots), tuple(path), rational)


def _roots(a: int, b: int, c: int, prec: int, path: list[str], top: bool = False):
    """Roots (as F2Series) of aY^2 + bY + c with not all constant terms zero."""
    triple = (a & 1, b & 1, c & 1)
    if triple == (0, 0, 0):
        # only reachable after a substitution; drop the common X power
        t = min(v for v in (_val(a), _val(b), _val(c)) if v is not None)
        return _roots(a >> t, b >> t, c >> t, prec, path)
    if triple in ((0, 0, 1), (1, 1, 1)):
        path.append("2")
        return [], False
    h = F2YQuad.from_bits(a, b, c)
    if triple in ((0, 1, 0), (0, 1, 1)):
        path.append("3")
        return [hensel_lift_series(h, c & 1, prec)], False
    if triple == (1, 1, 0):
        path.append("4")
        return [hensel_lift_series(h, 0, prec), hensel_lift_series(h, 1, prec)], False
    # a(0) = 1, b(0) = 0
    if b == 0:
        # substitutions below never produce b = 0
        assert top
        path.append("5.2")
        return _case_5_2(a, c, prec)
    path.append("5.1")
    return _case_5_1(a, b, c, prec, path), False


def _case_5_2(a: int, c: int, prec: int):
    # gcd(a, c) = 1, so c/a is a square iff a and c both are
    A = F2Poly(a).sqrt()
    C = F2Poly(c).sqrt()
    if A is None or C is None:
        return [], False
    return [ps_mul(C.series(prec), ps_inv(A.series(prec)))], True


def _case_5_1(a: int, b: int, c: int, prec: int, path: list[str]):
    """a(0) = 1, b = X^m b1 with m >= 1.

    A root satisfies Y^2 = c/a mod X^m, which pins it modulo X^ceil(m/2) to
    d1 = sqrt(c/a mod X^m). Substituting Y = X^ceil(m/2) Z + d1 and dividing by
    X^m leaves a quadratic in Z whose roots are in bijection with those of h.
    """
    m = _val(b)
    w = ps_mul(F2Series(c, m), ps_inv(F2Series(a, m)))
    d1s = ps_sqrt(w)
    if d1s is None:
        path.append("no square mod X^%d" % m)
        return []
    d1 = d1s.bits
    s = (m + 1) // 2
    # h(X^s Z + d1) = a X^2s Z^2 + b X^s Z + (a d1^2 + b d1 + c)
    e = clmul(a, _spread(d1)) ^ clmul(b, d1) ^ c
    assert _val(e) is None or _val(e) >= m
    na = a << (2 * s - m)
    nb = b >> (m - s)
    ne = e >> m
    if prec <= s:
        sub = _roots(na, nb, ne, 1, path)[0]
        return [F2Series(d1, prec) for _ in sub]
    sub, _ = _roots(na, nb, ne, prec - s, path)
    return [F2Series((z.bits << s) ^ d1, prec) for z in sub]


# -- text forms -------------------------------------------------------------


def format_sparse(bits: int, var: str = "X") -> str:
    if bits == 0:
        return "0"
    terms = []
    i = 0
    while bits >> i:
        if (bits >> i) & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
        i += 1
    return " + ".join(terms)


def to_bitstring(s: F2Series) -> str:
    return "".join(str(b) for b in s.coeffs())


def parse_series(text: str, prec: int | None = None) -> F2Series:
    """Parse a low-degree-first bit string or sparse ``1 + X^3 + O(X^10)`` form."""
    text = text.strip()
    if re.fullmatch(r"[01]+", text):
        return F2Series(sum(int(ch) << i for i, ch in enumerate(text)), len(text))
    bits = 0
    for term in (t.strip() for t in text.split("+")):
        m = re.fullmatch(r"O\(X\^(\d+)\)", term)
        if m:
            prec = int(m.group(1))
            continue
        bits ^= _parse_monomial(term)
    if prec is None:
        raise ValueError("sparse series needs an O(X^k) term or an explicit precision")
    if bits >> prec:
        raise ValueError("term beyond stated precision")
    return F2Series(bits, prec)


def parse_poly(text: str) -> F2Poly:
    text = text.strip()
    if re.fullmatch(r"[01]+", text):
        return F2Poly(sum(int(ch) << i for i, ch in enumerate(text)))
    bits = 0
    for term in (t.strip() for t in text.split("+")):
        bits ^= _parse_monomial(term)
    return F2Poly(bits)


def _parse_monomial(term: str) -> int:
    if term in ("0", ""):
        return 0
    if term == "1":
        return 1
    m = re.fullmatch(r"X(?:\^(\d+))?", term)
    if not m:
        raise ValueError(f"bad monomial {term!r}")
    return 1 << int(m.group(1) or 1)
