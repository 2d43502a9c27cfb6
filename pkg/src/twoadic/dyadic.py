"""Truncated 2-adic integers and root finding for integer polynomials in Z_2.

A :class:`DyadicInt` is a residue modulo ``2**precision``; bit ``n`` of its
value is the digit of ``2**n`` in the 2-adic expansion. Negative integers
enter through their residue, so ``-1`` at precision 8 is ``255``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce


class EvenUnit(ArithmeticError):
    """Inverse of an even 2-adic integer requested."""


class EvenDenominator(ArithmeticError):
    """Rational f/q with even q has no expansion in Z_2."""


class NotASimpleRoot(ValueError):
    """Newton lifting needs h(a0) even and h'(a0) odd."""


class LiftingTreeOverflow(RuntimeError):
    """Too many candidate residues while lifting (singular input)."""


@dataclass(frozen=True)
class DyadicInt:
    value: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if not 0 <= self.value < (1 << self.precision):
            object.__setattr__(self, "value", self.value % (1 << self.precision))

    @classmethod
    def from_int(cls, n: int, precision: int) -> DyadicInt:
        return cls(n % (1 << precision), precision)

    def bit(self, n: int) -> int:
        if not 0 <= n < self.precision:
            raise IndexError(n)
        return (self.value >> n) & 1

    def bits(self) -> list[int]:
        return [(self.value >> n) & 1 for n in range(self.precision)]

    def valuation(self) -> int | None:
        """Index of the lowest set bit; None if zero at this precision."""
        if self.value == 0:
            return None
        return (self.value & -self.value).bit_length() - 1

    def truncate(self, precision: int) -> DyadicInt:
        if precision > self.precision:
            raise ValueError("cannot extend precision")
        return DyadicInt(self.value & ((1 << precision) - 1), precision)

    def signed(self) -> int:
        """Representative in [-2**(k-1), 2**(k-1))."""
        half = 1 << (self.precision - 1)
        return self.value - (1 << self.precision) if self.value >= half else self.value

    def __add__(self, other):
        return dy_add(self, _coerce(other, self.precision))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.precision)
        k = min(self.precision, other.precision)
        return DyadicInt((self.value - other.value) % (1 << k), k)

    def __rsub__(self, other):
        return _coerce(other, self.precision) - self

    def __neg__(self):
        return DyadicInt(-self.value % (1 << self.precision), self.precision)

    def __mul__(self, other):
        return dy_mul(self, _coerce(other, self.precision))

    __rmul__ = __mul__

    def __str__(self):
        return to_bitstring(self)


def _coerce(x, precision):
    if isinstance(x, DyadicInt):
        return x
    if isinstance(x, int):
        return DyadicInt.from_int(x, precision)
    return NotImplemented


def dy_add(x: DyadicInt, y: DyadicInt) -> DyadicInt:
    k = min(x.precision, y.precision)
    return DyadicInt((x.value + y.value) & ((1 << k) - 1), k)


def dy_mul(x: DyadicInt, y: DyadicInt) -> DyadicInt:
    k = min(x.precision, y.precision)
    return DyadicInt((x.value * y.value) & ((1 << k) - 1), k)


def dy_inv(x: DyadicInt) -> DyadicInt:
    if not x.value & 1:
        raise EvenUnit(f"{x.value} is even")
    return DyadicInt(pow(x.value, -1, 1 << x.precision), x.precision)


def rational_expand(f: int, q: int, k: int) -> DyadicInt:
    """Expansion of f/q in Z_2 to k bits."""
    if q % 2 == 0:
        raise EvenDenominator(f"denominator {q} is even")
    mod = 1 << k
    return DyadicInt(f * pow(q, -1, mod) % mod, k)


# -- rendering --------------------------------------------------------------


def to_bitstring(x: DyadicInt) -> str:
    return "".join(str(b) for b in x.bits())


def to_sparse(x: DyadicInt) -> str:
    """Sparse form such as ``1 + 2^3 + 2^5 + O(2^10)``."""
    terms = []
    for n in range(x.precision):
        if (x.value >> n) & 1:
            terms.append("1" if n == 0 else "2" if n == 1 else f"2^{n}")
    terms.append(f"O(2^{x.precision})")
    return " + ".join(terms)


_SPARSE_TERM = re.compile(r"^(?:1|2(?:\^(\d+))?)$")


def parse_dyadic(text: str, precision: int | None = None) -> DyadicInt:
    """Parse a low-bit-first bit string or the sparse ``2^n`` form.

    The sparse form takes its precision from an ``O(2^k)`` term, or from
    ``precision`` when the term is absent.
    """
    text = text.strip()
    if re.fullmatch(r"[01]+", text):
        value = sum(int(c) << n for n, c in enumerate(text))
        return DyadicInt(value, len(text))
    value = 0
    k = precision
    for term in (t.strip() for t in text.split("+")):
        m = re.fullmatch(r"O\(2\^(\d+)\)", term)
        if m:
            k = int(m.group(1))
            continue
        m = _SPARSE_TERM.match(term)
        if not m:
            raise ValueError(f"bad dyadic term {term!r}")
        n = 0 if term == "1" else int(m.group(1) or 1)
        if (value >> n) & 1:
            raise ValueError(f"repeated term 2^{n}")
        value |= 1 << n
    if k is None:
        raise ValueError("sparse form needs an O(2^k) term or an explicit precision")
    if value >> k:
        raise ValueError("term beyond stated precision")
    return DyadicInt(value, k)


# -- integer polynomials ----------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    """h(Y) = coeffs[0] + coeffs[1] Y + ... + coeffs[d] Y^d."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def height_sum(self) -> int:
        return sum(abs(a) for a in self.coeffs)

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs)

    def is_primitive(self) -> bool:
        return self.content == 1

    def primitive_part(self) -> IntPoly:
        g = self.content
        return IntPoly(tuple(a // g for a in self.coeffs))

    def derivative(self) -> IntPoly | None:
        if self.degree == 0:
            return None
        return IntPoly(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def __call__(self, y: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * y + a
        return acc

    def __str__(self):
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else "Y" if i == 1 else f"Y^{i}"
            mag = abs(a)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f"{sign}{body}"
        return out


def eval_mod2k(h: IntPoly, x: DyadicInt) -> DyadicInt:
    mask = (1 << x.precision) - 1
    acc = 0
    for a in reversed(h.coeffs):
        acc = (acc * x.value + a) & mask
    return DyadicInt(acc, x.precision)


# -- square roots -----------------------------------------------------------


def _odd_sqrt(d: int, bits: int) -> int:
    """Root y = 1 mod 4 of odd d = 1 mod 8, correct to ``bits`` bits."""
    y = 1
    j = 3
    # invariant: y*y == d mod 2**j, y correct mod 2**(j-1)
    while j - 1 < bits:
        if (y * y - d) % (1 << (j + 1)):
            y += 1 << (j - 1)
        j += 1
    y &= (1 << bits) - 1
    if bits >= 2 and y & 3 == 3:
        y = -y % (1 << bits)
    return y


def sqrt_2adic(D: int, k: int) -> list[DyadicInt]:
    """Square roots of D in Z_2 truncated to k bits.

    Returns ``[]`` unless D is 0 or 4**m * d with d = 1 mod 8. The first root
    has odd part congruent to 1 mod 4; the second is its negative.
    """
    if D == 0:
        return [DyadicInt(0, k)]
    m = 0
    d = D
    while d % 4 == 0:
        d //= 4
        m += 1
    if d % 8 != 1:
        return []
    if m >= k:
        return [DyadicInt(0, k)]
    y = _odd_sqrt(d, k - m)
    r = DyadicInt.from_int(y << m, k)
    return [r, -r]


# -- Hensel lifting ---------------------------------------------------------


def _newton(h: IntPoly, dh: IntPoly, a: int, k: int) -> int:
    """Newton lifting of a simple root a mod 2 to k bits (precision doubling)."""
    j = 1
    while j < k:
        j = min(2 * j, k)
        mod = 1 << j
        a = (a - h(a) * pow(dh(a), -1, mod)) % mod
    return a % (1 << k)


def hensel_lift_simple(h: IntPoly, a0: int, k: int) -> DyadicInt:
    dh = h.derivative()
    if a0 not in (0, 1) or h(a0) % 2 or dh is None or dh(a0) % 2 == 0:
        raise NotASimpleRoot(f"{a0} is not a simple root of {h} mod 2")
    return DyadicInt(_newton(h, dh, a0, k), k)


def _digit_key(x: DyadicInt) -> str:
    # 2-adic digit order, stable under truncation
    return to_bitstring(x)


def _lifting_tree(h: IntPoly, k: int) -> list[DyadicInt]:
    """All roots of h in Z_2 to k bits for arbitrary degree."""
    dh = h.derivative()
    if dh is None:
        return []
    cap = 8 * h.degree
    found: set[int] = set()
    pending = [r for r in (0, 1) if h(r) % 2 == 0]
    j = 1
    while pending:
        unresolved = []
        for r in pending:
            e = _val(dh(r))
            if e == 0:
                found.add(_newton(h, dh, r, k))
                continue
            # generalised Hensel: v(h(r)) > 2e pins a unique root to r mod 2**(j-e)
            if e is not None and j > 2 * e and j - e >= k:
                found.add(r % (1 << k))
                continue
            unresolved.append(r)
        nxt = []
        mod = 1 << (j + 1)
        for r in unresolved:
            for c in (r, r + (1 << j)):
                if h(c) % mod == 0:
                    nxt.append(c)
        if len(nxt) > cap:
            raise LiftingTreeOverflow(f"{len(nxt)} residues at level {j + 1} for {h}")
        pending = nxt
        j += 1
    return sorted((DyadicInt(v, k) for v in found), key=_digit_key)


def _val(n: int) -> int | None:
    if n == 0:
        return None
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class QuadraticCase:
    """Parity case of a primitive quadratic over Z (labels as in the classical analysis)."""

    label: str
    root_count: int
    # Case 2.2: the second root has negative valuation (lies in Q_2 \ Z_2)
    nonintegral_root: bool = False


def is_square_2adic(D: int) -> bool:
    """True iff D = 0 or D = 4**m * d with d = 1 mod 8."""
    if D == 0:
        return True
    while D % 4 == 0:
        D //= 4
    return D % 8 == 1


def classify_quadratic_z2(h: IntPoly) -> QuadraticCase:
    if h.degree != 2:
        raise ValueError("quadratic expected")
    c, b, a = h.primitive_part().coeffs
    if b % 2 == 0:
        if a % 2 == 0:
            return QuadraticCase("1.2", 0)
        disc = b * b - 4 * a * c
        if not is_square_2adic(disc):
            return QuadraticCase("1.1", 0)
        return QuadraticCase("1.1", 1 if disc == 0 else 2)
    if a % 2:
        return QuadraticCase("2.1.1", 0) if c % 2 else QuadraticCase("2.1.2", 2)
    return QuadraticCase("2.2", 1, nonintegral_root=True)


def roots_z2(h: IntPoly, k: int) -> list[DyadicInt]:
    """Roots of h in Z_2 to k bits, ordered by 2-adic digits (low bit first)."""
    h = h.primitive_part()
    if h.degree == 2:
        roots = _roots_quadratic(h, k)
    else:
        roots = _lifting_tree(h, k)
    uniq = {r.value: r for r in roots}
    return sorted(uniq.values(), key=_digit_key)


def _roots_quadratic(h: IntPoly, k: int) -> list[DyadicInt]:
    c, b, a = h.coeffs
    case = classify_quadratic_z2(h)
    if case.label == "1.1":
        disc = b * b - 4 * a * c
        sq = sqrt_2adic(disc, k + 1)
        if not sq:
            return []
        mod = 1 << k
        ainv = pow(a, -1, mod)
        half_b = -b // 2
        s = sq[0].value >> 1  # disc = 4^m D with m >= 1, so roots are even
        plus = (half_b + s) * ainv % mod
        minus = (half_b - s) * ainv % mod
        return [DyadicInt(plus, k), DyadicInt(minus, k)]
    if case.label == "2.1.2":
        return [hensel_lift_simple(h, 0, k), hensel_lift_simple(h, 1, k)]
    if case.label == "2.2":
        return [hensel_lift_simple(h, c % 2, k)]
    return []
