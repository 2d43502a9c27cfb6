"""Binary sequence sources and bit-file I/O."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dyadic import DyadicInt
from .fps2 import F2Series


class MalformedFile(ValueError):
    """Bit file contains a character other than 0, 1 or whitespace."""


@dataclass(frozen=True)
class BitString:
    """Finite binary sequence s_0 ... s_{N-1}; index n weighs 2^n (or X^n)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_int(cls, value: int, n: int) -> BitString:
        return cls(tuple((value >> i) & 1 for i in range(n)))

    @classmethod
    def from_str(cls, text: str) -> BitString:
        return cls(tuple(int(c) for c in text))

    def __len__(self):
        return len(self.bits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BitString(self.bits[i])
        return self.bits[i]

    def __iter__(self):
        return iter(self.bits)

    def value(self, n: int | None = None) -> int:
        """Integer sum of s_i 2^i over the first n bits."""
        bits = self.bits if n is None else self.bits[:n]
        return int("".join(map(str, reversed(bits))) or "0", 2)

    def __str__(self):
        return "".join(map(str, self.bits))


def gen_thue_morse(n: int) -> BitString:
    if n < 0:
        raise ValueError("length must be nonnegative")
    t = [0] * n
    for i in range(1, n):
        t[i] = t[i // 2] if i % 2 == 0 else 1 - t[(i - 1) // 2]
    return BitString(tuple(t))


def dual(s: BitString) -> BitString:
    return BitString(tuple(1 - b for b in s.bits))


def from_dyadic(x: DyadicInt) -> BitString:
    return BitString.from_int(x.value, x.precision)


def from_series(x: F2Series) -> BitString:
    return BitString(tuple(x.coeffs()))


# -- FCSR -------------------------------------------------------------------


@dataclass(frozen=True)
class FcsrState:
    """Feedback-with-carry shift register.

    ``taps[j]`` multiplies ``register[j]``; register[0] is the oldest bit and
    the next one to be emitted. The carry may be any integer.
    """

    taps: tuple[int, ...]
    register: tuple[int, ...]
    carry: int = 0

    def __post_init__(self):
        if len(self.taps) != len(self.register) or not self.taps:
            raise ValueError("taps and register must have the same positive length")
        if any(a not in (0, 1) for a in self.taps + self.register):
            raise ValueError("taps and register bits must be 0 or 1")

    @property
    def length(self) -> int:
        return len(self.taps)

    def connection_integer(self) -> int:
        """q = -1 + sum_j a_j 2^(L-j)."""
        L = self.length
        return -1 + sum(a << (L - j) for j, a in enumerate(self.taps))

    def rational(self) -> tuple[int, int]:
        """(p, q) with the output sequence equal to the 2-adic expansion of p/q."""
        L = self.length
        q = self.connection_integer()
        # q_0 = -1, q_i = a_{L-i}
        qs = [-1] + [self.taps[L - i] for i in range(1, L + 1)]
        s = self.register
        p = sum(sum(qs[i] * s[n - i] for i in range(n + 1)) << n for n in range(L))
        p -= self.carry << L
        if q < 0:
            p, q = -p, -q
        return p, q


def fcsr_step(st: FcsrState) -> tuple[FcsrState, int]:
    sigma = sum(a * s for a, s in zip(st.taps, st.register)) + st.carry
    out = st.register[0]
    nxt = FcsrState(st.taps, st.register[1:] + (sigma & 1,), sigma >> 1)
    return nxt, out


def fcsr_run(st: FcsrState, n: int) -> BitString:
    if n < 0:
        raise ValueError("length must be nonnegative")
    out = []
    for _ in range(n):
        st, b = fcsr_step(st)
        out.append(b)
    return BitString(tuple(out))


def eventual_period(s: Sequence[int], preperiod_max: int | None = None) -> tuple[int, int] | None:
    """Smallest (preperiod, period) consistent with the whole finite sequence,
    requiring at least two full periods after the preperiod."""
    n = len(s)
    for period in range(1, n // 2 + 1):
        for start in range(0, (preperiod_max if preperiod_max is not None else n) + 1):
            if start + 2 * period > n:
                break
            if all(s[i] == s[i + period] for i in range(start, n - period)):
                return start, period
    return None


# -- bit files --------------------------------------------------------------

LINE_WIDTH = 64


def format_bits(s: BitString | Iterable[int]) -> str:
    text = "".join(map(str, s))
    lines = [text[i:i + LINE_WIDTH] for i in range(0, len(text), LINE_WIDTH)]
    return "\n".join(lines) + "\n"


def parse_bits(text: str) -> BitString:
    bits = []
    for ch in text:
        if ch in "01":
            bits.append(int(ch))
        elif not ch.isspace():
            raise MalformedFile(f"unexpected character {ch!r}")
    return BitString(tuple(bits))


def store_bits(path: str | os.PathLike, s: BitString) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_bits(s))


def load_bits(path: str | os.PathLike) -> BitString:
    with open(path, encoding="ascii", errors="replace") as fh:
        return parse_bits(fh.read())
