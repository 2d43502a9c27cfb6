"""Nth 2-adic complexity, Nth linear complexity and the bounds they obey.

For a prefix value x = s_0 + 2 s_1 + ... + 2^(N-1) s_(N-1), Lambda(N) is the
least max(|f|, q) over odd q > 0 with q*x = f mod 2^N. Representatives are
made unique by the ordering (Lambda, q, |f|, f < 0).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

from . import kernels
from .dyadic import IntPoly
from .seqgen import BitString

BRUTEFORCE_MAX_N = 44


class PrefixTooLong(ValueError):
    """Brute-force scan requested beyond its cost guard."""


class DegreeTooLow(ValueError):
    """Degree bounds need an annihilating polynomial of degree >= 2."""


class HasRationalRoot(ValueError):
    """The annihilating polynomial has a rational root."""


class ProfileInvariantError(AssertionError):
    """A computed profile broke monotonicity or the step inequality."""


@dataclass(frozen=True)
class RationalRep:
    f: int
    q: int
    witness_n: int

    def __post_init__(self):
        if self.q <= 0 or self.q % 2 == 0:
            raise ValueError(f"q must be odd and positive, got {self.q}")

    @property
    def value(self) -> int:
        return max(abs(self.f), self.q)

    def holds_for(self, x: int) -> bool:
        return (self.q * x - self.f) % (1 << self.witness_n) == 0


@dataclass(frozen=True)
class ProfileRecord:
    n: int
    Lambda: int
    rep: RationalRep
    lin: int | None = None

    @property
    def lambda_log2(self) -> float:
        return math.log2(self.Lambda)


@dataclass
class ComplexityProfile:
    records: list[ProfileRecord]

    def __len__(self):
        return len(self.records)

    def __getitem__(self, n: int) -> ProfileRecord:
        """Record for prefix length n (1-based)."""
        return self.records[n - 1]

    @property
    def lambdas(self) -> list[int]:
        return [r.Lambda for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "Lambda", "lambda_log2", "f", "q", "L"])
        for r in self.records:
            w.writerow([r.n, r.Lambda, f"{r.lambda_log2:.6f}", r.rep.f, r.rep.q,
                        "" if r.lin is None else r.lin])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ComplexityProfile:
        records = []
        for row in csv.DictReader(io.StringIO(text)):
            n = int(row["N"])
            lin = int(row["L"]) if row["L"] != "" else None
            rep = RationalRep(int(row["f"]), int(row["q"]), n)
            records.append(ProfileRecord(n, int(row["Lambda"]), rep, lin))
        return cls(records)


def _key(f: int, q: int) -> tuple[int, int, int, int]:
    return (max(abs(f), q), q, abs(f), 1 if f < 0 else 0)


def _check_n(s: BitString, n: int):
    if not 1 <= n <= len(s):
        raise ValueError(f"prefix length {n} outside 1..{len(s)}")


def adic_bruteforce(s: BitString, n: int) -> tuple[int, RationalRep]:
    _check_n(s, n)
    if n > BRUTEFORCE_MAX_N:
        raise PrefixTooLong(f"brute force limited to N <= {BRUTEFORCE_MAX_N}")
    Lam, f, q = kernels.adic_scan(s.value(n), n)
    return Lam, RationalRep(f, q, n)


# -- lattice method ---------------------------------------------------------
#
# Feasible pairs (f, q) with odd q form the coset t + L' where t = (x, 1) and
# L' = {(f, q): q even, f = q x mod 2^N} has basis (2x mod 2^N, 2), (2^N, 0).
# After Gauss reduction of L', every point of the coset is t + j*c2 + i*c1;
# only a handful of j can reach a sup-norm ball around the optimum, and on
# each such line the objective is a convex piecewise-linear function of i.


def _gauss_reduce(u, v):
    def n2(w):
        return w[0] * w[0] + w[1] * w[1]

    if n2(u) > n2(v):
        u, v = v, u
    while True:
        nu = n2(u)
        dot = u[0] * v[0] + u[1] * v[1]
        mu = (2 * dot + nu) // (2 * nu)
        v = (v[0] - mu * u[0], v[1] - mu * u[1])
        if n2(v) >= nu:
            return u, v
        u, v = v, u


def _fdiv(a, b):
    return a // b


def _cdiv(a, b):
    return -((-a) // b)


def _coord_range(A, c, r):
    """Integers i with |A + i c| <= r, as (lo, hi); None if unbounded."""
    if c == 0:
        return None if abs(A) <= r else (1, 0)
    lo, hi = _cdiv(-r - A, c), _fdiv(r - A, c)
    if c < 0:
        lo, hi = _cdiv(r - A, c), _fdiv(-r - A, c)
    return lo, hi


def _line_range(A, c, r):
    lo, hi = None, None
    for k in (0, 1):
        rng = _coord_range(A[k], c[k], r)
        if rng is None:
            continue
        lo = rng[0] if lo is None else max(lo, rng[0])
        hi = rng[1] if hi is None else min(hi, rng[1])
    return lo, hi


def _near(num, den):
    if den == 0:
        return ()
    return (_fdiv(num, den), _cdiv(num, den))


def _normal(pf, pq):
    return (pf, pq) if pq > 0 else (-pf, -pq)


def _best_on_line(A, c):
    """Minimum of the tie-break key over points A + i c (i integer)."""
    Af, Aq = A
    cf, cq = c

    def point(i):
        return _normal(Af + i * cf, Aq + i * cq)

    # breakpoints of max(|f|, |q|): zeros of f, q, f - q, f + q
    cands = set()
    cands.update(_near(-Af, cf))
    cands.update(_near(-Aq, cq))
    cands.update(_near(Aq - Af, cf - cq))
    cands.update(_near(-Aq - Af, cf + cq))
    m = min(max(abs(Af + i * cf), abs(Aq + i * cq)) for i in cands)
    lo, hi = _line_range(A, c, m)
    picks = {lo, hi}
    for i in (*_near(-Aq, cq), *_near(-Af, cf)):
        picks.add(min(max(i, lo), hi))
    return min((point(i) for i in picks), key=lambda p: _key(*p))


def _reduced_coset(x: int, n: int):
    mod = 1 << n
    c1, c2 = _gauss_reduce(((2 * x) % mod, 2), (mod, 0))
    det = c1[0] * c2[1] - c1[1] * c2[0]
    if det < 0:
        c2 = (-c2[0], -c2[1])
        det = -det
    return (x, 1), c1, c2, det


def _lines(t, c1, c2, det, r):
    """j such that the line t + j c2 + Z c1 meets the sup-norm ball of radius r."""
    s1 = abs(c1[0]) + abs(c1[1])
    dt = c1[0] * t[1] - c1[1] * t[0]
    return range(_cdiv(-r * s1 - dt, det), _fdiv(r * s1 - dt, det) + 1)


def adic_lattice(s: BitString, n: int) -> tuple[int, RationalRep]:
    _check_n(s, n)
    f, q = _lattice_min(s.value(n), n)
    return max(abs(f), q), RationalRep(f, q, n)


def _lattice_min(x: int, n: int) -> tuple[int, int]:
    t, c1, c2, det = _reduced_coset(x, n)
    r = max(abs(c1[0]), abs(c1[1]), 1)
    while True:
        best = None
        for j in _lines(t, c1, c2, det, r):
            A = (t[0] + j * c2[0], t[1] + j * c2[1])
            p = _best_on_line(A, c1)
            if best is None or _key(*p) < _key(*best):
                best = p
        if best is not None and _key(*best)[0] <= r:
            return best
        r *= 2


def count_feasible(s: BitString, n: int, radius: int) -> int:
    """Number of feasible (f, q), q odd (either sign), with max(|f|, |q|) <= radius."""
    if radius < 1:
        return 0
    t, c1, c2, det = _reduced_coset(s.value(n), n)
    total = 0
    for j in _lines(t, c1, c2, det, radius):
        A = (t[0] + j * c2[0], t[1] + j * c2[1])
        lo, hi = _line_range(A, c1, radius)
        total += max(0, hi - lo + 1)
    return total


def certify_minimal(s: BitString, n: int, Lambda: int) -> bool:
    """No feasible pair strictly inside the ball of radius Lambda, one on it."""
    return count_feasible(s, n, Lambda - 1) == 0 and count_feasible(s, n, Lambda) > 0


# -- linear complexity ------------------------------------------------------


def berlekamp_massey_profile(s: BitString | Iterable[int]) -> list[int]:
    return kernels.bm_profile(list(s))


def lfsr_bruteforce_profile(s: BitString | Iterable[int]) -> list[int]:
    """Shortest LFSR length for every prefix by solving the recurrence system.

    Independent of Berlekamp-Massey: for each prefix and candidate length l it
    decides by Gaussian elimination over GF(2) whether taps c_1..c_l exist
    with s_k = sum c_i s_(k-i) for all l <= k < N.
    """
    bits = list(s)
    out = []
    cur = 0
    for n in range(1, len(bits) + 1):
        # a generator of n bits also generates n-1 bits, so l(n) >= l(n-1)
        ell = cur
        while not _lfsr_exists(bits, n, ell):
            ell += 1
        out.append(ell)
        cur = ell
    return out


def _lfsr_exists(bits, n, ell):
    if ell >= n:
        return True
    rows = []
    for k in range(ell, n):
        # unknowns c_1..c_ell packed in bits 0..ell-1, rhs in bit ell
        row = 0
        for i in range(1, ell + 1):
            if bits[k - i]:
                row |= 1 << (i - 1)
        if bits[k]:
            row |= 1 << ell
        rows.append(row)
    pivots = []
    for row in rows:
        for p in pivots:
            if row & (p & -p):
                row ^= p
        if row == 0:
            continue
        if row == 1 << ell:
            return False
        low = row & -row
        pivots = [p ^ row if p & low else p for p in pivots]
        pivots.append(row)
    return True


# -- profiles and checks ----------------------------------------------------


def adic_profile(s: BitString, *, linear: bool = True, check: bool = True) -> ComplexityProfile:
    if len(s) < 1:
        raise ValueError("empty sequence")
    lin = berlekamp_massey_profile(s) if linear else [None] * len(s)
    records = []
    for n in range(1, len(s) + 1):
        Lam, rep = adic_lattice(s, n)
        records.append(ProfileRecord(n, Lam, rep, lin[n - 1]))
    prof = ComplexityProfile(records)
    if check:
        rep = check_profile_invariants(prof)
        if not rep.ok:
            raise ProfileInvariantError(rep.first)
    return prof


@dataclass
class InvariantReport:
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> tuple[int, str] | None:
        return self.violations[0] if self.violations else None


def check_profile_invariants(profile: ComplexityProfile) -> InvariantReport:
    """Monotone Lambda and Lambda(N+1) Lambda(N) <= Lambda(N)^2 + 2^N, exactly."""
    out = InvariantReport()
    recs = profile.records
    for prev, cur in zip(recs, recs[1:]):
        n = prev.n
        if cur.Lambda < prev.Lambda:
            out.violations.append((cur.n, f"Lambda({cur.n})={cur.Lambda} < Lambda({n})={prev.Lambda}"))
        if cur.Lambda * prev.Lambda > prev.Lambda ** 2 + (1 << n):
            out.violations.append((cur.n, f"step inequality fails from N={n}"))
    return out


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    H: int
    lambda_log2: float
    lower: float
    upper: float
    lower_holds: bool
    upper_holds: bool

    @property
    def ok(self) -> bool:
        return self.lower_holds and self.upper_holds


UPPER_SLACK = 1.3
UPPER_TOL = 1e-9


def has_rational_root(h: IntPoly) -> bool:
    h = h.primitive_part()
    if h.degree == 2:
        c, b, a = h.coeffs
        disc = b * b - 4 * a * c
        return disc >= 0 and math.isqrt(disc) ** 2 == disc
    c0, cd = h.coeffs[0], h.coeffs[-1]
    if c0 == 0:
        return True
    from fractions import Fraction
    for p in _divisors(abs(c0)):
        for q in _divisors(abs(cd)):
            for sgn in (1, -1):
                y = Fraction(sgn * p, q)
                if sum(a * y ** i for i, a in enumerate(h.coeffs)) == 0:
                    return True
    return False


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def degree_bounds(h: IntPoly, profile: ComplexityProfile) -> list[BoundReport]:
    """Degree-d bounds N/d - log2(H)/d <= lambda(N) <= (d-1)N/d + log2(H)/d + 1.3."""
    d = h.degree
    if d < 2:
        raise DegreeTooLow(f"degree {d} < 2")
    if has_rational_root(h):
        raise HasRationalRoot(str(h))
    H = h.height_sum
    lh = math.log2(H)
    out = []
    for rec in profile.records:
        n = rec.n
        lower = n / d - lh / d
        upper = (d - 1) * n / d + lh / d + UPPER_SLACK
        lam = rec.lambda_log2
        out.append(BoundReport(
            n=n, d=d, H=H, lambda_log2=lam, lower=lower, upper=upper,
            lower_holds=H * rec.Lambda ** d >= 1 << n,
            upper_holds=lam <= upper + UPPER_TOL,
        ))
    return out


@dataclass
class RothObservation:
    eps: float
    violations: list[int]
    warnings: list[str]

    @property
    def largest_violation(self) -> int | None:
        return max(self.violations) if self.violations else None


def roth_observation(profile: ComplexityProfile, eps: float, aperiodic: bool = True) -> RothObservation:
    """Record the N where lambda(N) <= N/(2+eps); an observation, never a verdict.

    Compared in floating point on log2 of the exact Lambda.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    warnings = []
    if not aperiodic:
        warnings.append("sequence not flagged aperiodic; bound does not apply")
    viol = [r.n for r in profile.records if r.lambda_log2 * (2 + eps) <= r.n]
    recs = profile.records
    if aperiodic and len(recs) >= 8:
        half = recs[len(recs) // 2 - 1]
        last = recs[-1]
        if half.Lambda == last.Lambda and half.rep == RationalRep(last.rep.f, last.rep.q, half.n):
            warnings.append(
                f"Lambda constant from N={half.n} to N={last.n}; input looks eventually periodic")
    return RothObservation(eps, viol, warnings)
