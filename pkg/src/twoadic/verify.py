"""Named check suites: worked expansions, bounds, oracle agreement, profiles."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import complexity as cx
from .dyadic import IntPoly, classify_quadratic_z2, parse_dyadic, roots_z2, sqrt_2adic
from .fps2 import classify_f2, eval_quad, parse_series
from .polyparse import parse_f2quad, parse_intpoly
from .seqgen import BitString, dual, from_dyadic, gen_thue_morse


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    # soft checks record an expectation; failing one is a warning
    soft: bool = False


def _eq(name, got, want, soft=False):
    return Check(name, got == want, "" if got == want else f"got {got}, expected {want}", soft)


# -- worked expansions ------------------------------------------------------

# (polynomial, precision, expected roots in 2-adic digit order)
Z2_EXAMPLES = [
    ("Y^2-17", 10, ["1 + 2^3 + 2^5 + 2^6 + 2^7 + 2^9"]),
    ("Y^2+7", 10, ["1 + 2^2 + 2^4 + 2^5 + 2^7"]),
    ("3Y^2-4Y+9", 10, ["1 + 2^2 + 2^5 + 2^6 + 2^8", "1 + 2 + 2^2 + 2^6 + 2^8"]),
    ("Y^2+5Y+2", 10, ["2^1 + 2^4 + 2^5 + 2^6 + 2^8 + 2^9", "1 + 2^3 + 2^7"]),
    ("2Y^2+Y+1", 10, ["1 + 2^2 + 2^3 + 2^5"]),
]

F2_EXAMPLES = [
    ("XY^2+Y+X", 10, ["X + X^3 + X^7"]),
    ("XY^2+Y+1", 10, ["1 + X + X^3 + X^7"]),
    ("(1+X)Y^2+Y+X^2", 10, ["X^2 + X^4 + X^5 + X^8 + X^9", "1 + X + X^3 + X^6 + X^7"]),
    ("(1+X^2+X^4)Y^2+X^6", 11, ["X^3 + X^4 + X^6 + X^7 + X^9 + X^10"]),
    ("(X+1)^3Y^2+(X+1)^2Y+X", 11, ["X + X^2 + X^4 + X^7 + X^8", "1 + X^3 + X^5 + X^6 + X^9 + X^10"]),
    ("(1+X^2)Y^2+X^5Y+X^2", 10, []),
    ("Y^2+Y+1", 10, []),
]


def worked_examples() -> Iterator[Check]:
    for text, k, want in Z2_EXAMPLES:
        h = parse_intpoly(text)
        if h.coeffs[1] == 0 and h.coeffs[2] == 1:
            got = sqrt_2adic(-h.coeffs[0], k)[:1]
        else:
            got = roots_z2(h, k)
        yield _eq(f"Z2 roots of {text}", [r.value for r in got],
                  [parse_dyadic(w, k).value for w in want])
    neg = sqrt_2adic(17, 10)[1]
    pos = sqrt_2adic(17, 10)[0]
    yield _eq("-sqrt17 is the complement of sqrt17 above bit 0",
              neg.value, (pos.value ^ 0x3FF) | 1)
    yield _eq("Y^2+Y+1 has no root in Z2 (case 2.1.1)",
              (classify_quadratic_z2(IntPoly((1, 1, 1))).label, roots_z2(IntPoly((1, 1, 1)), 10)),
              ("2.1.1", []))
    case = classify_quadratic_z2(IntPoly((1, 1, 2)))
    yield _eq("2Y^2+Y+1 keeps one root in Z2 (case 2.2)", (case.root_count, case.nonintegral_root), (1, True))
    for text, p, want in F2_EXAMPLES:
        h = parse_f2quad(text)
        got = classify_f2(h, p).roots
        yield _eq(f"F2[[X]] roots of {text}", [r.bits for r in got],
                  [parse_series(w, p).bits for w in want])
        for r in got:
            if eval_quad(h, r).bits:
                yield Check(f"certificate for {text}", False, f"h({r}) != 0")
    tm = gen_thue_morse(12)
    yield _eq("Thue-Morse G_T to 11 terms", str(tm[:11]), "01101001100")
    yield _eq("dual Thue-Morse to 12 terms", dual(tm).value(),
              parse_series("1 + X^3 + X^5 + X^6 + X^9 + X^10 + O(X^12)").bits)


# -- degree-2 bounds --------------------------------------------------------

BOUND_POLYS = ["Y^2-17", "Y^2+7", "3Y^2-4Y+9", "Y^2+5Y+2", "2Y^2+Y+1"]


def root_sequences(text: str, n: int) -> list[tuple[str, BitString]]:
    h = parse_intpoly(text)
    return [(f"{text} root {i}", from_dyadic(r)) for i, r in enumerate(roots_z2(h, n))]


def bounds(n_max: int = 40, cross_check_max: int = 24) -> Iterator[Check]:
    for text in BOUND_POLYS:
        h = parse_intpoly(text)
        for label, s in root_sequences(text, n_max):
            prof = cx.adic_profile(s, linear=False, check=False)
            for nn in range(1, min(cross_check_max, n_max) + 1):
                bf = cx.adic_bruteforce(s, nn)
                if bf != (prof[nn].Lambda, prof[nn].rep):
                    yield Check(f"{label}: lattice = brute force", False, f"N={nn}: {bf} vs {prof[nn]}")
                    break
            else:
                yield Check(f"{label}: lattice = brute force for N <= {cross_check_max}", True)
            reports = cx.degree_bounds(h, prof)
            low = [r.n for r in reports if not r.lower_holds]
            up = [r.n for r in reports if not r.upper_holds]
            yield Check(f"{label}: H*Lambda^d >= 2^N for N <= {n_max}", not low, f"fails at N={low[:5]}")
            yield Check(f"{label}: upper bound for N <= {n_max}", not up, f"fails at N={up[:5]}")
            inv = cx.check_profile_invariants(prof)
            yield Check(f"{label}: profile invariants", inv.ok, str(inv.first))


# -- oracle agreement -------------------------------------------------------


def lattice_vs_bruteforce(exhaustive_max: int, random_ns: range, samples: int, seed: int) -> Iterator[Check]:
    for n in range(1, exhaustive_max + 1):
        yield _agree_adic(f"all {1 << n} sequences of length {n}",
                          (BitString.from_int(v, n) for v in range(1 << n)), n)
    rng = random.Random(seed)
    for n in random_ns:
        yield _agree_adic(f"{samples} random sequences of length {n}",
                          (BitString.from_int(rng.getrandbits(n), n) for _ in range(samples)), n)


def _agree_adic(name, seqs, n):
    for s in seqs:
        a = cx.adic_bruteforce(s, n)
        b = cx.adic_lattice(s, n)
        if a != b:
            return Check(f"lattice = brute force on {name}", False, f"s={s}: brute {a}, lattice {b}")
        if not b[1].holds_for(s.value(n)):
            return Check(f"lattice = brute force on {name}", False, f"s={s}: rep fails congruence")
    return Check(f"lattice = brute force on {name}", True)


def bm_vs_bruteforce(exhaustive_len: int, random_len: int, samples: int, seed: int) -> Iterator[Check]:
    n = exhaustive_len
    name = f"BM = brute-force LFSR on all sequences of length <= {n}"
    for v in range(1 << n):
        s = BitString.from_int(v, n)
        if cx.berlekamp_massey_profile(s) != cx.lfsr_bruteforce_profile(s):
            yield Check(name, False, f"s={s}")
            break
    else:
        yield Check(name, True)
    rng = random.Random(seed)
    name = f"BM = brute-force LFSR on {samples} random length-{random_len} sequences"
    for _ in range(samples):
        s = BitString.from_int(rng.getrandbits(random_len), random_len)
        if cx.berlekamp_massey_profile(s) != cx.lfsr_bruteforce_profile(s):
            yield Check(name, False, f"s={s}")
            break
    else:
        yield Check(name, True)


def oracles(seed: int = 0, full: bool = False) -> Iterator[Check]:
    if full:
        yield from lattice_vs_bruteforce(16, range(17, 25), 500, seed)
        yield from bm_vs_bruteforce(14, 14, 1000, seed)
    else:
        yield from lattice_vs_bruteforce(12, range(13, 25), 100, seed)
        yield from bm_vs_bruteforce(10, 14, 200, seed)


# -- profiles ---------------------------------------------------------------


def thue_morse_linear(n_max: int = 4096) -> Iterator[Check]:
    tm = gen_thue_morse(n_max)
    got = cx.berlekamp_massey_profile(tm)
    want = [2 * ((n + 2) // 4) for n in range(1, n_max + 1)]
    bad = [n for n, (g, w) in enumerate(zip(got, want), 1) if g != w]
    yield Check(f"L_T(N) = 2 floor((N+2)/4), N <= {n_max}", not bad, f"first mismatch N={bad[:1]}")
    got = cx.berlekamp_massey_profile(dual(tm))
    want = [2 * (n // 4) + 1 for n in range(1, n_max + 1)]
    bad = [n for n, (g, w) in enumerate(zip(got, want), 1) if g != w]
    yield Check(f"L_T'(N) = 2 floor(N/4) + 1, N <= {n_max}", not bad, f"first mismatch N={bad[:1]}")


def thue_morse_adic(n_max: int = 40) -> Iterator[Check]:
    prof = cx.adic_profile(gen_thue_morse(n_max), linear=False, check=False)
    lam = prof.lambdas
    # lambda >= N/5  <=>  Lambda^5 >= 2^N
    bad = [n for n in range(4, n_max + 1) if lam[n - 1] ** 5 < 1 << n]
    yield Check(f"lambda_T(N) >= N/5 for 4 <= N <= {n_max}", not bad, f"fails at {bad}")
    # N/4 - 3 < lambda < 3N/4 + 1  <=>  2^N < Lambda^4 * 2^12  and  Lambda^4 < 2^(3N+4)
    bad = [n for n in range(1, n_max + 1)
           if not (1 << n) < lam[n - 1] ** 4 << 12 or not lam[n - 1] ** 4 < 1 << (3 * n + 4)]
    yield Check(f"N/4 - 3 < lambda_T(N) < 3N/4 + 1 for N <= {n_max}", not bad, f"fails at {bad}")
    inv = cx.check_profile_invariants(prof)
    yield Check("Thue-Morse profile invariants", inv.ok, str(inv.first))


FIGURE_SOURCES = {"sqrt17": "Y^2-17", "sqrt-7": "Y^2+7"}


def figure_profile(name: str, n: int = 100) -> cx.ComplexityProfile:
    s = root_sequences(FIGURE_SOURCES[name], n)[0][1]
    return cx.adic_profile(s)


def figures(n: int = 100, band: int = 10) -> Iterator[Check]:
    for name in FIGURE_SOURCES:
        prof = figure_profile(name, n)
        inv = cx.check_profile_invariants(prof)
        yield Check(f"{name} profile invariants, N <= {n}", inv.ok, str(inv.first))
        far = [r.n for r in prof.records if r.n >= 20 and abs(r.lin - r.n / 2) > band]
        yield Check(f"{name}: |L(N) - N/2| <= {band} for 20 <= N <= {n}", not far,
                    f"outside band at N={far[:10]}", soft=True)
        # observation only: the threshold beyond which lambda(N) > N/(2+eps) is not effective
        obs = cx.roth_observation(prof, 1.0)
        yield Check(f"{name}: largest N with lambda(N) <= N/3 is {obs.largest_violation}", True,
                    f"violations at N={obs.violations}")


def profiles() -> Iterator[Check]:
    yield from thue_morse_linear()
    yield from thue_morse_adic()
    yield from figures()


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "worked-examples": worked_examples,
    "bounds": bounds,
    "oracles": oracles,
    "profiles": profiles,
}
