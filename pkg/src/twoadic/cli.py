"""Sequences from 2-adic and power-series roots, and their complexity profiles.

Exit codes: 0 success (including an empty root list), 1 verification
failure, 2 usage error or missing root on ``generate``, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import dataclass
from typing import Callable

from . import complexity as cx
from . import verify
from .dyadic import classify_quadratic_z2, eval_mod2k, roots_z2, to_sparse
from .fps2 import classify_f2, eval_quad
from .polyparse import ParseError, parse_f2quad, parse_intpoly
from .seqgen import (
    BitString,
    FcsrState,
    MalformedFile,
    dual,
    fcsr_run,
    format_bits,
    from_dyadic,
    from_series,
    gen_thue_morse,
    load_bits,
)

log = logging.getLogger("twoadic")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

THUE_MORSE_ANNIHILATOR = "(X+1)^3Y^2+(X+1)^2Y+X"

PRESETS = {
    "thue-morse": f"f2x:{THUE_MORSE_ANNIHILATOR}@0",
    "thue-morse-dual": f"f2x:{THUE_MORSE_ANNIHILATOR}@1",
    "sqrt17": "poly:Y^2-17@0",
    "sqrt-7": "poly:Y^2+7@0",
}


class CliError(Exception):
    def __init__(self, msg, code=EXIT_USAGE):
        super().__init__(msg)
        self.code = code


@dataclass
class Source:
    """Resolved bit source: ``make(n)`` returns the bits and a certificate line."""

    label: str
    make: Callable[[int], tuple[BitString, str | None]]


def _poly_source(expr: str, index: int) -> Source:
    h = parse_intpoly(expr)

    def make(n):
        roots = roots_z2(h, n)
        if index >= len(roots):
            raise CliError(f"{h} has {len(roots)} root(s) in Z_2; no root {index}")
        r = roots[index]
        if eval_mod2k(h, r).value:
            raise CliError(f"root {index} of {h} failed certification", EXIT_FAIL)
        return from_dyadic(r), f"certificate: {h} vanishes at root {index} mod 2^{n}"

    return Source(f"{h} root {index}", make)


def _f2x_source(expr: str, index: int) -> Source:
    h = parse_f2quad(expr)

    def make(n):
        roots = classify_f2(h, n).roots
        if index >= len(roots):
            raise CliError(f"{h} has {len(roots)} root(s) in F_2[[X]]; no root {index}")
        r = roots[index]
        if eval_quad(h, r).bits:
            raise CliError(f"root {index} of {h} failed certification", EXIT_FAIL)
        return from_series(r), f"certificate: {h} vanishes at root {index} mod X^{n}"

    return Source(f"{h} root {index}", make)


def _rational_source(text: str) -> Source:
    try:
        f, _, q = text.partition("/")
        f, q = int(f), int(q or 1)
    except ValueError:
        raise CliError(f"bad rational {text!r}; expected F/Q") from None
    if q % 2 == 0:
        raise CliError("denominator must be odd")
    from .dyadic import rational_expand

    return Source(f"{f}/{q}", lambda n: (from_dyadic(rational_expand(f, q, n)), None))


def _bits_source(path: str) -> Source:
    try:
        bits = load_bits(path)
    except MalformedFile as e:
        raise CliError(f"{path}: {e}", EXIT_IO) from None
    except OSError as e:
        raise CliError(str(e), EXIT_IO) from None

    def make(n):
        if n > len(bits):
            raise CliError(f"{path} holds {len(bits)} bits, {n} requested")
        return bits[:n], None

    return Source(path, make)


def parse_source_spec(spec: str) -> Source:
    """``kind:payload[@root]`` with kind in poly, f2x, rational, bits, preset."""
    kind, _, rest = spec.partition(":")
    payload, _, idx = rest.rpartition("@") if "@" in rest else (rest, "", "0")
    if kind == "poly":
        return _poly_source(payload, int(idx))
    if kind == "f2x":
        return _f2x_source(payload, int(idx))
    if kind == "rational":
        return _rational_source(rest)
    if kind == "bits":
        return _bits_source(rest)
    raise CliError(f"unknown source kind {kind!r}")


def resolve_source(args, presets) -> Source:
    given = [k for k in ("poly", "f2x", "rational", "preset", "bits", "random") if getattr(args, k, None) is not None]
    if len(given) != 1:
        raise CliError("exactly one source is required: --poly, --f2x, --rational, --preset, --bits or --random")
    kind = given[0]
    if kind == "poly":
        return _poly_source(args.poly, args.root)
    if kind == "f2x":
        return _f2x_source(args.f2x, args.root)
    if kind == "rational":
        return _rational_source(args.rational)
    if kind == "bits":
        return _bits_source(args.bits)
    if kind == "random":
        seed = args.seed
        return Source(f"random(seed={seed})", lambda n: (BitString.from_int(random.Random(seed).getrandbits(n), n), None))
    name = args.preset
    if name not in presets:
        raise CliError(f"unknown preset {name!r}; known: {', '.join(sorted(presets))}")
    src = parse_source_spec(presets[name])
    src.label = name
    return src


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(str(e), EXIT_IO) from None


# -- commands ---------------------------------------------------------------


def cmd_generate(args, presets):
    src = resolve_source(args, presets)
    bits, cert = src.make(args.n)
    if cert:
        print(cert, file=sys.stderr)
    _emit(format_bits(bits), args.out)
    return EXIT_OK


def cmd_roots(args, presets):
    n = args.n
    if (args.z2 is None) == (args.f2x is None):
        raise CliError("roots needs exactly one of --z2 / --poly or --f2x")
    lines = []
    if args.z2 is not None:
        h = parse_intpoly(args.z2)
        roots = roots_z2(h, n)
        if h.degree == 2:
            case = classify_quadratic_z2(h)
            lines.append(f"case {case.label}")
        else:
            lines.append(f"degree {h.degree}: lifting tree")
            case = None
        lines.append(f"roots in Z_2: {len(roots)}")
        lines += [f"[{i}] {to_sparse(r)}" for i, r in enumerate(roots)]
        if case is not None and case.nonintegral_root:
            lines.append("second root lies in Q_2 \\ Z_2 (negative valuation)")
    else:
        h = parse_f2quad(args.f2x)
        res = classify_f2(h, n)
        lines.append(f"case {res.label}")
        lines.append(f"roots in F_2[[X]]: {len(res.roots)}")
        lines += [f"[{i}] {r}" for i, r in enumerate(res.roots)]
        if res.rational:
            lines.append("root is rational (eventually periodic sequence)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_profile(bits: BitString, method: str) -> cx.ComplexityProfile:
    lin = cx.berlekamp_massey_profile(bits)
    records = []
    for n in range(1, len(bits) + 1):
        if method == "bruteforce":
            lam, rep = cx.adic_bruteforce(bits, n)
        else:
            lam, rep = cx.adic_lattice(bits, n)
            if method == "auto" and n <= 24 and cx.adic_bruteforce(bits, n) != (lam, rep):
                raise CliError(f"lattice and brute force disagree at N={n}", EXIT_FAIL)
        records.append(cx.ProfileRecord(n, lam, rep, lin[n - 1]))
    prof = cx.ComplexityProfile(records)
    inv = cx.check_profile_invariants(prof)
    if not inv.ok:
        raise CliError(f"profile invariant violated: {inv.first}", EXIT_FAIL)
    return prof


def cmd_profile(args, presets):
    src = resolve_source(args, presets)
    bits, _ = src.make(args.n)
    if args.method == "bruteforce" and args.n > cx.BRUTEFORCE_MAX_N:
        raise CliError(f"brute force is limited to N <= {cx.BRUTEFORCE_MAX_N}")
    _emit(build_profile(bits, args.method).to_csv(), args.out)
    return EXIT_OK


def cmd_verify(args, presets):
    suite = verify.SUITES[args.suite]
    kwargs = {"seed": args.seed, "full": args.full} if args.suite == "oracles" else {}
    failed = None
    for check in suite(**kwargs):
        status = "PASS" if check.ok else ("WARN" if check.soft else "FAIL")
        line = f"{status} {check.name}"
        if not check.ok:
            line += f": {check.detail}"
        print(line)
        if not check.ok and not check.soft and failed is None:
            failed = check
    if failed:
        print(f"first counterexample: {failed.name}: {failed.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_fcsr(args, presets):
    try:
        taps = tuple(int(t) for t in args.taps.split(","))
        reg = tuple(int(t) for t in args.register.split(","))
        st = FcsrState(taps, reg, args.carry)
    except ValueError as e:
        raise CliError(f"bad FCSR description: {e}") from None
    if not args.any_carry and not 0 <= args.carry < max(sum(taps), 1):
        raise CliError(f"carry {args.carry} outside [0, {max(sum(taps), 1)}); pass --any-carry to allow it")
    bits = fcsr_run(st, args.n)
    p, q = st.rational()
    print(f"output = {p}/{q} in Z_2 (connection integer {st.connection_integer()})", file=sys.stderr)
    _emit(format_bits(bits), args.out)
    return EXIT_OK


# -- argument handling ------------------------------------------------------


def read_config(path: str) -> tuple[dict, dict]:
    """``key = value`` lines; ``preset.NAME = kind:payload[@root]`` adds presets."""
    defaults, presets = {}, {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise CliError(str(e), EXIT_IO) from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{num}: expected key = value")
        key, val = key.strip(), val.strip()
        if key.startswith("preset."):
            presets[key[len("preset."):]] = val
        elif key in ("n", "root", "seed"):
            defaults[key] = int(val)
        elif key in ("method", "out"):
            defaults[key] = val
        else:
            raise CliError(f"{path}:{num}: unknown key {key!r}")
    return defaults, presets


def _add_source_flags(p):
    g = p.add_argument_group("source (exactly one)")
    g.add_argument("--poly", metavar="EXPR", help="integer polynomial in Y, e.g. 'Y^2-17'")
    g.add_argument("--f2x", metavar="EXPR", help="quadratic over F_2[X], e.g. 'XY^2+Y+X'")
    g.add_argument("--rational", metavar="F/Q", help="rational with odd denominator")
    g.add_argument("--preset", metavar="NAME", help=f"one of {', '.join(PRESETS)} or a config preset")
    g.add_argument("--bits", metavar="FILE", help="bit file")
    g.add_argument("--random", action="store_const", const=True, help="random bits from --seed")
    p.add_argument("--root", type=int, help="root index (2-adic digit order, default 0)")
    p.add_argument("--seed", type=int, help="default 0")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoadic", description=__doc__.splitlines()[0])
    parser.add_argument("--config", metavar="FILE", help="key = value defaults and presets")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the first N bits of a sequence")
    _add_source_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("roots", help="classify a quadratic and list its roots")
    p.add_argument("--z2", "--poly", dest="z2", metavar="EXPR")
    p.add_argument("--f2x", metavar="EXPR")
    p.add_argument("--n", type=int, help="precision (default 10)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("profile", help="CSV of Lambda(N), rational rep and L(N)")
    _add_source_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=["bruteforce", "lattice", "auto"], help="default auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run a named check suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--seed", type=int)
    p.add_argument("--full", action="store_true", help="oracles: full-size sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fcsr", help="run a feedback-with-carry shift register")
    p.add_argument("--taps", required=True, help="a_0,...,a_(L-1)")
    p.add_argument("--register", required=True, help="s_0,...,s_(L-1)")
    p.add_argument("--carry", type=int, default=0)
    p.add_argument("--any-carry", action="store_true", help="allow carries outside [0, sum a_j)")
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fcsr)
    return parser


_VALUE_FLAGS = {"--rational", "--poly", "--z2", "--f2x", "--carry"}

# applied after the config file, so flags > config > these
_FALLBACKS = {"root": 0, "seed": 0, "method": "auto"}


def _glue_negative_values(argv):
    """Turn ``--rational -1/1`` into ``--rational=-1/1`` so argparse keeps the value."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    presets = dict(PRESETS)
    try:
        if args.config:
            defaults, extra = read_config(args.config)
            presets.update(extra)
            for key, val in defaults.items():
                if hasattr(args, key) and getattr(args, key) is None:
                    setattr(args, key, val)
        for key, val in _FALLBACKS.items():
            if hasattr(args, key) and getattr(args, key) is None:
                setattr(args, key, val)
        if args.command == "roots" and args.n is None:
            args.n = 10
        if hasattr(args, "n") and args.command in ("generate", "profile", "fcsr"):
            if args.n is None or args.n < 1:
                raise CliError("--n must be a positive integer")
        return args.func(args, presets)
    except CliError as e:
        print(f"twoadic: {e}", file=sys.stderr)
        return e.code
    except (ParseError, ValueError, ArithmeticError) as e:
        print(f"twoadic: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
