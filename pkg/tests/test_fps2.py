import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from twoadic.fps2 import (
    F2Poly,
    F2Series,
    F2YQuad,
    NonUnit,
    NotLiftable,
    NotPrimitive,
    PrecisionExhausted,
    classify_f2,
    clmul,
    eval_quad,
    format_sparse,
    hensel_lift_series,
    parse_poly,
    parse_series,
    ps_inv,
    ps_mul,
    ps_sqrt,
    roots_f2series,
    to_bitstring,
)
from twoadic.polyparse import parse_f2quad

S = F2Series


def ser(text, prec=None):
    return parse_series(text, prec)


def quad(text):
    return parse_f2quad(text)


# -- series arithmetic ------------------------------------------------------


def test_mul_examples():
    assert ps_mul(ser("1 + X", 8), ser("1 + X", 8)) == ser("1 + X^2", 8)
    sq = ps_mul(ser("X + X^3 + X^7", 10), ser("X + X^3 + X^7", 10))
    assert sq == ser("X^2 + X^6 + O(X^10)")
    geo = S((1 << 12) - 1, 12)
    assert ps_mul(geo, ser("1 + X", 12)) == S(1, 12)


def test_inv_examples():
    assert ps_inv(S(1, 5)) == S(1, 5)
    assert ps_inv(ser("1 + X", 6)) == S(0b111111, 6)
    assert ps_inv(ser("1 + X^3", 7)) == ser("1 + X^3 + X^6", 7)
    with pytest.raises(NonUnit):
        ps_inv(ser("X", 4))


def test_sqrt_examples():
    r = ps_sqrt(ser("X^2 + X^4", 5))
    assert r == ser("X + X^2", 3)
    assert ps_sqrt(S(1, 4)) == S(1, 2)
    assert ps_sqrt(ser("X", 2)) is None


series = st.integers(1, 64).flatmap(lambda p: st.builds(S, st.integers(0, (1 << p) - 1), st.just(p)))


@given(series)
def test_frobenius(x):
    sq = ps_mul(x, x)
    assert all(sq.coeff(i) == 0 for i in range(1, sq.prec, 2))
    back = ps_sqrt(sq)
    assert back == x.truncate(back.prec)


@given(series)
def test_inverse_multiplies_to_one(x):
    x = S(x.bits | 1, x.prec)
    assert ps_mul(x, ps_inv(x)) == S(1, x.prec)


@given(series, series)
def test_mul_commutes_and_truncates(x, y):
    p = min(x.prec, y.prec)
    assert ps_mul(x, y) == ps_mul(y, x)
    assert ps_mul(x, y).prec == p
    for q in (1, p // 2 or 1):
        assert ps_mul(x, y).truncate(q) == ps_mul(x.truncate(q), y.truncate(q))


@given(st.integers(0, 1 << 40), st.integers(0, 1 << 40))
def test_clmul_against_schoolbook(a, b):
    want = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            want ^= a << i
    assert clmul(a, b) == want


def test_poly_basics():
    p = parse_poly("1 + X + X^3")
    assert p.degree == 3
    assert F2Poly(0).degree == -1
    assert (p * p).bits == parse_poly("1 + X^2 + X^6").bits
    assert p.sqrt() is None
    assert (p * p).sqrt() == p
    q, r = divmod(parse_poly("X^4 + 1"), parse_poly("X + 1"))
    assert q * parse_poly("X + 1") + r == parse_poly("X^4 + 1")
    assert parse_poly("X^2 + 1").gcd(parse_poly("X + 1")) == parse_poly("X + 1")
    assert str(p) == "1 + X + X^3"


# -- Hensel -----------------------------------------------------------------


def test_hensel_series_examples():
    assert hensel_lift_series(quad("XY^2+Y+X"), 0, 10) == ser("X + X^3 + X^7 + O(X^10)")
    assert hensel_lift_series(quad("XY^2+Y+1"), 1, 10) == ser("1 + X + X^3 + X^7 + O(X^10)")
    assert hensel_lift_series(quad("(1+X)Y^2+Y+X^2"), 0, 10) == ser("X^2 + X^4 + X^5 + X^8 + X^9 + O(X^10)")
    with pytest.raises(NotLiftable):
        hensel_lift_series(quad("XY^2+Y+X"), 1, 10)
    with pytest.raises(NotLiftable):
        hensel_lift_series(quad("Y^2+X"), 0, 10)


@given(st.integers(0, 255), st.integers(0, 127), st.integers(0, 255), st.integers(2, 40), st.data())
def test_hensel_prefix_stable(a, b1, c, prec, data):
    h = F2YQuad.from_bits(a, (b1 << 1) | 1, c)
    a0 = (c & 1) if not a & 1 else data.draw(st.sampled_from([0, 1]))
    assume(((a & 1) * a0 + a0 + (c & 1)) % 2 == 0)
    full = hensel_lift_series(h, a0, prec)
    p2 = data.draw(st.integers(1, prec))
    assert hensel_lift_series(h, a0, p2) == full.truncate(p2)
    assert eval_quad(h, full).bits == 0


# -- root classification ----------------------------------------------------


EXAMPLES = [
    ("XY^2+Y+X", 10, ["X + X^3 + X^7"], "3"),
    ("XY^2+Y+1", 10, ["1 + X + X^3 + X^7"], "3"),
    ("(1+X)Y^2+Y+X^2", 10, ["X^2 + X^4 + X^5 + X^8 + X^9", "1 + X + X^3 + X^6 + X^7"], "4"),
    ("(1+X^2+X^4)Y^2+X^6", 11, ["X^3 + X^4 + X^6 + X^7 + X^9 + X^10"], "5.2"),
    ("(X+1)^3Y^2+(X+1)^2Y+X", 11, ["X + X^2 + X^4 + X^7 + X^8", "1 + X^3 + X^5 + X^6 + X^9 + X^10"], "4"),
    ("Y^2+Y+1", 10, [], "2"),
]


@pytest.mark.parametrize("text,prec,want,label", EXAMPLES)
def test_root_examples(text, prec, want, label):
    res = classify_f2(quad(text), prec)
    assert [r.bits for r in res.roots] == [ser(w, prec).bits for w in want]
    assert res.label == label
    for r in res.roots:
        assert eval_quad(quad(text), r).bits == 0


def test_case_5_2_root_is_rational():
    res = classify_f2(quad("(1+X^2+X^4)Y^2+X^6"), 30)
    assert res.rational
    # (X^3 + X^4) * sum X^(3n)
    want = 0
    for n in range(0, 30, 3):
        want ^= 0b11000 << n
    assert res.roots[0] == S(want, 30)


def test_case_5_1_worked_example_has_no_root():
    res = classify_f2(quad("(1+X^2)Y^2+X^5Y+X^2"), 10)
    assert res.roots == ()
    assert res.label.startswith("5.1")


def test_case_5_1_finds_roots_the_X_power_m_shift_misses():
    # Y^2 + X^2 Y + X^2 + X^3 = (Y + X)(Y + X + X^2); roots differ at X^2 only
    h = quad("Y^2+X^2Y+X^2+X^3")
    got = roots_f2series(h, 12)
    assert [r.bits for r in got] == [0b10, 0b110]
    for r in got:
        assert eval_quad(h, r).bits == 0


def test_case_4_roots_sum_to_b_over_a():
    h = quad("(1+X)Y^2+Y+X^2")
    r1, r2 = roots_f2series(h, 10)
    assert (r1 + r2).bits == (1 << 10) - 1
    assert r1 + r2 == ps_mul(h.b.series(10), ps_inv(h.a.series(10)))


def test_preconditions():
    with pytest.raises(NotPrimitive):
        classify_f2(quad("XY^2+X"), 5)
    with pytest.raises(PrecisionExhausted):
        classify_f2(quad("XY^2+Y+X"), 0)
    with pytest.raises(ValueError):
        F2YQuad.from_bits(0, 0, 0)


def _brute_roots(h, J):
    level = [0, 1]
    level = [r for r in level if eval_quad(h, S(r, 1)).bits == 0]
    for j in range(1, J):
        level = [z for r in level for z in (r, r | 1 << j) if eval_quad(h, S(z, j + 1)).bits == 0]
    return level


polys = st.integers(0, 15)


@given(polys, polys, polys)
def test_roots_match_bruteforce(a, b, c):
    h = F2YQuad.from_bits(a, b, c) if a or b or c else None
    assume(h is not None and h.is_primitive())
    assume(b == 0 or (b & -b).bit_length() - 1 <= 2)
    j, J = 5, 16
    want = sorted({r & ((1 << j) - 1) for r in _brute_roots(h, J)})
    got = sorted(r.bits for r in roots_f2series(h, j))
    assert got == want


@given(polys, polys, polys, st.integers(1, 40))
def test_returned_roots_vanish(a, b, c, prec):
    assume(a or b or c)
    h = F2YQuad.from_bits(a, b, c)
    assume(h.is_primitive())
    for r in roots_f2series(h, prec):
        assert r.prec == prec
        assert eval_quad(h, r).bits == 0


@pytest.mark.parametrize("triple", [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
def test_counts_by_constant_terms(triple):
    # every primitive quadratic with coefficient degree < 3 and this triple
    seen = set()
    for a in range(8):
        for b in range(8):
            for c in range(8):
                if (a & 1, b & 1, c & 1) != triple or not (a or b or c):
                    continue
                h = F2YQuad.from_bits(a, b, c)
                if not h.is_primitive():
                    continue
                n = len(roots_f2series(h, 8))
                if triple in ((0, 0, 1), (1, 1, 1)):
                    assert n == 0 == len(_brute_roots(h, 1))
                elif triple[1] == 1 and triple[0] == 0:
                    assert n == 1
                elif triple == (1, 1, 0):
                    assert n == 2
                seen.add(n)
    if triple == (0, 0, 0):
        assert seen == set()  # never primitive


# -- text forms -------------------------------------------------------------


def test_text_forms():
    x = ser("X + X^3 + X^7 + O(X^10)")
    assert str(x) == "X + X^3 + X^7 + O(X^10)"
    assert to_bitstring(x) == "0101000100"
    assert ser("0101000100") == x
    assert format_sparse(0) == "0"
    assert str(S(0, 3)) == "O(X^3)"
    with pytest.raises(ValueError):
        ser("1 + X^3")
    with pytest.raises(ValueError):
        ser("1 + X^12 + O(X^10)")


@given(series)
def test_text_round_trip(x):
    assert ser(to_bitstring(x)) == x
    assert ser(str(x)) == x
