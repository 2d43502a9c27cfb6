import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from twoadic.dyadic import (
    DyadicInt,
    EvenDenominator,
    EvenUnit,
    IntPoly,
    LiftingTreeOverflow,
    NotASimpleRoot,
    classify_quadratic_z2,
    dy_add,
    dy_inv,
    dy_mul,
    eval_mod2k,
    hensel_lift_simple,
    is_square_2adic,
    parse_dyadic,
    rational_expand,
    roots_z2,
    sqrt_2adic,
    to_bitstring,
    to_sparse,
)

D = DyadicInt


def quad(a, b, c):
    return IntPoly((c, b, a))


# -- arithmetic -------------------------------------------------------------


def test_add_examples():
    assert dy_add(D(1, 8), D(1, 8)) == D(2, 8)
    assert dy_add(D(255, 8), D(1, 8)) == D(0, 8)
    assert dy_add(D(745, 10), D(279, 10)) == D(0, 10)


def test_mul_examples():
    assert dy_mul(D(745, 10), D(745, 10)) == D(17, 10)
    assert dy_mul(D(0, 6), D(37, 6)) == D(0, 6)
    assert dy_mul(D(181, 10), D(181, 10)) == D(1017, 10)
    assert D(1017, 10).signed() == -7


def test_inv_examples():
    assert dy_inv(D(1, 5)) == D(1, 5)
    assert dy_inv(D(3, 4)) == D(11, 4)
    with pytest.raises(EvenUnit):
        dy_inv(D(2, 4))


def test_mixed_precision_takes_minimum():
    assert dy_add(D(7, 3), D(1, 8)) == D(0, 3)
    assert (D(5, 4) - 6) == D(15, 4)
    assert -D(1, 8) == D(255, 8)


def test_negative_ints_enter_as_residues():
    assert D.from_int(-1, 8) == D(255, 8)
    assert D(-1, 8).value == 255


ks = st.integers(1, 80)
ints = st.integers(-(1 << 90), 1 << 90)


@given(ints, ints, ks)
def test_ring_ops_match_big_ints(x, y, k):
    mod = 1 << k
    X, Y = D.from_int(x, k), D.from_int(y, k)
    assert dy_add(X, Y).value == (x + y) % mod
    assert dy_mul(X, Y).value == (x * y) % mod
    assert (X - Y).value == (x - y) % mod


@given(ints, ks)
def test_inverse(x, k):
    x = 2 * x + 1
    X = D.from_int(x, k)
    assert dy_mul(X, dy_inv(X)) == D(1, k)


@given(ints, ints, st.integers(2, 80), st.data())
def test_truncation_consistency(x, y, k, data):
    k2 = data.draw(st.integers(1, k - 1))
    X, Y = D.from_int(x, k), D.from_int(y, k)
    assert dy_mul(X, Y).truncate(k2) == dy_mul(X.truncate(k2), Y.truncate(k2))
    assert dy_add(X, Y).truncate(k2) == dy_add(X.truncate(k2), Y.truncate(k2))
    if x % 2:
        assert dy_inv(X).truncate(k2) == dy_inv(X.truncate(k2))


def test_valuation_and_bits():
    x = D(0b101000, 8)
    assert x.valuation() == 3
    assert D(0, 8).valuation() is None
    assert x.bits() == [0, 0, 0, 1, 0, 1, 0, 0]
    with pytest.raises(IndexError):
        x.bit(8)
    with pytest.raises(ValueError):
        x.truncate(9)


# -- rationals --------------------------------------------------------------


def test_rational_expand():
    assert rational_expand(-1, 1, 8) == D(255, 8)
    assert rational_expand(1, 1, 8) == D(1, 8)
    third = rational_expand(1, 3, 8)
    assert third.value == 171
    assert third.bits() == [1, 1, 0, 1, 0, 1, 0, 1]
    with pytest.raises(EvenDenominator):
        rational_expand(1, 4, 8)


@given(ints, st.integers(-(1 << 40), 1 << 40), ks)
def test_rational_expand_solves_congruence(f, q, k):
    q = 2 * q + 1
    x = rational_expand(f, q, k)
    assert (q * x.value - f) % (1 << k) == 0


# -- square roots -----------------------------------------------------------


def test_sqrt_examples():
    r17 = sqrt_2adic(17, 10)
    assert r17[0] == D(745, 10)
    assert to_sparse(r17[0]) == "1 + 2^3 + 2^5 + 2^6 + 2^7 + 2^9 + O(2^10)"
    assert r17[1] == D(279, 10)
    assert sqrt_2adic(-7, 10)[0] == D(181, 10)
    assert to_sparse(D(181, 10)) == "1 + 2^2 + 2^4 + 2^5 + 2^7 + O(2^10)"
    assert sqrt_2adic(2, 10) == []
    assert sqrt_2adic(2, 3) == []


def test_sqrt_minus_23_via_case_1_1_root():
    # (2 + sqrt(-23))/3 = 357 mod 2^10, so sqrt(-23) = 3*357 - 2
    assert (3 * 357 - 2) == 1069
    assert (1069 * 1069 + 23) % 1024 == 0
    roots = {r.value for r in sqrt_2adic(-23, 10)}
    assert 1069 % 1024 in roots


def test_negative_sqrt17_is_complement():
    pos, neg = sqrt_2adic(17, 10)
    assert neg.value == (pos.value ^ 0x3FF) | 1


@given(st.integers(-(1 << 30), 1 << 30), st.integers(1, 60))
def test_sqrt_criterion_and_squares(D_, k):
    roots = sqrt_2adic(D_, k)
    assert bool(roots) == is_square_2adic(D_)
    for r in roots:
        assert (r.value * r.value - D_) % (1 << k) == 0


@given(st.integers(0, 6), st.integers(-(1 << 30), 1 << 30), st.integers(2, 60))
def test_canonical_root_odd_part_is_1_mod_4(m, t, k):
    D_ = 4 ** m * (8 * t + 1)
    r = sqrt_2adic(D_, k)[0]
    v = r.valuation()
    assume(v is not None and v + 2 <= k)
    assert (r.value >> v) % 4 == 1


@given(st.integers(1, 1 << 30), st.integers(1, 40))
def test_sqrt_of_square(y, k):
    roots = sqrt_2adic(y * y, k)
    assert D.from_int(y, k) in roots or D.from_int(-y, k) in roots


# -- Hensel / roots ---------------------------------------------------------


def test_hensel_examples():
    h = quad(1, 5, 2)
    assert hensel_lift_simple(h, 0, 10) == D(882, 10)
    assert hensel_lift_simple(h, 1, 10) == D(137, 10)
    assert hensel_lift_simple(quad(2, 1, 1), 1, 10) == D(45, 10)
    with pytest.raises(NotASimpleRoot):
        hensel_lift_simple(quad(1, 0, -17), 1, 10)
    with pytest.raises(NotASimpleRoot):
        hensel_lift_simple(quad(1, 1, 1), 0, 10)


def test_roots_examples():
    assert roots_z2(quad(3, -4, 9), 10) == [D(357, 10), D(327, 10)]
    assert roots_z2(quad(1, 1, 1), 10) == []
    assert roots_z2(quad(2, 1, 1), 10) == [D(45, 10)]
    assert roots_z2(IntPoly((-5, 1)), 4) == [D(5, 4)]
    assert roots_z2(quad(1, 5, 2), 10) == [D(882, 10), D(137, 10)]
    assert roots_z2(quad(1, 0, -17), 10) == [D(745, 10), D(279, 10)]


def test_printed_expansions():
    got = [to_sparse(r) for r in roots_z2(quad(3, -4, 9), 10)]
    assert got == ["1 + 2^2 + 2^5 + 2^6 + 2^8 + O(2^10)", "1 + 2 + 2^2 + 2^6 + 2^8 + O(2^10)"]
    got = [to_sparse(r) for r in roots_z2(quad(1, 5, 2), 10)]
    assert got == ["2 + 2^4 + 2^5 + 2^6 + 2^8 + 2^9 + O(2^10)", "1 + 2^3 + 2^7 + O(2^10)"]


def test_case_labels():
    assert classify_quadratic_z2(quad(3, -4, 9)).label == "1.1"
    assert classify_quadratic_z2(quad(2, 0, 1)).label == "1.2"
    assert classify_quadratic_z2(quad(1, 1, 1)).label == "2.1.1"
    assert classify_quadratic_z2(quad(1, 5, 2)).label == "2.1.2"
    case = classify_quadratic_z2(quad(2, 1, 1))
    assert (case.label, case.root_count, case.nonintegral_root) == ("2.2", 1, True)
    # content is removed first: 2Y^2 - 34 behaves as Y^2 - 17
    assert classify_quadratic_z2(quad(2, 0, -34)).label == "1.1"
    assert roots_z2(quad(2, 0, -34), 10) == roots_z2(quad(1, 0, -17), 10)


def test_eval_mod2k():
    assert eval_mod2k(quad(1, 0, -17), D(745, 10)) == D(0, 10)
    x = D(123, 9)
    assert eval_mod2k(IntPoly((0, 1)), x) == x
    assert 2 * 45 ** 2 + 45 + 1 == 4096
    assert eval_mod2k(quad(2, 1, 1), D(45, 10)) == D(0, 10)


def test_higher_degree_roots():
    # (Y - 3)(Y + 5)(Y^2 + Y + 1): two integer roots, quadratic factor has none
    h = IntPoly((-15, -13, -12, 3, 1))
    assert {r.value for r in roots_z2(h, 12)} == {3, (-5) % 4096}
    cube = IntPoly((-7, 0, 0, 1))  # Y^3 = 7 has one root, 7 = 1 + 2 + 4
    (r,) = roots_z2(cube, 20)
    assert pow(r.value, 3, 1 << 20) == 7


def test_lifting_tree_cap():
    # (Y - 1)^8 has every odd residue as an approximate root at low levels
    h = IntPoly((1, -8, 28, -56, 70, -56, 28, -8, 1))
    with pytest.raises(LiftingTreeOverflow):
        roots_z2(h, 30)


def _brute_roots(h, J):
    """All residues r mod 2^J with h(r) = 0 mod 2^J, grown one bit at a time."""
    level = [r for r in (0, 1) if h(r) % 2 == 0]
    for j in range(1, J):
        mod = 1 << (j + 1)
        level = [c for r in level for c in (r, r + (1 << j)) if h(c) % mod == 0]
    return level


small = st.integers(-8, 8)


@given(small, small, small)
def test_quadratic_roots_match_bruteforce(a, b, c):
    assume(a != 0)
    h = quad(a, b, c)
    assume(h.is_primitive())
    j, J = 4, 18
    want = {r % (1 << j) for r in _brute_roots(h, J)}
    got = {r.value for r in roots_z2(h, j)}
    assert got == want


@given(small, small, small)
def test_quadratic_root_counts(a, b, c):
    assume(a != 0)
    h = quad(a, b, c)
    assume(h.is_primitive())
    disc = b * b - 4 * a * c
    # roots are distinct mod 2^4 when v(disc) <= 4
    assume(disc != 0 and (disc & -disc).bit_length() - 1 <= 4)
    case = classify_quadratic_z2(h)
    brute = {r % 16 for r in _brute_roots(h, 16)}
    assert len(brute) == case.root_count
    if b % 2 == 0:
        assert case.root_count in ((0, 2) if a % 2 else (0,))
    elif a % 2:
        assert case.root_count == (0 if c % 2 else 2)
    else:
        assert case.root_count == 1


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5))
def test_general_degree_matches_bruteforce(coeffs):
    assume(any(coeffs[1:]))
    h = IntPoly(tuple(coeffs))
    assume(h.degree >= 1 and h.is_primitive())
    assume(all(h(r) != 0 for r in range(-64, 65)))  # no repeated integer-ish clusters
    try:
        got = {r.value for r in roots_z2(h, 4)}
    except LiftingTreeOverflow:
        return
    want = {r % 16 for r in _brute_roots(h, 20)}
    assert got == want


@given(small, small, small, st.integers(2, 40), st.data())
def test_roots_truncate_consistently(a, b, c, k, data):
    assume(a != 0)
    h = quad(a, b, c)
    assume(h.is_primitive())
    k2 = data.draw(st.integers(1, k - 1))
    hi = {r.truncate(k2).value for r in roots_z2(h, k)}
    lo = {r.value for r in roots_z2(h, k2)}
    assert hi == lo


@given(small, small, small, st.integers(1, 64))
def test_roots_vanish(a, b, c, k):
    assume(a != 0)
    h = quad(a, b, c)
    assume(h.is_primitive())
    for r in roots_z2(h, k):
        assert eval_mod2k(h, r).value == 0


# -- text forms -------------------------------------------------------------


def test_text_forms():
    x = D(745, 10)
    assert to_bitstring(x) == "1001011101"
    assert str(x) == "1001011101"
    assert parse_dyadic("1001011101") == x
    assert parse_dyadic("1 + 2^3 + 2^5 + 2^6 + 2^7 + 2^9 + O(2^10)") == x
    assert parse_dyadic("2^1 + 2^4", 6) == D(18, 6)
    assert to_sparse(D(0, 4)) == "O(2^4)"
    with pytest.raises(ValueError):
        parse_dyadic("1 + 2^3")
    with pytest.raises(ValueError):
        parse_dyadic("1 + 3^2", 5)


@given(st.integers(1, 100), st.data())
def test_text_round_trip(k, data):
    x = D(data.draw(st.integers(0, (1 << k) - 1)), k)
    assert parse_dyadic(to_bitstring(x)) == x
    assert parse_dyadic(to_sparse(x)) == x


def test_intpoly_helpers():
    h = IntPoly((9, -4, 3))
    assert h.degree == 2
    assert h.height_sum == 16
    assert str(h) == "3Y^2-4Y+9"
    assert IntPoly((4, 0, 2)).content == 2
    assert IntPoly((4, 0, 2)).primitive_part() == IntPoly((2, 0, 1))
    assert h.derivative() == IntPoly((-4, 6))
    assert h(2) == 13
