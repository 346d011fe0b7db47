from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.errors import InsufficientTruncation, PoleAtT
from qmzv.exact import (
    LaurentSeries,
    RatFunc,
    bernoulli,
    exp_ratio_power,
    laurent_add,
    laurent_constant_term,
    laurent_mul,
    parse_poly,
    pole_part,
    ratfunc_add,
    ratfunc_eval,
    ratfunc_mul,
    ratfunc_neg,
    regular_part,
)
from qmzv.exact.ratfunc import format_poly, poly_mul, ratfunc_dot, ratfunc_sum, real_roots_rational

T = RatFunc.T


def bernoulli_oracle(n):
    """B_n with B_1 = +1/2 from sum_{j<=n} C(n+1, j) B_j = n + 1 (the e^t t/(e^t-1) recurrence)."""
    bs = []
    for m in range(n + 1):
        acc = Fraction(m + 1) - sum(comb(m + 1, j) * bs[j] for j in range(m))
        bs.append(acc / (m + 1))
    return bs[n]


# --------------------------------------------------------------------------
# Bernoulli numbers
# --------------------------------------------------------------------------

def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_matches_recurrence_oracle():
    for n in range(30):
        assert bernoulli(n) == bernoulli_oracle(n), n


def test_bernoulli_odd_vanish():
    assert all(bernoulli(n) == 0 for n in range(3, 26, 2))


# --------------------------------------------------------------------------
# rational functions
# --------------------------------------------------------------------------

def test_ratfunc_examples():
    f = ratfunc_add(T.inverse(), ratfunc_neg((T + 1).inverse()))
    assert f == RatFunc((1,), (0, 1, 1))
    g = RatFunc.from_scalar(3) / (T + 2)
    assert ratfunc_add(g, RatFunc.ZERO) == g
    assert ratfunc_mul(T / (T + 1), (T + 1) / T) == RatFunc.ONE


def test_ratfunc_canonical_form():
    f = RatFunc((2, 4), (6, 0, -2))  # (2+4t)/(6-2t^2)
    assert f.den[-1] > 0
    assert f == RatFunc((-1, -2), (-3, 0, 1))
    assert hash(f) == hash(RatFunc((-1, -2), (-3, 0, 1)))
    # a common factor cancels
    assert (T * T - 1) / (T - 1) == T + 1


def test_ratfunc_eval():
    f = RatFunc((1,), (0, 1, 1))
    assert ratfunc_eval(f, 1) == Fraction(1, 2)
    f13 = RatFunc((31, 166, 166), (24192, 129024, 129024))
    assert f13.evaluate(1) == Fraction(121, 94080)
    with pytest.raises(PoleAtT):
        ratfunc_eval((4 * T + 1).inverse(), Fraction(-1, 4))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RatFunc.ONE / RatFunc.ZERO


def test_format_and_parse_roundtrip():
    p = (31, -166, 0, 166)
    assert format_poly(p) == "166t^3-166t+31"
    assert parse_poly(format_poly(p)) == p
    f = RatFunc((31, 166, 166), (24192, 129024, 129024))
    assert str(f) == "(166t^2+166t+31)/(129024t^2+129024t+24192)"


def test_real_roots_rational():
    # (2t - 3)(5t + 7)(t^2 + 1)
    p = poly_mul(poly_mul((-3, 2), (7, 5)), (1, 0, 1))
    assert sorted(real_roots_rational(p)) == [Fraction(-7, 5), Fraction(3, 2)]


def test_kronecker_multiplication_matches_schoolbook():
    import random

    rng = random.Random(5)
    for size in (5, 30, 80):
        a = tuple(rng.randint(-10 ** 30, 10 ** 30) for _ in range(size))
        b = tuple(rng.randint(-10 ** 5, 10 ** 5) for _ in range(size + 3))
        school = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                school[i + j] += x * y
        assert list(poly_mul(a, b)) == school


small_int = st.integers(-6, 6)
poly = st.lists(small_int, min_size=1, max_size=3).map(tuple)


@st.composite
def ratfuncs(draw):
    num = draw(poly)
    a, b = draw(st.integers(0, 4)), draw(st.integers(1, 3))
    den = poly_mul((a, b), draw(st.sampled_from([(1,), (2,), (1, 1), (3, 2)])))
    return RatFunc(num, den)


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RatFunc.ZERO


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small_int, ratfuncs()), min_size=1, max_size=6))
def test_batched_sums_match_pairwise(pairs):
    expect = RatFunc.ZERO
    for c, f in pairs:
        expect = expect + f * c
    assert ratfunc_dot([(RatFunc.from_scalar(c), f) for c, f in pairs]) == expect
    assert ratfunc_sum([f * c for c, f in pairs]) == expect


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7))
def test_evaluation_is_a_morphism(f, x):
    g = f * f + f
    assert g.evaluate(x) == f.evaluate(x) ** 2 + f.evaluate(x)


# --------------------------------------------------------------------------
# Laurent series
# --------------------------------------------------------------------------

def series(d, hi=None):
    return LaurentSeries.from_dict({k: Fraction(v) for k, v in d.items()}, hi)


def test_add_truncates_at_min():
    a = series({0: 1, 1: 2}, hi=5)
    b = series({0: 3}, hi=3)
    assert laurent_add(a, b).hi == 3
    assert (a - a).agrees_with(LaurentSeries.zero())
    s = laurent_add(series({-2: Fraction(1, 2), 0: Fraction(-1, 12)}, 4), series({0: Fraction(1, 12)}))
    assert s.to_dict() == {-2: Fraction(1, 2)}


def test_mul_truncation_law():
    a = series({-1: 1}, hi=3)
    b = series({1: 1}, hi=4)
    p = laurent_mul(a, b)
    assert p.coeff(0) == 1
    assert p.hi == min(3 + 1, 4 - 1)
    assert laurent_mul(a, LaurentSeries.one()) == a


def test_mul_worked_product():
    half = series({-2: Fraction(1, 2)})
    psi3 = series({-4: Fraction(1, 60), 0: Fraction(1, 120), 2: Fraction(-41, 1008), 4: Fraction(2203, 28800)}, 4)
    p = laurent_mul(half, psi3)
    assert p.coeff(-6) == Fraction(1, 120)
    assert p.coeff(-2) == Fraction(1, 240)
    assert p.hi == 2


def test_mul_never_reads_unknown_coefficients():
    # changing coefficients beyond hi must not change the known part of the product
    a1 = series({-2: 1, 0: 3, 1: 5}, hi=1)
    a2 = LaurentSeries([1, 0, 3, 5, 99, 77], -2, 3).truncate(1)
    b = series({-3: 2, -1: 7, 0: 1, 2: 4}, hi=2)
    assert laurent_mul(a1, b) == laurent_mul(a2, b)
    c1 = series({-3: 2, -1: 7, 0: 1, 2: 4, 3: 11}, hi=3)
    assert laurent_mul(a1, b).agrees_with(laurent_mul(a1, c1))


def test_constant_term():
    s = series({0: Fraction(-5377, 282240), 1: Fraction(1, 84)}, 1)
    assert laurent_constant_term(s) == Fraction(-5377, 282240)
    assert laurent_constant_term(series({-2: Fraction(1, 2)}, 0)) == 0
    with pytest.raises(InsufficientTruncation):
        laurent_constant_term(series({-2: 1}, -1))


def test_pole_part_examples():
    s = series({-2: Fraction(1, 2), 0: Fraction(-1, 12), 2: Fraction(7, 720)}, 4)
    assert pole_part(s).to_dict() == {-2: Fraction(1, 2)}
    assert not pole_part(series({0: 1, 3: 2}, 5))
    psi13 = series({-6: Fraction(3, 560), -5: Fraction(1, 560), -2: Fraction(47, 11200),
                    0: Fraction(-5377, 282240), 1: Fraction(1, 84)}, 1)
    assert pole_part(psi13).to_dict() == {-6: Fraction(3, 560), -5: Fraction(1, 560), -2: Fraction(47, 11200)}


@settings(max_examples=60, deadline=None)
@given(st.integers(-5, 1), st.lists(st.fractions(max_denominator=9), min_size=1, max_size=8), st.integers(0, 3))
def test_pole_and_regular_parts_reassemble(lo, coeffs, extra):
    s = LaurentSeries(coeffs, lo, max(lo + len(coeffs) - 1, -1) + extra)
    assert pole_part(s) + regular_part(s) == s


def test_exp_ratio_power():
    assert exp_ratio_power(0, 4).to_dict() == {0: 1}
    one = exp_ratio_power(1, 3)
    assert [one.coeff(d) for d in range(4)] == [1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]
    assert exp_ratio_power(2, 3).coeff(1) == 1
    # negative powers invert
    prod = exp_ratio_power(3, 6) * exp_ratio_power(-3, 6)
    assert prod.agrees_with(LaurentSeries.one())


def test_format_series():
    s = series({-2: Fraction(1, 2), 0: Fraction(-1, 12), 2: Fraction(7, 720), 4: Fraction(-31, 30240)}, 4)
    assert s.format(show_order=False) == "1/2 z^-2  -1/12  7/720 z^2  -31/30240 z^4"
    assert s.format().endswith("O(z^5)")


def test_pole_part_needs_the_residue_degree():
    with pytest.raises(InsufficientTruncation):
        pole_part(series({-3: 1}, -2))
