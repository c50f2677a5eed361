import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stirpadic.padic import (
    INFINITE,
    DigitVector,
    anton_epsilon,
    binomial,
    binomial_residue,
    carry_count,
    digit_sum,
    digit_sum_successor,
    digits,
    epsilon_factorial,
    epsilon_factorial_p_shift,
    epsilon_factorial_single_digit,
    is_prime,
    lucas_residue,
    mod_p,
    neg_binomial,
    nu,
    nu_binomial,
    nu_factorial,
    nu_or_inf,
    unit_residue,
    val_unit,
)

PRIMES = (2, 3, 5, 7)
primes = st.sampled_from(PRIMES)


def naive_nu(n, p):
    """Count factors of p one division at a time."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def naive_digits(n, p):
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


# -- examples ----------------------------------------------------------------

@pytest.mark.parametrize("n,p,expected", [(0, 2, ()), (7, 3, (1, 2)), (12, 3, (0, 1, 1))])
def test_digits_examples(n, p, expected):
    d = digits(n, p)
    assert d.digits == expected
    assert d.value() == n


@pytest.mark.parametrize("n,p,expected", [(0, 5, 0), (7, 2, 3), (12, 3, 2)])
def test_digit_sum_examples(n, p, expected):
    assert digit_sum(n, p) == expected


def test_composite_base_rejected():
    with pytest.raises(ValueError):
        digits(10, 4)
    with pytest.raises(ValueError):
        nu(12, 1)
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_digit_vector_invariants():
    with pytest.raises(ValueError):
        DigitVector((0, 3), 3)
    with pytest.raises(ValueError):
        DigitVector((1, 0), 3)
    d = digits(12, 3)
    assert d[5] == 0 and len(d) == 3 and list(d) == [0, 1, 1]


@pytest.mark.parametrize(
    "q,p,valuation,unit,residue",
    [(720, 3, 2, 80, 2), (Fraction(5, 2), 2, -1, 5, 1), (1, 7, 0, 1, 1)],
)
def test_val_unit_examples(q, p, valuation, unit, residue):
    vu = val_unit(q, p)
    assert (vu.valuation, vu.unit, vu.unit_residue) == (valuation, unit, residue)


def test_zero():
    assert val_unit(0, 3).valuation is INFINITE
    assert val_unit(0, 3).unit is None
    assert nu_or_inf(0, 5) is INFINITE
    with pytest.raises(ValueError):
        nu(0, 2)
    with pytest.raises(ValueError):
        unit_residue(0, 2)


def test_infinite_ordering():
    assert INFINITE > 10**100
    assert not INFINITE < 3
    assert 3 < INFINITE
    assert INFINITE == INFINITE and INFINITE != 0
    assert max(5, INFINITE) is INFINITE


def test_rational_unit_residue_uses_inverse():
    # 3/4 at p=5: 3 * 4^-1 = 3 * 4 = 12 = 2 mod 5
    assert mod_p(Fraction(3, 4), 5) == 2
    assert val_unit(Fraction(-3, 4), 5).unit_residue == 3
    with pytest.raises(ValueError):
        mod_p(Fraction(1, 5), 5)


@pytest.mark.parametrize("n,p,expected", [(0, 2, 0), (6, 3, 2), (7, 2, 4)])
def test_nu_factorial_examples(n, p, expected):
    assert nu_factorial(n, p) == expected
    assert nu_factorial(n, p) == naive_nu(math.factorial(n), p)


@pytest.mark.parametrize("n,m,p,expected", [(9, 0, 5, 0), (7, 3, 3, 0), (6, 2, 2, 0), (6, 3, 2, 2)])
def test_nu_binomial_examples(n, m, p, expected):
    assert nu_binomial(n, m, p) == expected
    assert carry_count(m, n - m, p) == expected


def test_nu_binomial_rejects_bad_pairs():
    with pytest.raises(ValueError):
        nu_binomial(3, 4, 2)
    with pytest.raises(ValueError):
        lucas_residue(-1, 0, 2)


@pytest.mark.parametrize("n,m,p,expected", [(9, 9, 5, 1), (7, 3, 3, 2), (6, 3, 2, 0)])
def test_lucas_examples(n, m, p, expected):
    assert lucas_residue(n, m, p) == expected


@pytest.mark.parametrize("n,m,p,expected", [(7, 3, 3, 2), (11, 0, 7, 1), (6, 3, 2, 1)])
def test_anton_examples(n, m, p, expected):
    assert anton_epsilon(n, m, p) == expected


@pytest.mark.parametrize("a,r,expected", [(1, 0, 1), (1, 3, -1), (1, 4, 1), (6, 2, 21), (4, 3, -20)])
def test_neg_binomial_examples(a, r, expected):
    assert neg_binomial(a, r) == expected


def test_neg_binomial_against_falling_product():
    for a in range(1, 12):
        for r in range(10):
            falling = math.prod(-a - i for i in range(r))
            assert neg_binomial(a, r) == falling // math.factorial(r)
            assert binomial(-a, r) == neg_binomial(a, r)


def test_binomial_residue_any_top():
    for p in PRIMES:
        for top in range(-30, 30):
            for r in range(12):
                assert binomial_residue(top, r, p) == binomial(top, r) % p


@pytest.mark.parametrize("a,h,p,expected", [(2, 1, 3, 2), (1, 0, 5, 1), (1, 1, 3, 2)])
def test_single_digit_factorial_examples(a, h, p, expected):
    assert epsilon_factorial_single_digit(a, h, p) == expected
    assert val_unit(math.factorial(a * p**h), p).unit_residue == expected


def test_single_digit_factorial_rejects_digit():
    with pytest.raises(ValueError):
        epsilon_factorial_single_digit(3, 1, 3)


@pytest.mark.parametrize("k,p,expected", [(0, 7, 1), (2, 3, 2), (1, 5, 4)])
def test_p_shift_examples(k, p, expected):
    assert epsilon_factorial_p_shift(k, p) == expected
    assert val_unit(math.factorial(p * k), p).unit_residue == expected


@pytest.mark.parametrize("k,p,expected", [(0, 2, (1, 0)), (7, 2, (1, 3)), (8, 3, (1, 2))])
def test_digit_sum_successor_examples(k, p, expected):
    assert digit_sum_successor(k, p) == expected


# -- exhaustive and property checks ----------------------------------------

@pytest.mark.parametrize("p", PRIMES)
def test_digit_sum_congruence_exhaustive(p):
    for n in range(10**4 + 1):
        s = digit_sum(n, p)
        assert (n - s) % (p - 1) == 0
        assert digit_sum(p * n, p) == s


@pytest.mark.parametrize("p", PRIMES)
def test_nu_factorial_against_exact_factorials(p):
    fact = 1
    for n in range(2001):
        if n:
            fact *= n
        assert nu_factorial(n, p) == nu(fact, p)


@pytest.mark.parametrize("p", PRIMES)
def test_epsilon_factorial_against_exact(p):
    fact = 1
    for n in range(400):
        if n:
            fact *= n
        assert epsilon_factorial(n, p) == val_unit(fact, p).unit_residue


@given(st.integers(min_value=0, max_value=10**30), primes)
def test_digits_roundtrip(n, p):
    d = digits(n, p)
    assert list(d.digits) == naive_digits(n, p)
    assert d.value() == n
    assert d.digit_sum() == digit_sum(n, p)


@given(st.integers(min_value=1, max_value=10**40), primes)
def test_nu_matches_naive(n, p):
    assert nu(n, p) == naive_nu(n, p)
    assert nu(-n, p) == naive_nu(n, p)


@given(st.integers(min_value=-10**12, max_value=10**12).filter(bool),
       st.integers(min_value=1, max_value=10**12), primes)
def test_val_unit_reconstructs(num, den, p):
    q = Fraction(num, den)
    vu = val_unit(q, p)
    assert vu.unit * Fraction(p) ** vu.valuation == q
    assert nu(vu.unit, p) == 0
    assert 1 <= vu.unit_residue <= p - 1
    assert mod_p(vu.unit - vu.unit_residue, p) == 0


@given(st.integers(min_value=0, max_value=10**6), primes)
def test_digit_sum_successor_property(k, p):
    s, u = digit_sum_successor(k, p)
    assert s == digit_sum(k + 1, p)
    assert u == nu(k + 1, p)
    assert s == digit_sum(k, p) + 1 - (p - 1) * u


@given(st.fractions(max_denominator=10**6).filter(bool),
       st.fractions(max_denominator=10**6).filter(bool), primes)
def test_smaller_valuation_dominates_sum(a, b, p):
    if nu(a, p) == nu(b, p):
        return
    if nu(a, p) > nu(b, p):
        a, b = b, a
    total = a + b
    assert nu(total, p) == nu(a, p)
    assert val_unit(total, p).unit_residue == val_unit(a, p).unit_residue


@given(st.fractions(max_denominator=10**6).filter(bool),
       st.fractions(max_denominator=10**6).filter(bool), primes)
def test_valuation_and_unit_are_multiplicative(a, b, p):
    assert nu(a * b, p) == nu(a, p) + nu(b, p)
    assert val_unit(a * b, p).unit == val_unit(a, p).unit * val_unit(b, p).unit


@pytest.mark.parametrize("p", PRIMES)
def test_binomial_suite_exhaustive(p):
    for n in range(301):
        for m in range(n + 1):
            c = math.comb(n, m)
            e = naive_nu(c, p)
            assert nu_binomial(n, m, p) == e
            assert carry_count(m, n - m, p) == e
            assert lucas_residue(n, m, p) == c % p
            assert anton_epsilon(n, m, p) == (-1) ** e * val_unit(c, p).unit_residue % p


@pytest.mark.parametrize("p", PRIMES)
def test_binomial_scaling_exhaustive(p):
    for n in range(201):
        for m in range(n + 1):
            a, b = val_unit(math.comb(n, m), p), val_unit(math.comb(n * p, m * p), p)
            assert (a.valuation, a.unit_residue) == (b.valuation, b.unit_residue)


@pytest.mark.parametrize("p", PRIMES)
def test_disjoint_digits_binomial_is_one(p):
    for total in range(301):
        for r in range(total + 1):
            n = total - r
            dn, dr = digits(n, p), digits(r, p)
            if all(dn[i] == 0 or dr[i] == 0 for i in range(max(len(dn), len(dr)))):
                assert lucas_residue(n + r, r, p) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_binomial_from_factorial_unit_identity(p):
    for n in range(201):
        for k in range(n + 1):
            if (n - k) % (p - 1):
                continue
            unit = val_unit(math.factorial(n) // math.factorial(k), p).unit
            expo = (n - k + digit_sum(k, p) - digit_sum(n, p)) // (p - 1)
            assert unit * Fraction(p) ** expo / math.factorial(n - k) == math.comb(n, k)
