"""Base-p digit arithmetic, p-adic valuations and unit parts.

Everything here works on exact Python integers and ``fractions.Fraction``.
Residues are always normalized into ``[0, p-1]``; unit residues into
``[1, p-1]``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Union[int, Fraction]


@functools.total_ordering
class _Infinite:
    """Valuation of zero. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITE")

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@functools.lru_cache(maxsize=1024)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


def _check_nonneg(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base-p digits: ``digits[i]`` is the coefficient of p**i.

    Zero is the empty tuple.
    """

    digits: tuple[int, ...]
    p: int

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digit out of range for base {self.p}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("trailing zero digit")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i: int) -> int:
        """Digit at position ``i``; positions past the top are zero."""
        if i < 0:
            raise IndexError(i)
        return self.digits[i] if i < len(self.digits) else 0

    def value(self) -> int:
        total = 0
        for d in reversed(self.digits):
            total = total * self.p + d
        return total

    def digit_sum(self) -> int:
        return sum(self.digits)


def digits(n: int, p: int) -> DigitVector:
    check_prime(p)
    _check_nonneg(n=n)
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return DigitVector(tuple(out), p)


def digit_sum(n: int, p: int) -> int:
    """sigma_p(n), the sum of the base-p digits of n."""
    return digits(n, p).digit_sum()


def _remove(n: int, p: int) -> tuple[int, int]:
    """Strip every factor p from the nonzero integer n; return (rest, count).

    Divides by p, p**2, p**4, ... and then back down, so huge multiplicities
    (as in factorials) cost O(log) big divisions instead of one per factor.
    """
    if p == 2:
        v = (n & -n).bit_length() - 1
        return n >> v, v
    if n % p:
        return n, 0
    powers = [p]
    count = 0
    while True:
        q, r = divmod(n, powers[-1])
        if r:
            break
        n = q
        count += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for i in range(len(powers) - 2, -1, -1):
        q, r = divmod(n, powers[i])
        if not r:
            n = q
            count += 1 << i
    return n, count


def nu(q: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is not a finite integer")
    return _remove(q.numerator, p)[1] - _remove(q.denominator, p)[1]


def nu_or_inf(q: Rational, p: int):
    """Like :func:`nu` but returns INFINITE for zero."""
    return INFINITE if q == 0 else nu(q, p)


def mod_p(q: Rational, p: int) -> int:
    """Reduce a rational whose denominator is prime to p into [0, p-1]."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not p-integral for p={p}")
    return q.numerator * pow(q.denominator, -1, p) % p


@dataclass(frozen=True)
class ValUnit:
    valuation: object  # int, or INFINITE for zero
    unit: Optional[Fraction]
    unit_residue: Optional[int]


def val_unit(q: Rational, p: int) -> ValUnit:
    """Split q as unit * p**valuation and reduce the unit mod p."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return ValUnit(INFINITE, None, None)
    num, a = _remove(q.numerator, p)
    den, b = _remove(q.denominator, p)
    unit = Fraction(num, den)
    return ValUnit(a - b, unit, mod_p(unit, p))


def unit_residue(q: Rational, p: int) -> int:
    """epsilon_p(q) mod p. Undefined for zero."""
    if q == 0:
        raise ValueError("unit part of 0 is undefined")
    return val_unit(q, p).unit_residue


def nu_factorial(n: int, p: int) -> int:
    """Legendre: nu_p(n!) = (n - sigma_p(n)) / (p - 1)."""
    check_prime(p)
    _check_nonneg(n=n)
    return (n - digit_sum(n, p)) // (p - 1)


def _check_pair(n: int, m: int) -> None:
    _check_nonneg(n=n, m=m)
    if m > n:
        raise ValueError(f"need 0 <= m <= n, got n={n}, m={m}")


def nu_binomial(n: int, m: int, p: int) -> int:
    check_prime(p)
    _check_pair(n, m)
    s = digit_sum(m, p) + digit_sum(n - m, p) - digit_sum(n, p)
    return s // (p - 1)


def carry_count(a: int, b: int, p: int) -> int:
    """Number of carries when adding a and b in base p."""
    check_prime(p)
    _check_nonneg(a=a, b=b)
    carries = carry = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def lucas_residue(n: int, m: int, p: int) -> int:
    """C(n, m) mod p as the product of digitwise binomials."""
    check_prime(p)
    _check_pair(n, m)
    dn, dm = digits(n, p), digits(m, p)
    result = 1
    for i in range(len(dn)):
        if dm[i] > dn[i]:
            return 0
        result = result * math.comb(dn[i], dm[i]) % p
    return result


def binomial_residue(top: int, r: int, p: int) -> int:
    """C(top, r) mod p for any integer top and r >= 0.

    Negative tops go through C(-a, r) = (-1)**r C(a + r - 1, r), so only
    non-negative binomials ever reach the Lucas product.
    """
    _check_nonneg(r=r)
    if top >= 0:
        return lucas_residue(top, r, p) if r <= top else 0
    sign = -1 if r % 2 else 1
    return sign * lucas_residue(-top + r - 1, r, p) % p


def _factorial_mod(d: int, p: int) -> int:
    return math.factorial(d) % p


def anton_epsilon(n: int, m: int, p: int) -> int:
    """Product of n_i! / (m_i! r_i!) mod p over the digits, r = n - m.

    This is (-1)**e * epsilon_p(C(n, m)) mod p with e = nu_p(C(n, m)).
    """
    check_prime(p)
    _check_pair(n, m)
    dn, dm, dr = digits(n, p), digits(m, p), digits(n - m, p)
    num = den = 1
    for i in range(max(len(dn), len(dm), len(dr))):
        num = num * _factorial_mod(dn[i], p) % p
        den = den * _factorial_mod(dm[i], p) * _factorial_mod(dr[i], p) % p
    return num * pow(den, -1, p) % p


def neg_binomial(a: int, r: int) -> int:
    """C(-a, r) for a >= 1."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"a must be a positive integer, got {a!r}")
    _check_nonneg(r=r)
    return (-1) ** r * math.comb(a + r - 1, r)


def binomial(top: int, r: int) -> int:
    """C(top, r) for any integer top and r >= 0."""
    _check_nonneg(r=r)
    if top >= 0:
        return math.comb(top, r)
    return neg_binomial(-top, r)


def epsilon_factorial(n: int, p: int) -> int:
    """epsilon_p(n!) mod p, via (-1)**nu_p(n!) times the product of digit factorials."""
    check_prime(p)
    _check_nonneg(n=n)
    result = 1
    for d in digits(n, p):
        result = result * _factorial_mod(d, p) % p
    if nu_factorial(n, p) % 2:
        result = -result % p
    return result


def epsilon_factorial_ratio(n: int, k: int, p: int) -> int:
    """epsilon_p(n!/k!) mod p."""
    return epsilon_factorial(n, p) * pow(epsilon_factorial(k, p), -1, p) % p


def epsilon_factorial_single_digit(a: int, h: int, p: int) -> int:
    """epsilon_p((a p**h)!) mod p, which is (-1)**(a h) a! mod p (Wilson)."""
    check_prime(p)
    if not isinstance(a, int) or not 1 <= a <= p - 1:
        raise ValueError(f"a must lie in [1, {p - 1}], got {a!r}")
    _check_nonneg(h=h)
    value = _factorial_mod(a, p)
    return -value % p if (a * h) % 2 else value


def epsilon_factorial_p_shift(k: int, p: int) -> int:
    """(-1)**k epsilon_p(k!) mod p; equal to epsilon_p((pk)!) mod p."""
    value = epsilon_factorial(k, p)
    return -value % p if k % 2 else value


def digit_sum_successor(k: int, p: int) -> tuple[int, int]:
    """Return (sigma_p(k+1), nu_p(k+1)) from the digits of k alone.

    Adding one zeroes the run of bottom digits equal to p-1 and bumps the
    next digit, so sigma_p(k+1) = sigma_p(k) + 1 - (p-1) u.
    """
    check_prime(p)
    _check_nonneg(k=k)
    dk = digits(k, p)
    u = 0
    while u < len(dk) and dk[u] == p - 1:
        u += 1
    return dk.digit_sum() + 1 - (p - 1) * u, u
