"""Exact Stirling numbers, higher order Bernoulli numbers and polynomials.

Bernoulli numbers of order l come from the generating function

    (t / (e^t - 1))**l * e^(t x) = sum_n B_n^(l)(x) t^n / n!

computed with ``Fraction`` coefficients on series truncated after t**n.
"""
from __future__ import annotations

import enum
import functools
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .padic import INFINITE, nu_or_inf, check_prime


class ConsistencyError(RuntimeError):
    """Two independent exact computations disagreed."""


class Kind(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class SeriesPoly:
    """Exact rational coefficients, index i holding the t**i (or x**i) term.

    ``truncation_order`` is the number of retained coefficients of a power
    series. Polynomials carry ``None``: nothing has been dropped.
    """

    coefficients: tuple[Fraction, ...]
    truncation_order: Optional[int] = None

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if self.truncation_order is not None:
            coeffs = (coeffs + (Fraction(0),) * self.truncation_order)[: self.truncation_order]
        else:
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def polynomial(cls, coefficients: Iterable) -> "SeriesPoly":
        return cls(tuple(coefficients))

    @classmethod
    def series(cls, coefficients: Iterable, order: int) -> "SeriesPoly":
        return cls(tuple(coefficients), order)

    @property
    def is_series(self) -> bool:
        return self.truncation_order is not None

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        """Index of the highest nonzero coefficient, -1 for zero."""
        for i in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[i]:
                return i
        return -1

    @property
    def leading_coefficient(self) -> Fraction:
        d = self.degree
        return self.coefficients[d] if d >= 0 else Fraction(0)

    def __call__(self, x) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        orders = [s.truncation_order for s in (self, other) if s.is_series]
        a, b = self.coefficients, other.coefficients
        size = len(a) + len(b) - 1 if a and b else 0
        if orders:
            size = min(size, min(orders))
        out = [Fraction(0)] * max(size, 0)
        for i, ai in enumerate(a):
            if not ai or i >= size:
                continue
            for j in range(min(len(b), size - i)):
                out[i + j] += ai * b[j]
        if orders:
            return SeriesPoly(tuple(out), min(orders))
        return SeriesPoly(tuple(out))

    def __pow__(self, e: int) -> "SeriesPoly":
        if e < 0:
            raise ValueError("use reciprocal() for negative powers")
        one = SeriesPoly((1,), self.truncation_order)
        result, base = one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def reciprocal(self) -> "SeriesPoly":
        """1/f for a series with nonzero constant term."""
        if not self.is_series:
            raise ValueError("reciprocal needs a truncated series")
        a = self.coefficients
        if not a or a[0] == 0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = 1 / a[0]
        b = [inv0]
        for m in range(1, self.truncation_order):
            acc = sum((a[j] * b[m - j] for j in range(1, min(m, len(a) - 1) + 1)), Fraction(0))
            b.append(-inv0 * acc)
        return SeriesPoly(tuple(b), self.truncation_order)


# -- Bernoulli numbers of arbitrary integer order ---------------------------

_CACHE_BLOCK = 16


def _round_order(order: int) -> int:
    # Cached series are shared across nearby n; extra terms do not change
    # lower coefficients.
    return -(-order // _CACHE_BLOCK) * _CACHE_BLOCK


@functools.lru_cache(maxsize=None)
def _expm1_over_t(order: int) -> SeriesPoly:
    """(e^t - 1)/t = sum t^i / (i+1)!"""
    return SeriesPoly.series((Fraction(1, math.factorial(i + 1)) for i in range(order)), order)


@functools.lru_cache(maxsize=None)
def _t_over_expm1(order: int) -> SeriesPoly:
    return _expm1_over_t(order).reciprocal()


@functools.lru_cache(maxsize=512)
def _order_series(l: int, order: int) -> SeriesPoly:
    if l >= 0:
        return _t_over_expm1(order) ** l
    return _expm1_over_t(order) ** (-l)


def order_series(l: int, order: int) -> SeriesPoly:
    """(t/(e^t-1))**l truncated to ``order`` coefficients."""
    if order < 0:
        raise ValueError("order must be non-negative")
    full = _order_series(l, _round_order(max(order, 1)))
    return SeriesPoly.series(full.coefficients[:order], order)


def bernoulli_numbers(n_max: int, l: int) -> list[Fraction]:
    """[B_0^(l), ..., B_{n_max}^(l)]."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    s = _order_series(l, _round_order(n_max + 1))
    out = []
    fact = 1
    for i in range(n_max + 1):
        if i:
            fact *= i
        out.append(fact * s[i])
    return out


def bernoulli_number(n: int, l: int) -> Fraction:
    """B_n^(l) = n! [t^n] (t/(e^t-1))**l."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return bernoulli_numbers(n, l)[n]


def bernoulli_poly(n: int, l: int) -> SeriesPoly:
    """B_n^(l)(x) = sum_i C(n, i) B_i^(l) x^(n-i); monic of degree n."""
    bs = bernoulli_numbers(n, l)
    coeffs = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        coeffs[n - i] = math.comb(n, i) * bs[i]
    return SeriesPoly.polynomial(coeffs)


def coefficient_valuations(n: int, l: int, p: int) -> list[tuple[int, object]]:
    """nu_p of each coefficient of B_n^(l)(x), indexed by codegree.

    Codegree i is the coefficient of x^(n-i); codegree 0 is the leading 1.
    Zero coefficients report INFINITE.
    """
    check_prime(p)
    poly = bernoulli_poly(n, l)
    return [(i, nu_or_inf(poly[n - i], p)) for i in range(n + 1)]


# -- Stirling triangles ------------------------------------------------------

DEFAULT_N_MAX = 512
_BIG_ROW_CACHE = 4


class StirlingTriangle:
    """Row-memoized triangle of Stirling numbers of one kind.

    Rows up to ``n_max`` are kept forever. Larger rows are produced by
    streaming the recurrence forward from the last kept row and only a few
    of them are cached. Rows are appended under a lock, so readers always see
    a prefix of fully computed rows.
    """

    def __init__(self, kind: Kind, n_max: int = DEFAULT_N_MAX):
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.kind = kind
        self.n_max = n_max
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        self._frontier: tuple[int, tuple[int, ...]] = (0, (1,))
        self._big: OrderedDict[int, tuple[int, ...]] = OrderedDict()

    def _next_row(self, n: int, row: Sequence[int]) -> tuple[int, ...]:
        """Row n+1 from row n."""
        out = [0] * (n + 2)
        if self.kind is Kind.SECOND:
            # S(n+1, k) = S(n, k-1) + k S(n, k)
            for k in range(1, n + 2):
                out[k] = row[k - 1] + (k * row[k] if k <= n else 0)
        else:
            # s(n+1, k) = s(n, k-1) - n s(n, k)
            for k in range(1, n + 2):
                out[k] = row[k - 1] - (n * row[k] if k <= n else 0)
        return tuple(out)

    def row(self, n: int) -> tuple[int, ...]:
        """Entries for k = 0..n."""
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"n must be a non-negative integer, got {n!r}")
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            if n <= self.n_max:
                while len(self._rows) <= n:
                    m = len(self._rows) - 1
                    self._rows.append(self._next_row(m, self._rows[m]))
                return self._rows[n]
            if n in self._big:
                self._big.move_to_end(n)
                return self._big[n]
            start, cur = self._frontier
            if start > n or start < self.n_max:
                while len(self._rows) <= self.n_max:
                    m = len(self._rows) - 1
                    self._rows.append(self._next_row(m, self._rows[m]))
                start, cur = self.n_max, self._rows[self.n_max]
            while start < n:
                cur = self._next_row(start, cur)
                start += 1
            self._frontier = (start, cur)
            self._big[n] = cur
            while len(self._big) > _BIG_ROW_CACHE:
                self._big.popitem(last=False)
            return cur

    def __call__(self, n: int, k: int) -> int:
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"k must be a non-negative integer, got {k!r}")
        if k > n:
            return 0
        return self.row(n)[k]


SECOND = StirlingTriangle(Kind.SECOND)
FIRST = StirlingTriangle(Kind.FIRST)


def triangle(kind: Kind) -> StirlingTriangle:
    return FIRST if kind is Kind.FIRST else SECOND


def stirling2(n: int, k: int) -> int:
    """S(n, k); zero for k > n and for k = 0 < n."""
    return SECOND(n, k)


def stirling1(n: int, k: int) -> int:
    """Signed s(n, k), the coefficient of x^k in x(x-1)...(x-n+1)."""
    return FIRST(n, k)


def stirling(kind: Kind, n: int, k: int) -> int:
    return triangle(kind)(n, k)


@functools.lru_cache(maxsize=8)
def stirling_row_mod(kind: Kind, n: int, modulus: int) -> tuple[int, ...]:
    """Row n of the triangle reduced mod ``modulus``, entries in [0, modulus).

    Exact residues for rows far beyond what big-integer rows can reach in
    reasonable time; the recurrence runs on int64 vectors, so
    ``modulus * (n + 1)`` must stay below 2**62.
    """
    if modulus < 2 or modulus * (n + 1) >= 2**62:
        raise ValueError(f"modulus {modulus} unusable for row {n}")
    row = np.zeros(n + 1, dtype=np.int64)
    row[0] = 1
    for m in range(n):
        # row m occupies row[: m + 1]
        nxt = np.zeros_like(row)
        if kind is Kind.SECOND:
            ks = np.arange(1, m + 2, dtype=np.int64)
            nxt[1 : m + 2] = row[: m + 1]
            nxt[1 : m + 1] += ks[:m] * row[1 : m + 1]
        else:
            nxt[1 : m + 2] = row[: m + 1]
            nxt[1 : m + 1] -= m * row[1 : m + 1]
        row = np.mod(nxt, modulus)
    return tuple(int(v) for v in row)


def largest_prime_power_modulus(p: int, n: int) -> int:
    """Largest p**K usable by :func:`stirling_row_mod` for row n."""
    m = p
    while m * p * (n + 1) < 2**62:
        m *= p
    return m


def falling_factorial(n: int) -> SeriesPoly:
    """(x)_n = x (x - 1) ... (x - n + 1) as a polynomial in x."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    poly = SeriesPoly.polynomial((1,))
    for j in range(n):
        poly = poly * SeriesPoly.polynomial((-j, 1))
    return poly


def connect_second(n: int, k: int) -> int:
    """S(n, k) rebuilt as C(n, k) B_{n-k}^(-k), checked against the triangle."""
    if not (isinstance(n, int) and isinstance(k, int) and n >= k >= 0):
        raise ValueError(f"need n >= k >= 0, got n={n}, k={k}")
    value = math.comb(n, k) * bernoulli_number(n - k, -k)
    if value.denominator != 1 or value.numerator != stirling2(n, k):
        raise ConsistencyError(f"C({n},{k}) B_{n - k}^({-k}) = {value} but S({n},{k}) = {stirling2(n, k)}")
    return value.numerator


def connect_first(n: int, k: int) -> int:
    """s(n, k) rebuilt as C(n-1, k-1) B_{n-k}^(n), checked against the triangle."""
    if not (isinstance(n, int) and isinstance(k, int) and n >= k >= 1):
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    value = math.comb(n - 1, k - 1) * bernoulli_number(n - k, n)
    if value.denominator != 1 or value.numerator != stirling1(n, k):
        raise ConsistencyError(f"C({n - 1},{k - 1}) B_{n - k}^({n}) = {value} but s({n},{k}) = {stirling1(n, k)}")
    return value.numerator


__all__ = [
    "ConsistencyError",
    "INFINITE",
    "Kind",
    "SeriesPoly",
    "StirlingTriangle",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly",
    "coefficient_valuations",
    "connect_first",
    "connect_second",
    "falling_factorial",
    "order_series",
    "stirling",
    "stirling1",
    "stirling2",
    "stirling_row_mod",
    "largest_prime_power_modulus",
    "triangle",
]
