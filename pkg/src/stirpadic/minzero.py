"""Minimum zero / maximum pole classification for Stirling and Bernoulli numbers.

A Stirling number is a *minimum zero case* when its p-adic valuation equals
the digit-sum lower bound exactly. The criteria below decide this from base-p
digits alone; ``witness=True`` additionally computes the exact Stirling or
Bernoulli value and raises :class:`ConsistencyError` on any disagreement.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .padic import (
    binomial_residue,
    check_prime,
    digit_sum,
    digits,
    epsilon_factorial,
    epsilon_factorial_ratio,
    lucas_residue,
    mod_p,
    nu,
    nu_or_inf,
    val_unit,
)
from .sequences import ConsistencyError, Kind, bernoulli_number, stirling1, stirling2


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _check_nk(n: int, k: int, k_min: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)):
        raise ValueError("n and k must be integers")
    if k < k_min or n < k:
        raise ValueError(f"need n >= k >= {k_min}, got n={n}, k={k}")


def lower_bound_second(n: int, k: int, p: int) -> int:
    """ceil((sigma(k) - sigma(n)) / (p - 1)), a lower bound for nu_p(S(n, k))."""
    check_prime(p)
    _check_nk(n, k, 0)
    return _ceil_div(digit_sum(k, p) - digit_sum(n, p), p - 1)


def lower_bound_first(n: int, k: int, p: int) -> int:
    """ceil((sigma(k-1) - sigma(n-1)) / (p - 1)), a lower bound for nu_p(s(n, k))."""
    check_prime(p)
    _check_nk(n, k, 1)
    return _ceil_div(digit_sum(k - 1, p) - digit_sum(n - 1, p), p - 1)


@dataclass
class ClassificationReport:
    kind: Kind
    n: int
    k: int
    p: int
    r: Optional[int]
    binomial_test_value: Optional[int]
    is_min_zero: bool
    predicted_valuation: Optional[int] = None
    predicted_unit_residue: Optional[int] = None
    witnessed_valuation: Optional[int] = None
    witnessed_unit_residue: Optional[int] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


def _witness(report: ClassificationReport, value: int, exact_bound: Optional[int]) -> None:
    vu = val_unit(value, report.p)
    report.witnessed_valuation = vu.valuation
    report.witnessed_unit_residue = vu.unit_residue
    name = "S" if report.kind is Kind.SECOND else "s"
    where = f"{name}({report.n},{report.k}) = {value}, p={report.p}"
    if report.is_min_zero:
        if (vu.valuation, vu.unit_residue) != (report.predicted_valuation, report.predicted_unit_residue):
            raise ConsistencyError(
                f"{where}: predicted (nu, eps) = ({report.predicted_valuation}, {report.predicted_unit_residue}),"
                f" witnessed ({vu.valuation}, {vu.unit_residue})"
            )
    elif exact_bound is not None and vu.valuation == exact_bound:
        raise ConsistencyError(f"{where}: attains the lower bound {exact_bound} but criterion says no")


def classify_second(n: int, k: int, p: int, witness: bool = False) -> ClassificationReport:
    check_prime(p)
    _check_nk(n, k, 1)
    report = ClassificationReport(Kind.SECOND, n, k, p, None, None, False)
    bound = None
    if (n - k) % (p - 1) == 0:
        r = (n - k) // (p - 1)
        # C(-(n+1), r) = (-1)^r C(n+r, r); only the latter is evaluated
        test = lucas_residue(n + r, r, p)
        report.r = r
        report.binomial_test_value = test
        bound = (digit_sum(k, p) - digit_sum(n, p)) // (p - 1)
        if test:
            report.is_min_zero = True
            report.predicted_valuation = bound
            report.predicted_unit_residue = _sign(r) * epsilon_factorial_ratio(n, k, p) * test % p
    if witness:
        _witness(report, stirling2(n, k), bound)
    return report


def classify_first(n: int, k: int, p: int, witness: bool = False) -> ClassificationReport:
    check_prime(p)
    _check_nk(n, k, 1)
    report = ClassificationReport(Kind.FIRST, n, k, p, None, None, False)
    bound = None
    if (n - k) % (p - 1) == 0:
        r = (n - k) // (p - 1)
        # r > k - 1 means C(k-1, r) = 0: the criterion fails, it is not an error
        test = lucas_residue(k - 1, r, p) if r <= k - 1 else 0
        report.r = r
        report.binomial_test_value = test
        bound = (digit_sum(k - 1, p) - digit_sum(n - 1, p)) // (p - 1)
        if test:
            report.is_min_zero = True
            report.predicted_valuation = bound
            report.predicted_unit_residue = epsilon_factorial_ratio(n - 1, k - 1, p) * test % p
    if witness:
        _witness(report, stirling1(n, k), bound)
    return report


def classify(kind: Kind, n: int, k: int, p: int, witness: bool = False) -> ClassificationReport:
    if kind is Kind.SECOND:
        return classify_second(n, k, p, witness)
    return classify_first(n, k, p, witness)


def _check_single_digit(a: int, h: int, p: int) -> None:
    if not (isinstance(a, int) and 1 <= a <= p - 1):
        raise ValueError(f"a must lie in [1, {p - 1}], got {a!r}")
    if not isinstance(h, int) or h < 0:
        raise ValueError(f"h must be a non-negative integer, got {h!r}")


def _check_witness(label: str, value: int, p: int, valuation: int, residue: int) -> None:
    vu = val_unit(value, p)
    if (vu.valuation, vu.unit_residue) != (valuation, residue):
        raise ConsistencyError(
            f"{label} = {value}, p={p}: predicted (nu, eps) = ({valuation}, {residue}),"
            f" witnessed ({vu.valuation}, {vu.unit_residue})"
        )


def dewannemacker_second(a: int, h: int, k: int, p: int, witness: bool = False) -> tuple[int, int]:
    """Valuation and unit residue of S(a p^h, k) for a single-digit n.

    nu = (sigma(k) - a)/(p - 1) and eps = (-1)^(r + a h) a! / eps(k!) mod p.
    """
    check_prime(p)
    _check_single_digit(a, h, p)
    n = a * p**h
    if not (isinstance(k, int) and 1 <= k <= n) or (n - k) % (p - 1):
        raise ValueError(f"need 1 <= k <= {n} and (p-1) | (n-k), got k={k}")
    r = (n - k) // (p - 1)
    valuation = (digit_sum(k, p) - a) // (p - 1)
    residue = _sign(r + a * h) * math.factorial(a) * pow(epsilon_factorial(k, p), -1, p) % p
    if witness:
        _check_witness(f"S({n},{k})", stirling2(n, k), p, valuation, residue)
    return valuation, residue


def _same_prediction(base: ClassificationReport, moved: ClassificationReport, what: str) -> None:
    if not moved.is_min_zero:
        raise ConsistencyError(f"{what}: ({moved.n},{moved.k}) is not a minimum zero case")
    if base.predicted_valuation != moved.predicted_valuation:
        raise ConsistencyError(f"{what}: valuation changed {base.predicted_valuation} -> {moved.predicted_valuation}")
    if base.predicted_unit_residue != moved.predicted_unit_residue:
        raise ConsistencyError(
            f"{what}: unit residue changed {base.predicted_unit_residue} -> {moved.predicted_unit_residue}"
        )


def invariance_second(n: int, k: int, b: int, p: int, witness: bool = False) -> ClassificationReport:
    """Classification of S(n+b, k+b) for a minimum zero S(n, k).

    b must satisfy 0 <= b < min(p^nu(k), p^nu(n)); b then sits below every
    digit of n and k.
    """
    base = classify_second(n, k, p, witness)
    if not base.is_min_zero:
        raise ValueError(f"S({n},{k}) is not a minimum zero case for p={p}")
    limit = min(p ** nu(k, p), p ** nu(n, p))
    if not (isinstance(b, int) and 0 <= b < limit):
        raise ValueError(f"b must lie in [0, {limit}), got {b!r}")
    moved = classify_second(n + b, k + b, p, witness)
    _same_prediction(base, moved, f"shift by b={b}")
    return moved


def central_fibbinary(k: int, p: int) -> bool:
    """True iff adjacent base-p digits of k never sum past p - 1."""
    check_prime(p)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    d = digits(k, p)
    return all(d[i] + d[i + 1] <= p - 1 for i in range(len(d) - 1))


def central_residue(k: int, p: int) -> int:
    """S(pk, k) mod p as the product of C(a_i + a_{i+1}, a_i) over digits a_i of k."""
    check_prime(p)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    d = digits(k, p)
    result = 1
    for i in range(len(d)):
        result = result * math.comb(d[i] + d[i + 1], d[i]) % p
    return result


def shift_second(n: int, k: int, p: int, witness: bool = True) -> tuple[int, int]:
    """Valuation and unit residue shared by S(n, k) and S(n+1, k+1)."""
    base = classify_second(n, k, p)
    if not base.is_min_zero:
        raise ValueError(f"S({n},{k}) is not a minimum zero case for p={p}")
    result = base.predicted_valuation, base.predicted_unit_residue
    if witness:
        _check_witness(f"S({n + 1},{k + 1})", stirling2(n + 1, k + 1), p, *result)
    return result


def single_digit_first(a: int, h: int, n: int, p: int, witness: bool = True) -> tuple[int, int]:
    """Valuation and unit residue of s(n, a p^h) for a p^h <= n < a p^(h+1).

    nu = (a - 1 - sigma(n-1))/(p - 1) + h and
    eps = (-1)^(a h + r - r_h) eps((n-1)!) / (a-1)! * C(a-1, r_h) mod p,
    r_h being the p^h digit of r = (n - k)/(p - 1).
    """
    check_prime(p)
    _check_single_digit(a, h, p)
    k = a * p**h
    if not (isinstance(n, int) and k <= n < k * p) or (n - k) % (p - 1):
        raise ValueError(f"need {k} <= n < {k * p} and (p-1) | (n-k), got n={n}")
    r = (n - k) // (p - 1)
    r_h = digits(r, p)[h]
    valuation = (a - 1 - digit_sum(n - 1, p)) // (p - 1) + h
    residue = (
        _sign(a * h + r - r_h)
        * epsilon_factorial(n - 1, p)
        * pow(math.factorial(a - 1), -1, p)
        * math.comb(a - 1, r_h)
        % p
    )
    if witness:
        _check_witness(f"s({n},{k})", stirling1(n, k), p, valuation, residue)
    return valuation, residue


def invariance_first(n: int, k: int, t: int, p: int, witness: bool = False) -> ClassificationReport:
    """Classification of s(t+n, t+k) for a minimum zero s(n, k), with p^nu(t) > n."""
    base = classify_first(n, k, p, witness)
    if not base.is_min_zero:
        raise ValueError(f"s({n},{k}) is not a minimum zero case for p={p}")
    if not isinstance(t, int) or t < 0 or (t and p ** nu(t, p) <= n):
        raise ValueError(f"t must be 0 or have p^nu(t) > {n}, got {t!r}")
    moved = classify_first(t + n, t + k, p, witness)
    _same_prediction(base, moved, f"shift by t={t}")
    return moved


def shift_first(n: int, k: int, p: int, witness: bool = True) -> tuple[int, int]:
    """Valuation and unit residue shared by s(n, k) and s(n-1, k-1)."""
    base = classify_first(n, k, p)
    if k < 2:
        raise ValueError(f"need n >= k >= 2, got n={n}, k={k}")
    if not base.is_min_zero:
        raise ValueError(f"s({n},{k}) is not a minimum zero case for p={p}")
    result = base.predicted_valuation, base.predicted_unit_residue
    if witness:
        _check_witness(f"s({n - 1},{k - 1})", stirling1(n - 1, k - 1), p, *result)
    return result


@dataclass(frozen=True)
class MaxPoleResult:
    is_max_pole: bool
    r: Optional[int]
    congruence_residue: Optional[int]


def _scaled_bernoulli_residue(n: int, l: int, p: int, r: int) -> int:
    """(-1)^n p^r B_n^(l) / n! mod p; the quantity is always p-integral."""
    q = _sign(n) * Fraction(p**r) * bernoulli_number(n, l) / math.factorial(n)
    if q == 0 or nu(q, p) > 0:
        return 0
    return mod_p(q, p)


def max_pole_classify(n: int, l: int, p: int, witness: bool = True) -> MaxPoleResult:
    """Decide whether B_n^(l) reaches the minimal valuation -sigma(n)/(p-1).

    That happens iff r = n/(p-1) is an integer and p does not divide
    C(l-n-1, r); then p^r B_n^(l) / n! = (-1)^r C(n-l+r, r) mod p.
    """
    check_prime(p)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if n % (p - 1):
        return MaxPoleResult(False, None, None)
    r = n // (p - 1)
    if binomial_residue(l - n - 1, r, p) == 0:
        return MaxPoleResult(False, r, None)
    residue = _sign(r) * binomial_residue(n - l + r, r, p) % p
    if witness:
        b = bernoulli_number(n, l)
        expected = -digit_sum(n, p) // (p - 1)
        if nu_or_inf(b, p) != expected:
            raise ConsistencyError(f"nu_{p}(B_{n}^({l})) = {nu_or_inf(b, p)}, expected {expected}")
        q = Fraction(p**r) * b / math.factorial(n)
        if mod_p(q, p) != residue:
            raise ConsistencyError(f"p^r B_{n}^({l})/n! = {mod_p(q, p)} mod {p}, expected {residue}")
    return MaxPoleResult(True, r, residue)


def proposition_congruence(n: int, l: int, p: int, witness: bool = True) -> int:
    """(-1)^r C(n+r-l, r) mod p for (p-1) | n, r = n/(p-1).

    This is the residue of (-1)^n p^r B_n^(l) / n!, a p-adic integer.
    """
    check_prime(p)
    if not isinstance(n, int) or n < 0 or n % (p - 1):
        raise ValueError(f"need n >= 0 with (p-1) | n, got n={n}")
    r = n // (p - 1)
    residue = _sign(r) * binomial_residue(n + r - l, r, p) % p
    if witness:
        lhs = _scaled_bernoulli_residue(n, l, p, r)
        if lhs != residue:
            raise ConsistencyError(f"(-1)^n p^r B_{n}^({l})/n! = {lhs} mod {p}, expected {residue}")
    return residue


def proposition_lhs_residue(n: int, l: int, p: int) -> int:
    """Residue of (-1)^n p^r B_n^(l) / n! computed from the exact Bernoulli number."""
    check_prime(p)
    if n % (p - 1):
        raise ValueError(f"need (p-1) | n, got n={n}")
    return _scaled_bernoulli_residue(n, l, p, n // (p - 1))


def _scaling(kind: Kind, n: int, k: int, p: int, witness: bool) -> tuple[ClassificationReport, ClassificationReport]:
    base = classify(kind, n, k, p, witness)
    scaled = classify(kind, n * p, k * p, p, witness)
    what = f"({n},{k}) -> ({n * p},{k * p})"
    if base.is_min_zero != scaled.is_min_zero:
        raise ConsistencyError(f"{what}: minimum zero status differs")
    if base.is_min_zero:
        if kind is Kind.SECOND and base.predicted_valuation != scaled.predicted_valuation:
            raise ConsistencyError(f"{what}: valuation differs")
        if base.predicted_unit_residue != scaled.predicted_unit_residue:
            raise ConsistencyError(f"{what}: unit residue differs")
    return base, scaled


def scaling_second(n: int, k: int, p: int, witness: bool = False):
    """Reports for S(n, k) and S(np, kp); both are minimum zero or neither."""
    return _scaling(Kind.SECOND, n, k, p, witness)


def scaling_first(n: int, k: int, p: int, witness: bool = False):
    """Reports for s(n, k) and s(np, kp); both are minimum zero or neither."""
    return _scaling(Kind.FIRST, n, k, p, witness)
