"""Exact rational and modular arithmetic primitives.

Rationals are plain ``fractions.Fraction`` values, which are always stored
in reduced form with a positive denominator.  The helpers here add the
canonical string form, p-adic valuations, residue reduction, and a small
prime toolkit (deterministic trial division plus a growing sieve).
"""

from __future__ import annotations

import math
import re
import threading
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPAdicIntegerError, NotPrimeError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``n`` / ``n/d`` form; reject anything non-canonical."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational literal: {text!r}")
    if "/" in text:
        num_s, den_s = text.split("/")
        num, den = int(num_s), int(den_s)
        if den == 0:
            raise ValueError(f"zero denominator: {text!r}")
        if math.gcd(abs(num), den) != 1:
            raise ValueError(f"rational not in reduced form: {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def format_rational(q: Fraction | int) -> str:
    """Canonical string form: sign on the numerator, denominator omitted when 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def valuation(q: Fraction | int, p: int) -> int | float:
    """p-adic valuation of q; ``math.inf`` for q = 0."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num = q.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^m given by its representative in [0, p^m)."""

    value: int
    p: int
    exp: int

    def __post_init__(self):
        _require_prime(self.p)
        if self.exp < 1:
            raise ValueError(f"modulus exponent must be >= 1, got {self.exp}")
        if not 0 <= self.value < self.p**self.exp:
            raise ValueError(f"residue {self.value} out of range mod {self.p}^{self.exp}")

    @property
    def modulus(self) -> int:
        return self.p**self.exp


def reduce_mod(q: Fraction | int, p: int, m: int = 1) -> Residue:
    """Reduce a p-integral rational mod p^m via a modular inverse of the denominator."""
    _require_prime(p)
    if m < 1:
        raise ValueError(f"modulus exponent must be >= 1, got {m}")
    q = Fraction(q)
    if q != 0 and valuation(q, p) < 0:
        raise NotPAdicIntegerError(f"{format_rational(q)} has a negative {p}-adic valuation")
    mod = p**m
    value = q.numerator * pow(q.denominator, -1, mod) % mod
    return Residue(value, p, m)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in increasing order, by trial division."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# Growing prime sieve shared by the enumeration helpers.  The memo only
# caches pure results, so concurrent readers see behaviour as if it were
# absent; growth happens under a lock.
_sieve_lock = threading.Lock()
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]
_SIEVE_LIMIT = 14


def _extend_sieve(limit: int) -> None:
    global _PRIMES, _SIEVE_LIMIT
    with _sieve_lock:
        if limit <= _SIEVE_LIMIT:
            return
        limit = max(limit, 2 * _SIEVE_LIMIT)
        flags = bytearray([1]) * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for f in range(2, math.isqrt(limit) + 1):
            if flags[f]:
                flags[f * f :: f] = bytearray(len(range(f * f, limit + 1, f)))
        _PRIMES = [i for i, fl in enumerate(flags) if fl]
        _SIEVE_LIMIT = limit


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit > _SIEVE_LIMIT:
        _extend_sieve(limit)
    primes = _PRIMES
    return primes[: bisect_left(primes, limit + 1)]


def nth_prime(n: int) -> int:
    """The n-th prime, 1-based."""
    if n < 1:
        raise ValueError(f"prime index must be >= 1, got {n}")
    while len(_PRIMES) < n:
        # overshoot estimate of p_n, then grow geometrically if short
        est = 100 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 10
        _extend_sieve(max(est, 2 * _SIEVE_LIMIT))
    return _PRIMES[n - 1]


def prime_index(p: int) -> int:
    """1-based rank of p among the primes."""
    _require_prime(p)
    if p > _SIEVE_LIMIT:
        _extend_sieve(p)
    return bisect_left(_PRIMES, p) + 1
