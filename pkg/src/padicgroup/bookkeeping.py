"""Frozen enumeration conventions.

Every artifact this package produces depends on the bookkeeping fixed
here: the pairing bijection, the orderings of rationals and integers, the
coding of finite sequences, the enumerations of rational and integer
vectors, and the assignment of a nonzero integer vector to every prime.
The rules are spelled out in ``CONVENTIONS`` and hashed into a fingerprint
that is embedded in every persisted artifact; two artifacts interoperate
only when their fingerprints agree.
"""

from __future__ import annotations

import hashlib
import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import is_prime, nth_prime, prime_index
from .errors import CapacityExceededError, EnumerationRangeError, NotPrimeError
from .vectors import FinVec

CONVENTIONS = """\
bookkeeping conventions, version 1

pairing         pair(i, j) = (i+j-2)(i+j-1)/2 + i on positive integers,
                walking anti-diagonals; pair0(x, y) = pair(x+1, y+1) - 1 is
                the zero-based form.
rationals       reduced fractions ordered by the key (h, numerator,
                denominator) with height h = max(|numerator|, denominator);
                enum_rat is 1-based, its 0-based form shifts by one.
integers        the same height order restricted to integers:
                -1, 0, 1, -2, 2, -3, 3, ...
sequences       finite sequences of nonnegative integers coded by s() = 0
                and s(x::rest) = pair0(x, s(rest)) + 1.
rational vecs   index i decodes i-1 to a sequence, maps entries through the
                0-based rational order onto components 1..n; a trailing zero
                component marks a non-canonical code and yields the zero
                vector.  The index of a vector encodes its canonical
                (trailing-zero-free) component list.
integer vecs    the same decoding with the 0-based integer order, skipping
                codes that yield the zero vector; the enumeration is
                1-based and bijective onto nonzero vectors.
prime classes   the n-th prime is assigned the integer vector at index i
                where (i, j) = unpair(n); each class is infinite.
hyperplanes     solution sets of <m, [x]> = a over (Z/p)^l enumerated by
                writing n-1 in base p onto the non-pivot coordinates in
                increasing position order (lowest digit at the smallest
                position) and solving for the pivot, the largest position
                in the support of [x]; when [x] = 0 all coordinates are
                free.  Representatives are lifted to {0..p-1}.
blocks          block k (k >= 1) holds k+1 vectors taken from the stream
                that repeats the hyperplane enumeration round-robin; block
                k consumes stream items (k-1)(k+2)/2 + 1 .. k(k+3)/2.  The
                j-th vector of a block (1 <= j <= k) is perturbed by
                p^(s+1) at position j, where s is minimal with
                p^(s+1) > k(p-1); vector 0 is left alone.
context         for a prime p with assigned vector x: l = 1 + max(p,
                max support(x)); an index i is relevant when i < p-1 and p
                divides no component denominator of the i-th rational
                vector; a = 0 when [x] = 0 and otherwise the smallest
                nonzero residue distinct from <[-v_i], [x]> for every
                relevant i.
"""

FINGERPRINT = "v1:" + hashlib.sha256(CONVENTIONS.encode()).hexdigest()[:16]


def fingerprint() -> str:
    """Identifier of the frozen conventions above."""
    return FINGERPRINT


# ---------------------------------------------------------------------------
# pairing

def pair(i: int, j: int) -> int:
    """Anti-diagonal pairing bijection on positive integers."""
    if i < 1 or j < 1:
        raise EnumerationRangeError(f"pair needs positive arguments, got ({i}, {j})")
    return (i + j - 2) * (i + j - 1) // 2 + i


def unpair(n: int) -> tuple[int, int]:
    if n < 1:
        raise EnumerationRangeError(f"unpair needs a positive argument, got {n}")
    x, y = unpair0(n - 1)
    return x + 1, y + 1


def pair0(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + x


def unpair0(z: int) -> tuple[int, int]:
    t = (isqrt(8 * z + 1) - 1) // 2
    x = z - t * (t + 1) // 2
    return x, t - x


# ---------------------------------------------------------------------------
# scalar enumerations

_rat_lock = threading.Lock()
_rat_blocks: list[list[Fraction]] = [[]]  # block h at position h; block 0 empty
_rat_cum: list[int] = [0]  # cumulative counts through block h


def _rat_block(h: int) -> list[Fraction]:
    """All reduced fractions of height h, ordered by (numerator, denominator)."""
    out = []
    for num in range(-h, h + 1):
        for den in range(1, h + 1):
            if max(abs(num), den) == h and gcd(abs(num), den) == 1:
                out.append(Fraction(num, den))
    return out


def _grow_rat_blocks(h: int) -> None:
    with _rat_lock:
        while len(_rat_blocks) <= h:
            block = _rat_block(len(_rat_blocks))
            _rat_blocks.append(block)
            _rat_cum.append(_rat_cum[-1] + len(block))


def enum_rat(n: int) -> Fraction:
    """The n-th rational (1-based) in the height order."""
    if n < 1:
        raise EnumerationRangeError(f"rational index must be >= 1, got {n}")
    h = len(_rat_blocks) - 1
    while _rat_cum[-1] < n:
        # block sizes grow linearly, so heights grow like sqrt(n)
        h = max(h + 1, isqrt(n // 2))
        _grow_rat_blocks(h)
    lo, hi = 1, len(_rat_cum) - 1
    while lo < hi:  # smallest block with cumulative count >= n
        mid = (lo + hi) // 2
        if _rat_cum[mid] < n:
            lo = mid + 1
        else:
            hi = mid
    return _rat_blocks[lo][n - 1 - _rat_cum[lo - 1]]


def rat_code0(q: Fraction | int) -> int:
    """0-based position of q in the height order (inverse of enum_rat, shifted)."""
    q = Fraction(q)
    h = max(abs(q.numerator), q.denominator)
    _grow_rat_blocks(h)
    return _rat_cum[h - 1] + _rat_blocks[h].index(q)


def enum_rat0(c: int) -> Fraction:
    return enum_rat(c + 1)


def int_at0(c: int) -> int:
    """0-based integer enum in height order: -1, 0, 1, -2, 2, -3, 3, ..."""
    if c < 0:
        raise EnumerationRangeError(f"integer code must be >= 0, got {c}")
    if c < 3:
        return c - 1
    h = 2 + (c - 3) // 2
    return -h if (c - 3) % 2 == 0 else h


def int_code0(v: int) -> int:
    if -1 <= v <= 1:
        return v + 1
    return 3 + 2 * (abs(v) - 2) + (0 if v < 0 else 1)


# ---------------------------------------------------------------------------
# sequence coding

def decode_seq(code: int) -> list[int]:
    """Finite sequence of nonnegative integers coded by ``code`` >= 0."""
    if code < 0:
        raise EnumerationRangeError(f"sequence code must be >= 0, got {code}")
    out = []
    while code:
        x, code = unpair0(code - 1)
        out.append(x)
    return out


def encode_seq(seq: list[int]) -> int:
    code = 0
    for x in reversed(seq):
        code = pair0(x, code) + 1
    return code


# ---------------------------------------------------------------------------
# vector enumerations

@lru_cache(maxsize=1 << 16)
def enum_qvec(i: int) -> FinVec:
    """The i-th finitely supported rational vector (1-based, surjective)."""
    if i < 1:
        raise EnumerationRangeError(f"vector index must be >= 1, got {i}")
    seq = decode_seq(i - 1)
    vals = [enum_rat0(c) for c in seq]
    if vals and vals[-1] == 0:
        return FinVec()
    return FinVec(enumerate(vals, start=1))


def qvec_index(v: FinVec) -> int:
    """Smallest index whose decode equals v (encodes the canonical component list)."""
    if v.is_zero:
        return 1
    top = v.max_support
    return encode_seq([rat_code0(Fraction(v[i])) for i in range(1, top + 1)]) + 1


def _intvec_decode(code: int) -> FinVec:
    seq = decode_seq(code - 1)
    vals = [int_at0(c) for c in seq]
    if vals and vals[-1] == 0:
        return FinVec()
    return FinVec(enumerate(vals, start=1))


_iv_lock = threading.Lock()
_iv_vecs: list[FinVec] = []  # i-th nonzero vector at position i-1
_iv_codes: list[int] = []  # its code
_iv_scanned = 0  # codes 1.._iv_scanned processed

DEFAULT_SCAN_CAP = 1_000_000


def _iv_extend(*, count: int | None = None, code: int | None = None, cap: int = DEFAULT_SCAN_CAP) -> None:
    global _iv_scanned
    with _iv_lock:
        while (count is not None and len(_iv_vecs) < count) or (
            code is not None and _iv_scanned < code
        ):
            if _iv_scanned >= cap:
                raise CapacityExceededError(
                    f"integer-vector scan passed the cap of {cap} codes",
                    required=_iv_scanned + 1,
                    cap=cap,
                )
            _iv_scanned += 1
            vec = _intvec_decode(_iv_scanned)
            if not vec.is_zero:
                _iv_vecs.append(vec)
                _iv_codes.append(_iv_scanned)


def intvec_at(i: int, scan_cap: int = DEFAULT_SCAN_CAP) -> FinVec:
    """The i-th nonzero finitely supported integer vector (1-based)."""
    if i < 1:
        raise EnumerationRangeError(f"vector index must be >= 1, got {i}")
    _iv_extend(count=i, cap=scan_cap)
    return _iv_vecs[i - 1]


def intvec_index(v: FinVec, scan_cap: int = DEFAULT_SCAN_CAP) -> int:
    """Position of a nonzero integer vector in the enumeration."""
    if v.is_zero:
        raise EnumerationRangeError("the zero vector is not enumerated")
    for _, val in v.items():
        if Fraction(val).denominator != 1:
            raise ValueError(f"not an integer vector: {v!r}")
    top = v.max_support
    code = encode_seq([int_code0(int(v[i])) for i in range(1, top + 1)])
    code += 1
    _iv_extend(code=code, cap=scan_cap)
    pos = _bisect(_iv_codes, code)
    if pos is None:  # cannot happen: canonical codes always decode nonzero
        raise EnumerationRangeError(f"vector {v!r} has no enumeration slot")
    return pos + 1


def _bisect(codes: list[int], code: int) -> int | None:
    lo, hi = 0, len(codes)
    while lo < hi:
        mid = (lo + hi) // 2
        if codes[mid] < code:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo < len(codes) and codes[lo] == code else None


# ---------------------------------------------------------------------------
# prime partition

def partition_vector(p: int, scan_cap: int = DEFAULT_SCAN_CAP) -> FinVec:
    """The nonzero integer vector whose class contains the prime p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    i, _ = unpair(prime_index(p))
    return intvec_at(i, scan_cap)


def partition_members(
    v: FinVec, count: int, prime_cap: int = 1_000_000, scan_cap: int = DEFAULT_SCAN_CAP
) -> list[int]:
    """The first ``count`` primes whose class vector is v, ascending."""
    if count < 0:
        raise EnumerationRangeError(f"count must be >= 0, got {count}")
    i = intvec_index(v, scan_cap)
    out = []
    for j in range(1, count + 1):
        p = nth_prime(pair(i, j))
        if p > prime_cap:
            raise CapacityExceededError(
                f"partition member {p} exceeds the prime cap {prime_cap}",
                required=p,
                cap=prime_cap,
            )
        out.append(p)
    return out
