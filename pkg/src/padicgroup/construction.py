"""Per-prime construction data.

For each prime p the library fixes a finite-window description of an
infinite family of integer "condition vectors".  An element (x0, x) of
the ambient group passes the p-part of the membership criterion when
x0 + <v, x> is a p-adic integer for every condition vector v of p.

The family is built in three frozen, deterministic steps:

1. A level set over Z/p: all vectors in (Z/p)^width whose inner product
   with the reduced partition vector of p equals the target residue.
   The target dodges finitely many forbidden values (see build_context)
   so that the freeness argument downstream can always pick its pivot.
2. A round-robin stream over the level set, consumed in blocks: block k
   takes the next k+1 stream items, lifted to {0..p-1} representatives.
   The stream cycles so every level-set element is eventually lifted.
3. A diagonal perturbation: vector j of block k gains p^(s+1) on
   coordinate j, with s minimal such that p^(s+1) > k(p-1).  Reductions
   mod p stay in the level set, while the k truncated differences form
   a strictly diagonally dominant matrix in the p-adic sense, hence are
   nonsingular.

window_residues computes the exact set of residues of the whole family
on a finite window mod p^m; that finiteness makes membership decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import is_prime, reduce_mod
from .bookkeeping import FINGERPRINT, enum_qvec, partition_vector
from .config import DEFAULT, Config
from .errors import CapacityExceededError, EnumerationRangeError, NotPrimeError
from .vectors import FinVec


@dataclass(frozen=True)
class PrimeContext:
    """Frozen construction data of one prime."""

    p: int
    vec: FinVec                # partition vector assigned to p
    width: int                 # vectors of the family live in (Z/p)^width
    vec_mod: tuple[int, ...]   # vec reduced mod p on coordinates 1..width
    target: int                # required inner-product residue in 0..p-1
    relevant: tuple[int, ...]  # enumeration indices the target must dodge

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "x": self.vec.to_json(),
            "l": self.width,
            "relevant": list(self.relevant),
            "a": self.target,
            "fingerprint": FINGERPRINT,
        }


@lru_cache(maxsize=None)
def build_context(p: int, config: Config = DEFAULT) -> PrimeContext:
    """Deterministic context of a prime: window width, target, relevance.

    The width exceeds both p and the support of the partition vector.
    An enumeration index i is relevant when i < p-1 and p divides no
    denominator of the i-th rational vector.  The target residue is 0
    when the partition vector vanishes mod p; otherwise it is the
    smallest nonzero residue distinct from every inner product
    <-reduced(i-th vector), reduced partition vector> over relevant i.
    At most p-2 indices are relevant, so a legal target always exists.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    vec = partition_vector(p, scan_cap=config.scan_cap)
    width = 1 + max(p, vec.max_support)
    vec_mod = tuple(int(vec[i]) % p for i in range(1, width + 1))
    relevant = tuple(
        i for i in range(1, p - 1)
        if enum_qvec(i).denominator_lcm() % p != 0
    )
    if not any(vec_mod):
        target = 0
    else:
        forbidden = set()
        for i in relevant:
            value = -enum_qvec(i).inner(vec)
            forbidden.add(reduce_mod(value, p, 1).value)
        target = next(t for t in range(1, p) if t not in forbidden)
    return PrimeContext(p, vec, width, vec_mod, target, relevant)


# ---------------------------------------------------------------------------
# the level set

def level_count(ctx: PrimeContext) -> int:
    """Exact size of the level set (a big integer for large p)."""
    if not any(ctx.vec_mod):
        return ctx.p ** ctx.width
    return ctx.p ** (ctx.width - 1)


def level_contains(ctx: PrimeContext, v: FinVec) -> bool:
    """Whether a residue vector lies in the level set."""
    for i, value in v.items():
        if i > ctx.width:
            raise ValueError(f"support reaches {i}, window is 1..{ctx.width}")
        if not isinstance(value, int) or not 0 < value < ctx.p:
            raise ValueError("level vectors carry residues in 0..p-1")
    total = sum(value * ctx.vec_mod[i - 1] for i, value in v.items())
    return total % ctx.p == ctx.target


def _pivot(ctx: PrimeContext) -> int | None:
    """Largest coordinate where the reduced partition vector is nonzero."""
    for i in range(ctx.width, 0, -1):
        if ctx.vec_mod[i - 1]:
            return i
    return None


def _digit_entries(idx: int, p: int, coords) -> dict:
    # base-p digits of idx, smallest coordinate varying fastest
    entries = {}
    for c in coords:
        idx, digit = divmod(idx, p)
        if digit:
            entries[c] = digit
    return entries


def level_at(ctx: PrimeContext, n: int) -> FinVec:
    """The n-th level-set element, 1-based.

    Free coordinates take the base-p digits of n-1 (coordinate 1, or the
    smallest free coordinate, varying fastest); the pivot coordinate is
    solved from the inner-product constraint.
    """
    count = level_count(ctx)
    if not 1 <= n <= count:
        raise EnumerationRangeError(f"level index {n} outside 1..{count}")
    idx = n - 1
    pivot = _pivot(ctx)
    if pivot is None:
        return FinVec(_digit_entries(idx, ctx.p, range(1, ctx.width + 1)))
    free = [c for c in range(1, ctx.width + 1) if c != pivot]
    entries = _digit_entries(idx, ctx.p, free)
    partial = sum(value * ctx.vec_mod[c - 1] for c, value in entries.items())
    inv = pow(ctx.vec_mod[pivot - 1], -1, ctx.p)
    solved = (ctx.target - partial) * inv % ctx.p
    if solved:
        entries[pivot] = solved
    return FinVec(entries)


# ---------------------------------------------------------------------------
# blocks of lifted, perturbed vectors

@dataclass(frozen=True)
class ConditionBlock:
    """k+1 integer vectors whose reductions mod p lie in the level set."""

    k: int
    s: int                       # perturbation exponent: p^(s+1) > k(p-1), s minimal
    vectors: tuple[FinVec, ...]  # vector 0 unperturbed; vector j carries +p^(s+1) e_j


def perturbation_exponent(p: int, k: int) -> int:
    s = 0
    while p ** (s + 1) <= k * (p - 1):
        s += 1
    return s


@lru_cache(maxsize=None)
def condition_block(ctx: PrimeContext, k: int) -> ConditionBlock:
    """Block k of the family: stream items (k-1)(k+2)/2+1 .. k(k+3)/2.

    Stream item n lifts the level-set element 1 + ((n-1) mod level_count)
    to its {0..p-1} representative, so the stream is a round robin over
    the whole level set.
    """
    if k < 1:
        raise EnumerationRangeError("block index must be >= 1")
    s = perturbation_exponent(ctx.p, k)
    count = level_count(ctx)
    start = (k - 1) * (k + 2) // 2
    lifts = [level_at(ctx, 1 + (start + j) % count) for j in range(k + 1)]
    step = ctx.p ** (s + 1)
    vectors = [lifts[0]]
    vectors += [lifts[j] + FinVec.single(j, step) for j in range(1, k + 1)]
    return ConditionBlock(k=k, s=s, vectors=tuple(vectors))


def visible_block_limit(p: int, m: int) -> int:
    """Largest k whose perturbation survives mod p^m (0 when none does)."""
    if m <= 1:
        return 0
    return (p ** (m - 1) - 1) // (p - 1)


# ---------------------------------------------------------------------------
# exact residue sets on finite windows

def iter_window_residues(ctx: PrimeContext, w: int, m: int,
                         config: Config = DEFAULT):
    """Exact residues mod p^m of the whole family on window [1, w].

    Yields each residue vector once, deterministically.  Two layers:

    * level-set truncations: the lifts use {0..p-1} representatives, so
      every family vector whose perturbation vanishes mod p^m (or which
      is unperturbed) reduces to a level-set truncation.  Beyond the
      construction width all lift coordinates are zero, so the window is
      clipped to min(w, width) and zero-padded; on the clipped window the
      truncations form either all of {0..p-1}^w' (when the reduced
      partition vector vanishes or its support leaves the window) or the
      affine solution set of the inner-product constraint.
    * visible blocks: perturbations p^(s+1) with s+1 < m survive; the
      exponent is nondecreasing in k, so visible blocks form a finite
      initial range enumerated explicitly.
    """
    if m < 1:
        raise EnumerationRangeError("modulus exponent must be >= 1")
    if w < 0:
        raise EnumerationRangeError("window must be >= 0")
    if w == 0:
        yield FinVec.zero()
        return
    p = ctx.p
    w2 = min(w, ctx.width)
    pivot = _pivot(ctx)
    affine = pivot is not None and pivot <= w2
    hyper_count = p ** (w2 - 1) if affine else p ** w2
    kmax = visible_block_limit(p, m)
    required = hyper_count + kmax * (kmax + 3) // 2
    if required > config.residue_cap:
        raise CapacityExceededError(
            f"residue set on window {w} mod {p}^{m} needs {required} entries",
            required=required, cap=config.residue_cap)
    seen = set()
    if affine:
        free = [c for c in range(1, w2 + 1) if c != pivot]
        inv = pow(ctx.vec_mod[pivot - 1], -1, p)
        for idx in range(hyper_count):
            entries = _digit_entries(idx, p, free)
            partial = sum(v * ctx.vec_mod[c - 1] for c, v in entries.items())
            solved = (ctx.target - partial) * inv % p
            if solved:
                entries[pivot] = solved
            vec = FinVec(entries)
            if vec not in seen:
                seen.add(vec)
                yield vec
    else:
        for idx in range(hyper_count):
            vec = FinVec(_digit_entries(idx, p, range(1, w2 + 1)))
            if vec not in seen:
                seen.add(vec)
                yield vec
    modulus = p ** m
    for k in range(1, kmax + 1):
        block = condition_block(ctx, k)
        for v in block.vectors:
            entries = {}
            for i, value in v.items():
                if i <= w:
                    res = value % modulus
                    if res:
                        entries[i] = res
            vec = FinVec(entries)
            if vec not in seen:
                seen.add(vec)
                yield vec


def window_residues(ctx: PrimeContext, w: int, m: int,
                    config: Config = DEFAULT) -> frozenset:
    return frozenset(iter_window_residues(ctx, w, m, config))
