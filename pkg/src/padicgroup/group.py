"""Membership, purification, and span tests for the divisibility-constrained group.

The group lives inside pairs (x0, x) of a rational and a finitely supported
rational vector.  An element belongs iff for every prime p the value
x0 + <phi, x> is p-integral for all condition vectors phi attached to p.
That is an infinite family, but the value only depends on phi through its
residue on the support window of x modulo a power of p, so membership
reduces to the finite residue sets produced by the construction module.

Purification computes the pure closure of a finitely generated subgroup:
all group elements some positive multiple of which falls in the rational
span of the generators.  With a certified denominator bound the result is
exact; without one the search is capped and flagged.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction

from . import linalg
from .arith import prime_factors, primes_up_to, valuation
from .bookkeeping import FINGERPRINT
from .config import DEFAULT, Config
from .construction import build_context, iter_window_residues
from .errors import CapacityExceededError, NotInGroupError
from .vectors import FinVec, GroupElement, min_valuation


@dataclasses.dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    failing_prime: int | None = None
    failing_residue: FinVec | None = None
    reason: str | None = None
    checked_primes: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "failing_prime": self.failing_prime,
            "failing_residue": None if self.failing_residue is None else self.failing_residue.to_json(),
            "reason": self.reason,
            "checked_primes": list(self.checked_primes),
            "fingerprint": FINGERPRINT,
        }


def membership(e: GroupElement, config: Config = DEFAULT) -> MembershipVerdict:
    """Decide membership, reporting the first violated (prime, residue) pair.

    Only primes dividing some component denominator can fail: condition
    vectors are integral, so they keep p-integral inputs p-integral.
    """
    primes = prime_factors(e.denominator_lcm())
    w = e.x.max_support
    for p in primes:
        ctx = build_context(p, config)
        # modulus large enough that the window residue determines the value
        m = max(1, -min(0, min_valuation(e.x, p)))
        for r in iter_window_residues(ctx, w, m, config):
            value = e.x0 + r.inner(e.x)
            if valuation(value, p) < 0:
                if e.x.is_zero:
                    reason = f"leading coordinate {e.x0} is not {p}-integral; axis elements must be integers"
                else:
                    reason = f"x0 + <r, x> = {value} is not {p}-integral"
                return MembershipVerdict(
                    member=False,
                    failing_prime=p,
                    failing_residue=r,
                    reason=reason,
                    checked_primes=tuple(primes),
                )
    return MembershipVerdict(member=True, checked_primes=tuple(primes))


def is_member(e: GroupElement, config: Config = DEFAULT) -> bool:
    return membership(e, config).member


def in_integer_axis(e: GroupElement) -> bool:
    """True iff e = (n, 0) for an integer n."""
    return e.x.is_zero and e.x0.denominator == 1


def element_row(e: GroupElement, k: int) -> list[Fraction]:
    """Flatten to [x0, x_1, ..., x_k]; requires support(x) within 1..k."""
    if e.x.max_support > k:
        raise ValueError(f"support {e.x.max_support} exceeds row width {k}")
    return [e.x0] + [e.x[i] for i in range(1, k + 1)]


def row_element(row: list[Fraction]) -> GroupElement:
    entries = {i: v for i, v in enumerate(row[1:], start=1) if v != 0}
    return GroupElement(Fraction(row[0]), FinVec(entries))


def spans_disjoint(gens1, gens2) -> bool:
    """True iff the rational spans intersect only in zero."""
    gens1, gens2 = list(gens1), list(gens2)
    k = max([0] + [g.x.max_support for g in gens1 + gens2])
    rows1 = [element_row(g, k) for g in gens1]
    rows2 = [element_row(g, k) for g in gens2]
    r1 = linalg.rank(rows1, k + 1)
    r2 = linalg.rank(rows2, k + 1)
    return r1 + r2 == linalg.rank(rows1 + rows2, k + 1)


@dataclasses.dataclass(frozen=True)
class PurifyResult:
    basis: tuple[GroupElement, ...]
    status: str                    # "complete" | "possibly-incomplete"
    probed: tuple[int, ...]        # primes at which saturation was attempted
    bound: int | None

    def to_json(self) -> dict:
        return {
            "basis": [e.to_json() for e in self.basis],
            "status": self.status,
            "probed": list(self.probed),
            "bound": self.bound,
            "fingerprint": FINGERPRINT,
        }


def _projective_tuples(p: int, d: int):
    """Coefficient tuples in {0..p-1}^d with first nonzero entry equal to 1.

    Every rank-one enlargement (1/p)v of a lattice is hit by one of these,
    so scanning them instead of all p^d tuples reaches the same fixpoint.
    """
    for lead in range(d):
        prefix = (0,) * lead + (1,)
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield prefix + tail


def _count_projective(p: int, d: int) -> int:
    return (p**d - 1) // (p - 1)


def purify(gens, bound: int | None = None, config: Config = DEFAULT) -> PurifyResult:
    """Pure closure of the subgroup generated by gens, as a lattice basis.

    Starts from the generators together with all integer points of their
    rational span (integer vectors are always members), then saturates at
    each candidate prime p: while some (1/p)-combination of the current
    basis is a member, adjoin it.  With a certified bound D the candidate
    primes are exactly the divisors of D and the fixpoint is the full pure
    closure; otherwise primes up to the configured cap are probed and the
    result is marked possibly-incomplete.
    """
    gens = list(gens)
    for idx, g in enumerate(gens):
        if not is_member(g, config):
            raise NotInGroupError(f"generator {idx} is not a group element: {g!r}")
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        return PurifyResult((), "complete", (), bound)
    k = max(g.x.max_support for g in nonzero)
    ncols = k + 1
    gen_rows = [element_row(g, k) for g in nonzero]
    int_rows = [[Fraction(v) for v in row] for row in linalg.integer_span_points(gen_rows, ncols)]
    if k == 0:
        # span lies on the axis; its members are exactly the integer points
        basis = tuple(row_element(row) for row in int_rows)
        return PurifyResult(basis, "complete", (), bound)
    lat = linalg.RatLattice.from_rows(gen_rows + int_rows, ncols)

    if bound is not None:
        if bound < 1:
            raise ValueError("bound must be a positive integer")
        primes = prime_factors(bound)
        status = "complete"
    else:
        primes = sorted(set(primes_up_to(config.purify_prime_cap)) | set(prime_factors(lat.den)))
        status = "possibly-incomplete"

    probed = []
    for p in primes:
        probed.append(p)
        rounds = 0
        while True:
            rounds += 1
            if rounds > config.purify_round_cap:
                raise CapacityExceededError(
                    f"saturation at prime {p} did not stabilize",
                    required=rounds, cap=config.purify_round_cap,
                )
            d = lat.dim
            n_candidates = _count_projective(p, d)
            if n_candidates > config.residue_cap:
                raise CapacityExceededError(
                    f"{n_candidates} saturation candidates at prime {p}",
                    required=n_candidates, cap=config.residue_cap,
                )
            rows = lat.rational_rows()
            enlarged = False
            for coeffs in _projective_tuples(p, d):
                vec = [sum(c * row[j] for c, row in zip(coeffs, rows)) / p for j in range(ncols)]
                if lat.contains(vec):
                    continue
                if is_member(row_element(vec), config):
                    lat = lat.add_row(vec)
                    enlarged = True
                    break
            if not enlarged:
                break
    basis = tuple(row_element(row) for row in lat.rational_rows())
    return PurifyResult(basis, status, tuple(probed), bound)
