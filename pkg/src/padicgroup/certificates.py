"""Divisibility witnesses and freeness certificates, with independent verifiers.

Two kinds of portable evidence are produced here:

* A divisibility witness for a nonzero coset modulo the integer axis: an
  explicit z with p*z congruent to the cleared element modulo the axis,
  plus Bezout data turning that into divisibility of the original element.
* A freeness certificate for a finite-rank subgroup whose span misses the
  integer axis: a functional lambda reproducing x0 from the vector part, a
  finite bad-prime set with nonsingular translate matrices bounding all
  denominators by an explicit D, and a basis of the pure closure.

Verifiers recheck every claim from scratch and return a reason on failure
instead of raising, so tampered artifacts are diagnosed, not crashed on.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from . import linalg
from .arith import format_rational, is_prime, parse_rational, prime_factors, primes_up_to, valuation
from .bookkeeping import FINGERPRINT, enum_qvec, qvec_index, partition_vector
from .config import DEFAULT, Config
from .construction import build_context, condition_block
from .errors import (
    CapacityExceededError,
    NoQuotientContentError,
    NotInGroupError,
    SpanMeetsAxisError,
    WrongPrimeError,
)
from .group import element_row, in_integer_axis, is_member, purify, row_element
from .vectors import FinVec, GroupElement, min_valuation


@dataclasses.dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "fingerprint": FINGERPRINT}


@dataclasses.dataclass(frozen=True)
class DivisibilityWitness:
    p: int
    a_int: int
    d: int
    z: GroupElement
    bezout: tuple[int, int]    # (a, b) with a*d + b*p = 1
    fingerprint: str = FINGERPRINT

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a_int": self.a_int,
            "d": self.d,
            "z": self.z.to_json(),
            "bezout": list(self.bezout),
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivisibilityWitness":
        required = {"p", "a_int", "d", "z", "bezout", "fingerprint"}
        if set(data) != required:
            raise ValueError(f"witness keys must be exactly {sorted(required)}")
        a, b = data["bezout"]
        return cls(
            p=int(data["p"]),
            a_int=int(data["a_int"]),
            d=int(data["d"]),
            z=GroupElement.from_json(data["z"]),
            bezout=(int(a), int(b)),
            fingerprint=str(data["fingerprint"]),
        )


def divisibility_witness(e: GroupElement, p: int, config: Config = DEFAULT) -> DivisibilityWitness:
    """Witness that p divides the coset of e modulo the integer axis.

    Requires p in the partition class of the cleared vector part d*x and
    p coprime to the cleared denominator d.  The witness z satisfies
    p*z - d*e in the axis; the Bezout pair (a, b) with a*d + b*p = 1 then
    gives eta = a*z + b*e with e - p*eta in the axis.
    """
    if not is_member(e, config):
        raise NotInGroupError(f"element is not in the group: {e!r}")
    if e.x.is_zero:
        raise NoQuotientContentError("element lies on the integer axis; its coset is zero")
    d = e.denominator_lcm()
    cleared = e.scale(d)
    if d % p == 0:
        raise WrongPrimeError(f"prime {p} divides the cleared denominator {d}")
    class_vec = partition_vector(p, config.scan_cap)
    if class_vec != cleared.x:
        raise WrongPrimeError(
            f"prime {p} lies in the partition class of {class_vec!r}, not of {cleared.x!r}"
        )
    ctx = build_context(p, config)
    a_int = ctx.target
    z = GroupElement(Fraction(-a_int, p), cleared.x.scale(Fraction(1, p)))
    if not is_member(z, config):  # pragma: no cover - construction guarantees this
        raise RuntimeError(f"witness candidate unexpectedly outside the group: {z!r}")
    a = pow(d, -1, p)
    b = (1 - a * d) // p
    return DivisibilityWitness(p=p, a_int=a_int, d=d, z=z, bezout=(a, b))


def verify_witness(e: GroupElement, wit: DivisibilityWitness, config: Config = DEFAULT) -> CheckOutcome:
    """Recheck a divisibility witness from scratch."""
    if wit.fingerprint != FINGERPRINT:
        return CheckOutcome(False, f"fingerprint {wit.fingerprint!r} does not match {FINGERPRINT!r}")
    if not is_prime(wit.p):
        return CheckOutcome(False, f"{wit.p} is not prime")
    if not is_member(e, config):
        return CheckOutcome(False, "element is not in the group")
    if e.x.is_zero:
        return CheckOutcome(False, "element lies on the integer axis")
    if wit.d != e.denominator_lcm():
        return CheckOutcome(False, f"d = {wit.d} is not the cleared denominator {e.denominator_lcm()}")
    if wit.d % wit.p == 0:
        return CheckOutcome(False, f"prime {wit.p} divides d = {wit.d}")
    cleared = e.scale(wit.d)
    if partition_vector(wit.p, config.scan_cap) != cleared.x:
        return CheckOutcome(False, f"prime {wit.p} is not in the partition class of the cleared vector")
    ctx = build_context(wit.p, config)
    if wit.a_int % wit.p != ctx.target:
        return CheckOutcome(False, f"a_int = {wit.a_int} does not represent the context constant {ctx.target}")
    shift = wit.z.scale(wit.p) - cleared
    if not in_integer_axis(shift):
        return CheckOutcome(False, "p*z - d*e does not lie on the integer axis")
    if not is_member(wit.z, config):
        return CheckOutcome(False, "z is not in the group")
    a, b = wit.bezout
    if a * wit.d + b * wit.p != 1:
        return CheckOutcome(False, f"bezout pair {wit.bezout} does not satisfy a*d + b*p = 1")
    return CheckOutcome(True)


@dataclasses.dataclass(frozen=True)
class BadPrimeRecord:
    p: int
    selected: tuple[int, ...]                       # indices into the k+1 translates
    z_rows: tuple[tuple[Fraction, ...], ...]        # the selected truncations, row-major
    m: int
    r: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "selected": list(self.selected),
            "Z": [[format_rational(v) for v in row] for row in self.z_rows],
            "m": self.m,
            "r": self.r,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BadPrimeRecord":
        required = {"p", "selected", "Z", "m", "r"}
        if set(data) != required:
            raise ValueError(f"bad-prime record keys must be exactly {sorted(required)}")
        return cls(
            p=int(data["p"]),
            selected=tuple(int(i) for i in data["selected"]),
            z_rows=tuple(tuple(parse_rational(v) for v in row) for row in data["Z"]),
            m=int(data["m"]),
            r=int(data["r"]),
        )


@dataclasses.dataclass(frozen=True)
class FreenessCertificate:
    lam: FinVec
    index: int
    k: int
    bad: tuple[BadPrimeRecord, ...]
    D: int
    basis: tuple[GroupElement, ...]
    fingerprint: str = FINGERPRINT

    @property
    def good_params(self) -> dict:
        return {
            "k": self.k,
            "index": self.index,
            "denominator_primes": prime_factors(self.lam.denominator_lcm()),
        }

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "index": self.index,
            "k": self.k,
            "good_params": self.good_params,
            "bad_primes": [rec.to_json() for rec in self.bad],
            "D": self.D,
            "basis": [e.to_json() for e in self.basis],
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FreenessCertificate":
        required = {"lambda", "index", "k", "good_params", "bad_primes", "D", "basis", "fingerprint"}
        if set(data) != required:
            raise ValueError(f"certificate keys must be exactly {sorted(required)}")
        return cls(
            lam=FinVec.from_json(data["lambda"]),
            index=int(data["index"]),
            k=int(data["k"]),
            bad=tuple(BadPrimeRecord.from_json(rec) for rec in data["bad_primes"]),
            D=int(data["D"]),
            basis=tuple(GroupElement.from_json(e) for e in data["basis"]),
            fingerprint=str(data["fingerprint"]),
        )


def _solve_lambda(gens: list[GroupElement], k: int) -> FinVec:
    """Find lambda with x0 = <lambda, x> on every generator, or raise.

    Free coordinates are set to zero, keeping the support and hence the
    enumeration index small.  Inconsistency produces a nonzero element of
    the span lying on the integer axis, which is packaged as the witness.
    """
    rows = [[g.x[i] for i in range(1, k + 1)] for g in gens]
    rhs = [g.x0 for g in gens]
    t, u = linalg.solve_right(rows, rhs, k)
    if t is None:
        c = GroupElement.zero()
        for ui, g in zip(u, gens):
            c = c + g.scale(ui)
        # c = (c0, 0) with c0 != 0; scale to a positive integer axis element
        n = abs(c.x0.numerator)
        witness = GroupElement(Fraction(n), FinVec.zero())
        raise SpanMeetsAxisError(
            f"span contains the nonzero axis element ({n}, 0)", witness=witness
        )
    return FinVec({i: v for i, v in enumerate(t, start=1) if v != 0})


def _bad_primes(lam: FinVec, index: int, k: int, config: Config) -> list[int]:
    """Primes that are not good for (k, index, lambda): p < k, or p - 1 <= index,
    or p divides a denominator of lambda."""
    den_primes = set(prime_factors(lam.denominator_lcm()))
    cutoff = max(k - 1, index + 1)
    worst = max([cutoff] + list(den_primes))
    if worst > config.bad_prime_cap:
        raise CapacityExceededError(
            f"certificate-incomplete: bad primes reach {worst}",
            required=worst, cap=config.bad_prime_cap,
        )
    return sorted(set(primes_up_to(cutoff)) | den_primes)


def _translate_rows(p: int, k: int, lam: FinVec, config: Config) -> list[list[Fraction]]:
    block = condition_block(build_context(p, config), k)
    return [[(phi + lam)[i] for i in range(1, k + 1)] for phi in block.vectors]


def _select_independent(rows: list[list[Fraction]], k: int) -> tuple[list[int], list[list[Fraction]]]:
    """Greedily pick k rows forming a nonsingular matrix (always possible:
    consecutive differences are strictly diagonally dominant)."""
    selected, chosen = [], []
    for idx, row in enumerate(rows):
        if linalg.rank(chosen + [row], k) > len(chosen):
            selected.append(idx)
            chosen.append(row)
        if len(chosen) == k:
            return selected, chosen
    raise RuntimeError("translate truncations are rank-deficient; construction invariant violated")


def _record_for_prime(p: int, k: int, lam: FinVec, config: Config) -> BadPrimeRecord:
    rows = _translate_rows(p, k, lam, config)
    selected, chosen = _select_independent(rows, k)
    inv = linalg.invert(chosen)
    m = max(0, -min(valuation(v, p) for row in inv for v in row))
    r = max(0, -min(0, min_valuation(lam, p)))
    return BadPrimeRecord(
        p=p,
        selected=tuple(selected),
        z_rows=tuple(tuple(row) for row in chosen),
        m=m,
        r=r,
    )


def certify_free(gens, config: Config = DEFAULT) -> FreenessCertificate:
    """Produce a freeness certificate for the subgroup generated by gens.

    Applicable only when the rational span misses the integer axis; a
    nonzero axis element in the span aborts with SpanMeetsAxisError
    carrying that element.  The certificate bounds every denominator
    occurring in the pure closure by D, and its basis is the pure closure
    computed with that certified bound.
    """
    gens = list(gens)
    for idx, g in enumerate(gens):
        if not is_member(g, config):
            raise NotInGroupError(f"generator {idx} is not a group element: {g!r}")
    k = max([1] + [g.x.max_support for g in gens])
    lam = _solve_lambda(gens, k)
    index = qvec_index(lam)
    bad = [_record_for_prime(p, k, lam, config) for p in _bad_primes(lam, index, k, config)]
    D = math.prod(rec.p ** (rec.m + rec.r) for rec in bad)
    basis = purify(gens, bound=D, config=config).basis
    return FreenessCertificate(lam=lam, index=index, k=k, bad=tuple(bad), D=D, basis=basis)


def verify_certificate(gens, cert: FreenessCertificate, config: Config = DEFAULT) -> CheckOutcome:
    """Recheck every certificate invariant independently of certify_free."""
    gens = list(gens)
    if cert.fingerprint != FINGERPRINT:
        return CheckOutcome(False, f"fingerprint {cert.fingerprint!r} does not match {FINGERPRINT!r}")
    for idx, g in enumerate(gens):
        if not is_member(g, config):
            return CheckOutcome(False, f"generator {idx} is not in the group")
    k = max([1] + [g.x.max_support for g in gens])
    if cert.k != k:
        return CheckOutcome(False, f"k = {cert.k} but the generators need {k}")
    if enum_qvec(cert.index) != cert.lam:
        return CheckOutcome(False, f"index {cert.index} does not enumerate the stored lambda")
    for idx, g in enumerate(gens):
        if g.x0 != cert.lam.inner(g.x):
            return CheckOutcome(False, f"generator {idx} violates x0 = <lambda, x>")
    try:
        expected_bad = _bad_primes(cert.lam, cert.index, k, config)
    except CapacityExceededError as exc:
        return CheckOutcome(False, str(exc))
    if [rec.p for rec in cert.bad] != expected_bad:
        return CheckOutcome(False, f"bad primes {[rec.p for rec in cert.bad]} differ from {expected_bad}")
    for rec in cert.bad:
        rows = _translate_rows(rec.p, k, cert.lam, config)
        if len(rec.selected) != k or len(set(rec.selected)) != k:
            return CheckOutcome(False, f"record for prime {rec.p} does not select k distinct rows")
        if any(not 0 <= i <= k for i in rec.selected):
            return CheckOutcome(False, f"record for prime {rec.p} selects out-of-range rows")
        if [list(row) for row in rec.z_rows] != [rows[i] for i in rec.selected]:
            return CheckOutcome(False, f"stored matrix for prime {rec.p} does not match the translates")
        square = [list(row) for row in rec.z_rows]
        if linalg.det(square) == 0:
            return CheckOutcome(False, f"matrix for prime {rec.p} is singular")
        inv = linalg.invert(square)
        m = max(0, -min(valuation(v, rec.p) for row in inv for v in row))
        if rec.m != m:
            return CheckOutcome(False, f"record for prime {rec.p} claims m = {rec.m}, recomputed {m}")
        r = max(0, -min(0, min_valuation(cert.lam, rec.p)))
        if rec.r != r:
            return CheckOutcome(False, f"record for prime {rec.p} claims r = {rec.r}, recomputed {r}")
    if cert.D != math.prod(rec.p ** (rec.m + rec.r) for rec in cert.bad):
        return CheckOutcome(False, f"D = {cert.D} is not the product of the recorded prime powers")
    for label, elems in (("basis", cert.basis), ("generator", gens)):
        for idx, e in enumerate(elems):
            if e.x.max_support > k:
                return CheckOutcome(False, f"{label} {idx} exceeds the working dimension {k}")
            dens = [e.x0.denominator] + [v.denominator for _, v in e.x.items()]
            if any(cert.D % den != 0 for den in dens):
                return CheckOutcome(False, f"{label} {idx} has a denominator not dividing D = {cert.D}")
    for idx, e in enumerate(cert.basis):
        if not is_member(e, config):
            return CheckOutcome(False, f"basis element {idx} is not in the group")
    basis_rows = [element_row(e, k) for e in cert.basis]
    gen_rows = [element_row(g, k) for g in gens]
    if basis_rows:
        lattice = linalg.RatLattice.from_rows(basis_rows, k + 1)
        if lattice.dim != len(cert.basis):
            return CheckOutcome(False, "basis rows are linearly dependent")
        for idx, row in enumerate(gen_rows):
            if not lattice.contains(row):
                return CheckOutcome(False, f"generator {idx} is not an integer combination of the basis")
    elif any(not g.is_zero for g in gens):
        return CheckOutcome(False, "empty basis cannot generate nonzero generators")
    if linalg.rank(basis_rows, k + 1) != linalg.rank(gen_rows, k + 1):
        return CheckOutcome(False, "basis span differs from generator span")
    if linalg.rank(basis_rows + gen_rows, k + 1) != linalg.rank(gen_rows, k + 1):
        return CheckOutcome(False, "basis leaves the generator span")
    return CheckOutcome(True)


def common_axis_multiple(e1: GroupElement, e2: GroupElement) -> GroupElement:
    """Shared nonzero multiple of two nonzero integer-axis elements."""
    for e in (e1, e2):
        if not in_integer_axis(e) or e.is_zero:
            raise ValueError(f"not a nonzero integer-axis element: {e!r}")
    n = math.lcm(abs(e1.x0.numerator), abs(e2.x0.numerator))
    return GroupElement(Fraction(n), FinVec.zero())
