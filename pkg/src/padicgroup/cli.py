"""Batch command-line front end with JSON input and output.

Every subcommand reads elements or generator sets as inline JSON or file
paths, prints exactly one JSON document (the enum subcommand prints JSON
lines), and exits 0 for affirmative results, 1 for negative ones with a
structured reason, 2 for usage problems, and 3 when a capacity cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .arith import format_rational, nth_prime
from .bookkeeping import (
    FINGERPRINT,
    enum_qvec,
    enum_rat,
    intvec_at,
    partition_members,
    partition_vector,
)
from .certificates import (
    DivisibilityWitness,
    FreenessCertificate,
    certify_free,
    divisibility_witness,
    verify_certificate,
    verify_witness,
)
from .checks import run_check
from .config import Config, load_config
from .construction import build_context
from .errors import (
    CapacityExceededError,
    EnumerationRangeError,
    FingerprintMismatchError,
    NoQuotientContentError,
    NotInGroupError,
    NotPrimeError,
    SpanMeetsAxisError,
    WrongPrimeError,
)
from .group import membership, purify
from .vectors import GroupElement


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _load_json_arg(arg: str):
    """Accept inline JSON or a path to a JSON file."""
    try:
        return json.loads(arg)
    except json.JSONDecodeError as inline_err:
        if os.path.exists(arg):
            with open(arg, encoding="utf-8") as fh:
                return json.load(fh)
        raise inline_err


def _load_element(arg: str) -> GroupElement:
    return GroupElement.from_json(_load_json_arg(arg))


def _load_gens(arg: str) -> list[GroupElement]:
    data = _load_json_arg(arg)
    if not isinstance(data, list):
        raise ValueError("generator sets must be JSON arrays of elements")
    return [GroupElement.from_json(item) for item in data]


def _cmd_ctx(args, config: Config) -> int:
    ctx = build_context(args.p, config)
    _emit(ctx.to_json())
    return 0


def _cmd_member(args, config: Config) -> int:
    verdict = membership(_load_element(args.element), config)
    _emit(verdict.to_json())
    return 0 if verdict.member else 1


def _cmd_witness(args, config: Config) -> int:
    e = _load_element(args.element)
    if args.prime is not None:
        wit = divisibility_witness(e, args.prime, config)
        _emit(wit.to_json())
        return 0
    # no prime given: witness at the first configured class primes
    d = e.denominator_lcm()
    if e.x.is_zero:
        raise NoQuotientContentError("element lies on the integer axis; its coset is zero")
    want = config.witness_prime_count
    fetch = want
    primes: list[int] = []
    while len(primes) < want:
        fetch += want
        candidates = partition_members(e.scale(d).x, fetch, config.prime_cap, config.scan_cap)
        primes = [p for p in candidates if d % p != 0][:want]
    witnesses = [divisibility_witness(e, p, config) for p in primes]
    _emit({
        "primes": primes,
        "witnesses": [w.to_json() for w in witnesses],
        "fingerprint": FINGERPRINT,
    })
    return 0


def _cmd_certify(args, config: Config) -> int:
    gens = _load_gens(args.gens)
    try:
        cert = certify_free(gens, config)
    except SpanMeetsAxisError as exc:
        _emit({
            "status": "not-applicable",
            "reason": str(exc),
            "axis_witness": exc.witness.to_json(),
            "fingerprint": FINGERPRINT,
        })
        return 1
    _emit(cert.to_json())
    return 0


def _cmd_verify_cert(args, config: Config) -> int:
    gens = _load_gens(args.gens)
    cert = FreenessCertificate.from_json(_load_json_arg(args.cert))
    out = verify_certificate(gens, cert, config)
    _emit(out.to_json())
    return 0 if out.ok else 1


def _cmd_verify_witness(args, config: Config) -> int:
    e = _load_element(args.element)
    wit = DivisibilityWitness.from_json(_load_json_arg(args.witness))
    out = verify_witness(e, wit, config)
    _emit(out.to_json())
    return 0 if out.ok else 1


def _cmd_purify(args, config: Config) -> int:
    result = purify(_load_gens(args.gens), bound=args.bound, config=config)
    _emit(result.to_json())
    return 0


def _enum_value(kind: str, n: int, config: Config):
    if kind == "rat":
        return format_rational(enum_rat(n))
    if kind == "lambda":
        return enum_qvec(n).to_json()
    if kind == "intvec":
        return intvec_at(n, config.scan_cap).to_json()
    p = nth_prime(n)
    if p > config.prime_cap:
        raise CapacityExceededError(f"prime {p} exceeds the prime cap", required=p, cap=config.prime_cap)
    return {"p": p, "vector": partition_vector(p, config.scan_cap).to_json()}


def _cmd_enum(args, config: Config) -> int:
    if args.start < 1 or args.stop < args.start:
        raise EnumerationRangeError(f"invalid range {args.start}..{args.stop}")
    _emit({"enum": args.kind, "from": args.start, "to": args.stop, "fingerprint": FINGERPRINT})
    for n in range(args.start, args.stop + 1):
        _emit({"n": n, "value": _enum_value(args.kind, n, config)})
    return 0


def _cmd_check(args, config: Config) -> int:
    params = {}
    for key in ("p", "kmax", "samples", "seed", "n", "pairs"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.element is not None:
        params["target"] = _load_element(args.element)
    report = run_check(args.name, config=config, **params)
    _emit(report.to_json())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicgroup",
        description="Exact constructions in a group of p-adically constrained rational sequences.",
    )
    parser.add_argument(
        "--version", action="version",
        version=json.dumps({"fingerprint": FINGERPRINT, "version": __version__}, sort_keys=True),
    )
    parser.add_argument("--config", help="JSON config file with cap overrides")
    parser.add_argument("--prime-cap", type=int, dest="prime_cap")
    parser.add_argument("--residue-cap", type=int, dest="residue_cap")
    parser.add_argument("--witness-prime-count", type=int, dest="witness_prime_count")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ctx = sub.add_parser("ctx", help="print the construction context of a prime")
    p_ctx.add_argument("p", type=int)
    p_ctx.set_defaults(func=_cmd_ctx)

    p_member = sub.add_parser("member", help="decide membership of an element")
    p_member.add_argument("element", help="inline JSON or a file path")
    p_member.set_defaults(func=_cmd_member)

    p_wit = sub.add_parser("witness", help="divisibility witness for a non-axis element")
    p_wit.add_argument("element")
    p_wit.add_argument("--prime", type=int)
    p_wit.set_defaults(func=_cmd_witness)

    p_vwit = sub.add_parser("verify-witness", help="recheck a divisibility witness")
    p_vwit.add_argument("element")
    p_vwit.add_argument("witness")
    p_vwit.set_defaults(func=_cmd_verify_witness)

    p_cert = sub.add_parser("certify", help="freeness certificate for a generator set")
    p_cert.add_argument("gens")
    p_cert.set_defaults(func=_cmd_certify)

    p_vcert = sub.add_parser("verify-cert", help="recheck a freeness certificate")
    p_vcert.add_argument("gens")
    p_vcert.add_argument("cert")
    p_vcert.set_defaults(func=_cmd_verify_cert)

    p_pur = sub.add_parser("purify", help="pure closure of a generator set")
    p_pur.add_argument("gens")
    p_pur.add_argument("--bound", type=int)
    p_pur.set_defaults(func=_cmd_purify)

    p_enum = sub.add_parser("enum", help="dump an enumeration range as JSON lines")
    p_enum.add_argument("kind", choices=("rat", "lambda", "intvec", "partition"))
    p_enum.add_argument("--from", dest="start", type=int, required=True)
    p_enum.add_argument("--to", dest="stop", type=int, required=True)
    p_enum.set_defaults(func=_cmd_enum)

    p_check = sub.add_parser("check", help="run a named invariant suite")
    p_check.add_argument("name")
    p_check.add_argument("--p", type=int)
    p_check.add_argument("--kmax", type=int)
    p_check.add_argument("--samples", type=int)
    p_check.add_argument("--seed", type=int)
    p_check.add_argument("--n", type=int)
    p_check.add_argument("--pairs", type=int)
    p_check.add_argument("--element", help="element for div-infinitude, inline JSON or path")
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(
            args.config,
            prime_cap=args.prime_cap,
            residue_cap=args.residue_cap,
            witness_prime_count=args.witness_prime_count,
        )
        return args.func(args, config)
    except CapacityExceededError as exc:
        _emit({"error": "capacity-exceeded", "detail": str(exc),
               "required": exc.required, "cap": exc.cap, "fingerprint": FINGERPRINT})
        return 3
    except json.JSONDecodeError as exc:
        _emit({"error": "malformed-json",
               "detail": f"{exc.msg} at line {exc.lineno} column {exc.colno}",
               "fingerprint": FINGERPRINT})
        return 2
    except NotInGroupError as exc:
        _emit({"error": "not-in-group", "detail": str(exc), "fingerprint": FINGERPRINT})
        return 1
    except WrongPrimeError as exc:
        _emit({"error": "wrong-prime", "detail": str(exc), "fingerprint": FINGERPRINT})
        return 1
    except NoQuotientContentError as exc:
        _emit({"error": "no-quotient-content", "detail": str(exc), "fingerprint": FINGERPRINT})
        return 1
    except (NotPrimeError, EnumerationRangeError, FingerprintMismatchError,
            ValueError, OSError) as exc:
        _emit({"error": "usage", "detail": str(exc), "fingerprint": FINGERPRINT})
        return 2
