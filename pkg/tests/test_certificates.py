from fractions import Fraction

import pytest

from padicgroup.bookkeeping import FINGERPRINT
from padicgroup.certificates import (
    BadPrimeRecord,
    DivisibilityWitness,
    FreenessCertificate,
    certify_free,
    common_axis_multiple,
    divisibility_witness,
    verify_certificate,
    verify_witness,
)
from padicgroup.errors import (
    NoQuotientContentError,
    NotInGroupError,
    SpanMeetsAxisError,
    WrongPrimeError,
)
from padicgroup.group import is_member
from padicgroup.vectors import FinVec, element

F = Fraction


def test_witness_frozen_p2():
    e = element(-1, {1: -1})
    w = divisibility_witness(e, 2)
    assert (w.p, w.a_int, w.d) == (2, 1, 1)
    assert w.z == element(F(-1, 2), {1: F(-1, 2)})
    assert w.bezout == (1, 0)
    assert verify_witness(e, w)


def test_witness_across_class_primes():
    # all five small primes in the class of -e1; two of them need a shifted
    # residue target
    e = element(-1, {1: -1})
    targets = {2: 1, 3: 1, 7: 1, 17: 2, 31: 3}
    for p, a in targets.items():
        w = divisibility_witness(e, p)
        assert w.a_int == a
        assert w.z.x0 == F(-a, p)
        assert verify_witness(e, w)
        assert is_member(w.z)
        # p*z - d*e lands on the integer axis
        shifted = w.z.scale(p) - e.scale(w.d)
        assert shifted.x.is_zero and shifted.x0.denominator == 1


def test_witness_of_witness():
    # the witness itself divides again at another class prime, now with a
    # nontrivial cleared denominator and bezout pair
    z = divisibility_witness(element(-1, {1: -1}), 2).z
    w = divisibility_witness(z, 3)
    assert (w.p, w.a_int, w.d) == (3, 1, 2)
    assert w.z == element(F(-1, 3), {1: F(-1, 3)})
    assert w.bezout == (2, -1)
    assert w.bezout[0] * w.d + w.bezout[1] * w.p == 1
    assert verify_witness(z, w)


def test_witness_rejects_tampering():
    e = element(-1, {1: -1})
    w = divisibility_witness(e, 2)
    bent = DivisibilityWitness(
        p=w.p, a_int=w.a_int, d=w.d,
        z=element(w.z.x0 + F(1, 2), dict(w.z.x.items())),
        bezout=w.bezout,
    )
    out = verify_witness(e, bent)
    assert not out
    assert "not in the group" in out.reason
    wrong_pair = DivisibilityWitness(p=w.p, a_int=w.a_int, d=w.d, z=w.z, bezout=(1, 1))
    assert not verify_witness(e, wrong_pair)
    assert not verify_witness(element(-2, {1: -2}), w)


def test_witness_fingerprint_checked():
    e = element(-1, {1: -1})
    data = divisibility_witness(e, 2).to_json()
    data["fingerprint"] = "v1:0000000000000000"
    out = verify_witness(e, DivisibilityWitness.from_json(data))
    assert not out
    assert "fingerprint" in out.reason


def test_witness_json_round_trip():
    w = divisibility_witness(element(-1, {1: -1}), 17)
    data = w.to_json()
    assert set(data) == {"p", "a_int", "d", "z", "bezout", "fingerprint"}
    assert data["fingerprint"] == FINGERPRINT
    assert DivisibilityWitness.from_json(data) == w
    with pytest.raises(ValueError):
        DivisibilityWitness.from_json({k: v for k, v in data.items() if k != "d"})
    with pytest.raises(ValueError):
        DivisibilityWitness.from_json({**data, "note": 1})


def test_witness_error_gates():
    with pytest.raises(NotInGroupError):
        divisibility_witness(element(F(1, 2), {}), 2)
    with pytest.raises(NoQuotientContentError):
        divisibility_witness(element(3, {}), 2)
    with pytest.raises(WrongPrimeError):
        # 2 divides the cleared denominator
        divisibility_witness(element(F(-1, 2), {1: F(-1, 2)}), 2)
    with pytest.raises(WrongPrimeError):
        # 5 sits in the class of -e1-e2, not -e1
        divisibility_witness(element(-1, {1: -1}), 5)


def test_certificate_frozen_single_vector():
    gens = [element(0, {1: 2})]
    cert = certify_free(gens)
    assert cert.lam == FinVec.zero()
    assert (cert.index, cert.k, cert.D) == (1, 1, 1)
    assert [r.p for r in cert.bad] == [2]
    rec = cert.bad[0]
    assert (rec.selected, rec.m, rec.r) == ((0,), 0, 0)
    assert rec.z_rows == ((F(1),),)
    assert list(cert.basis) == [element(0, {1: 1})]
    assert verify_certificate(gens, cert)


def test_certificate_frozen_fractional_functional():
    # x0 = (1/2) x1 on the generator, so the functional has denominator 2 and
    # prime 2 needs a perturbation record
    gens = [element(1, {1: 2})]
    cert = certify_free(gens)
    assert cert.lam == FinVec({1: F(1, 2)})
    assert (cert.index, cert.k, cert.D) == (22, 1, 2)
    assert [r.p for r in cert.bad] == [2, 3, 5, 7, 11, 13, 17, 19, 23]
    by_p = {r.p: r for r in cert.bad}
    assert by_p[2].r == 1
    assert all(r.m == 0 for r in cert.bad)
    assert all(by_p[p].r == 0 for p in (3, 5, 7, 11, 13, 17, 19, 23))
    assert list(cert.basis) == [element(1, {1: 2})]
    assert verify_certificate(gens, cert)
    assert cert.good_params == {"k": 1, "index": 22, "denominator_primes": [2]}


def test_certificate_rank_two():
    gens = [element(0, {1: 1}), element(0, {2: 1})]
    cert = certify_free(gens)
    assert (cert.index, cert.k, cert.D) == (1, 2, 1)
    assert [r.p for r in cert.bad] == [2]
    assert len(cert.basis) == 2
    assert verify_certificate(gens, cert)


def test_certificate_empty_generators():
    cert = certify_free([])
    assert cert.D == 1 and cert.basis == ()
    assert verify_certificate([], cert)


def test_certificate_rejects_tampering():
    gens = [element(1, {1: 2})]
    cert = certify_free(gens)
    doubled = FreenessCertificate(
        lam=cert.lam, index=cert.index, k=cert.k, bad=cert.bad,
        D=cert.D * 2, basis=cert.basis,
    )
    assert not verify_certificate(gens, doubled)
    scaled = FreenessCertificate(
        lam=cert.lam, index=cert.index, k=cert.k, bad=cert.bad,
        D=cert.D, basis=tuple(b.scale(2) for b in cert.basis),
    )
    assert not verify_certificate(gens, scaled)
    wrong_gens = [element(1, {1: 2}), element(0, {2: 1})]
    assert not verify_certificate(wrong_gens, cert)


def test_certificate_json_round_trip():
    cert = certify_free([element(1, {1: 2})])
    data = cert.to_json()
    assert set(data) == {
        "lambda", "index", "k", "good_params", "bad_primes", "D", "basis",
        "fingerprint",
    }
    assert FreenessCertificate.from_json(data) == cert
    with pytest.raises(ValueError):
        FreenessCertificate.from_json({k: v for k, v in data.items() if k != "D"})
    rec = data["bad_primes"][0]
    assert set(rec) == {"p", "selected", "Z", "m", "r"}
    assert BadPrimeRecord.from_json(rec) == cert.bad[0]


def test_certify_detects_axis_overlap():
    with pytest.raises(SpanMeetsAxisError) as info:
        certify_free([element(1, {1: 1}), element(0, {1: 1})])
    assert info.value.witness == element(1, {})
    with pytest.raises(SpanMeetsAxisError) as info:
        certify_free([element(1, {})])
    assert info.value.witness == element(1, {})


def test_certify_gates_membership():
    with pytest.raises(NotInGroupError):
        certify_free([element(F(1, 2), {})])


def test_common_axis_multiple():
    assert common_axis_multiple(element(2, {}), element(3, {})) == element(6, {})
    assert common_axis_multiple(element(4, {}), element(-6, {})) == element(12, {})
    assert common_axis_multiple(element(-5, {}), element(-5, {})) == element(5, {})
    with pytest.raises(ValueError):
        common_axis_multiple(element(0, {}), element(2, {}))
    with pytest.raises(ValueError):
        common_axis_multiple(element(1, {1: 1}), element(2, {}))
