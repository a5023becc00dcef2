from fractions import Fraction

import pytest

from padicgroup.bookkeeping import (
    FINGERPRINT,
    decode_seq,
    encode_seq,
    enum_qvec,
    enum_rat,
    fingerprint,
    intvec_at,
    intvec_index,
    pair,
    pair0,
    partition_members,
    partition_vector,
    qvec_index,
    unpair,
    unpair0,
)
from padicgroup.errors import CapacityExceededError, EnumerationRangeError, NotPrimeError
from padicgroup.vectors import FinVec


def test_pair_is_a_bijection_on_an_initial_segment():
    seen = {}
    for i in range(1, 101):
        for j in range(1, 101):
            n = pair(i, j)
            assert n not in seen
            seen[n] = (i, j)
            assert unpair(n) == (i, j)
    # anti-diagonal order fills an initial segment
    assert sorted(seen)[: 100 * 101 // 2] == list(range(1, 100 * 101 // 2 + 1))


def test_pair_small_values():
    assert pair(1, 1) == 1
    assert pair(1, 2) == 2
    assert pair(2, 1) == 3
    assert pair(1, 3) == 4


def test_pair0_round_trip():
    for z in range(10_000):
        x, y = unpair0(z)
        assert pair0(x, y) == z


def test_pair_rejects_nonpositive():
    with pytest.raises(EnumerationRangeError):
        pair(0, 1)
    with pytest.raises(EnumerationRangeError):
        unpair(0)


def brute_rationals(max_height: int) -> list[Fraction]:
    """All rationals of height <= max_height ordered by (height, num, den)."""
    out = []
    for h in range(max_height + 1):
        block = []
        for num in range(-h, h + 1):
            for den in range(1, h + 1):
                q = Fraction(num, den)
                if max(abs(q.numerator), q.denominator) == h:
                    block.append((q.numerator, q.denominator, q))
        out.extend(q for _, _, q in sorted(set(block)))
    return out


def test_rational_enumeration_prefix():
    expected = [
        Fraction(-1),
        Fraction(0),
        Fraction(1),
        Fraction(-2),
        Fraction(-1, 2),
        Fraction(1, 2),
        Fraction(2),
        Fraction(-3),
    ]
    assert [enum_rat(n) for n in range(1, 9)] == expected


def test_rational_enumeration_matches_bruteforce():
    # brute list for height <= 12 must be a prefix of the enumeration
    brute = brute_rationals(12)
    assert [enum_rat(n) for n in range(1, len(brute) + 1)] == brute


def test_rational_enumeration_rejects_zero():
    with pytest.raises(EnumerationRangeError):
        enum_rat(0)


def test_seq_codec_round_trip():
    assert encode_seq([]) == 0
    assert decode_seq(0) == []
    for code in range(2000):
        assert encode_seq(decode_seq(code)) == code
    for seq in ([0], [1, 2, 3], [5, 0, 0, 1], [0] * 6):
        assert decode_seq(encode_seq(seq)) == seq


def test_qvec_frozen_indices():
    table = {
        1: FinVec.zero(),
        2: FinVec({1: -1}),
        3: FinVec({1: -1, 2: -1}),
        6: FinVec({2: -1}),
        7: FinVec({1: 1}),
        11: FinVec({1: -2}),
        16: FinVec({1: Fraction(-1, 2)}),
        22: FinVec({1: Fraction(1, 2)}),
        24: FinVec({3: -1}),
    }
    for n, v in table.items():
        assert enum_qvec(n) == v, n
        assert qvec_index(v) == n, v


def test_qvec_index_inverts_enum():
    for v in {enum_qvec(n) for n in range(1, 400)}:
        assert enum_qvec(qvec_index(v)) == v


def test_qvec_enumeration_reaches_small_vectors():
    # every vector supported on [1,3] with entries of height <= 2 shows up
    entries = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
               Fraction(1, 2), Fraction(-1, 2)]
    want = set()
    for a in entries:
        for b in entries:
            for c in entries:
                want.add(FinVec({1: a, 2: b, 3: c}))
    seen = {enum_qvec(n) for n in range(1, 200_000)}
    missing = want - seen
    assert not missing, sorted(missing, key=str)[:3]


def test_intvec_round_trip():
    for i in range(1, 300):
        v = intvec_at(i)
        assert intvec_index(v) == i
        assert not v.is_zero
        assert all(q.denominator == 1 for _, q in v.items())


def test_intvec_distinct_on_prefix():
    vecs = [intvec_at(i) for i in range(1, 300)]
    assert len(set(vecs)) == len(vecs)


def test_intvec_first_entries():
    assert intvec_at(1) == FinVec({1: -1})
    assert intvec_at(2) == FinVec({1: -1, 2: -1})


def test_intvec_scan_cap():
    with pytest.raises(CapacityExceededError):
        intvec_index(FinVec({9: 1000}), scan_cap=10_000)


def test_intvec_index_rejects_nonintegral():
    with pytest.raises(ValueError):
        intvec_index(FinVec({1: Fraction(1, 2)}))
    with pytest.raises(EnumerationRangeError):
        intvec_index(FinVec.zero())


def test_partition_vector_frozen():
    minus_e1 = FinVec({1: -1})
    minus_e12 = FinVec({1: -1, 2: -1})
    minus_e123 = FinVec({1: -1, 2: -1, 3: -1})
    assert partition_vector(2) == minus_e1
    assert partition_vector(3) == minus_e1
    assert partition_vector(7) == minus_e1
    assert partition_vector(17) == minus_e1
    assert partition_vector(31) == minus_e1
    assert partition_vector(5) == minus_e12
    assert partition_vector(11) == minus_e12
    assert partition_vector(13) == minus_e123
    assert partition_vector(19) == minus_e12


def test_partition_vector_requires_prime():
    with pytest.raises(NotPrimeError):
        partition_vector(6)


def test_partition_members_agree_with_partition_vector():
    v = FinVec({1: -1})
    members = partition_members(v, 5)
    assert members == [2, 3, 7, 17, 31]
    for p in members:
        assert partition_vector(p) == v
    assert partition_members(FinVec({1: -1, 2: -1}), 2) == [5, 11]


def test_partition_members_prime_cap():
    with pytest.raises(CapacityExceededError):
        partition_members(FinVec({1: -1}), 50, prime_cap=1000)


def test_partition_classes_are_disjoint_by_construction():
    # primes 2..100 land in classes given by unpair of their index; classes
    # for distinct vectors never share a prime
    by_vec: dict[FinVec, list[int]] = {}
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]:
        by_vec.setdefault(partition_vector(p), []).append(p)
    seen: set[int] = set()
    for primes in by_vec.values():
        assert not (seen & set(primes))
        seen.update(primes)


def test_fingerprint_frozen():
    assert fingerprint() == FINGERPRINT == "v1:353ca906f3bca6fa"
