from fractions import Fraction as F
from itertools import product

import pytest

from TrapSeeker.utility import DomainError, ResourceError, UsageError
from TrapSeeker.words import (
    as_slope, complement, doubling_constant, extremal_words, farey_parent, farey_seq,
    is_balanced, lemma52_identities, mechanical_word, one_min, partitions, periodic_less,
    rotations, substitution_words, thue_morse, val, zero_max,
)


def test_basics():
    assert complement('0110') == '1001'
    assert val('') == 0
    assert val('101') == 5
    with pytest.raises(UsageError):
        is_balanced('012')
    with pytest.raises(DomainError):
        as_slope(1)
    with pytest.raises(UsageError):
        as_slope('a/b')


@pytest.mark.parametrize("w, balanced, cyclic", [
    ('0', True, True),
    ('01', True, True),
    ('0011', False, False),
    ('001', True, True),
    ('0101', True, True),
    ('011', True, True),
    ('00101', True, True),
    ('0110', True, False),
    ('001011', False, False),
])
def test_is_balanced(w, balanced, cyclic):
    assert is_balanced(w) is balanced
    assert is_balanced(w, cyclic=True) is cyclic


def test_mechanical_word():
    assert mechanical_word(1, 3) == '001'
    assert mechanical_word(2, 5) == '00101'
    assert mechanical_word(3, 10) == '0001001001'
    for p, q in [(1, 2), (2, 5), (3, 7), (5, 12)]:
        w = mechanical_word(p, q)
        assert w.count('1') == p
        assert is_balanced(w, cyclic=True)


@pytest.mark.parametrize("r, zm, om", [
    (F(1, 2), '01', '10'),
    (F(1, 3), '010', '100'),
    (F(3, 10), '0100100100', '1000100100'),
])
def test_extremal_words(r, zm, om):
    assert extremal_words(r) == (zm, om)
    assert zero_max(r) == zm
    assert one_min(r) == om


def test_substitution_words():
    assert substitution_words([F(1, 2)]) == '01'
    assert substitution_words([F(1, 2)], symbol=1) == '10'
    # inner substitution first
    assert substitution_words([F(1, 2), F(1, 3)]) == '01' + '10' + '01'
    with pytest.raises(DomainError):
        substitution_words([])


def test_thue_morse():
    assert thue_morse(0) == '0'
    assert thue_morse(3) == '01101001'
    with pytest.raises(ResourceError):
        thue_morse(25)


def test_farey():
    assert farey_parent(F(3, 10)) == F(1, 3)
    assert farey_parent(F(1, 3)) == F(1, 2)
    assert farey_seq(F(3, 10), 0) == F(1, 3)
    assert farey_seq(F(3, 10), 1) == F(4, 13)
    assert farey_seq(F(3, 10), 2) == F(7, 23)
    for k in range(5):
        rk = farey_seq(F(2, 5), k)
        assert abs(rk.numerator * 5 - rk.denominator * 2) == 1
        assert rk > F(2, 5)


def test_periodic_less():
    assert periodic_less('0100100100', '010')
    assert not periodic_less('010', '010010')
    assert periodic_less('01', '1')


@pytest.mark.parametrize("r", [F(1, 3), F(2, 5), F(3, 10)])
@pytest.mark.parametrize("k", range(0, 6))
def test_lemma52_identities(r, k):
    assert lemma52_identities(r, k)


def test_lemma52_guards():
    with pytest.raises(DomainError):
        lemma52_identities(F(1, 2), 2)
    with pytest.raises(ResourceError):
        lemma52_identities(F(1, 3), 9)


def _brute_partitions(n):
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def test_partitions():
    for n in range(31):
        assert partitions(n) == _brute_partitions(n)
    assert partitions(-1) == 0
    assert partitions(100) == 190569292


def test_doubling_constant():
    value = doubling_constant(8)
    assert f"{float(value):.6f}" == '0.175092'
    assert doubling_constant(1) == F(3, 16)
    assert doubling_constant(9) < value


def test_every_short_word_balanced_iff_brute():
    for n in range(1, 9):
        for bits in product('01', repeat=n):
            w = ''.join(bits)
            ok = True
            for m in range(1, n + 1):
                ones = [w[i:i + m].count('1') for i in range(n - m + 1)]
                ok = ok and max(ones) - min(ones) <= 1
            assert is_balanced(w) is ok


@pytest.mark.parametrize("q", range(2, 13))
def test_extremal_words_invariants(q):
    for p in range(1, q):
        r = F(p, q)
        if r.denominator != q:
            continue
        zm, om = extremal_words(r)
        rots = rotations(zm)
        for w in (zm, om):
            assert len(w) == q and w.count('1') == p
            assert is_balanced(w, cyclic=True)
        assert om in rots
        assert zm[0] == '0' and zm == max(w for w in rots if w[0] == '0')
        assert om[0] == '1' and om == min(w for w in rots if w[0] == '1')


@pytest.mark.parametrize("k", range(0, 11))
def test_thue_morse_prefix(k):
    assert thue_morse(k + 1)[:2**k] == thue_morse(k)


@pytest.mark.parametrize("k", range(1, 9))
def test_substitution_words_half_is_thue_morse(k):
    assert substitution_words((F(1, 2),) * k, '0') == thue_morse(k)


@pytest.mark.parametrize("r", [F(1, 3), F(2, 5), F(3, 10), F(4, 13), F(5, 12)])
def test_farey_seq_decreases_to_r(r):
    prev = None
    for k in range(8):
        rk = farey_seq(r, k)
        assert abs(rk - r) == F(1, r.denominator * rk.denominator)
        if prev is not None:
            assert rk < prev
        prev = rk


def test_farey_parent_of_4_13():
    assert farey_parent(F(4, 13)) == F(1, 3)
