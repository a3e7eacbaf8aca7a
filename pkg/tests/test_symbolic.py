import random
from fractions import Fraction as F

import pytest

from TrapSeeker.exact_geom import Box, apply_symmetry, point
from TrapSeeker.symbolic import (
    BiSeq, Cycle, Window, baker_iterate, baker_step, cycle_orbit, cycle_points,
    cylinder_box, expansion_value, least_rotation, lyndon_words, pi_point,
    primitive_root, shift,
)
from TrapSeeker.utility import DomainError, ResourceError, UndefinedItineraryError, UsageError


def random_word(rng, lo, hi):
    return ''.join(rng.choice('01') for _ in range(rng.randint(lo, hi)))


def random_biseq(rng):
    return BiSeq(
        left_period=random_word(rng, 1, 4), left_transient=random_word(rng, 0, 4),
        right_transient=random_word(rng, 0, 4), right_period=random_word(rng, 1, 4),
    )


def test_word_helpers():
    assert primitive_root('010101') == '01'
    assert primitive_root('0110') == '0110'
    assert least_rotation('1001') == '0011'
    assert expansion_value('', '01') == F(1, 3)
    assert expansion_value('10', '01') == F(7, 12)
    assert expansion_value('1', '0') == F(1, 2)


def test_biseq_is_canonical():
    a = BiSeq(left_period='0101', left_transient='', right_transient='0', right_period='10')
    b = BiSeq(left_period='01', right_transient='', right_period='01')
    assert a == b
    assert BiSeq.parse('(01)·(01)') == BiSeq.periodic('01')
    assert BiSeq.parse('(10)·(01)') != BiSeq.periodic('01')
    s = BiSeq.parse('(0)11·0(01)')
    assert str(s) == '(0)11·0(01)'
    with pytest.raises(UsageError):
        BiSeq.parse('01·10')
    with pytest.raises(DomainError):
        BiSeq(left_period='')


def test_two_cycle():
    s = BiSeq.periodic('01')
    assert pi_point(s) == point(F(1, 3), F(2, 3))
    assert pi_point(shift(s, 1)) == point(F(2, 3), F(1, 3))
    assert set(cycle_orbit('01')) == {point(F(1, 3), F(2, 3)), point(F(2, 3), F(1, 3))}
    assert shift(s, 2) == s


def test_cycle_orbit_of_001():
    pts = cycle_orbit(Cycle('001'))
    assert pts == [point(F(1, 7), F(4, 7)), point(F(2, 7), F(2, 7)), point(F(4, 7), F(1, 7))]
    assert baker_step(pts[0]) == pts[1]
    assert baker_step(pts[1]) == pts[2]
    assert baker_step(pts[2]) == pts[0]


def test_shift_is_conjugate_to_baker_map():
    rng = random.Random(2024)
    for _ in range(200):
        s = random_biseq(rng)
        for n in range(-3, 4):
            t = shift(s, n)
            p = pi_point(t)
            assert shift(shift(t, 1), -1) == t
            for direction, step in (('forward', 1), ('backward', -1)):
                try:
                    image = baker_step(p, direction)
                except UndefinedItineraryError:
                    continue
                assert image == pi_point(shift(t, step))


def test_baker_step_errors():
    with pytest.raises(UndefinedItineraryError):
        baker_step((F(1, 2), F(1, 3)))
    with pytest.raises(UndefinedItineraryError):
        baker_step((F(1, 3), F(1, 2)), 'backward')
    with pytest.raises(UsageError):
        baker_step((F(1, 3), F(1, 3)), 'sideways')
    p = point(F(1, 7), F(4, 7))
    assert baker_iterate(p, 3) == p
    assert baker_iterate(baker_iterate(p, 2), -2) == p


def test_window_parse_and_box():
    w = Window.parse('11·00')
    assert w == Window('11', '00') == Window.parse('11.00')
    assert str(w) == '11·00'
    assert len(w) == 4
    assert cylinder_box(w) == Box(0, F(1, 4), F(3, 4), 1)
    assert cylinder_box(Window('000', '101')) == Box(F(5, 8), F(3, 4), 0, F(1, 8))
    with pytest.raises(UsageError):
        Window.parse('1101')
    with pytest.raises(UsageError):
        Window.parse('12·0')


def test_window_shifted():
    w = Window('011', '01')
    assert w.shifted(1) == Window('0110', '1')
    assert w.shifted(-3) == Window('', '01101')
    with pytest.raises(DomainError):
        w.shifted(3)


@pytest.mark.parametrize("symmetry", ['mirror', 'rotation', 'diagonal'])
def test_window_transform_matches_box_image(symmetry):
    rng = random.Random(11)
    for _ in range(30):
        w = Window(random_word(rng, 0, 5), random_word(rng, 0, 5))
        box = cylinder_box(w)
        image = [apply_symmetry(c, symmetry) for c in box.corners()]
        expected = Box(min(p.x for p in image), max(p.x for p in image),
                       min(p.y for p in image), max(p.y for p in image))
        assert cylinder_box(w.transform(symmetry)) == expected
    with pytest.raises(UsageError):
        Window('1', '0').transform('shear')


def test_biseq_window():
    s = BiSeq.parse('(0)11·0(01)')
    assert s.window(3, 4) == Window('011', '0010')
    assert s.right_digits(5) == '00101'
    assert s.left_digits(4) == '1100'


def test_cycle_validation():
    assert Cycle.from_word('10') == Cycle('01')
    assert Cycle.from_word('0101') == Cycle('01')
    with pytest.raises(DomainError):
        Cycle('10')
    with pytest.raises(DomainError):
        Cycle('0101')


def test_lyndon_words():
    words = [c.word for c in lyndon_words(4)]
    assert words == ['0', '1', '01', '001', '011', '0001', '0011', '0111']
    counts = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99]
    assert len(lyndon_words(10)) == sum(counts)
    assert len(lyndon_words(10, min_p=10)) == 99
    with pytest.raises(ResourceError):
        lyndon_words(25)


def test_cycle_points_guard():
    with pytest.raises(ResourceError):
        cycle_points('0' * 30 + '1')


def test_cylinder_box_contains_matching_sequences():
    rng = random.Random(17)
    for _ in range(200):
        w = Window(random_word(rng, 0, 5), random_word(rng, 0, 5))
        s = BiSeq(
            left_period=random_word(rng, 1, 3),
            left_transient=w.left[::-1] + random_word(rng, 0, 3),
            right_transient=w.right + random_word(rng, 0, 3),
            right_period=random_word(rng, 1, 3),
        )
        assert s.window(len(w.left), len(w.right)) == w
        assert cylinder_box(w).contains(pi_point(s), 'closed'), (w, s)


@pytest.mark.parametrize("word", ['0', '1', '01', '011', '0010', '00101', '001011', '0001011'])
def test_cycle_orbit_is_baker_invariant(word):
    pts = set(cycle_orbit(word))
    assert len(pts) == len(word)
    assert {baker_step(p) for p in pts} == pts
    assert {baker_step(p, 'backward') for p in pts} == pts
