from fractions import Fraction as F

import pytest

from TrapSeeker.analysis import scan_cycles, CycleStatus
from TrapSeeker.exact_geom import point
from TrapSeeker.holes import (
    Hole, complete_trap, delta, delta1, delta2, h_script, hull_delta12, named_hole,
    p_area, p_clipped, p_infty_bounds, p_k, p_rational, thue_morse_bounds,
)
from TrapSeeker.utility import DomainError, ResourceError, UsageError


def test_exact_areas():
    assert delta1().area() == F(13, 96)
    assert hull_delta12().area() == F(53, 384)
    assert named_hole('p:1/2').area() == F(1, 6)
    assert h_script().area() == F(1, 4)
    assert named_hole('empty').area() == 0


def test_delta_pair_is_mirror_symmetric():
    assert delta1().transform('mirror').same_as(delta2())
    assert hull_delta12().transform('mirror').same_as(hull_delta12())


def test_p_rational_vertices():
    assert p_rational(F(1, 2)).parts[0].vertices == (
        point(F(1, 3), F(2, 3)), point(F(1, 2), 0), point(F(2, 3), F(1, 3)), point(F(1, 2), 1),
    )
    p = p_rational(F(1, 3)).parts[0]
    assert point(F(2, 7), F(4, 7)) in p.vertices
    assert point(F(4, 7), F(1, 7)) in p.vertices
    with pytest.raises(DomainError):
        p_rational(F(3, 4))


@pytest.mark.parametrize("t", [F(1, 3), F(2, 5), F(5, 12), F(9, 20), F(1, 2) - F(1, 100)])
def test_p_area_formula(t):
    assert p_clipped(t).area() == p_area(t)


def test_p_area_value():
    assert p_area(F(2, 5)) == F(7, 50)


def test_thue_morse_bounds_bracket():
    prev_tau, prev_upsilon = thue_morse_bounds(1)
    assert prev_tau == F(1, 3)
    for k in range(2, 9):
        tau, upsilon = thue_morse_bounds(k)
        assert prev_tau < tau < upsilon < prev_upsilon
        prev_tau, prev_upsilon = tau, upsilon
    assert abs(float(prev_tau) - 0.4124540336) < 1e-9


def test_p_k_family():
    assert p_k(1).same_as(named_hole('p:1/2'))
    for k in range(1, 6):
        assert p_k(k + 1).area() < p_k(k).area()
        assert p_k(k).transform('rotation').same_as(p_k(k))
    with pytest.raises(DomainError):
        p_k(0)


def test_p_infty_area_sandwich():
    inner, outer = p_infty_bounds(8)
    lo, hi = inner.area(), outer.area()
    assert lo < hi
    assert hi - lo < F(1, 10**4)
    assert round(float(lo), 5) == 0.12911
    assert round(float(hi), 5) == 0.12911
    with pytest.raises(DomainError):
        p_infty_bounds(1)
    with pytest.raises(ResourceError):
        p_infty_bounds(17)


def test_named_hole_specs():
    assert named_hole('delta') == delta()
    assert named_hole(' hull-dd ').name == 'hull-dd'
    assert named_hole('pk:2').name == 'pk:2'
    box = named_hole('box:1/4,3/4,1/4,3/4')
    assert box.area() == F(1, 4)
    poly = named_hole('poly:{"vertices": [["0","0"], ["1/2","0"], ["0","1/2"]]}')
    assert poly.area() == F(1, 8)
    for bad in ('nonsense', 'pk:x', 'box:0,1', 'poly:[', 'q:1/2'):
        with pytest.raises(UsageError):
            named_hole(bad)
    with pytest.raises(DomainError):
        named_hole('box:1/2,1/4,0,1')


def test_hole_contains_modes():
    h = h_script()
    assert h.contains((F(7, 8), F(1, 8)))
    assert not h.contains((F(5, 8), F(1, 8)))
    assert h.contains((F(5, 8), F(1, 8)), 'closed')
    assert not Hole('empty').contains((F(1, 2), F(1, 2)), 'closed')


def test_complete_trap_measures():
    m1 = complete_trap(1).measure()
    m2 = complete_trap(2).measure()
    m3 = complete_trap(3).measure()
    assert m1 == F(1, 4)
    assert m2 == F(15, 64)
    assert m3 == F(15, 64) - F(15, 64)**2 / 4
    with pytest.raises(ResourceError):
        complete_trap(5)


def test_complete_trap_strips():
    trap = complete_trap(2)
    assert trap.horizontal and trap.vertical
    assert len(trap.horizontal) == len(trap.vertical)
    for box in trap.horizontal:
        assert box.x_lo == 0 and box.x_hi == 1
    for box in trap.vertical:
        assert box.y_lo == 0 and box.y_hi == 1


def test_complete_trap_catches_every_cycle():
    report = scan_cycles(complete_trap(2).as_hole(), 10, jobs=1)
    for word, status, _ in report.entries:
        if word not in ('0', '1'):
            assert status is CycleStatus.HITS_OPEN, word


def _touch(a, b):
    return (max(a.x_lo, b.x_lo) <= min(a.x_hi, b.x_hi)
            and max(a.y_lo, b.y_lo) <= min(a.y_hi, b.y_hi))


@pytest.mark.parametrize("k", [2, 3])
def test_complete_trap_is_connected(k):
    trap = complete_trap(k)
    assert len(trap.horizontal) + len(trap.vertical) == len(trap.boxes)
    for h in trap.horizontal:
        assert h.x_lo == 0 and h.x_hi == 1
        assert all(_touch(h, v) for v in trap.vertical)
    reached = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j, b in enumerate(trap.boxes):
            if j not in reached and _touch(trap.boxes[i], b):
                reached.add(j)
                frontier.append(j)
    assert len(reached) == len(trap.boxes)


@pytest.mark.slow
def test_complete_trap_level_4():
    m3 = complete_trap(3).measure()
    assert m3 == F(3615, 16384)
    trap = complete_trap(4)
    assert len(trap.horizontal) == len(trap.vertical) == 7230
    for box in trap.horizontal:
        assert box.x_lo == 0 and box.x_hi == 1 and box.height == F(1, 2**16)
    for box in trap.vertical:
        assert box.y_lo == 0 and box.y_hi == 1 and box.width == F(1, 2**16)
    assert trap.measure() == m3 - m3**2 / 4
