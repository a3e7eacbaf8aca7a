"""
Named holes and the complete-trap construction

A hole is a finite union of convex polygons. The open hole is the union of
the open parts and its closure is the union of the closed parts.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from TrapSeeker.exact_geom import (
    Box, ConvexPoly, contains, parse_rat, point, poly_from_json, transform,
    union_area_boxes,
)
from TrapSeeker.symbolic import Window, cylinder_box, expansion_value
from TrapSeeker.utility import DomainError, UsageError, guard, lcm
from TrapSeeker.words import as_slope, complement, extremal_words, thue_morse

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Hole:
    name: str
    parts: tuple = ()

    @property
    def convex(self):
        return len(self.parts) == 1

    def contains(self, p, mode='open'):
        return any(contains(part, p, mode) for part in self.parts)

    def area(self):
        """
        Returns the sum of the part areas; named holes have disjoint parts
        """

        return sum((part.area() for part in self.parts), Fraction(0))

    def transform(self, symmetry):
        return Hole(f"{symmetry}({self.name})", tuple(transform(p, symmetry) for p in self.parts))

    def same_as(self, other):
        """
        Returns True if both holes have the same set of canonical parts
        """

        return set(self.parts) == set(other.parts)


def _poly(*vertices):
    return ConvexPoly(tuple(point(*v) for v in vertices))


def delta():
    return Hole('delta', (_poly((0, 1), (HALF, 1), ('1/3', '2/3'), (0, HALF)),))


def delta1():
    return Hole('delta1', (_poly((0, HALF), ('5/24', '2/3'), (HALF, 1), (0, 1)),))


def delta2():
    return Hole('delta2', (_poly((0, HALF), ('1/3', '19/24'), (HALF, 1), (0, 1)),))


def hull_delta12():
    parts = delta1().parts[0].vertices + delta2().parts[0].vertices
    return Hole('hull-dd', (ConvexPoly(parts),))


def p_rational(r):
    """
    Returns the quadrilateral P_r with vertices (1/2, 0), (a, 2a), (1/2, 1),
    (b, 2b - 1), where a = 0.zero_max(r)^inf and b = 0.one_min(r)^inf
    """

    r = as_slope(r)
    if r > HALF:
        raise DomainError(f"P_r needs r <= 1/2, got {r}")
    zm, om = extremal_words(r)
    a, b = expansion_value('', zm), expansion_value('', om)
    return Hole(f"p:{r.numerator}/{r.denominator}",
                (_poly((HALF, 0), (a, 2 * a), (HALF, 1), (b, 2 * b - 1)),))


# P_1 as closed half-planes a*x + b*y + c >= 0
P1_PLANES = ((-2, 1, 1), (2, -1, 0), (4, 1, -2), (-4, -1, 3))


def p_clipped(t, name=None):
    """
    Returns P_1 cut down to t < x < 1 - t
    """

    t = Fraction(t)
    if not 0 <= t < HALF:
        raise DomainError(f"clipping bound must lie in [0, 1/2), got {t}")
    planes = P1_PLANES + ((1, 0, -t), (-1, 0, 1 - t))
    return Hole(name or f"P({t})", (ConvexPoly.from_halfplanes(planes),))


def p_area(t):
    """
    Returns exact area of p_clipped(t) for 1/3 <= t <= 1/2
    """

    t = Fraction(t)
    assert Fraction(1, 3) <= t <= HALF, f"area formula needs 1/3 <= t <= 1/2, got {t}"
    return Fraction(1, 6) - 6 * (t - Fraction(1, 3))**2


def thue_morse_bounds(k):
    """
    Returns (tau_k, upsilon_k) with tau_k < t < upsilon_k for the
    Thue-Morse constant t; tau_k = 0.(s_k)^inf, upsilon_k = 0.s_k (~s_k)^inf
    where s_k is the prefix of length 2**k
    """

    s = thue_morse(k)
    return expansion_value('', s), expansion_value(s, complement(s))


def p_k(k):
    """
    Returns P_k = P_1 with tau_k < x < 1 - tau_k
    """

    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    tau, _ = thue_morse_bounds(k)
    return p_clipped(tau, name=f"pk:{k}")


def p_infty_bounds(k):
    """
    Returns (inner, outer) hexagons with inner <= P_infinity <= outer

    P_infinity is P_1 clipped at the Thue-Morse constant, which is never
    represented directly; outer is clipped at tau_k, inner at upsilon_k.
    """

    guard(k, 16, 'k')
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    tau, upsilon = thue_morse_bounds(k)
    return p_clipped(upsilon, name=f"pinf-inner:{k}"), p_clipped(tau, name=f"pinf-outer:{k}")


def h_script():
    """
    Returns the two-part hole |x - y| > 1/2
    """

    return Hole('h-script', (
        _poly((HALF, 0), (1, 0), (1, HALF)),
        _poly((0, HALF), (HALF, 1), (0, 1)),
    ))


def _box_hole(args):
    values = [parse_rat(v) for v in args.split(',')]
    if len(values) != 4:
        raise UsageError(f"box spec needs x0,x1,y0,y1, got {args!r}")
    x0, x1, y0, y1 = values
    if not (0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1):
        raise DomainError(f"box {args!r} is empty or leaves the unit square")
    return Hole(f"box:{args}", (Box(x0, x1, y0, y1).as_poly(),))


def _poly_hole(args):
    try:
        obj = json.loads(args)
    except json.JSONDecodeError:
        raise UsageError(f"poly spec is not JSON: {args!r}")
    return Hole('poly', (poly_from_json(obj),))


def named_hole(spec):
    """
    Returns the Hole for a spec string

    Parameters
    ----------
    spec : str
        One of
            'delta', 'delta1', 'delta2', 'hull-dd', 'h-script', 'empty'
            'p:<p>/<q>'          P_r for 0 < r <= 1/2
            'pk:<k>'             P_k, P_1 clipped at the Thue-Morse bound
            'box:x0,x1,y0,y1'    axis aligned box
            'poly:<json>'        convex polygon in the polygon JSON format
    """

    spec = spec.strip()
    fixed = {
        'delta': delta, 'delta1': delta1, 'delta2': delta2,
        'hull-dd': hull_delta12, 'h-script': h_script,
        'empty': lambda: Hole('empty', ()),
    }
    if spec in fixed:
        return fixed[spec]()

    kind, sep, args = spec.partition(':')
    if not sep:
        raise UsageError(f"unknown hole spec {spec!r}")
    if kind == 'p':
        return p_rational(args)
    if kind == 'pk':
        try:
            k = int(args)
        except ValueError:
            raise UsageError(f"pk spec needs an integer, got {args!r}")
        return p_k(k)
    if kind == 'box':
        return _box_hole(args)
    if kind == 'poly':
        return _poly_hole(args)
    raise UsageError(f"unknown hole spec {spec!r}")


@dataclass(frozen=True)
class TrapBoxes:
    """
    Boxes of the complete trap A_level. `kinds` labels each box 'cell',
    'horizontal' (spans x in [0, 1]) or 'vertical' (spans y in [0, 1]).
    """

    level: int
    boxes: tuple
    kinds: tuple = field(default=())

    @property
    def horizontal(self):
        return [b for b, k in zip(self.boxes, self.kinds) if k == 'horizontal']

    @property
    def vertical(self):
        return [b for b, k in zip(self.boxes, self.kinds) if k == 'vertical']

    def measure(self):
        return union_area_boxes(self.boxes)

    def contains(self, p, mode='open'):
        return any(b.contains(p, mode) for b in self.boxes)

    def as_hole(self):
        return Hole(f"A_{self.level}", tuple(b.as_poly() for b in self.boxes))


def _cell_grid(trap):
    # smallest level n at which the boxes are unions of 2**-n cells and the
    # cell count is even
    scale = lcm(*(f.denominator for b in trap.boxes for f in (b.x_lo, b.x_hi, b.y_lo, b.y_hi)))
    n = scale.bit_length() - 1
    assert scale == 2**n, f"complete trap boxes must be dyadic, got denominator {scale}"
    while True:
        N = 2**n
        covered = np.zeros((N, N), dtype=bool)
        for b in trap.boxes:
            covered[int(b.x_lo * N):int(b.x_hi * N), int(b.y_lo * N):int(b.y_hi * N)] = True
        if covered.sum() % 2 == 0:
            return n, covered
        n += 1


def complete_trap(k):
    """
    Returns the boxes of the non-convex complete trap A_k

    A_1 = (1/2, 1) x (0, 1/2). A_{j+1} tiles A_j with level-n cylinders
    [u . v], |u| = |v| = n, splits them in half by label order into D_1 and
    D_2, and returns B^n(D_1) (horizontal strips [uv .]) together with
    B^-n(D_2) (vertical strips [. uv]). Measure drops from m to m - m*m/4.
    """

    guard(k, 4, 'k')
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")

    trap = TrapBoxes(1, (cylinder_box(Window('0', '1')),), ('cell',))
    for level in range(2, k + 1):
        n, covered = _cell_grid(trap)
        labels = sorted(
            (format(j, f'0{n}b')[::-1], format(i, f'0{n}b'))
            for i, j in np.argwhere(covered)
        )
        half = len(labels) // 2
        boxes, kinds = [], []
        for u, v in labels[:half]:
            boxes.append(cylinder_box(Window(u + v, '')))
            kinds.append('horizontal')
        for u, v in labels[half:]:
            boxes.append(cylinder_box(Window('', u + v)))
            kinds.append('vertical')
        trap = TrapBoxes(level, tuple(boxes), tuple(kinds))
        logging.debug("complete_trap: A_%d from %d cells at level %d", level, len(labels), n)
    return trap
