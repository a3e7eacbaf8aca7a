"""
Exact rational geometry on the unit square

Every coordinate is a fractions.Fraction. Polygons are convex, stored
counter-clockwise starting from the lexicographically least vertex, so
two polygons with the same point set compare equal.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor, gcd
from typing import NamedTuple

import numpy as np

from TrapSeeker.utility import DomainError, UsageError, lcm

Rat = Fraction
SYMMETRIES = ('identity', 'mirror', 'rotation', 'diagonal')


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y):
    """
    Returns Point with both coordinates coerced to Fraction
    Strings like '1/3' are accepted
    """

    return Point(Fraction(x), Fraction(y))


def parse_rat(text):
    """
    Returns Fraction for decimal or 'num/den' text
    """

    try:
        return Fraction(text.strip() if isinstance(text, str) else text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def rat_str(r):
    """
    Returns 'num/den' string for a rational, denominator always written
    """

    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """
    Returns the convex hull of `points` as a counter-clockwise vertex tuple
    starting at the lexicographically least point. Collinear points are
    dropped, so a segment comes back as its two end points.
    """

    pts = sorted(set(point(*p) for p in points))
    if len(pts) <= 2:
        return tuple(pts)

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def apply_symmetry(p, symmetry):
    """
    Returns image of point `p` under one of the symmetries of the square
    mirror: (x, y) -> (1-y, 1-x)
    rotation: (x, y) -> (1-x, 1-y)
    diagonal: (x, y) -> (y, x)
    """

    x, y = p
    if symmetry == 'identity':
        return Point(x, y)
    if symmetry == 'mirror':
        return Point(1 - y, 1 - x)
    if symmetry == 'rotation':
        return Point(1 - x, 1 - y)
    if symmetry == 'diagonal':
        return Point(y, x)
    raise UsageError(f"unknown symmetry {symmetry!r}, expected one of {SYMMETRIES}")


@dataclass(frozen=True)
class Box:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ('x_lo', 'x_hi', 'y_lo', 'y_hi'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        assert self.x_lo <= self.x_hi and self.y_lo <= self.y_hi, f"inverted box {self}"

    def corners(self):
        return (
            Point(self.x_lo, self.y_lo), Point(self.x_hi, self.y_lo),
            Point(self.x_hi, self.y_hi), Point(self.x_lo, self.y_hi),
        )

    @property
    def width(self):
        return self.x_hi - self.x_lo

    @property
    def height(self):
        return self.y_hi - self.y_lo

    def area(self):
        return self.width * self.height

    def contains(self, p, mode='closed'):
        x, y = p
        if mode == 'open':
            return self.x_lo < x < self.x_hi and self.y_lo < y < self.y_hi
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def as_poly(self):
        return ConvexPoly(self.corners())


UNIT_BOX = Box(0, 1, 0, 1)


class BoxClass(Enum):
    INSIDE_OPEN = 0
    INSIDE_CLOSED = 1
    STRADDLES = 2
    DISJOINT_FROM_OPEN = 3
    DISJOINT_FROM_CLOSED = 4

    @property
    def inside_open(self):
        return self is BoxClass.INSIDE_OPEN

    @property
    def inside_closed(self):
        return self in (BoxClass.INSIDE_OPEN, BoxClass.INSIDE_CLOSED)

    @property
    def disjoint_from_open(self):
        return self in (BoxClass.DISJOINT_FROM_OPEN, BoxClass.DISJOINT_FROM_CLOSED)

    @property
    def disjoint_from_closed(self):
        return self is BoxClass.DISJOINT_FROM_CLOSED


@dataclass(frozen=True)
class ConvexPoly:
    """
    Exact convex polygon. Fewer than three vertices is a degenerate
    polygon (segment or point); those only appear as search intermediates.
    """

    vertices: tuple

    def __post_init__(self):
        hull = convex_hull(self.vertices)
        assert len(hull) > 0, "polygon needs at least one vertex"
        object.__setattr__(self, 'vertices', hull)

    @classmethod
    def from_points(cls, points):
        return cls(tuple(points))

    @classmethod
    def from_halfplanes(cls, planes, box=UNIT_BOX):
        """
        Returns the closed polygon {a*x + b*y + c >= 0 for all planes} clipped
        to `box` (default the unit square)
        """

        poly = list(box.corners())
        for a, b, c in planes:
            poly = _clip(poly, a, b, c)
            if not poly:
                raise DomainError("half-plane system has an empty intersection")
        return cls(tuple(poly))

    @property
    def degenerate(self):
        return len(self.vertices) < 3

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def halfplanes(self):
        """
        Returns integer triples (a, b, c), one per edge, with the interior
        given by a*x + b*y + c > 0; each triple is divided by its gcd
        """

        if self.degenerate:
            raise DomainError("degenerate polygon has no half-plane form")
        planes = []
        for p, q in self.edges():
            dx, dy = q.x - p.x, q.y - p.y
            coeffs = (-dy, dx, dy * p.x - dx * p.y)
            scale = lcm(*(f.denominator for f in coeffs))
            ints = [int(f * scale) for f in coeffs]
            g = gcd(*ints)
            planes.append(tuple(v // g for v in ints))
        return tuple(planes)

    def bounds(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def area(self):
        return area(self)

    def contains(self, p, mode='closed'):
        return contains(self, p, mode)

    def transform(self, symmetry):
        return transform(self, symmetry)


def _clip(poly, a, b, c):
    # one Sutherland-Hodgman pass keeping a*x + b*y + c >= 0
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        fc = a * cur.x + b * cur.y + c
        fn = a * nxt.x + b * nxt.y + c
        if fc >= 0:
            out.append(cur)
        if (fc > 0 and fn < 0) or (fc < 0 and fn > 0):
            t = Fraction(fc) / (fc - fn)
            out.append(Point(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)))
    return out


def area(poly):
    """
    Returns exact area of `poly`, 0 for degenerate polygons
    """

    if poly.degenerate:
        return Fraction(0)
    total = Fraction(0)
    for p, q in poly.edges():
        total += p.x * q.y - q.x * p.y
    return total / 2


def contains(poly, p, mode='closed'):
    """
    Returns True if `p` lies in the open (mode='open') or closed
    (mode='closed') polygon. Open degenerate polygons are empty.
    """

    p = point(*p)
    if mode not in ('open', 'closed'):
        raise UsageError(f"mode must be 'open' or 'closed', got {mode!r}")
    verts = poly.vertices
    if poly.degenerate:
        if mode == 'open':
            return False
        if len(verts) == 1:
            return p == verts[0]
        a, b = verts
        return (cross(a, b, p) == 0
                and min(a.x, b.x) <= p.x <= max(a.x, b.x)
                and min(a.y, b.y) <= p.y <= max(a.y, b.y))
    for q, r in poly.edges():
        s = cross(q, r, p)
        if s < 0 or (s == 0 and mode == 'open'):
            return False
    return True


def contains_poly(outer, inner):
    """
    Returns True if closed `inner` lies in closed `outer`
    """

    return all(contains(outer, v, 'closed') for v in inner.vertices)


def transform(poly, symmetry):
    """
    Returns image of `poly` under `symmetry`, renormalized
    """

    return ConvexPoly(tuple(apply_symmetry(v, symmetry) for v in poly.vertices))


def classify_box(box, poly):
    """
    Classifies the closed box against the open polygon and its closure

    Parameters
    ----------
    box : Box
        Closed axis aligned box, usually the image of a cylinder.

    poly : ConvexPoly
        Non-degenerate convex polygon.

    Returns
    -------
    BoxClass
        INSIDE_OPEN / INSIDE_CLOSED when all four corners are in the open /
        closed polygon; otherwise DISJOINT_FROM_CLOSED or DISJOINT_FROM_OPEN
        when a polygon edge line or a box side separates the two strictly or
        weakly; otherwise STRADDLES.
    """

    if poly.degenerate:
        raise DomainError("classify_box needs a non-degenerate polygon")

    corners = box.corners()
    if all(contains(poly, c, 'open') for c in corners):
        return BoxClass.INSIDE_OPEN
    if all(contains(poly, c, 'closed') for c in corners):
        return BoxClass.INSIDE_CLOSED

    weak = False
    for a, b, c in poly.halfplanes():
        top = max(a * p.x + b * p.y + c for p in corners)
        if top < 0:
            return BoxClass.DISJOINT_FROM_CLOSED
        weak = weak or top == 0

    pxmin, pxmax, pymin, pymax = poly.bounds()
    if box.x_hi < pxmin or box.x_lo > pxmax or box.y_hi < pymin or box.y_lo > pymax:
        return BoxClass.DISJOINT_FROM_CLOSED
    if box.x_hi == pxmin or box.x_lo == pxmax or box.y_hi == pymin or box.y_lo == pymax:
        weak = True
    return BoxClass.DISJOINT_FROM_OPEN if weak else BoxClass.STRADDLES


def _grid_dtype(*values):
    return np.int64 if max(abs(int(v)) for v in values) < 2**60 else object


def classify_grid(poly, L):
    """
    Returns (2**L, 2**L) array of BoxClass values for the dyadic cells
    [i/N, (i+1)/N] x [j/N, (j+1)/N], N = 2**L, indexed [i, j]

    Agrees with classify_box cell by cell. Half-plane forms are evaluated
    on the integer corner lattice, so the whole grid is exact.
    """

    if poly.degenerate:
        raise DomainError("classify_grid needs a non-degenerate polygon")

    N = 2**L
    planes = poly.halfplanes()
    bound = 3 * N * max(max(abs(a), abs(b), abs(c)) for a, b, c in planes)
    dtype = _grid_dtype(bound)
    lattice = np.arange(N + 1, dtype=np.int64).astype(dtype)

    all_open = np.ones((N, N), dtype=bool)
    all_closed = np.ones((N, N), dtype=bool)
    strict_sep = np.zeros((N, N), dtype=bool)
    weak_sep = np.zeros((N, N), dtype=bool)
    for a, b, c in planes:
        E = a * lattice[:, None] + b * lattice[None, :] + c * N
        corners = (E[:-1, :-1], E[1:, :-1], E[:-1, 1:], E[1:, 1:])
        cmin = np.minimum(np.minimum(corners[0], corners[1]), np.minimum(corners[2], corners[3]))
        cmax = np.maximum(np.maximum(corners[0], corners[1]), np.maximum(corners[2], corners[3]))
        all_open &= (cmin > 0).astype(bool)
        all_closed &= (cmin >= 0).astype(bool)
        strict_sep |= (cmax < 0).astype(bool)
        weak_sep |= (cmax <= 0).astype(bool)

    # box sides against the polygon's bounding interval, as integer thresholds
    index = np.arange(N)
    pxmin, pxmax, pymin, pymax = poly.bounds()
    for lo, hi, axis in ((pxmin, pxmax, 0), (pymin, pymax, 1)):
        t, u = lo * N, hi * N
        strict = (index <= ceil(t) - 2) | (index >= floor(u) + 1)
        weak = (index <= floor(t) - 1) | (index >= ceil(u))
        if axis == 0:
            strict_sep |= strict[:, None]
            weak_sep |= weak[:, None]
        else:
            strict_sep |= strict[None, :]
            weak_sep |= weak[None, :]

    codes = np.full((N, N), BoxClass.STRADDLES.value, dtype=np.int8)
    codes[weak_sep] = BoxClass.DISJOINT_FROM_OPEN.value
    codes[strict_sep] = BoxClass.DISJOINT_FROM_CLOSED.value
    codes[all_closed] = BoxClass.INSIDE_CLOSED.value
    codes[all_open] = BoxClass.INSIDE_OPEN.value
    logging.debug("classify_grid: L=%d, %d planes, dtype %s", L, len(planes), dtype)
    return codes


def union_area_boxes(boxes):
    """
    Returns exact area of the union of `boxes`

    Coordinates are scaled to integers by the common denominator, then an
    x sweep keeps a coverage count per compressed y cell.
    """

    boxes = [b for b in boxes if b.x_hi > b.x_lo and b.y_hi > b.y_lo]
    if not boxes:
        return Fraction(0)

    scale = lcm(*(f.denominator for b in boxes for f in (b.x_lo, b.x_hi, b.y_lo, b.y_hi)))
    dtype = np.int64 if scale < 2**31 else object
    ys = sorted({int(f * scale) for b in boxes for f in (b.y_lo, b.y_hi)})
    yindex = {y: i for i, y in enumerate(ys)}
    dy = np.diff(np.array(ys, dtype=dtype))

    events = {}
    for b in boxes:
        i0, i1 = yindex[int(b.y_lo * scale)], yindex[int(b.y_hi * scale)]
        events.setdefault(int(b.x_lo * scale), []).append((1, i0, i1))
        events.setdefault(int(b.x_hi * scale), []).append((-1, i0, i1))

    count = np.zeros(len(ys) - 1, dtype=np.int64)
    xs = sorted(events)
    total = 0
    for x, x_next in zip(xs, xs[1:]):
        for sign, i0, i1 in events[x]:
            count[i0:i1] += sign
        total += int(dy[count > 0].sum()) * (x_next - x)
    return Fraction(total, scale * scale)


def poly_to_json(poly):
    """
    Returns JSON-ready dict {"vertices": [["x_num/x_den", "y_num/y_den"], ...]}
    """

    return {"vertices": [[rat_str(v.x), rat_str(v.y)] for v in poly.vertices]}


def poly_from_json(obj):
    """
    Returns ConvexPoly from the dict produced by poly_to_json
    """

    try:
        pts = tuple(point(parse_rat(x), parse_rat(y)) for x, y in obj["vertices"])
    except UsageError:
        raise
    except (KeyError, TypeError, ValueError):
        raise UsageError(f"malformed polygon JSON: {obj!r}")
    if not pts:
        raise UsageError("polygon JSON has no vertices")
    return ConvexPoly(pts)
