"""
Branch and prune search for small convex dimension traps

A convex dimension trap must meet every Cantor constraint set C(a, b), the
orbit closure of ... b b . a b b .... Starting from the hull of the anchor
points, every polygon that misses a constraint is replaced by its hulls
with each constraint point, and hulls at or above the area threshold are
dropped. The minimal area over what survives, less 4 * epsilon, bounds the
area of any such trap from below.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from TrapSeeker.exact_geom import (
    ConvexPoly, apply_symmetry, contains, contains_poly, parse_rat, point,
)
from TrapSeeker.symbolic import BiSeq, cycle_points, pi_point, shift
from TrapSeeker.utility import DomainError, UsageError, bag_map, check_scheduler, guard
from TrapSeeker.words import check_word

SEARCH_SYMMETRIES = {'none': 'identity', 'mirror': 'mirror', 'rotational': 'rotation'}

HALF = Fraction(1, 2)

# symmetric trap campaigns
CAMPAIGN_PRESETS = {
    'mirror': {
        'anchors': ((0, HALF), (HALF, 1)),
        'symmetry': 'mirror',
        'threshold': Fraction(1381, 10000),
    },
    'rotational': {
        'anchors': ((HALF, 0), (HALF, 1)),
        'symmetry': 'rotational',
        'threshold': Fraction(119, 1000),
    },
    'mirror-none': {
        'anchors': ((0, HALF), (HALF, 1)),
        'symmetry': 'none',
        'threshold': Fraction(1355, 10000),
        'word_length': 8,
    },
    'rotational-none': {
        'anchors': ((HALF, 0), (HALF, 1)),
        'symmetry': 'none',
        'threshold': Fraction(1182, 10000),
        'word_length': 8,
    },
    'worked-example': {
        'anchors': ((HALF, 0), (HALF, 1)),
        'symmetry': 'rotational',
        'threshold': Fraction(13, 100),
        'word_length': 3,
    },
}

WORKED_EXAMPLE_STAGES = (
    (('0', '10'),),
    (('01', '10'),),
    (('0', '001'), ('0', '011'), ('00', '011'), ('001', '010'),
     ('001', '101'), ('001', '110'), ('011', '100')),
)


@dataclass(frozen=True)
class ConstraintSet:
    a: str
    b: str
    points: tuple
    limit_points: tuple
    epsilon: Fraction

    def __str__(self):
        return f"C({self.a},{self.b})"

    def hit_by(self, poly):
        return any(contains(poly, p, 'closed') for p in self.points)


@dataclass(frozen=True)
class SearchConfig:
    anchors: tuple
    symmetry: str = 'none'
    area_threshold: Fraction = Fraction(1)
    epsilon: Fraction = Fraction(1, 10**10)
    max_word_len: int = 4
    pairs: tuple = ()

    def __post_init__(self):
        if self.symmetry not in SEARCH_SYMMETRIES:
            raise UsageError(
                f"symmetry must be one of {sorted(SEARCH_SYMMETRIES)}, got {self.symmetry!r}")
        if not 0 < self.area_threshold <= 1:
            raise DomainError(f"area threshold must lie in (0, 1], got {self.area_threshold}")
        if self.epsilon < 0:
            raise DomainError(f"epsilon must be nonnegative, got {self.epsilon}")
        for p in self.anchors:
            if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
                raise DomainError(f"anchor {p} is outside the unit square")

    def image(self, p):
        return apply_symmetry(p, SEARCH_SYMMETRIES[self.symmetry])


@dataclass(frozen=True)
class Family:
    polygons: tuple = field(default=())

    def __len__(self):
        return len(self.polygons)

    def areas(self):
        return [poly.area() for poly in self.polygons]

    def min_area(self):
        return min(self.areas())

    def max_area(self):
        return max(self.areas())


def _digits_for(eps):
    # least D with 2**-D < eps
    if eps <= 0:
        raise DomainError(f"epsilon must be positive, got {eps}")
    D = max(0, math.floor(math.log2(1 / eps)) - 1)
    while Fraction(1, 2**D) >= eps:
        D += 1
    return D


def _sup_distance(p, q):
    return max(abs(p.x - q.x), abs(p.y - q.y))


def cantor_orbit(a, b, eps, region=None):
    """
    Returns the ConstraintSet of ... b b . a b b ...

    Parameters
    ----------
    a, b : str
        Nonempty binary words with 0.a^inf != 0.b^inf.

    eps : Fraction
        Orbit points farther than eps (sup norm) from the cycle of b^inf are
        all listed. Closer ones are represented by one orbit point per cycle
        point, the nearest one found, so every listed point lies on the orbit.

    region : Box (default: None)
        Keep only points inside this closed box.
    """

    check_word(a)
    check_word(b)
    if not a or not b:
        raise DomainError("constraint words must be nonempty")
    if (a * len(b)) == (b * len(a)):
        raise DomainError(f"0.{a}^inf equals 0.{b}^inf")
    eps = Fraction(eps)
    D = _digits_for(eps)
    guard(len(a) + len(b) + D, 256, 'orbit depth')

    limits = tuple(sorted(set(cycle_points(b))))
    seq = BiSeq(left_period=b[::-1], right_transient=a, right_period=b)
    span = len(a) + len(b) + D
    points = set()
    nearest = {}
    for n in range(-span, span + 1):
        p = pi_point(shift(seq, n))
        d, q = min((_sup_distance(p, q), q) for q in limits)
        if d > eps:
            points.add(p)
        elif q not in nearest or (d, p) < nearest[q]:
            nearest[q] = (d, p)
    assert len(nearest) == len(limits), f"C({a},{b}) has no representative for some limit point"
    points.update(p for _, p in nearest.values())
    if region is not None:
        points = {p for p in points if region.contains(p, 'closed')}
        limits = tuple(q for q in limits if region.contains(q, 'closed'))
    logging.debug("cantor_orbit: C(%s,%s) has %d points", a, b, len(points))
    return ConstraintSet(a, b, tuple(sorted(points)), limits, eps)


def default_constraints(word_length, eps=Fraction(1, 10**10)):
    """
    Returns ConstraintSets for all pairs 1 <= |a|, |b| <= word_length with
    0.a^inf != 0.b^inf, sorted by (|a| + |b|, a, b); pairs with the same
    point set as an earlier pair are dropped
    """

    guard(word_length, 8, 'word_length')
    words = [''.join(bits) for n in range(1, word_length + 1) for bits in product('01', repeat=n)]
    pairs = sorted(
        ((a, b) for a in words for b in words if a * len(b) != b * len(a)),
        key=lambda ab: (len(ab[0]) + len(ab[1]), ab[0], ab[1]),
    )
    seen, out = set(), []
    for a, b in pairs:
        c = cantor_orbit(a, b, eps)
        if c.points not in seen:
            seen.add(c.points)
            out.append(c)
    return out


def worked_example_constraints(eps=Fraction(1, 10**10)):
    """
    Returns the three stages of constraint sets of the rotational worked
    example: [C(0,10)], [C(01,10)], then seven sets of words of length <= 3
    """

    return [[cantor_orbit(a, b, eps) for a, b in stage] for stage in WORKED_EXAMPLE_STAGES]


def _symmetric_hull(cfg, points):
    pts = set()
    for p in points:
        pts.add(p)
        pts.add(cfg.image(p))
    return ConvexPoly(tuple(pts))


def _branch(poly, constraint, cfg):
    # children of one polygon for one constraint
    if poly is not None and constraint.hit_by(poly):
        return [poly]
    base = () if poly is None else poly.vertices
    children = []
    for p in constraint.points:
        child = _symmetric_hull(cfg, base + (p,))
        if child.area() < cfg.area_threshold:
            children.append(child)
    return children


def dominance(polygons):
    """
    Returns the antichain of polygons that contain no other polygon
    """

    ordered = sorted(set(polygons), key=lambda q: (q.area(), q.vertices))
    kept = []
    for q in ordered:
        if not any(contains_poly(q, k) for k in kept):
            kept.append(q)
    return kept


@check_scheduler
def search(cfg, constraints, family=None, scheduler_kwargs=None):
    """
    Returns the Family of minimal polygons that contain the anchors, are
    invariant under the configured symmetry, have area below the threshold
    and contain a point of every constraint set

    Parameters
    ----------
    cfg : SearchConfig
        Anchors, symmetry and area threshold.

    constraints : list of ConstraintSet
        Processed in the given order.

    family : Family (default: None)
        Continue from an earlier result instead of the anchor hull.

    jobs : int (default: TRAPSEEKER_JOBS or 1)
        Number of dask workers for branching. Consumed by check_scheduler.
    """

    if not constraints:
        raise DomainError("search needs at least one constraint set")
    if family is not None:
        working = list(family.polygons)
    elif cfg.anchors:
        seed = _symmetric_hull(cfg, cfg.anchors)
        working = [seed] if seed.area() < cfg.area_threshold else []
    else:
        working = [None]

    for c in constraints:
        children = bag_map(lambda poly: _branch(poly, c, cfg), working, scheduler_kwargs)
        working = dominance(child for batch in children for child in batch)
        logging.info("search: %s -> %d polygons", c, len(working))
        if not working:
            break
    return Family(tuple(working))


def lower_bound(f, eps):
    """
    Returns min area over `f` less 4 * eps
    """

    if not len(f):
        raise DomainError("lower bound of an empty family")
    return f.min_area() - 4 * Fraction(eps)


def _parse_points(text):
    pts = []
    for item in text.split(';'):
        coords = item.split(',')
        if len(coords) != 2:
            raise UsageError(f"point must be 'x,y', got {item!r}")
        pts.append(point(parse_rat(coords[0]), parse_rat(coords[1])))
    return tuple(pts)


def _parse_pairs(text):
    pairs = []
    for item in text.split(';'):
        words = tuple(w.strip() for w in item.split(','))
        if len(words) != 2 or not all(words):
            raise UsageError(f"constraint must be 'a,b', got {item!r}")
        try:
            pairs.append(tuple(check_word(w) for w in words))
        except UsageError:
            raise UsageError(f"constraint words must be binary, got {item!r}")
    return tuple(pairs)


def campaign_config(**kwargs):
    """
    Returns SearchConfig from keyword settings

    Values may be Python objects or the strings of a campaign config file:
    anchors 'x,y;x,y', symmetry, threshold, epsilon, word_length and
    constraints 'a,b;a,b'. `preset`, a key of CAMPAIGN_PRESETS, fills
    in anything not given.
    """

    preset = kwargs.pop('preset', None)
    if preset is not None:
        if preset not in CAMPAIGN_PRESETS:
            raise UsageError(f"unknown preset {preset!r}, expected one of {sorted(CAMPAIGN_PRESETS)}")
        for k, v in CAMPAIGN_PRESETS[preset].items():
            if k not in kwargs:
                kwargs[k] = v

    campaign_defaults = {
        'anchors': (),
        'symmetry': 'none',
        'threshold': Fraction(1),
        'epsilon': Fraction(1, 10**10),
        'word_length': 4,
        'constraints': (),
    }
    for k, v in campaign_defaults.items():
        if k not in kwargs:
            kwargs[k] = v
    unknown = set(kwargs) - set(campaign_defaults)
    if unknown:
        raise UsageError(f"unknown campaign keys {sorted(unknown)}")

    anchors = kwargs['anchors']
    anchors = _parse_points(anchors) if isinstance(anchors, str) else tuple(point(*p) for p in anchors)
    pairs = kwargs['constraints']
    pairs = _parse_pairs(pairs) if isinstance(pairs, str) else tuple(tuple(p) for p in pairs)
    try:
        word_length = int(kwargs['word_length'])
    except ValueError:
        raise UsageError(f"word_length must be an integer, got {kwargs['word_length']!r}")
    return SearchConfig(
        anchors=anchors,
        symmetry=str(kwargs['symmetry']).strip(),
        area_threshold=parse_rat(kwargs['threshold']),
        epsilon=parse_rat(kwargs['epsilon']),
        max_word_len=word_length,
        pairs=pairs,
    )


def run_campaign(cfg, jobs=None):
    """
    Returns (Family, constraints) for a SearchConfig; constraints are the
    config's explicit pairs, else every pair up to max_word_len
    """

    if cfg.pairs:
        constraints = [cantor_orbit(a, b, cfg.epsilon) for a, b in cfg.pairs]
    else:
        constraints = default_constraints(cfg.max_word_len, cfg.epsilon)
    logging.info("run_campaign: %d constraint sets, symmetry %s, threshold %s",
                 len(constraints), cfg.symmetry, cfg.area_threshold)
    family = search(cfg, constraints, jobs=jobs)
    return family, constraints
