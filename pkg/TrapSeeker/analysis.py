"""
Certificates and scans for holes of the baker's map
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from TrapSeeker.exact_geom import Box, BoxClass, Point, classify_box, classify_grid, rat_str
from TrapSeeker.holes import h_script
from TrapSeeker.symbolic import (
    BiSeq, Window, cycle_points, cylinder_box, expansion_value, lyndon_words,
    pi_point, shift,
)
from TrapSeeker.utility import (
    DomainError, NoWitnessError, ResourceError, bag_map, check_scheduler, guard,
)
from TrapSeeker.words import check_word, complement, is_balanced, partitions, thue_morse

FIXED_ORBITS = ('0', '1')


# ---------------------------------------------------------------------------
# forbidden factors

def box_classes(w, hole):
    """
    Returns BoxClass of cylinder_box(w) against each part of `hole`
    """

    box = cylinder_box(w)
    return [classify_box(box, part) for part in hole.parts]


def certify_forbidden(w, hole, mode='essential'):
    """
    Returns True if the cylinder of `w` lies in the hole

    mode='strict' needs the closed box inside some open part, so every orbit
    through the window enters the hole. mode='essential' only needs the box
    inside some closed part; orbits meeting the hole on its boundary alone
    are then not excluded.
    """

    if isinstance(w, str):
        w = Window.parse(w)
    if mode not in ('strict', 'essential'):
        raise DomainError(f"mode must be 'strict' or 'essential', got {mode!r}")
    classes = box_classes(w, hole)
    if mode == 'strict':
        return any(c.inside_open for c in classes)
    return any(c.inside_closed for c in classes)


def certify_report(w, hole, mode='essential'):
    """
    Returns JSON-ready record for a forbidden-factor check
    """

    if isinstance(w, str):
        w = Window.parse(w)
    classes = box_classes(w, hole)
    result = certify_forbidden(w, hole, mode)
    record = {
        'item': str(w),
        'hole': hole.name,
        'mode': mode,
        'result': result,
        'certificate': [c.name for c in classes],
    }
    if result and not any(c.inside_open for c in classes):
        record['caveat'] = "box meets the hole boundary; boundary orbits are not excluded"
    return record


def h_witness(w, m):
    """
    Returns window [0 (w01)^m w 0 . 1 w (10w)^m 1] for a palindrome `w`;
    its cylinder lies in the closure of |x - y| > 1/2
    """

    check_word(w)
    if w != w[::-1]:
        raise DomainError(f"h_witness needs a palindrome, got {w!r}")
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    left = '0' + (w + '01') * m + w + '0'
    right = '1' + w + ('10' + w) * m + '1'
    return Window(left, right)


def delta_windows(kmax=8):
    """
    Returns windows forbidden for the survivors of delta:
    [11.00], [1^(m+1) . 0 1^m 0] and [1 0^m 1 . 0^n 1] for m < n
    """

    windows = [Window('11', '00')]
    windows += [Window('1' * (m + 1), '0' + '1' * m + '0') for m in range(1, kmax + 1)]
    windows += [Window('1' + '0' * m + '1', '0' * n + '1')
                for n in range(2, kmax + 1) for m in range(1, n)]
    return windows


def pk_windows(kmax=8):
    """
    Returns (window, hole specs) pairs for the P_k forbidden factors

    The complementary factor of each case is the rotated window.
    """

    ks = [f"pk:{k}" for k in range(1, kmax + 1)]
    cases = []
    for n in range(3, kmax + 1):
        for ell in range(2, n):
            cases.append((Window('1' + '0' * (ell - 1), '0' + '1' * n + '0'), ks))
    for n in range(2, kmax + 1):
        for ell in range(1, n):
            specs = ks if n >= 3 else ['pk:1']
            cases.append((Window('1' + '0' * ell, '1' + '0' * n + '1'), specs))
    for n in range(2, kmax + 1):
        specs = ks if n >= 3 else ['pk:1', 'pk:2']
        cases.append((Window('1' * n + '0' * (n - 1), '0' + '1' * n + '01'), specs))
        cases.append((Window('1' * n + '0' * n, '1' + '0' * n + '10'), specs))
    return cases + [(w.transform('rotation'), specs) for w, specs in cases]


def delta1_windows(kmax=8, nmax=6):
    """
    Returns windows whose cylinders lie in the closure of delta1
    """

    windows = [Window('11', '00')]
    for k in range(1, kmax + 1):
        ones = '1' * k
        windows.append(Window('1' * (k + 2), '0' + ones + '0'))
        windows.append(Window('1110' + '1' * (k + 1), '0' + ones + '0'))
        windows.append(Window('1' + '0' * k + '1', '0' * (k + 2)))
        windows.append(Window('1' + '0' * k + '1', '0' * (k + 1) + '100'))
    for n in range(1, nmax + 1):
        windows.append(Window('111' + '011' * n, '010'))
        windows.append(Window('111' + '011' * n + '0111', '0110'))
    windows.append(Window('11011', '010110'))
    for n in range(0, nmax + 1):
        for m in range(0, nmax + 1):
            tens_n, tens_m = '10' * n, '10' * m
            windows.append(Window('110' + tens_n + '11', '0' + tens_m + '100'))
            windows.append(Window('110' + tens_n + '1', '00' + tens_m + '100'))
            if m >= 2:
                windows.append(Window('110' + tens_n + '11', '0' + tens_m + '110'))
            if m >= 1 or n == 0:
                windows.append(Window('110' + tens_n + '1', '00' + tens_m + '110'))
            if n >= 1:
                windows.append(Window('100' + tens_n + '1', '00' + tens_m + '100'))
    return windows


def delta2_windows(kmax=8, nmax=6):
    """
    Returns windows whose cylinders lie in the closure of delta2: the direct
    list plus mirror images of the delta1 windows
    """

    windows = []
    for k in range(3, kmax + 1):
        for kk in range(1, k):
            windows.append(Window('110' + '1' * k, '0' + '1' * kk + '0'))
        for kk in range(1, k - 1):
            windows.append(Window('10' + '1' * k, '0' + '1' * kk + '0'))
    windows.append(Window('11011', '010'))
    return windows + [w.transform('mirror') for w in delta1_windows(kmax, nmax)]


# ---------------------------------------------------------------------------
# cycles

class CycleStatus(Enum):
    HITS_OPEN = 'hits-open'
    ON_BOUNDARY_ONLY = 'on-boundary-only'
    AVOIDS_CLOSED = 'avoids-closed'


def cycle_status(word, hole):
    """
    Returns (CycleStatus, witness point or None) for the cycle of `word`
    """

    boundary = None
    for p in cycle_points(word):
        if hole.contains(p, 'open'):
            return CycleStatus.HITS_OPEN, p
        if boundary is None and hole.contains(p, 'closed'):
            boundary = p
    if boundary is not None:
        return CycleStatus.ON_BOUNDARY_ONLY, boundary
    return CycleStatus.AVOIDS_CLOSED, None


@dataclass(frozen=True)
class CycleReport:
    hole: str
    max_p: int
    entries: tuple

    def words(self, status, include_fixed=False):
        return [w for w, s, _ in self.entries
                if s is status and (include_fixed or w not in FIXED_ORBITS)]

    def open_avoiders(self, include_fixed=False):
        """
        Returns cycles that miss the open hole
        """

        return [w for w, s, _ in self.entries
                if s is not CycleStatus.HITS_OPEN and (include_fixed or w not in FIXED_ORBITS)]

    def closed_avoiders(self, include_fixed=False):
        return self.words(CycleStatus.AVOIDS_CLOSED, include_fixed)

    @property
    def is_cycle_trap(self):
        return not self.closed_avoiders()

    @property
    def verdict(self):
        if self.is_cycle_trap:
            return f"cycle trap up to period {self.max_p}"
        return f"not a cycle trap: {len(self.closed_avoiders())} cycles avoid the closed hole"

    def records(self):
        out = []
        for w, s, p in self.entries:
            out.append({
                'item': w,
                'status': s.value,
                'certificate': None if p is None else [rat_str(p.x), rat_str(p.y)],
                'fixed_orbit': w in FIXED_ORBITS,
            })
        return out


@check_scheduler
def scan_cycles(hole, max_p, scheduler_kwargs=None):
    """
    Classifies every cycle of period <= max_p against `hole`

    Parameters
    ----------
    hole : Hole
        The hole to scan against.

    max_p : int
        Largest period; at most 20.

    jobs : int (default: TRAPSEEKER_JOBS or 1)
        Number of dask workers. Consumed by check_scheduler.

    Returns
    -------
    CycleReport
        One entry per Lyndon word, in length then lexicographic order.
        The fixed orbits '0' and '1' are listed but do not count against the
        cycle-trap verdict.
    """

    guard(max_p, 20, 'max_p')
    words = [c.word for c in lyndon_words(max_p)]
    statuses = bag_map(lambda w: cycle_status(w, hole), words, scheduler_kwargs)
    entries = tuple((w, s, p) for w, (s, p) in zip(words, statuses))
    logging.info("scan_cycles: %s, %d cycles up to period %d", hole.name, len(entries), max_p)
    return CycleReport(hole.name, max_p, entries)


# ---------------------------------------------------------------------------
# dimension bounds

@dataclass(frozen=True)
class DimBounds:
    """
    Certified bounds on the Hausdorff dimension of the survivor set

    lower = 2 log2(lower_ratio), a Collatz-Wielandt bound on the spectral
    radius of `component`, a strongly connected set of windows whose boxes
    miss the open hole. upper = 2 log2(upper_count) / (2L + m) where
    upper_count counts words of length 2L + m all of whose windows avoid
    the closed hole's interior boxes.
    """

    lower: float
    upper: float
    L: int
    m: int
    lower_ratio: Fraction
    upper_count: int
    component: tuple

    def windows(self):
        return [node_window(w, self.L) for w in self.component]


def node_window(w, L):
    """
    Returns the Window of transfer-graph node `w` (2L bits, left word first)
    """

    bits = format(int(w), f'0{2 * L}b')
    return Window(bits[:L], bits[L:])


def _bit_reverse(values, nbits):
    out = np.zeros_like(values)
    for b in range(nbits):
        out |= ((values >> b) & 1) << (nbits - 1 - b)
    return out


def window_masks(hole, L):
    """
    Returns boolean node masks (upper, lower) over the 4**L windows with
    |left| = |right| = L: upper keeps windows not inside any closed part,
    lower keeps windows disjoint from every open part
    """

    N = 2**L
    inside_closed = np.zeros((N, N), dtype=bool)
    touches_open = np.zeros((N, N), dtype=bool)
    for part in hole.parts:
        codes = classify_grid(part, L)
        inside_closed |= codes <= BoxClass.INSIDE_CLOSED.value
        touches_open |= codes <= BoxClass.STRADDLES.value
    nodes = np.arange(N * N, dtype=np.int64)
    i = nodes & (N - 1)
    j = _bit_reverse(nodes >> L, L)
    return ~inside_closed[i, j], ~touches_open[i, j]


def _successors(L):
    nodes = np.arange(4**L, dtype=np.int64)
    s0 = (nodes << 1) & (4**L - 1)
    return s0, s0 | 1


def _walk_counts(allowed, L, m):
    # v[w] = number of m-edge walks from w inside the allowed nodes
    s0, s1 = _successors(L)
    dtype = np.int64 if 2 * L + m < 62 else object
    keep = allowed.astype(dtype)
    v = keep.copy()
    for _ in range(m):
        v = keep * (v[s0] + v[s1])
    return v


def _lower_certificate(allowed, L, m):
    s0, s1 = _successors(L)
    nodes = np.flatnonzero(allowed)
    if nodes.size == 0:
        return Fraction(0), ()
    index = np.full(allowed.size, -1, dtype=np.int64)
    index[nodes] = np.arange(nodes.size)

    rows, cols = [], []
    for succ in (s0, s1):
        targets = index[succ[nodes]]
        ok = targets >= 0
        rows.append(np.arange(nodes.size)[ok])
        cols.append(targets[ok])
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)),
                       shape=(nodes.size, nodes.size))
    ncomp, labels = connected_components(graph, directed=True, connection='strong')

    # keep edges inside a component; a component is usable if it has one
    inner = labels[rows] == labels[cols]
    rows, cols = rows[inner], cols[inner]
    if rows.size == 0:
        return Fraction(0), ()
    usable = np.unique(labels[rows])

    dtype = np.int64 if m + 2 < 62 else object
    v = np.zeros(nodes.size, dtype=dtype)
    v[np.isin(labels, usable)] = 1
    for _ in range(m + 1):
        prev = v
        v = np.zeros(nodes.size, dtype=dtype)
        np.add.at(v, rows, prev[cols])
    # prev = A^m 1, v = A^(m+1) 1 restricted to usable components
    members = np.isin(labels, usable)
    ratio = np.full(nodes.size, np.inf)
    ratio[members] = v[members].astype(float) / prev[members].astype(float)
    comp_min = np.full(ncomp, np.inf)
    np.minimum.at(comp_min, labels[members], ratio[members])
    best_float = comp_min[usable].max()

    best, best_label = Fraction(0), None
    for label in usable[comp_min[usable] >= best_float * (1 - 1e-9)]:
        idx = np.flatnonzero(labels == label)
        lo = ratio[idx].min()
        cands = idx[ratio[idx] <= lo * (1 + 1e-9)]
        exact = min(Fraction(int(v[c]), int(prev[c])) for c in cands)
        if exact > best:
            best, best_label = exact, label
    if best_label is None:
        return Fraction(0), ()
    component = tuple(int(w) for w in nodes[labels == best_label])
    return best, component


def dim_bounds(hole, L, m=None):
    """
    Returns DimBounds for the survivor set of `hole` from windows of half
    length L and paths of m steps (default 4L)

    Parameters
    ----------
    hole : Hole
        Any hole; the empty hole gives (2, 2).

    L : int
        Window half length, at most 14 (4**L transfer-graph nodes).

    m : int (default: 4 * L)
        Number of shift steps for path counting.
    """

    guard(L, 14, 'L')
    if L < 1:
        raise DomainError(f"L must be positive, got {L}")
    if m is None:
        m = 4 * L
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")

    upper_mask, lower_mask = window_masks(hole, L)
    count = int(_walk_counts(upper_mask, L, m).sum())
    upper = 2 * math.log2(count) / (2 * L + m) if count > 0 else 0.0

    ratio, component = _lower_certificate(lower_mask, L, m)
    lower = 2 * (math.log2(ratio.numerator) - math.log2(ratio.denominator)) if ratio > 1 else 0.0
    lower = min(max(lower, 0.0), upper)
    logging.info("dim_bounds: %s L=%d m=%d -> [%.6f, %.6f]", hole.name, L, m, lower, upper)
    return DimBounds(lower, upper, L, m, ratio, count, component)


def verify_lower_certificate(hole, bounds):
    """
    Returns True if the component of `bounds` independently checks out:
    every window box misses each open part, the windows are strongly
    connected under the shift and the stated ratio is reproduced
    """

    if not bounds.component:
        return bounds.lower_ratio == 0
    L = bounds.L
    for w in bounds.windows():
        box = cylinder_box(w)
        if not all(classify_box(box, part).disjoint_from_open for part in hole.parts):
            return False

    members = set(bounds.component)
    mask = 4**L - 1
    succ = {w: [s for s in ((w << 1) & mask, ((w << 1) & mask) | 1) if s in members]
            for w in members}
    order = sorted(members)
    pos = {w: i for i, w in enumerate(order)}
    rows = [pos[w] for w in order for _ in succ[w]]
    cols = [pos[s] for w in order for s in succ[w]]
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                     shape=(len(order), len(order)))
    ncomp, _ = connected_components(adj, directed=True, connection='strong')
    if ncomp != 1:
        return False

    v = {w: 1 for w in order}
    for _ in range(bounds.m):
        v = {w: sum(v[s] for s in succ[w]) for w in order}
    nxt = {w: sum(v[s] for s in succ[w]) for w in order}
    return min(Fraction(nxt[w], v[w]) for w in order) == bounds.lower_ratio


# ---------------------------------------------------------------------------
# interior holes

def _interior_value(n):
    # 0.0^(n//2) 1 (0^n 1)^inf
    return expansion_value('0' * (n // 2) + '1', '0' * n + '1')


def interior_witness(hole):
    """
    Returns the least n >= 1 with 0.0^(n//2) 1 (0^n 1)^inf < eps, where eps
    is the least coordinate over the closed hole; the Cantor set
    {1 0^n, 1 0^(n+1)}^* then avoids the hole
    """

    verts = [v for part in hole.parts for v in part.vertices]
    for v in verts:
        if not (0 < v.x < 1 and 0 < v.y < 1):
            raise NoWitnessError(f"{hole.name} touches the boundary of the square at {v}")
    if not verts:
        return 1
    eps = min(min(v.x, v.y) for v in verts)
    n = 1
    while _interior_value(n) >= eps:
        n += 1
    return n


def witness_dimension(n):
    """
    Returns 2 log2(lam), lam > 1 the root of lam**(n+2) = lam + 1: the
    dimension carried by the Cantor set {1 0^n, 1 0^(n+1)}^*
    """

    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    lam = brentq(lambda t: t**(n + 2) - t - 1, 1.0, 2.0, xtol=1e-15)
    return 2 * math.log2(lam)


# ---------------------------------------------------------------------------
# counting for delta

def _omega_heads(maxlen):
    # 0^s then blocks 1 0^a with a nonincreasing
    heads = set()

    def extend(word, last):
        heads.add(word)
        for a in range(1, min(last, maxlen - len(word) - 1) + 1):
            extend(word + '1' + '0' * a, a)

    for s in range(maxlen + 1):
        extend('0' * s, maxlen)
    return heads


def _omega_tails(maxlen):
    # blocks 1^b 0 with b nondecreasing, then 1^t
    tails = set()

    def extend(word, last):
        for t in range(maxlen - len(word) + 1):
            tails.add(word + '1' * t)
        for b in range(last, maxlen - len(word)):
            extend(word + '1' * b + '0', b)

    extend('', 1)
    return tails


def omega_words(n):
    """
    Returns the set of length 2n+1 words of survivor sequences of delta
    """

    length = 2 * n + 1
    heads, tails = {}, {}
    for h in _omega_heads(length):
        heads.setdefault(len(h), []).append(h)
    for t in _omega_tails(length):
        tails.setdefault(len(t), []).append(t)
    return {h + t for k, hs in heads.items() for h in hs for t in tails.get(length - k, ())}


def omega_bound(n):
    return (2 * n + 1) * n**2 * partitions(2 * n)**2


def omega_count(n):
    """
    Returns (count, bound): the number of central words of length 2n+1 of
    survivors of delta, and (2n+1) n^2 p(2n)^2
    """

    guard(n, 12, 'n')
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return len(omega_words(n)), omega_bound(n)


# ---------------------------------------------------------------------------
# balanced sequences and the hole |x - y| > 1/2

def biseq_balanced(s):
    """
    Returns True if the bi-infinite sequence is balanced, checked on a
    finite word holding every factor up to the transients plus two periods
    """

    if s.is_periodic:
        return is_balanced(s.right_period, cyclic=True)
    span = (len(s.left_transient) + len(s.right_transient)
            + 2 * (len(s.left_period) + len(s.right_period)))
    reps = span // min(len(s.left_period), len(s.right_period)) + 2
    word = (s.left_period[::-1] * reps + s.left_transient[::-1]
            + s.right_transient + s.right_period * reps)
    return is_balanced(word)


def _limit_cycle(word):
    s = BiSeq.periodic(word)
    return [pi_point(shift(s, i)) for i in range(len(word))]


def _near_box(q, r):
    return Box(max(q.x - r, 0), min(q.x + r, 1), max(q.y - r, 0), min(q.y + r, 1))


def _tail_avoids(s, hole, start, step, limits, max_depth):
    # shift start + step * j lies within 2**-j (sup norm) of a point of `limits`
    for j in range(1, max_depth + 1):
        if hole.contains(pi_point(shift(s, start + step * j)), 'open'):
            return False
        r = Fraction(1, 2**j)
        if all(classify_box(_near_box(q, r), part).disjoint_from_open
               for q in limits for part in hole.parts):
            return True
    raise ResourceError(
        f"orbit of {s} is still undecided for {hole.name} at depth {max_depth}; "
        f"a limit cycle point lies on the hole boundary")


def orbit_avoids(s, hole, max_depth=128):
    """
    Returns True if no point of the orbit of `s` lies in the open hole

    Parameters
    ----------
    s : BiSeq
        Eventually periodic sequence.

    hole : Hole
        Any hole.

    max_depth : int (default: 128)
        Shifts past a transient come within 2**-j of the limit cycle after j
        steps. The scan of each tail stops once every limit point's
        2**-j box misses the open hole; ResourceError if that never happens
        within max_depth steps, which means a limit point is on the boundary.
    """

    lt, rt = len(s.left_transient), len(s.right_transient)
    for n in range(-lt, rt + 1):
        if hole.contains(pi_point(shift(s, n)), 'open'):
            return False
    if not _tail_avoids(s, hole, rt, 1, _limit_cycle(s.right_period), max_depth):
        return False
    return _tail_avoids(s, hole, -lt, -1, _limit_cycle(s.left_period[::-1]), max_depth)


def balanced_survivor(s):
    """
    Returns True if the whole orbit of `s` avoids |x - y| > 1/2

    Cycle points have odd denominators, so no limit point lies on the lines
    |x - y| = 1/2 and the tail scan of orbit_avoids always terminates.
    """

    return orbit_avoids(s, h_script())


# ---------------------------------------------------------------------------
# sampling evidence for avoidance

def _concatenations(u, v, L):
    # words built from blocks u, v with total length <= L, deduplicated
    blocks = sorted({u, v}, key=lambda b: (len(b), b))
    seen = {''}
    frontier = ['']
    while frontier:
        nxt = []
        for w in frontier:
            for b in blocks:
                c = w + b
                if len(c) <= L and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
        guard(len(seen), 10**6, 'concatenations')
    return sorted(seen, key=lambda w: (len(w), w))


def _first_violation(word, v, hole):
    for i in range(len(word) + 1):
        s = BiSeq(left_period=v[::-1], left_transient=word[:i][::-1],
                  right_transient=word[i:], right_period=v)
        if hole.contains(pi_point(s), 'open'):
            return Window(word[:i], word[i:])
    return None


@check_scheduler
def avoidance_sample(u, v, hole, L, scheduler_kwargs=None):
    """
    Returns the first window [w1 . w2] whose point v^inf w1 . w2 v^inf lies
    in the open hole, over {u, v}-concatenations w1 w2 of length <= L and all
    split points, or None. A None result is evidence of avoidance, not a
    proof.

    Blocks are limited to length 16 and L to 64. The deduplicated set of
    concatenations is limited to 10**6 words, so L above about 20 only
    works when the blocks are long. Each limit raises ResourceError.
    """

    check_word(u)
    check_word(v)
    if not u or not v:
        raise DomainError("blocks must be nonempty")
    guard(max(len(u), len(v)), 16, 'block length')
    guard(L, 64, 'L')
    words = _concatenations(u, v, L)
    hits = bag_map(lambda w: _first_violation(w, v, hole), words, scheduler_kwargs)
    for hit in hits:
        if hit is not None:
            return hit
    return None


def pinfty_probe(k):
    """
    Returns the four extremal points [(X2, X2), (X2, X1), (X1, X2), (X1, X1)]
    of the orbit of {s, ~s}^*, s the Thue-Morse prefix of length 2**k, with
    X1 = 0.~s s^inf the least x above 1/2 and X2 = 0.s ~s^inf the largest x
    below 1/2
    """

    guard(k, 10, 'k')
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    s = thue_morse(k)
    x1 = expansion_value(complement(s), s)
    x2 = expansion_value(s, complement(s))
    return [Point(x2, x2), Point(x2, x1), Point(x1, x2), Point(x1, x1)]
