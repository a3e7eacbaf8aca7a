"""
Symbolic coding of the baker's map

A point (x, y) of the unit square corresponds to a bi-infinite binary
sequence ... x_{-1} x_0 . x_1 x_2 ... with x = 0.x_1 x_2 ... and
y = 0.x_0 x_{-1} .... Only eventually periodic sequences are represented;
their points have rational coordinates.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from TrapSeeker.exact_geom import Box, Point, point
from TrapSeeker.utility import DomainError, UndefinedItineraryError, UsageError, guard
from TrapSeeker.words import check_word, complement, val


def primitive_root(w):
    """
    Returns shortest u with w == u * k
    """

    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def least_rotation(w):
    return min(w[i:] + w[:i] for i in range(len(w))) if w else w


def expansion_value(transient, period):
    """
    Returns exact value of 0.transient period^inf
    """

    t, p = len(transient), len(period)
    head = Fraction(val(transient), 2**t)
    return head + Fraction(val(period), 2**t * (2**p - 1))


def _trim(transient, period):
    # absorb trailing transient letters into the period
    while transient and transient[-1] == period[-1]:
        transient = transient[:-1]
        period = period[-1] + period[:-1]
    return transient, period


@dataclass(frozen=True)
class BiSeq:
    """
    Eventually periodic bi-infinite sequence

    Both sides are read outward from the origin: the digits to the right are
    right_transient right_period^inf (x_1 x_2 ...), the digits to the left are
    left_transient left_period^inf (x_0 x_{-1} ...). Instances are canonical
    (primitive periods, shortest transients), so equality is exact.
    """

    left_period: str
    left_transient: str = ''
    right_transient: str = ''
    right_period: str = '0'

    _pattern = re.compile(r'^\((?P<lp>[01]+)\)(?P<lt>[01]*)[·.](?P<rt>[01]*)\((?P<rp>[01]+)\)$')

    def __post_init__(self):
        for name in ('left_period', 'left_transient', 'right_transient', 'right_period'):
            check_word(getattr(self, name))
        if not self.left_period or not self.right_period:
            raise DomainError("periods must be nonempty")
        lt, lp = _trim(self.left_transient, primitive_root(self.left_period))
        rt, rp = _trim(self.right_transient, primitive_root(self.right_period))
        object.__setattr__(self, 'left_transient', lt)
        object.__setattr__(self, 'left_period', lp)
        object.__setattr__(self, 'right_transient', rt)
        object.__setattr__(self, 'right_period', rp)

    @classmethod
    def periodic(cls, word):
        """
        Returns ... word word . word word ..., the right side starting with word
        """

        check_word(word)
        return cls(left_period=word[::-1], right_period=word)

    @classmethod
    def parse(cls, text):
        """
        Returns BiSeq from '(P)T·U(Q)' written in natural left-to-right order,
        i.e. ... P P T . U Q Q ...
        """

        m = cls._pattern.match(text.replace(' ', ''))
        if m is None:
            raise UsageError(f"malformed sequence {text!r}, expected '(P)T·U(Q)'")
        return cls(
            left_period=m['lp'][::-1], left_transient=m['lt'][::-1],
            right_transient=m['rt'], right_period=m['rp'],
        )

    def __str__(self):
        return (f"({self.left_period[::-1]}){self.left_transient[::-1]}"
                f"·{self.right_transient}({self.right_period})")

    def right_digits(self, n):
        """Returns x_1 ... x_n"""
        return _digits(self.right_transient, self.right_period, n)

    def left_digits(self, n):
        """Returns x_0 x_{-1} ... x_{1-n}, read outward"""
        return _digits(self.left_transient, self.left_period, n)

    def window(self, nleft, nright):
        """
        Returns the Window [x_{1-nleft} ... x_0 . x_1 ... x_nright]
        """

        return Window(self.left_digits(nleft)[::-1], self.right_digits(nright))

    @property
    def is_periodic(self):
        return (not self.left_transient and not self.right_transient
                and self.left_period == self.right_period[::-1])


def _digits(transient, period, n):
    if n <= len(transient):
        return transient[:n]
    rest = n - len(transient)
    return transient + (period * (rest // len(period) + 1))[:rest]


def pi_point(s):
    """
    Returns exact point (x, y) coded by `s`
    """

    return Point(expansion_value(s.right_transient, s.right_period),
                 expansion_value(s.left_transient, s.left_period))


def shift(s, n=1):
    """
    Returns the n-fold left shift of `s`; negative n shifts right
    pi_point(shift(s, 1)) is the baker's map image of pi_point(s)
    """

    lt, lp, rt, rp = s.left_transient, s.left_period, s.right_transient, s.right_period
    for _ in range(abs(n)):
        if n > 0:
            if rt:
                c, rt = rt[0], rt[1:]
            else:
                c, rp = rp[0], rp[1:] + rp[0]
            lt = c + lt
        else:
            if lt:
                c, lt = lt[0], lt[1:]
            else:
                c, lp = lp[0], lp[1:] + lp[0]
            rt = c + rt
    return BiSeq(left_period=lp, left_transient=lt, right_transient=rt, right_period=rp)


@dataclass(frozen=True)
class Window:
    """
    Cylinder window [u_{-k} ... u_0 . u_1 ... u_m]

    `left` holds u_{-k} ... u_0 in natural order, `right` holds u_1 ... u_m.
    """

    left: str = ''
    right: str = ''

    def __post_init__(self):
        check_word(self.left)
        check_word(self.right)

    @classmethod
    def parse(cls, text):
        """
        Returns Window from 'u·v' (a plain '.' also separates)
        """

        text = text.replace(' ', '')
        parts = re.split(r'[·.]', text)
        if len(parts) != 2:
            raise UsageError(f"malformed window {text!r}, expected 'u·v'")
        try:
            return cls(*parts)
        except UsageError:
            raise UsageError(f"malformed window {text!r}, expected 'u·v' over 0/1")

    def __str__(self):
        return f"{self.left}·{self.right}"

    def __len__(self):
        return len(self.left) + len(self.right)

    def shifted(self, n):
        """
        Returns the window moved n places to the left, digits crossing the
        origin keep their position in the word
        """

        word = self.left + self.right
        cut = len(self.left) + n
        if not 0 <= cut <= len(word):
            raise DomainError(f"cannot shift window {self} by {n}")
        return Window(word[:cut], word[cut:])

    def transform(self, symmetry):
        """
        Returns the window whose cylinder box is the image of this one's box
        under `symmetry`
        """

        if symmetry == 'identity':
            return self
        if symmetry == 'mirror':
            return Window(complement(self.right)[::-1], complement(self.left)[::-1])
        if symmetry == 'rotation':
            return Window(complement(self.left), complement(self.right))
        if symmetry == 'diagonal':
            return Window(self.right[::-1], self.left[::-1])
        raise UsageError(f"unknown symmetry {symmetry!r}")


def cylinder_box(w):
    """
    Returns closed box pi([u . v]): width 2**-|v|, height 2**-|u|
    """

    m, k = len(w.right), len(w.left)
    x_lo = Fraction(val(w.right), 2**m)
    y_lo = Fraction(val(w.left[::-1]), 2**k)
    return Box(x_lo, x_lo + Fraction(1, 2**m), y_lo, y_lo + Fraction(1, 2**k))


@dataclass(frozen=True, order=True)
class Cycle:
    """
    Periodic orbit named by its Lyndon word
    """

    word: str

    def __post_init__(self):
        check_word(self.word)
        if not self.word:
            raise DomainError("cycle word must be nonempty")
        if primitive_root(self.word) != self.word or least_rotation(self.word) != self.word:
            raise DomainError(f"{self.word!r} is not a Lyndon word")

    @classmethod
    def from_word(cls, w):
        """
        Returns the Cycle of the periodic orbit w^inf
        """

        check_word(w)
        return cls(least_rotation(primitive_root(w)))

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return self.word


def cycle_points(word):
    """
    Returns the orbit of word^inf: for each rotation u the point
    (val(u), val(reverse(u))) / (2**p - 1); rotation i+1 is the image of i
    """

    p = len(word)
    guard(p, 30, 'period')
    denom = 2**p - 1
    points = []
    for i in range(p):
        u = word[i:] + word[:i]
        points.append(Point(Fraction(val(u), denom), Fraction(val(u[::-1]), denom)))
    return points


def cycle_orbit(c):
    """
    Returns the points of the periodic orbit `c` (a Cycle or a word)
    """

    word = c.word if isinstance(c, Cycle) else c
    return cycle_points(word)


def lyndon_words(max_p, min_p=1):
    """
    Returns Cycles for every binary Lyndon word of length min_p..max_p,
    sorted by length then lexicographically (Duval's algorithm)
    """

    guard(max_p, 24, 'max_p')
    cycles = []
    for length in range(max(1, min_p), max_p + 1):
        w = [-1]
        while w:
            w[-1] += 1
            m = len(w)
            if m == length:
                cycles.append(Cycle(''.join(map(str, w))))
            while len(w) < length:
                w.append(w[-m])
            while w and w[-1] == 1:
                w.pop()
    return cycles


def baker_step(p, direction='forward'):
    """
    Returns B(p) or B^{-1}(p)
    B(x, y) = (2x, y/2) for x < 1/2 and (2x - 1, (y + 1)/2) for x > 1/2;
    x = 1/2 forward (y = 1/2 backward) has no defined image
    """

    x, y = point(*p)
    half = Fraction(1, 2)
    if direction == 'forward':
        if x == half:
            raise UndefinedItineraryError(f"forward image undefined at x = 1/2 ({x}, {y})")
        return Point(2 * x, y / 2) if x < half else Point(2 * x - 1, (y + 1) / 2)
    if direction == 'backward':
        if y == half:
            raise UndefinedItineraryError(f"backward image undefined at y = 1/2 ({x}, {y})")
        return Point(x / 2, 2 * y) if y < half else Point((x + 1) / 2, 2 * y - 1)
    raise UsageError(f"direction must be 'forward' or 'backward', got {direction!r}")


def baker_iterate(p, n):
    """
    Returns B^n(p); negative n steps backward
    """

    direction = 'forward' if n >= 0 else 'backward'
    for _ in range(abs(n)):
        p = baker_step(p, direction)
    return p
