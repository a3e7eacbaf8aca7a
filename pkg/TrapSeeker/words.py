"""
Combinatorics on finite binary words

Words are plain str over '0' and '1'. Slopes are fractions.Fraction
strictly between 0 and 1.
"""

import logging
from fractions import Fraction

import numpy as np

from TrapSeeker.utility import DomainError, UsageError, guard


def check_word(w):
    """
    Returns `w` if it is a 0/1 string, else raises UsageError
    """

    if not isinstance(w, str) or set(w) - {'0', '1'}:
        raise UsageError(f"not a binary word: {w!r}")
    return w


def complement(w):
    return w.translate(str.maketrans('01', '10'))


def val(w):
    """
    Returns the integer with binary digits `w`, 0 for the empty word
    """

    return int(w, 2) if w else 0


def as_slope(r):
    """
    Returns `r` as a Fraction in (0, 1)
    """

    try:
        r = Fraction(r)
    except (TypeError, ValueError, ZeroDivisionError):
        raise UsageError(f"not a fraction: {r!r}")
    if not 0 < r < 1:
        raise DomainError(f"slope must lie strictly between 0 and 1, got {r}")
    return r


def is_balanced(w, cyclic=False):
    """
    Returns True if any two factors of `w` of equal length have 1-counts
    differing by at most one. With `cyclic=True` the test runs on `w + w`.
    """

    check_word(w)
    if cyclic:
        w = w + w
    if len(w) < 2:
        return True
    bits = np.frombuffer(w.encode(), dtype=np.uint8) - ord('0')
    csum = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    for n in range(1, len(w)):
        counts = csum[n:] - csum[:-n]
        if counts.max() - counts.min() > 1:
            return False
    return True


def mechanical_word(p, q):
    """
    Returns the lower mechanical word of slope p/q and length q
    """

    return ''.join(str((i + 1) * p // q - i * p // q) for i in range(q))


def rotations(w):
    return [w[i:] + w[:i] for i in range(len(w))]


def extremal_words(r):
    """
    Returns (zero_max, one_min) for slope `r`: the lexicographically
    largest rotation starting with 0 and the smallest starting with 1 of the
    cyclically balanced word of length q with p ones
    """

    r = as_slope(r)
    rots = rotations(mechanical_word(r.numerator, r.denominator))
    zero_max = max(w for w in rots if w[0] == '0')
    one_min = min(w for w in rots if w[0] == '1')
    return zero_max, one_min


def zero_max(r):
    return extremal_words(r)[0]


def one_min(r):
    return extremal_words(r)[1]


def substitution_words(rv, symbol='0'):
    """
    Returns rho_{r_1} ... rho_{r_n}(symbol) for the slope vector `rv`
    rho_{r_n} is applied first; each rho_r sends 0 to zero_max(r) and
    1 to one_min(r)
    """

    symbol = str(symbol)
    check_word(symbol)
    if len(rv) == 0:
        raise DomainError("slope vector must be nonempty")
    w = symbol
    for r in reversed(list(rv)):
        image = extremal_words(r)
        w = ''.join(image[int(c)] for c in w)
    return w


def thue_morse(k):
    """
    Returns the first 2**k letters of the Thue-Morse word
    """

    guard(k, 24, 'k')
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    t = '0'
    for _ in range(k):
        t = t + complement(t)
    return t


def farey_parent(r):
    """
    Returns the Farey neighbour c0/d0 of r = c/d with r < c0/d0 and d0 < d
    """

    r = as_slope(r)
    c, d = r.numerator, r.denominator
    if d == 1:
        raise DomainError(f"{r} has no Farey parent")
    d0 = -pow(c, -1, d) % d
    c0 = (1 + c * d0) // d
    return Fraction(c0, d0)


def farey_seq(r, k):
    """
    Returns r_k = (c_{k-1} + c) / (d_{k-1} + d), with r_0 = farey_parent(r)
    """

    r = as_slope(r)
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    parent = farey_parent(r)
    ck, dk = parent.numerator, parent.denominator
    for _ in range(k):
        ck, dk = ck + r.numerator, dk + r.denominator
    return Fraction(ck, dk)


def periodic_less(u, v):
    """
    Returns True if u^inf < v^inf lexicographically
    Two periodic words that agree on |u| + |v| letters are equal
    """

    n = len(u) + len(v)
    pu = (u * (n // len(u) + 1))[:n]
    pv = (v * (n // len(v) + 1))[:n]
    return pu < pv


def lemma52_identities(r, k):
    """
    Returns True if the Farey word identities and lexicographic chains hold

    For i = 0..k, with z = zero_max(r):
        zero_max(r_k) == zero_max(r_i) + z * (k - i)
        zero_max(r_k) == z + one_min(r_i) + z * (k - 1 - i)     (i < k)
        one_min(r_k)  == one_min(r_i) + z * (k - i)
    and the periodic closures descend strictly:
        zero_max(r)^inf < zero_max(r_k)^inf < ... < zero_max(r_0)^inf
        one_min(r)^inf  < one_min(r_k)^inf  < ... < one_min(r_0)^inf
    """

    r = as_slope(r)
    guard(k, 8, 'k')
    if r >= Fraction(1, 2):
        raise DomainError(f"r must be below 1/2, got {r}")

    z = zero_max(r)
    seq = [extremal_words(farey_seq(r, i)) for i in range(k + 1)]
    zk, ok = seq[k]
    for i, (zi, oi) in enumerate(seq):
        if zk != zi + z * (k - i):
            logging.debug("zero_max identity fails for r=%s k=%d i=%d", r, k, i)
            return False
        if i < k and zk != z + oi + z * (k - 1 - i):
            logging.debug("one_min splice identity fails for r=%s k=%d i=%d", r, k, i)
            return False
        if ok != oi + z * (k - i):
            logging.debug("one_min identity fails for r=%s k=%d i=%d", r, k, i)
            return False

    for index in (0, 1):
        chain = [extremal_words(r)[index]] + [s[index] for s in reversed(seq)]
        for lo, hi in zip(chain, chain[1:]):
            if not periodic_less(lo, hi):
                logging.debug("chain fails for r=%s k=%d: %s !< %s", r, k, lo, hi)
                return False
    return True


def partitions(n):
    """
    Returns the number of partitions of `n`, by Euler's pentagonal recurrence
    """

    guard(n, 10**4, 'n')
    if n < 0:
        return 0
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def doubling_constant(terms):
    """
    Returns (1/4) * prod_{n=1}^{terms} (1 - 2**(-2**n)) exactly
    """

    guard(terms, 16, 'terms')
    if terms < 1:
        raise DomainError(f"terms must be positive, got {terms}")
    value = Fraction(1, 4)
    for n in range(1, terms + 1):
        value *= 1 - Fraction(1, 2**(2**n))
    return value
