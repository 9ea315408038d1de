"""Independent brute-force references used by the tests.

None of these import the code paths they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd

INF = None  # slopes here are Fractions, with None for infinity


def matrix_cf(coeffs):
    """[a_1..a_n] via the product of [[a, -1], [1, 0]]; first column is (p, q)."""
    m = [[1, 0], [0, 1]]
    for a in coeffs:
        m = [[m[0][0] * a + m[0][1], -m[0][0]],
             [m[1][0] * a + m[1][1], -m[1][0]]]
    return m  # [[p, -p'], [q, -q']]


def brute_eval(coeffs):
    return Fraction(matrix_cf(coeffs)[0][0], matrix_cf(coeffs)[1][0])


@lru_cache(maxsize=None)
def stern_brocot(depth):
    """All slopes reached by mediants within ``depth`` levels, both signs, plus 0 and inf."""
    out = {Fraction(0), INF}
    level = [((0, 1), (1, 0))]
    for _ in range(depth):
        nxt = []
        for (a, b), (c, d) in level:
            m = (a + c, b + d)
            out.add(Fraction(*m))
            out.add(-Fraction(*m))
            nxt.append(((a, b), m))
            nxt.append((m, (c, d)))
        level = nxt
    return tuple(sorted(out, key=lambda x: (x is None, x if x is not None else 0)))


def _vec(x):
    return (0, 1) if x is None else (x.denominator, x.numerator)


def farey_adjacent(x, y):
    (m1, l1), (m2, l2) = _vec(x), _vec(y)
    return abs(m1 * l2 - m2 * l1) == 1


@lru_cache(maxsize=None)
def _ranks(depth=14):
    # integer position of every finite tree slope on the real line
    return {x: i for i, x in enumerate(y for y in stern_brocot(depth) if y is not None)}


def _rank(x):
    return None if x is None else _ranks()[x]


def _pos(a, b):
    # ranks a (start) and b (point); None stands for infinity
    if a is None:
        return (0, 0) if b is None else (1, -b)
    if b is None:
        return (1, 0)
    return (0, a - b) if b <= a else (2, -b)


def ccw_position(start, x):
    """Sort key for x along the counterclockwise sweep from ``start``.

    Counterclockwise walks the real line downward and wraps through infinity.
    Both slopes must lie in the depth-14 tree, so comparisons are on integer ranks.
    """
    return _pos(_rank(start), _rank(x))


def in_ccw_arc(start, end, x):
    return ccw_position(start, x) <= ccw_position(start, end)


@lru_cache(maxsize=None)
def brute_bypass(s, r, side, depth=14):
    if side == "front":
        lo, hi = r, s
        pick = min
    else:
        lo, hi = s, r
        pick = max
    a, end = _rank(lo), _pos(_rank(lo), _rank(hi))
    cands = [(x, rx) for x, rx in neighbors_within(s, depth) if _pos(a, rx) <= end]
    return pick(cands, key=lambda c: _pos(a, c[1]))[0]


@lru_cache(maxsize=None)
def _tree_vectors(depth):
    return tuple((x, _vec(x), _rank(x)) for x in stern_brocot(depth))


@lru_cache(maxsize=None)
def neighbors_within(s, depth):
    """Farey neighbours of s inside the tree, paired with their ranks."""
    m1, l1 = _vec(s)
    return tuple((x, rx) for x, (m2, l2), rx in _tree_vectors(depth) if abs(m1 * l2 - m2 * l1) == 1)


def small_slopes(bound):
    out = {INF}
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                out.add(Fraction(p, q))
    return sorted(out, key=lambda x: (x is None, x if x is not None else 0))


def tuples(entries, lengths):
    for n in lengths:
        yield from itertools.product(entries, repeat=n)


def block_dual(a):
    """Dual cycle by the 2-block exchange rule on cusp cycles.

    Write a = (b_1+3, 2^{c_1}, ..., b_k+3, 2^{c_k}) starting at an entry >= 3;
    the dual is (c_1+3, 2^{b_2}, c_2+3, 2^{b_3}, ..., c_k+3, 2^{b_1}).
    """
    a = list(a)
    start = next(i for i, x in enumerate(a) if x >= 3)
    a = a[start:] + a[:start]
    bs, cs = [], []
    for x in a:
        if x >= 3:
            bs.append(x - 3)
            cs.append(0)
        else:
            cs[-1] += 1
    k = len(bs)
    out = []
    for i in range(k):
        out.append(cs[i] + 3)
        out.extend([2] * bs[(i + 1) % k])
    return tuple(out)


def dihedral_min(seq):
    seq = tuple(seq)
    n = len(seq)
    rots = [seq[i:] + seq[:i] for i in range(n)]
    rev = seq[::-1]
    rots += [rev[i:] + rev[:i] for i in range(n)]
    return min(rots)
