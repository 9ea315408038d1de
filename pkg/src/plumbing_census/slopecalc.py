"""Slopes on a torus, unimodular gluing maps, and Farey-tessellation moves.

A slope is the primitive vector ``mer * mu + lon * lambda``; its value is
``lon / mer`` and ``mer == 0`` is infinity.  Matrices act on column vectors
``(mer, lon)``.

Circular order: "counterclockwise" on the boundary of the Farey disc runs
through *decreasing* slope values (0 -> -1 -> inf -> 1 -> 0).  With this
orientation a bypass on a torus of slope ``-[a_1, ..., a_n]`` along
meridional rulings moves it to ``-[a_1, ..., a_n - 1]``.  Every arc test
below reduces to signs of 2x2 integer determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .cfrac import convergents, validate_coeffs
from .errors import DomainError, UsageError

__all__ = [
    "Slope",
    "IntMat2",
    "DividingSet",
    "INF",
    "build_matrices",
    "act",
    "is_farey_edge",
    "arc_contains",
    "arc_before",
    "bypass_slope",
    "bypass_on_dividing_set",
    "edge_round_slope",
    "slope_triple",
    "normal_form_targets",
    "farey_neighbors",
]

FRONT, BACK = "front", "back"


@dataclass(frozen=True)
class Slope:
    mer: int
    lon: int

    def __post_init__(self) -> None:
        mer, lon = self.mer, self.lon
        if mer == 0 and lon == 0:
            raise UsageError("(0, 0) is not a slope")
        g = gcd(mer, lon)
        mer, lon = mer // g, lon // g
        if mer < 0 or (mer == 0 and lon < 0):
            mer, lon = -mer, -lon
        object.__setattr__(self, "mer", mer)
        object.__setattr__(self, "lon", lon)

    @classmethod
    def of(cls, value: "Slope | Fraction | int | str") -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        value = Fraction(value)
        return cls(value.denominator, value.numerator)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        t = text.strip()
        if t.lower() in ("inf", "infinity", "∞", "1/0", "-1/0"):
            return INF
        try:
            if "/" in t:
                num, den = t.split("/")
                return cls(int(den), int(num))
            return cls(1, int(t))
        except ValueError:
            raise UsageError(f"cannot parse slope {text!r}") from None

    @property
    def is_infinite(self) -> bool:
        return self.mer == 0

    @property
    def value(self) -> Fraction:
        if self.mer == 0:
            raise DomainError("infinite slope has no rational value")
        return Fraction(self.lon, self.mer)

    def __str__(self) -> str:
        return "inf" if self.mer == 0 else f"{self.lon}/{self.mer}"

    def __repr__(self) -> str:
        return f"Slope({self})"


INF = Slope(0, 1)


@dataclass(frozen=True)
class IntMat2:
    """Integer 2x2 matrix ``[[a, b], [c, d]]`` with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise UsageError(f"matrix {self.rows} is not unimodular")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "IntMat2":
        return IntMat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "IntMat2":
        e = self.det
        return IntMat2(e * self.d, -e * self.b, -e * self.c, e * self.a)


@dataclass(frozen=True)
class DividingSet:
    slope: Slope
    pairs: int = 1

    def __post_init__(self) -> None:
        if self.pairs < 1:
            raise UsageError("a dividing set needs at least one pair of curves")


def build_matrices(a: Sequence[int], z: Sequence[int]) -> tuple[IntMat2, IntMat2, IntMat2]:
    """Return ``(B, A, g)`` for the cycle tuple ``a`` and the arm tuple ``z``."""
    ca = convergents(a)
    cz = convergents(z)
    p, q, pp, qp = ca.p, ca.q, ca.p_prev, ca.q_prev
    B = IntMat2(p, q, -pp, -qp)
    A = IntMat2(-p, q, pp, -qp)
    g = IntMat2(cz.p, cz.p_prev, -cz.q, -cz.q_prev)
    return B, A, g


def act(M: IntMat2, s: Slope) -> Slope:
    return Slope(M.a * s.mer + M.b * s.lon, M.c * s.mer + M.d * s.lon)


def _cross(u: Slope, v: Slope) -> int:
    return u.mer * v.lon - u.lon * v.mer


def is_farey_edge(s1: Slope, s2: Slope) -> bool:
    return abs(_cross(s1, s2)) == 1


# Angles: put each slope's vector in the half-plane lon > 0 (or lon == 0,
# mer > 0).  Within that half-plane the angle grows with the slope value, and
# theta(u) < theta(v) iff cross(u, v) > 0.

def _upper(s: Slope) -> tuple[int, int]:
    if s.lon > 0 or (s.lon == 0 and s.mer > 0):
        return s.mer, s.lon
    return -s.mer, -s.lon


def _angle_lt(u: Slope, v: Slope) -> bool:
    (um, ul), (vm, vl) = _upper(u), _upper(v)
    return um * vl - ul * vm > 0


def arc_before(r: Slope, x: Slope, y: Slope) -> bool:
    """True if ``x`` comes strictly before ``y`` sweeping counterclockwise from ``r``."""
    wx, wy = _angle_lt(r, x), _angle_lt(r, y)
    if wx != wy:
        return not wx
    return _angle_lt(y, x)


def arc_contains(r: Slope, s: Slope, x: Slope) -> bool:
    """Membership of ``x`` in the closed counterclockwise arc ``[r, s]``."""
    return x == s or not arc_before(r, s, x)


def farey_neighbors(s: Slope) -> Iterator[Slope]:
    """Yield ``u, u + s, u - s, u + 2s, ...``: every Farey neighbor of ``s``, forever."""
    m, l = s.mer, s.lon
    if m == 0:
        u = Slope(1, 0)
    else:
        _, x0, y0 = _ext_gcd(m, -l)  # m*x0 - l*y0 == 1
        u = Slope(y0, x0)
    k = 0
    while True:
        yield Slope(u.mer + k * s.mer, u.lon + k * s.lon)
        if k:
            yield Slope(u.mer - k * s.mer, u.lon - k * s.lon)
        k += 1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        t = old_r // r
        old_r, r = r, old_r - t * r
        old_x, x = x, old_x - t * x
        old_y, y = y, old_y - t * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def bypass_slope(s: Slope, r: Slope, side: str = FRONT) -> Slope:
    """Slope after attaching a bypass along a ruling of slope ``r`` to a torus of slope ``s``.

    Front: the point of the counterclockwise arc ``[r, s]`` closest to ``r``
    that shares a Farey edge with ``s``.  Back: the same rule on ``[s, r]``.
    The arc is closed, so a ruling slope that already neighbors ``s`` is
    returned unchanged.
    """
    s, r = Slope.of(s), Slope.of(r)
    if side not in (FRONT, BACK):
        raise UsageError(f"side must be 'front' or 'back', got {side!r}")
    if r == s:
        raise UsageError("ruling slope must differ from the dividing slope")
    if is_farey_edge(r, s):
        return r

    # The neighbors of s are u + k*s (k in Z) and sweep once around the circle
    # as k runs over the integers, passing r at the real parameter k*.  The
    # neighbors inside the arc therefore form one half-line of k bounded by
    # k*, and the answer is one of the integers adjacent to k*.
    u = next(farey_neighbors(s))
    k_star = -_cross(u, r) // _cross(s, r)
    candidates = [Slope(u.mer + k * s.mer, u.lon + k * s.lon)
                  for k in range(k_star - 1, k_star + 3)]
    if side == FRONT:
        inside = [x for x in candidates if arc_contains(r, s, x)]
        return min(inside, key=_ArcKey.from_start(r))
    inside = [x for x in candidates if arc_contains(s, r, x)]
    return max(inside, key=_ArcKey.from_start(s))


class _ArcKey:
    """Sort key: position along the counterclockwise sweep from a start slope."""

    __slots__ = ("start", "x")

    def __init__(self, start: Slope, x: Slope) -> None:
        self.start, self.x = start, x

    @classmethod
    def from_start(cls, start: Slope):
        return lambda x: cls(start, x)

    def __lt__(self, other: "_ArcKey") -> bool:
        return arc_before(self.start, self.x, other.x)


def bypass_on_dividing_set(d: DividingSet, r: Slope, side: str = FRONT) -> DividingSet:
    r = Slope.of(r)
    if r == d.slope:
        raise UsageError("ruling slope must differ from the dividing slope")
    if d.pairs > 1:
        return DividingSet(d.slope, d.pairs - 1)
    return DividingSet(bypass_slope(d.slope, r, side), 1)


def edge_round_slope(k: int, s0: Slope, s1: Slope) -> Slope:
    """Boundary slope ``(k*b + k*t + 1) / (k*a)`` after rounding ``b/a`` and ``t/a``."""
    s0, s1 = Slope.of(s0), Slope.of(s1)
    if k < 1:
        raise UsageError("k must be positive")
    if s0.mer != s1.mer or s0.mer <= 0:
        raise DomainError(f"imbalanced annulus: denominators {s0.mer} and {s1.mer}")
    return Slope(k * s0.mer, k * s0.lon + k * s1.lon + 1)


def slope_triple(a: Sequence[int], z: Sequence[int], t0: Slope, m: int) -> tuple[Slope, Slope, Slope]:
    """Dividing slopes on ``T_0``, ``T_1`` and ``T_2``.

    ``t0 = b/a``; ``T_1`` carries ``(bp + ap')/(bq + aq')`` and ``T_2`` carries
    ``-(ms - s')/(mr - r')`` for a Legendrian singular fiber of twisting ``-m``.
    """
    t0 = Slope.of(t0)
    if m < 1:
        raise UsageError("twisting parameter m must be >= 1")
    ca = convergents(a)
    cz = convergents(z)
    a_, b_ = t0.mer, t0.lon
    t1 = Slope(b_ * ca.q + a_ * ca.q_prev, b_ * ca.p + a_ * ca.p_prev)
    r, s, rp, sp = cz.p, cz.q, cz.p_prev, cz.q_prev
    t2 = Slope(m * r - rp, -(m * s - sp))
    return t0, t1, t2


def normal_form_targets(a: Sequence[int]) -> tuple[Slope, Slope, Slope]:
    a = validate_coeffs(a, strict=True)
    if len(a) < 2:
        raise UsageError("the cycle must have length n > 1")
    if a[0] < 3:
        raise UsageError("normal form needs a_1 >= 3")
    c = convergents(a)
    minus_one = Slope(1, -1)
    return minus_one, Slope(c.q - c.q_prev, c.p - c.p_prev), minus_one
