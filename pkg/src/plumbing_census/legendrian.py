"""Legendrian front invariants, stabilization counts, Chern cochains and d3.

Conventions: ``tb = w - (c_u + c_d)/2`` and ``rot = (c_d - c_u)/2``.  An "up"
stabilization lowers ``rot`` by one, a "down" stabilization raises it, and
both lower ``tb`` by one.  Realizing smooth framing ``f`` from a front with
Thurston-Bennequin number ``tb`` takes ``k = tb - (f + 1)`` stabilizations,
which leaves ``k + 1`` possible rotation numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, UsageError

__all__ = [
    "FrontComponent",
    "FrontDiagram",
    "LegendrianInvariants",
    "FillingData",
    "StabilizationTarget",
    "invariants",
    "stabilize",
    "rotation_choices",
    "enumerate_rotation_vectors",
    "chern_cochain",
    "count_distinct_spinc",
    "signature",
    "d3",
    "standard_unknot",
    "gamma_curve",
    "slam_dunk_link",
    "plumbing_unknots",
]


@dataclass(frozen=True)
class FrontComponent:
    writhe: int
    cusps_up: int
    cusps_down: int
    gamma_class: bool = False

    def __post_init__(self) -> None:
        if self.cusps_up < 0 or self.cusps_down < 0:
            raise UsageError("cusp counts must be non-negative")
        total = self.cusps_up + self.cusps_down
        if total % 2:
            raise UsageError(f"malformed front: odd cusp total {total}")
        if not self.gamma_class and total < 2:
            raise UsageError("malformed front: a null-homologous front needs at least two cusps")


@dataclass(frozen=True)
class FrontDiagram:
    components: tuple[FrontComponent, ...]

    def invariants(self) -> tuple["LegendrianInvariants", ...]:
        return tuple(invariants(c) for c in self.components)


@dataclass(frozen=True)
class LegendrianInvariants:
    tb: int
    rot: int


def invariants(front: FrontComponent) -> LegendrianInvariants:
    c = front.cusps_up + front.cusps_down
    return LegendrianInvariants(front.writhe - c // 2, (front.cusps_down - front.cusps_up) // 2)


def stabilize(inv: LegendrianInvariants, up: int = 0, down: int = 0) -> LegendrianInvariants:
    if up < 0 or down < 0:
        raise UsageError("stabilization counts must be non-negative")
    return LegendrianInvariants(inv.tb - up - down, inv.rot + down - up)


def standard_unknot() -> FrontComponent:
    return FrontComponent(0, 1, 1)


def gamma_curve() -> FrontComponent:
    """The Legendrian circle ``S^1 x {pt} x {t0}``: no cusps, no crossings."""
    return FrontComponent(0, 0, 0, gamma_class=True)


def slam_dunk_link(m: int) -> FrontDiagram:
    """Fronts of ``K_1, ..., K_m``: ``K_1`` is the gamma curve, the rest standard unknots."""
    if m < 1:
        raise UsageError("the slam-dunk link has at least one component")
    return FrontDiagram((gamma_curve(),) + tuple(standard_unknot() for _ in range(m - 1)))


def plumbing_unknots(count: int) -> FrontDiagram:
    return FrontDiagram(tuple(standard_unknot() for _ in range(count)))


@dataclass(frozen=True)
class StabilizationTarget:
    tb: int
    framing: int
    rot: int = 0

    @property
    def count(self) -> int:
        k = self.tb - (self.framing + 1)
        if k < 0:
            raise DomainError(
                f"cannot reach framing by stabilization: tb {self.tb} < framing {self.framing} + 1")
        return k


def rotation_choices(target: StabilizationTarget) -> tuple[int, ...]:
    k = target.count
    return tuple(target.rot + r for r in range(-k, k + 1, 2))


def _as_target(t) -> StabilizationTarget:
    if isinstance(t, StabilizationTarget):
        return t
    return StabilizationTarget(*t)


def enumerate_rotation_vectors(targets: Iterable) -> Iterator[tuple[int, ...]]:
    """Yield every admissible rotation vector, lexicographically.

    ``targets`` holds ``(tb, framing)`` or ``(tb, framing, rot)`` per component.
    """
    targets = [_as_target(t) for t in targets]
    choices = [rotation_choices(t) for t in targets]
    for vec in itertools.product(*choices):
        for t, r in zip(targets, vec):
            assert (r - t.rot - t.count) % 2 == 0 and abs(r - t.rot) <= t.count
        yield vec


def chern_cochain(v: Sequence[int]) -> dict[str, int]:
    """``h_i -> r_i`` on the 2-handles, keyed ``h1, h2, ...``."""
    return {f"h{i + 1}": int(r) for i, r in enumerate(v)}


def _echelon(rows: Sequence[Sequence[int]], width: int) -> list[tuple[int, list[int]]]:
    # integer row echelon form with positive, fully reduced pivots: (pivot column, row)
    rows = [list(r) for r in rows if any(r)]
    basis: list[tuple[int, list[int]]] = []
    col = 0
    while rows and col < width:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for _, prev in basis:
            q = prev[col] // piv[col]
            prev[:] = [x - q * y for x, y in zip(prev, piv)]
        basis.append((col, piv))
        rows = [r for r in rest if any(r)]
        col += 1
    return basis


def _reduce(v: Sequence[int], basis: list[tuple[int, list[int]]]) -> tuple[int, ...]:
    v = list(v)
    for col, row in basis:
        q = v[col] // row[col]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def count_distinct_spinc(vectors: Iterable[Sequence[int]],
                         coboundary: Iterable[Sequence[int]] = ()) -> int:
    """Number of Chern cochains up to the integer span of ``coboundary``."""
    vectors = [tuple(v) for v in vectors]
    coboundary = [tuple(c) for c in coboundary]
    lengths = {len(v) for v in vectors} | {len(c) for c in coboundary}
    if len(lengths) > 1:
        raise UsageError(f"length mismatch among rotation / coboundary vectors: {sorted(lengths)}")
    if not vectors:
        return 0
    basis = _echelon(coboundary, len(vectors[0]))
    return len({_reduce(v, basis) for v in vectors})


@dataclass(frozen=True)
class FillingData:
    linking: tuple[tuple[int, ...], ...]
    one_handles: int = 0

    def __post_init__(self) -> None:
        L = tuple(tuple(int(x) for x in row) for row in self.linking)
        object.__setattr__(self, "linking", L)
        n = len(L)
        if any(len(row) != n for row in L):
            raise UsageError("linking matrix must be square")
        if any(L[i][j] != L[j][i] for i in range(n) for j in range(n)):
            raise UsageError("linking matrix must be symmetric")
        if self.one_handles < 0:
            raise UsageError("one-handle count must be non-negative")


def _sign_changes(coeffs: Sequence) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def signature(L: Sequence[Sequence[int]]) -> int:
    """Exact signature of a symmetric integer matrix.

    The characteristic polynomial of a symmetric matrix has only real roots,
    so Descartes' rule of signs counts its positive and negative roots exactly.
    """
    import sympy

    n = len(L)
    if n == 0:
        return 0
    x = sympy.Symbol("x")
    coeffs = sympy.Matrix(L).charpoly(x).all_coeffs()
    pos = _sign_changes(coeffs)
    neg = _sign_changes([c * (-1) ** (n - i) for i, c in enumerate(coeffs)])
    return pos - neg


def d3(f: FillingData, v: Sequence[int]) -> Fraction:
    """``(c^2 - 2 chi - 3 sigma) / 4`` with ``c^2 = v^T L^{-1} v``."""
    import sympy

    L = f.linking
    n = len(L)
    if len(v) != n:
        raise UsageError(f"rotation vector has length {len(v)}, linking matrix has size {n}")
    if n:
        M = sympy.Matrix(L)
        if M.det() == 0:
            raise DomainError("d3 undefined for this presentation: singular linking matrix")
        col = sympy.Matrix([int(r) for r in v])
        c2 = (col.T * M.LUsolve(col))[0, 0]
        c2 = Fraction(int(c2.p), int(c2.q))
    else:
        c2 = Fraction(0)
    chi = 1 - f.one_handles + n
    return (c2 - 2 * chi - 3 * signature(L)) / 4
