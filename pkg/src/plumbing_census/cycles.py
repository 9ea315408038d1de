"""Cyclic plumbing chains and the blow-up / blow-down rewriting engine.

A chain is a cyclic tuple of integer framings with a sign decoration.
Entry ``i`` is joined to entry ``i + 1`` by edge ``i`` (indices mod n); a
length-1 chain has a single self-edge.

Blowing up edge ``i`` with an ``e``-framed unknot (``e = +-1``) replaces
``(x, y)`` by ``(x + e, e, y + e)``; blowing down an entry equal to ``e``
replaces ``(x, e, y)`` by ``(x - e, y - e)``.  With
``N(x) = [[x, 1], [-1, 0]]`` these moves send the monodromy product
``N(x_1) ... N(x_n)`` to ``+-`` itself (``+`` for ``e = +1``), so
``|trace|`` is invariant.  Two degenerate moves complete the toolkit: a
``+-1`` entry of a length-2 chain collapses onto the self-plumbed survivor
``(x, e) -> (x - 2e)``, and a 0-framed entry merges its neighbours
``(u, 0, v) -> (u + v)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .cfrac import convergents
from .errors import BoundExceeded, DomainError, UsageError
from .slopecalc import IntMat2

__all__ = [
    "CyclicChain",
    "MonodromyClass",
    "Move",
    "DualResult",
    "Witness",
    "EmbeddingVerdict",
    "canonical_form",
    "chain_trace",
    "monodromy",
    "is_hyperbolic",
    "blow_up",
    "blow_down",
    "dual_cycle",
    "dual_rewrite",
    "enumerate_blowups",
    "blowup_history",
    "replay_blowups",
    "embeds_in_dual",
    "is_embeddable",
    "default_bounds",
]

DEFAULT_DEPTH = 8
DEFAULT_STEPS = 100_000


def default_bounds() -> tuple[int, int]:
    """(blowup depth, rewrite step cap); ``PLUMBING_CENSUS_BOUND=depth[,steps]`` overrides."""
    raw = os.environ.get("PLUMBING_CENSUS_BOUND", "").strip()
    if not raw:
        return DEFAULT_DEPTH, DEFAULT_STEPS
    try:
        parts = [int(x) for x in raw.split(",")]
    except ValueError:
        raise UsageError(f"PLUMBING_CENSUS_BOUND must be 'depth[,steps]', got {raw!r}") from None
    if len(parts) == 1:
        return parts[0], DEFAULT_STEPS
    return parts[0], parts[1]


def canonical_form(framings: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation of the sequence or of its reverse."""
    seq = tuple(framings)
    if not seq:
        return seq
    rev = seq[::-1]
    n = len(seq)
    return min(min(seq[i:] + seq[:i] for i in range(n)),
               min(rev[i:] + rev[:i] for i in range(n)))


@dataclass(frozen=True, eq=False)
class CyclicChain:
    framings: tuple[int, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "framings", tuple(int(x) for x in self.framings))
        if not self.framings:
            raise UsageError("a cyclic chain needs at least one entry")
        if self.sign not in (1, -1):
            raise UsageError(f"sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def parse(cls, text: str) -> "CyclicChain":
        t = text.strip()
        sign = 1
        if t and t[-1] in "+-":
            sign = 1 if t[-1] == "+" else -1
            t = t[:-1]
        t = t.strip().strip("()")
        try:
            return cls(tuple(int(x) for x in t.split(",")), sign)
        except ValueError:
            raise UsageError(f"cannot parse chain {text!r}") from None

    def canonical(self) -> "CyclicChain":
        return CyclicChain(canonical_form(self.framings), self.sign)

    @property
    def key(self) -> tuple[tuple[int, ...], int]:
        return canonical_form(self.framings), self.sign

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicChain):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "CyclicChain") -> bool:
        return self.key < other.key

    def __len__(self) -> int:
        return len(self.framings)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.framings)) + ")" + ("+" if self.sign > 0 else "-")


@dataclass(frozen=True)
class MonodromyClass:
    trace: int
    det: int = 1
    sign: int = 1


def chain_trace(framings: Sequence[int]) -> int:
    """Trace of ``prod [[x, -1], [1, 0]]``; works for any integer entries."""
    a, b, c, d = 1, 0, 0, 1
    for x in framings:
        a, b, c, d = a * x + b, -a, c * x + d, -c
    return a + d


def monodromy(chain: CyclicChain) -> tuple[IntMat2, MonodromyClass]:
    if any(x < 2 for x in chain.framings):
        raise DomainError(f"not a reduced cycle: {chain}")
    c = convergents(chain.framings)
    B = IntMat2(c.p, c.q, -c.p_prev, -c.q_prev)
    return B, MonodromyClass(chain.sign * B.trace, 1, chain.sign)


def is_hyperbolic(cls: MonodromyClass) -> bool:
    return abs(cls.trace) > 2


def _check_unit(framing: int) -> None:
    if framing not in (1, -1):
        raise UsageError(f"blow-ups use +-1-framed unknots, got {framing}")


def blow_up(chain: CyclicChain, position: int, style: str = "internal", framing: int = 1) -> CyclicChain:
    """Blow up edge ``position`` with a ``framing``-framed unknot (``+1`` by default)."""
    if style == "leaf":
        raise UsageError("leaf blow-ups are unsupported: a cycle has no leaves")
    if style != "internal":
        raise UsageError(f"unknown blow-up style {style!r}")
    _check_unit(framing)
    f = list(chain.framings)
    n = len(f)
    if not 0 <= position < n:
        raise UsageError(f"edge index {position} out of range for length {n}")
    e = framing
    sign = chain.sign if e > 0 else -chain.sign
    if n == 1:
        return CyclicChain((f[0] + 2 * e, e), sign)
    j = (position + 1) % n
    f[position] += e
    f[j] += e
    f.insert(position + 1, e)
    return CyclicChain(tuple(f), sign)


def blow_down(chain: CyclicChain, position: int, framing: int = 1) -> CyclicChain:
    """Blow down the entry at ``position``, which must equal ``framing``."""
    _check_unit(framing)
    f = list(chain.framings)
    n = len(f)
    if not 0 <= position < n:
        raise UsageError(f"entry index {position} out of range for length {n}")
    if f[position] != framing:
        raise UsageError(f"not a blowdown candidate: entry {position} of {chain} is {f[position]}")
    if n < 3:
        raise DomainError(f"irreducible: cannot blow down inside a length-{n} cycle")
    e = framing
    f[(position - 1) % n] -= e
    f[(position + 1) % n] -= e
    del f[position]
    sign = chain.sign if e > 0 else -chain.sign
    return CyclicChain(tuple(f), sign)


def _collapse(chain: CyclicChain, position: int) -> CyclicChain:
    # (x, e) -> (x - 2e): a +-1 sphere meeting its only neighbour twice
    f = chain.framings
    e, x = f[position], f[1 - position]
    sign = chain.sign if e > 0 else -chain.sign
    return CyclicChain((x - 2 * e,), sign)


def _absorb_zero(chain: CyclicChain, position: int) -> tuple[CyclicChain, int]:
    # (u, 0, v) -> (u + v); returns the new chain and the index of the merged entry
    f = list(chain.framings)
    n = len(f)
    left, right = (position - 1) % n, (position + 1) % n
    merged = f[left] + f[right]
    keep = [f[(position + 2 + i) % n] for i in range(n - 3)]
    return CyclicChain(tuple([merged] + keep), -chain.sign), 0


@dataclass(frozen=True)
class Move:
    kind: str  # "up", "down", "collapse", "absorb"
    index: int
    framing: int = 0

    def __str__(self) -> str:
        if self.kind in ("up", "down"):
            return f"{self.kind}{self.framing:+d}@{self.index}"
        return f"{self.kind}@{self.index}"


@dataclass(frozen=True)
class DualResult:
    dual: CyclicChain
    moves: tuple[Move, ...]
    trace: int


def dual_rewrite(chain: CyclicChain, max_steps: int | None = None) -> DualResult:
    """Rewrite the negative cycle ``-a`` into a positive cycle ``d``.

    Follows the usual recipe: blow up with +1-framed unknots next to every
    non-positive entry and keep blowing down -1-framed unknots (and merging
    across 0-framed ones) until every framing is >= 2.  The input stores
    the positive ``a_i``; the rewriting runs on the actual framings ``-a_i``.
    """
    a = chain.framings
    if any(x < 2 for x in a):
        raise UsageError(f"dual needs all entries >= 2: {chain}")
    if all(x == 2 for x in a):
        raise UsageError(f"dual needs an entry >= 3 (all-2 cycles are parabolic): {chain}")
    if max_steps is None:
        max_steps = default_bounds()[1]
    target = abs(chain_trace(a))
    cur = CyclicChain(tuple(-x for x in a), chain.sign)
    moves: list[Move] = []

    for _ in range(max_steps):
        f = cur.framings
        n = len(f)
        i = next((j for j, x in enumerate(f) if x <= 0), None)
        if i is None:
            # all entries positive: clear remaining +1 spheres
            i = next((j for j, x in enumerate(f) if x == 1), None)
            if i is None:
                break
            if n >= 3:
                cur = blow_down(cur, i, 1)
                moves.append(Move("down", i, 1))
            elif n == 2:
                cur = _collapse(cur, i)
                moves.append(Move("collapse", i))
            else:
                raise DomainError(f"not chain-representable: reached {cur}")
            continue
        x = f[i]
        if x <= -2:
            cur = blow_up(cur, i, framing=1)
            moves.append(Move("up", i, 1))
        elif x == -1:
            if n >= 3:
                cur = blow_down(cur, i, -1)
                moves.append(Move("down", i, -1))
            elif n == 2:
                cur = _collapse(cur, i)
                moves.append(Move("collapse", i))
            else:
                raise DomainError(f"not chain-representable: reached {cur}")
        else:  # x == 0
            if n < 3:
                raise DomainError(f"not chain-representable: reached {cur}")
            cur, _ = _absorb_zero(cur, i)
            moves.append(Move("absorb", i))
    else:
        raise BoundExceeded(f"dual rewriting exceeded {max_steps} steps for {chain}")

    if abs(chain_trace(cur.framings)) != target:  # pragma: no cover - guarded invariant
        raise DomainError(f"trace not conserved while rewriting {chain}")
    dual = CyclicChain(canonical_form(cur.framings), chain.sign)
    return DualResult(dual, tuple(moves), target)


def dual_cycle(chain: CyclicChain, max_steps: int | None = None) -> CyclicChain:
    return dual_rewrite(chain, max_steps).dual


@lru_cache(maxsize=None)
def _blowup_levels(k: int) -> tuple[dict, ...]:
    # level j maps canonical tuple -> (parent canonical tuple, edge index in parent)
    levels = [{(0, 0): None}]
    for _ in range(k):
        nxt: dict = {}
        for parent in sorted(levels[-1]):
            pc = CyclicChain(parent)
            for edge in range(len(parent)):
                child = canonical_form(blow_up(pc, edge).framings)
                if child not in nxt:
                    nxt[child] = (parent, edge)
        levels.append(nxt)
    return tuple(levels)


def _depth_guard(k: int, bound: int | None) -> None:
    if bound is None:
        bound = default_bounds()[0]
    if k < 0:
        raise UsageError("k must be non-negative")
    if k > bound:
        raise BoundExceeded(f"blow-up depth {k} exceeds the configured bound {bound}")


def enumerate_blowups(k: int, bound: int | None = None) -> list[CyclicChain]:
    """Every cycle reached from ``(0, 0)`` by exactly ``k`` +1 blow-ups, canonically sorted."""
    _depth_guard(k, bound)
    return [CyclicChain(c) for c in sorted(_blowup_levels(k)[k])]


def blowup_history(c: Sequence[int]) -> tuple[int, ...]:
    """Edge indices that rebuild the canonical blow-up ``c`` from ``(0, 0)``."""
    c = canonical_form(c)
    k = len(c) - 2
    levels = _blowup_levels(max(k, 0))
    if k < 0 or c not in levels[k]:
        raise UsageError(f"{c} is not a blow-up of (0, 0)")
    edges = []
    while k > 0:
        parent, edge = levels[k][c]
        edges.append(edge)
        c, k = parent, k - 1
    return tuple(reversed(edges))


def replay_blowups(edges: Iterable[int]) -> tuple[int, ...]:
    cur = (0, 0)
    for e in edges:
        cur = canonical_form(blow_up(CyclicChain(cur), e).framings)
    return cur


@dataclass(frozen=True)
class Witness:
    blowup: tuple[int, ...]       # canonical blow-up of (0, 0)
    aligned: tuple[int, ...]      # blow-up read against d: aligned[i] <= d[i]
    offset: int
    reflected: bool
    moves: tuple[int, ...]        # blow-up edge sequence from (0, 0)

    def verify(self, d: Sequence[int]) -> bool:
        base = self.blowup[::-1] if self.reflected else self.blowup
        n = len(base)
        rotated = tuple(base[(i + self.offset) % n] for i in range(n))
        return (replay_blowups(self.moves) == canonical_form(self.blowup)
                and rotated == self.aligned
                and len(d) == n
                and all(c <= x for c, x in zip(self.aligned, d)))


@dataclass(frozen=True)
class EmbeddingVerdict:
    verdict: str                  # "embeddable", "not-embeddable", "bound-exceeded"
    d: tuple[int, ...]
    witness: Witness | None = None
    reason: str = ""
    a: tuple[int, ...] | None = field(default=None)

    @property
    def embeddable(self) -> bool:
        return self.verdict == "embeddable"


def _sum_prunes(d: Sequence[int]) -> bool:
    # each blow-up adds 3 to the entry sum, so a blow-up of length n sums to 3(n - 2)
    return sum(d) < 3 * (len(d) - 2)


def embeds_in_dual(d: Sequence[int], max_k: int | None = None, *, prune: bool = True) -> EmbeddingVerdict:
    """Search for a blow-up ``c`` of ``(0, 0)`` with ``c_i <= d_i`` after rotation/reflection."""
    d = tuple(d)
    n = len(d)
    k = n - 2
    if max_k is None:
        max_k = default_bounds()[0]
    if k < 0:
        return EmbeddingVerdict("not-embeddable", d, reason="blow-ups of (0,0) have length >= 2")
    if prune and _sum_prunes(d):
        return EmbeddingVerdict("not-embeddable", d, reason=f"pruned: sum {sum(d)} < 3*(len-2) = {3 * k}")
    if k > max_k:
        return EmbeddingVerdict("bound-exceeded", d,
                                reason=f"not embeddable within bound: needs depth {k} > {max_k}")
    for c in enumerate_blowups(k, bound=max_k):
        base = c.framings
        for reflected in (False, True):
            seq = base[::-1] if reflected else base
            for offset in range(n):
                rotated = tuple(seq[(i + offset) % n] for i in range(n))
                if all(x <= y for x, y in zip(rotated, d)):
                    w = Witness(base, rotated, offset, reflected, blowup_history(base))
                    return EmbeddingVerdict("embeddable", d, w)
    return EmbeddingVerdict("not-embeddable", d, reason=f"no blow-up of depth {k} fits")


def is_embeddable(a: Sequence[int], max_k: int | None = None) -> EmbeddingVerdict:
    """Embeddability of the cycle ``a`` through its dual framings."""
    a = tuple(a)
    d = dual_cycle(CyclicChain(a)).framings
    v = embeds_in_dual(d, max_k)
    return EmbeddingVerdict(v.verdict, v.d, v.witness, v.reason, a)
