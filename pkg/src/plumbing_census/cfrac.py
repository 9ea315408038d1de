"""Negative continued fractions.

A coefficient sequence ``[a_1, ..., a_n]`` stands for

    a_1 - 1/(a_2 - 1/(... - 1/a_n))

All arithmetic is exact (:class:`fractions.Fraction`).  Every entry is at
least 2, except that the last one may be 1; the relaxed form is how the
decremented expansions ``[a_1, ..., a_n - 1]`` are written.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DomainError, UsageError

__all__ = [
    "Convergents",
    "LemmaCheck",
    "AppendixReport",
    "validate_coeffs",
    "eval_neg_cf",
    "expand_neg_cf",
    "convergents",
    "verify_appendix",
]


def validate_coeffs(coeffs: Sequence[int], *, strict: bool = False) -> tuple[int, ...]:
    """Check the coefficient invariant and return the sequence as a tuple.

    With ``strict`` every entry must be >= 2; otherwise the last entry may be 1.
    """
    coeffs = tuple(coeffs)
    if not coeffs:
        raise UsageError("empty continued fraction")
    if any(not isinstance(c, int) or isinstance(c, bool) for c in coeffs):
        raise UsageError(f"coefficients must be integers: {coeffs!r}")
    head, last = coeffs[:-1], coeffs[-1]
    if any(c < 2 for c in head) or last < (2 if strict else 1):
        floor = "2" if strict else "2 (last entry >= 1)"
        raise UsageError(f"coefficients must be >= {floor}: {coeffs!r}")
    return coeffs


def eval_neg_cf(coeffs: Sequence[int]) -> Fraction:
    """Evaluate ``[a_1, ..., a_n]`` exactly.

    >>> eval_neg_cf([3, 2])
    Fraction(5, 2)
    """
    coeffs = validate_coeffs(coeffs)
    value = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        if value == 0:
            raise DomainError(f"degenerate expansion {coeffs!r}")
        value = c - 1 / value
    return value


def expand_neg_cf(x: Fraction | int | tuple[int, int]) -> tuple[int, ...]:
    """Inverse of :func:`eval_neg_cf` for rationals ``x > 1``.

    ``x`` may also be a raw ``(p, q)`` pair, which must be in lowest terms.
    Uses repeated ceiling division, so every emitted entry is >= 2.
    """
    if isinstance(x, tuple):
        p, q = x
        if q < 1 or gcd(p, q) != 1:
            raise UsageError(f"{p}/{q} is not a reduced fraction with q >= 1")
    else:
        x = Fraction(x)
        p, q = x.numerator, x.denominator
    if p <= q:
        raise UsageError(f"expansion needs x > 1, got {x}")
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return tuple(out)


@dataclass(frozen=True)
class Convergents:
    """``p/q = [a_1..a_n]`` and ``p_prev/q_prev = [a_1..a_{n-1}]`` (1/0 if n == 1)."""

    p: int
    q: int
    p_prev: int
    q_prev: int

    @property
    def determinant(self) -> int:
        return self.p_prev * self.q - self.q_prev * self.p


def _numer_denom(coeffs: Sequence[int]) -> tuple[int, int, int, int]:
    # Three-term recurrence; matches the matrix product prod [[a, -1], [1, 0]].
    p_prev, p = 1, coeffs[0]
    q_prev, q = 0, 1
    for a in coeffs[1:]:
        p_prev, p = p, a * p - p_prev
        q_prev, q = q, a * q - q_prev
    return p, q, p_prev, q_prev


def convergents(coeffs: Sequence[int]) -> Convergents:
    coeffs = validate_coeffs(coeffs, strict=True)
    p, q, p_prev, q_prev = _numer_denom(coeffs)
    return Convergents(p, q, p_prev, q_prev)


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    status: str  # "pass", "fail" or "n/a"
    lhs: str
    rhs: str

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass(frozen=True)
class AppendixReport:
    coeffs: tuple[int, ...]
    checks: tuple[LemmaCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> LemmaCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _frac_text(num: int, den: int) -> str:
    g = gcd(num, den) or 1
    num, den = num // g, den // g
    if den < 0:
        num, den = -num, -den
    return f"{num}/{den}"


def verify_appendix(a: Sequence[int]) -> AppendixReport:
    """Check the four continued-fraction identities for the tuple ``a``.

    A.1  p >= 2q + 1 > q + q' + 1            (only when a_1 >= 3)
    A.2  gcd(q'+1, q) == gcd(p-1, q) and gcd(q'-1, q) == gcd(p+1, q)
    A.3  (p - p')/(q - q') == [a_1, ..., a_n - 1]
    A.4  (p - q)/(p' - q') == [a_n, ..., a_1 - 1]

    Failures are reported, never raised.
    """
    a = validate_coeffs(a, strict=True)
    c = convergents(a)
    p, q, pp, qp = c.p, c.q, c.p_prev, c.q_prev
    checks = []

    if a[0] >= 3:
        ok = p >= 2 * q + 1 > q + qp + 1
        checks.append(LemmaCheck("A.1", "pass" if ok else "fail",
                                 f"p={p}", f"2q+1={2 * q + 1}, q+q'+1={q + qp + 1}"))
    else:
        checks.append(LemmaCheck("A.1", "n/a", f"a_1={a[0]}", "requires a_1 >= 3"))

    lhs = (gcd(qp + 1, q), gcd(qp - 1, q))
    rhs = (gcd(p - 1, q), gcd(p + 1, q))
    checks.append(LemmaCheck("A.2", "pass" if lhs == rhs else "fail",
                             f"gcd(q'+1,q)={lhs[0]}, gcd(q'-1,q)={lhs[1]}",
                             f"gcd(p-1,q)={rhs[0]}, gcd(p+1,q)={rhs[1]}"))

    dec = a[:-1] + (a[-1] - 1,)
    target = eval_neg_cf(dec)
    ok = (q - qp) != 0 and Fraction(p - pp, q - qp) == target
    checks.append(LemmaCheck("A.3", "pass" if ok else "fail",
                             _frac_text(p - pp, q - qp), str(target)))

    rev = tuple(reversed(a))
    rev = rev[:-1] + (rev[-1] - 1,)
    target = eval_neg_cf(rev)
    ok = (pp - qp) != 0 and Fraction(p - q, pp - qp) == target
    checks.append(LemmaCheck("A.4", "pass" if ok else "fail",
                             _frac_text(p - q, pp - qp), str(target)))

    return AppendixReport(a, tuple(checks))
