"""Counts and labelled enumerations of tight contact structures.

A :class:`PlumbingSpec` ``(sign, a, z)`` describes the boundary of a cyclic
plumbing with framings ``-a_1, ..., -a_n`` carrying a linear arm
``-z_1, ..., -z_m``; with ``z`` empty it is the torus bundle itself.

Torsion level ``l = 0`` means minimally twisting.  Level ``l >= 1`` has
twisting ``2 l pi`` for sign ``+`` and ``(2 l - 1) pi`` for sign ``-``; in the
``-`` case the ``l = 1`` family (twisting ``pi``) still has no Giroux torsion.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import prod
from typing import Any, Sequence

from .cfrac import validate_coeffs
from .cycles import CyclicChain, EmbeddingVerdict, is_embeddable
from .errors import UsageError
from .legendrian import StabilizationTarget, chern_cochain, enumerate_rotation_vectors

__all__ = [
    "STEIN",
    "WEAK",
    "STEIN_IF_EMBEDDABLE",
    "PlumbingSpec",
    "StructureDescriptor",
    "CensusReport",
    "honda_count",
    "census",
    "cyclic_census",
    "enumerate_tight",
]

STEIN = "Stein"
WEAK = "weak"
STEIN_IF_EMBEDDABLE = "Stein-if-embeddable"


def _parse_sign(sign: Any) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1"):
        return -1
    raise UsageError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class PlumbingSpec:
    sign: int
    a: tuple[int, ...]
    z: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sign", _parse_sign(self.sign))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "z", tuple(self.z))
        a, z = self.a, self.z
        if any(not isinstance(x, int) or isinstance(x, bool) for x in a + z):
            raise UsageError("framings must be integers")
        if len(a) < 2:
            raise UsageError(f"a needs length >= 2, got {a}")
        if any(x < 2 for x in a) or any(x < 2 for x in z):
            raise UsageError(f"all a_i and z_j must be >= 2: a={a}, z={z}")
        if a[0] < 3:
            raise UsageError(f"a_1 must be >= 3 (a_1 = 2 is outside the classified range): a={a}")

    @property
    def sign_text(self) -> str:
        return "+" if self.sign > 0 else "-"

    def __str__(self) -> str:
        f = lambda t: "(" + ",".join(map(str, t)) + ")"
        return f"({self.sign_text},{f(self.a)},{f(self.z)})"

    def sort_key(self) -> tuple:
        return (self.a, self.z, -self.sign)

    def to_dict(self) -> dict:
        return {"sign": self.sign_text, "a": list(self.a), "z": list(self.z)}

    @classmethod
    def from_dict(cls, d: dict) -> "PlumbingSpec":
        return cls(d["sign"], tuple(d["a"]), tuple(d["z"]))


def honda_count(coeffs: Sequence[int]) -> int:
    """``(c_1 - 1) ... (c_{k-1} - 1) * c_k``; the last entry may be 1."""
    c = validate_coeffs(coeffs)
    return prod(x - 1 for x in c[:-1]) * c[-1]


@dataclass(frozen=True)
class StructureDescriptor:
    rotation: tuple[int, ...]
    torsion: int
    twisting: int | None      # multiple of pi; None when minimally twisting
    fillability: str

    @property
    def cochain(self) -> dict[str, int]:
        return chern_cochain(self.rotation)

    def to_dict(self) -> dict:
        return {"rotation": list(self.rotation), "torsion": self.torsion,
                "twisting": self.twisting, "fillability": self.fillability}

    @classmethod
    def from_dict(cls, d: dict) -> "StructureDescriptor":
        return cls(tuple(d["rotation"]), d["torsion"], d["twisting"], d["fillability"])


def _twisting(sign: int, l: int) -> int | None:
    if l == 0:
        return None
    return 2 * l if sign > 0 else 2 * l - 1


def _fillability(sign: int, l: int) -> str:
    if l == 0:
        return STEIN
    if sign < 0 and l == 1:
        return STEIN_IF_EMBEDDABLE
    return WEAK


def enumerate_tight(spec: PlumbingSpec, l: int) -> list[StructureDescriptor]:
    """Labelled structures at torsion level ``l``, in lexicographic rotation order.

    ``l = 0`` stabilizes every plumbing unknot (tb -1, framings ``-a_i`` and
    ``-z_j``).  ``l >= 1`` stabilizes the slam-dunk link: ``K_1`` starts at
    tb 0 with framing ``-z_1``; ``K_i`` (i >= 2) at tb -1 with framing ``-z_i``.
    """
    if l < 0:
        raise UsageError(f"torsion level must be >= 0, got {l}")
    if l == 0:
        targets = [StabilizationTarget(-1, -x) for x in spec.a + spec.z]
    elif spec.z:
        targets = [StabilizationTarget(0, -spec.z[0])] + [StabilizationTarget(-1, -x) for x in spec.z[1:]]
    else:
        targets = []
    tw, fill = _twisting(spec.sign, l), _fillability(spec.sign, l)
    return [StructureDescriptor(v, l, tw, fill) for v in enumerate_rotation_vectors(targets)]


def _verdict_dict(v: EmbeddingVerdict) -> dict:
    out: dict[str, Any] = {"verdict": v.verdict, "dual": list(v.d)}
    if v.witness is not None:
        w = v.witness
        out["witness"] = {"blowup": list(w.blowup), "aligned": list(w.aligned), "offset": w.offset,
                          "reflected": w.reflected, "moves": list(w.moves)}
    if v.reason:
        out["reason"] = v.reason
    return out


@dataclass(frozen=True)
class CensusReport:
    spec: PlumbingSpec
    min_twisting: int
    per_torsion: int
    no_giroux: int
    structures: tuple[StructureDescriptor, ...] = ()
    embeddable: dict | None = field(default=None)

    def fillability_summary(self) -> dict[str, int]:
        out = {STEIN: 0, WEAK: 0, STEIN_IF_EMBEDDABLE: 0}
        for s in self.structures:
            out[s.fillability] += 1
        return out

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "spec": self.spec.to_dict(),
            "counts": {"min_twisting": self.min_twisting, "per_torsion": self.per_torsion,
                       "no_giroux": self.no_giroux},
            "structures": [s.to_dict() for s in self.structures],
        }
        d["embeddable"] = self.embeddable
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "CensusReport":
        c = d["counts"]
        return cls(PlumbingSpec.from_dict(d["spec"]), c["min_twisting"], c["per_torsion"],
                   c["no_giroux"], tuple(StructureDescriptor.from_dict(s) for s in d["structures"]),
                   d.get("embeddable"))

    @classmethod
    def from_json(cls, text: str) -> "CensusReport":
        return cls.from_dict(json.loads(text))


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise AssertionError(f"internal cross-check failed: {what}")


def census(spec: PlumbingSpec, torsion: int = 1, *, consult_cycles: bool = True,
           max_k: int | None = None) -> CensusReport:
    """Counts plus labelled structures at level 0 and at one torsion level.

    Per-torsion counts do not depend on ``l``; ``torsion`` only picks which
    representative level is listed.  For sign ``-`` the cycle ``a`` is sent to
    the embeddability search so the ``Stein-if-embeddable`` tag has a verdict
    next to it (the tag itself is left as stated).
    """
    if torsion < 1:
        raise UsageError(f"representative torsion level must be >= 1, got {torsion}")
    a, z = spec.a, spec.z
    min_tw = prod(x - 1 for x in a) * prod(x - 1 for x in z)
    per = z[0] * prod(x - 1 for x in z[1:]) if z else 1

    _check(min_tw == honda_count(a[:-1] + (a[-1] - 1,))
           * (honda_count(tuple(reversed(z))[:-1] + (z[0] - 1,)) if z else 1),
           f"minimal twisting count for {spec}")
    _check(per == (honda_count(tuple(reversed(z))) if z else 1), f"per-torsion count for {spec}")

    no_giroux = min_tw if spec.sign > 0 else min_tw + per
    level0 = enumerate_tight(spec, 0)
    levell = enumerate_tight(spec, torsion)
    _check(len(level0) == min_tw and len(levell) == per, f"enumeration sizes for {spec}")

    emb = None
    if spec.sign < 0 and consult_cycles:
        emb = _verdict_dict(is_embeddable(a, max_k))
    return CensusReport(spec, min_tw, per, no_giroux, tuple(level0 + levell), emb)


def cyclic_census(a: Sequence[int], sign: Any, torsion: int = 1, **kw) -> CensusReport:
    """Census of the torus bundle alone (no arm): a unique structure per torsion level."""
    return census(PlumbingSpec(sign, tuple(a), ()), torsion, **kw)
