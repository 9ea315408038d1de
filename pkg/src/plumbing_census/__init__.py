"""Exact arithmetic for tight contact structures on cyclic plumbings.

Submodules: :mod:`~plumbing_census.cfrac` (negative continued fractions),
:mod:`~plumbing_census.slopecalc` (slopes, Farey graph, bypasses),
:mod:`~plumbing_census.cycles` (cyclic chains and Kirby moves),
:mod:`~plumbing_census.legendrian` (front invariants, stabilizations, d3),
:mod:`~plumbing_census.census` (counts and labelled enumerations) and
:mod:`~plumbing_census.cli`.
"""

__version__ = "0.1.0"

from .census import CensusReport, PlumbingSpec, census, cyclic_census, enumerate_tight, honda_count
from .cfrac import convergents, eval_neg_cf, expand_neg_cf, verify_appendix
from .cycles import CyclicChain, dual_cycle, embeds_in_dual, enumerate_blowups, is_embeddable
from .errors import BoundExceeded, CensusError, DomainError, UsageError
from .slopecalc import Slope, bypass_slope, edge_round_slope

__all__ = [
    "BoundExceeded", "CensusError", "CensusReport", "CyclicChain", "DomainError", "PlumbingSpec", "Slope",
    "UsageError", "bypass_slope", "census", "convergents", "cyclic_census", "dual_cycle", "edge_round_slope",
    "embeds_in_dual", "enumerate_blowups", "enumerate_tight", "eval_neg_cf", "expand_neg_cf", "honda_count",
    "is_embeddable", "verify_appendix",
]
