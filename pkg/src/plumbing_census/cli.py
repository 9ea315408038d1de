"""Command-line front end.

Exit status: 0 on success, 1 when the mathematics refuses the input (or a
bounded search gives up), 2 on malformed invocations.  Diagnostics go to
standard error only; all numeric output is exact.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .census import STEIN, STEIN_IF_EMBEDDABLE, WEAK, CensusReport, PlumbingSpec, census
from .cfrac import convergents, eval_neg_cf, expand_neg_cf, validate_coeffs, verify_appendix
from .cycles import CyclicChain, default_bounds, dual_rewrite, embeds_in_dual, is_embeddable
from .errors import DomainError, UsageError
from .slopecalc import Slope, bypass_slope, normal_form_targets, slope_triple

GRID_CAP = 100_000


def _ints(text: str, what: str) -> tuple[int, ...]:
    t = text.strip().strip("()[]")
    if not t:
        return ()
    try:
        return tuple(int(x) for x in t.split(","))
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _range(text: str, what: str) -> tuple[int, ...]:
    """``"2-4"`` or ``"1,3"`` or ``"2"``."""
    t = text.strip()
    if "-" in t[1:]:
        lo, hi = t.split("-", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"{what} must look like 'lo-hi', got {text!r}") from None
        return tuple(range(lo_i, hi_i + 1))
    return _ints(t, what)


class Output:
    """Collects one command's result in all three renderings."""

    def __init__(self, payload: Any, rows: list[list[Any]] | None = None,
                 header: list[str] | None = None, text: list[str] | None = None):
        self.payload = payload
        self.rows = rows if rows is not None else []
        self.header = header
        self.text = text if text is not None else []
        self.exit_code = 0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        if fmt == "tsv":
            lines = []
            if self.header:
                lines.append("\t".join(self.header))
            lines.extend("\t".join(_cell(c) for c in row) for row in self.rows)
            return "".join(line + "\n" for line in lines)
        return "".join(line + "\n" for line in self.text)


def _cell(c: Any) -> str:
    if c is None:
        return ""
    if isinstance(c, (list, tuple)):
        return ",".join(map(str, c))
    return str(c)


def cmd_cf(ns: argparse.Namespace) -> Output:
    given = [x for x in (ns.eval, ns.expand, ns.convergents) if x is not None]
    if len(given) != 1:
        raise UsageError("cf needs exactly one of --eval, --expand, --convergents")
    if ns.eval is not None:
        a = validate_coeffs(_ints(ns.eval, "--eval"))
        v = eval_neg_cf(a)
        return Output({"coeffs": list(a), "value": str(v)}, [[list(a), v]], ["coeffs", "value"], [str(v)])
    if ns.expand is not None:
        try:
            x = Fraction(ns.expand)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--expand needs a rational, got {ns.expand!r}") from None
        a = expand_neg_cf(x)
        return Output({"value": str(x), "coeffs": list(a)}, [[x, list(a)]], ["value", "coeffs"],
                      [",".join(map(str, a))])
    a = _ints(ns.convergents, "--convergents")
    c = convergents(a)
    pq, pq_prev = f"{c.p}/{c.q}", f"{c.p_prev}/{c.q_prev}"
    return Output({"coeffs": list(a), "p": c.p, "q": c.q, "p_prev": c.p_prev, "q_prev": c.q_prev},
                  [[list(a), c.p, c.q, c.p_prev, c.q_prev]], ["coeffs", "p", "q", "p_prev", "q_prev"],
                  [f"{pq} {pq_prev}"])


def cmd_bypass(ns: argparse.Namespace) -> Output:
    s, r = Slope.parse(ns.s), Slope.parse(ns.r)
    out = bypass_slope(s, r, ns.side)
    return Output({"s": str(s), "r": str(r), "side": ns.side, "result": str(out)},
                  [[s, r, ns.side, out]], ["s", "r", "side", "result"], [str(out)])


def cmd_slopes(ns: argparse.Namespace) -> Output:
    a = _ints(_need(ns.a, "--a"), "--a")
    z = _ints(_need(ns.z, "--z"), "--z")
    t0 = Slope.parse(ns.t0)
    t = slope_triple(a, z, t0, ns.m)
    payload: dict[str, Any] = {"a": list(a), "z": list(z), "m": ns.m, "slopes": [str(x) for x in t]}
    text = [f"T0 {t[0]}", f"T1 {t[1]}", f"T2 {t[2]}"]
    if len(a) >= 2 and a[0] >= 3:
        nf = normal_form_targets(a)
        payload["normal_form"] = [str(x) for x in nf]
        text.append("normal form " + " ".join(map(str, nf)))
    return Output(payload, [[a, z, ns.m, *t]], ["a", "z", "m", "T0", "T1", "T2"], text)


def _chain(ns: argparse.Namespace) -> CyclicChain:
    a = _ints(_need(ns.a, "--a"), "--a")
    return CyclicChain(a, 1 if ns.sign == "+" else -1)


def cmd_dual(ns: argparse.Namespace) -> Output:
    chain = _chain(ns)
    res = dual_rewrite(chain)
    d = res.dual
    return Output({"a": str(chain), "dual": str(d), "trace": res.trace, "moves": [str(m) for m in res.moves]},
                  [[chain, d, res.trace, len(res.moves)]], ["a", "dual", "trace", "moves"],
                  [f"{chain} -> {d}  |trace| {res.trace}  ({len(res.moves)} moves)"])


def _verdict_output(v, label: str) -> Output:
    payload: dict[str, Any] = {"input": label, "dual": list(v.d), "verdict": v.verdict}
    text = [f"{label}: {v.verdict}", f"dual {','.join(map(str, v.d))}"]
    row: list[Any] = [label, v.d, v.verdict, None, None, None, None]
    if v.witness is not None:
        w = v.witness
        payload["witness"] = {"blowup": list(w.blowup), "aligned": list(w.aligned), "offset": w.offset,
                              "reflected": w.reflected, "moves": list(w.moves)}
        text.append(f"witness {','.join(map(str, w.aligned))} (blow-up {','.join(map(str, w.blowup))}, "
                    f"offset {w.offset}, reflected {str(w.reflected).lower()}, "
                    f"moves {','.join(map(str, w.moves)) or '-'})")
        row[3:] = [w.blowup, w.offset, str(w.reflected).lower(), w.moves]
    if v.reason:
        payload["reason"] = v.reason
        text.append(v.reason)
    return Output(payload, [row], ["input", "dual", "verdict", "blowup", "offset", "reflected", "moves"], text)


def cmd_embeddable(ns: argparse.Namespace) -> Output:
    if (ns.a is None) == (ns.d is None):
        raise UsageError("embeddable needs exactly one of --a or --d")
    max_k = ns.max_k if ns.max_k is not None else default_bounds()[0]
    if ns.d is not None:
        d = _ints(ns.d, "--d")
        v = embeds_in_dual(d, max_k)
        label = "d=" + ",".join(map(str, d))
    else:
        a = _ints(ns.a, "--a")
        v = is_embeddable(a, max_k)
        label = "a=" + ",".join(map(str, a))
    out = _verdict_output(v, label)
    if v.verdict == "bound-exceeded":
        out.exit_code = 1
    return out


def _spec(ns: argparse.Namespace) -> PlumbingSpec:
    return PlumbingSpec(ns.sign, _ints(_need(ns.a, "--a"), "--a"), _ints(ns.z or "", "--z"))


def _resolved(report: CensusReport) -> dict[str, str]:
    emb = report.embeddable or {}
    out = {}
    for s in report.structures:
        tag = s.fillability
        if tag == STEIN_IF_EMBEDDABLE:
            v = emb.get("verdict")
            tag = STEIN if v == "embeddable" else ("unresolved" if v == "bound-exceeded" else "weak")
        out[f"l={s.torsion}"] = tag
    return out


def cmd_stein(ns: argparse.Namespace) -> Output:
    report = census(_spec(ns), ns.torsion, max_k=ns.max_k)
    emb = report.embeddable
    families = _resolved(report)
    payload = {"spec": report.spec.to_dict(), "families": families, "embeddable": emb}
    text = [f"{report.spec}"] + [f"{k}: {v}" for k, v in families.items()]
    if emb is not None:
        text.append(f"embeddability of a: {emb['verdict']}")
    rows = [[report.spec, k, v, emb["verdict"] if emb else None] for k, v in families.items()]
    out = Output(payload, rows, ["spec", "level", "fillability", "embeddable"], text)
    if emb is not None and emb["verdict"] == "bound-exceeded":
        out.exit_code = 1
    return out


CENSUS_HEADER = ["spec", "min_twisting", "per_torsion", "no_giroux", "rotation", "torsion", "twisting",
                 "fillability"]


def _census_rows(r: CensusReport) -> list[list[Any]]:
    head = [r.spec, r.min_twisting, r.per_torsion, r.no_giroux]
    return [head + [s.rotation, s.torsion, s.twisting, s.fillability] for s in r.structures]


def _census_text(r: CensusReport) -> list[str]:
    lines = [f"{r.spec}: minimally twisting {r.min_twisting}, per torsion level {r.per_torsion}, "
             f"no Giroux torsion {r.no_giroux}"]
    for s in r.structures:
        tw = "minimal" if s.twisting is None else ("pi" if s.twisting == 1 else f"{s.twisting}pi")
        lines.append(f"  rot {_cell(s.rotation) or '-'}  l={s.torsion}  twisting {tw}  {s.fillability}")
    if r.embeddable is not None:
        lines.append(f"  embeddable: {r.embeddable['verdict']}")
    return lines


def _grid_specs(ns: argparse.Namespace) -> list[PlumbingSpec]:
    a_first = _range(_need(ns.a_first, "--a-first"), "--a-first")
    a_entries = _range(_need(ns.a_entries, "--a-entries"), "--a-entries")
    a_len = _range(_need(ns.a_len, "--a-len"), "--a-len")
    z_entries = _range(_need(ns.z_entries, "--z-entries"), "--z-entries")
    z_len = _range(_need(ns.z_len, "--z-len"), "--z-len")
    signs = [s for s in ns.signs.replace(",", "") if s.strip()]
    if not (a_first and a_entries and a_len and z_entries and z_len and signs):
        raise UsageError("every grid range must be non-empty")
    if any(s not in "+-" for s in signs):
        raise UsageError(f"--signs takes '+' and/or '-', got {ns.signs!r}")
    if min(a_len) < 1 or min(z_len) < 0:
        raise UsageError("grid lengths must be positive")
    n_a = len(a_first) * sum(len(a_entries) ** (k - 1) for k in a_len)
    n_z = sum(len(z_entries) ** k for k in z_len)
    size = n_a * n_z * len(set(signs))
    if size > GRID_CAP:
        raise UsageError(f"grid has {size} specs, above the cap of {GRID_CAP}")
    specs = []
    for k in a_len:
        for a1 in a_first:
            for rest in itertools.product(a_entries, repeat=k - 1):
                for m in z_len:
                    for z in itertools.product(z_entries, repeat=m):
                        for s in sorted(set(signs)):
                            specs.append(PlumbingSpec(s, (a1,) + rest, z))
    specs.sort(key=PlumbingSpec.sort_key)
    return specs


def cmd_census(ns: argparse.Namespace) -> Output:
    if not ns.grid:
        r = census(_spec(ns), ns.torsion, max_k=ns.max_k)
        return Output(r.to_dict(), _census_rows(r), CENSUS_HEADER, _census_text(r))
    if ns.a is not None or ns.z is not None:
        raise UsageError("--grid replaces --a/--z; use the --a-*/--z-* range flags")
    reports = [census(spec, ns.torsion, max_k=ns.max_k) for spec in _grid_specs(ns)]
    summary = {"specs": len(reports), STEIN: 0, WEAK: 0, STEIN_IF_EMBEDDABLE: 0}
    for r in reports:
        for k, v in r.fillability_summary().items():
            summary[k] += v
    rows, text = [], []
    for r in reports:
        rows.extend(_census_rows(r))
        text.extend(_census_text(r))
    text.append("summary: " + ", ".join(f"{k} {v}" for k, v in summary.items()))
    return Output({"rows": [r.to_dict() for r in reports], "summary": summary}, rows, CENSUS_HEADER, text)


def cmd_verify(ns: argparse.Namespace) -> Output:
    if not ns.appendix:
        raise UsageError("verify needs --appendix")
    if ns.max_entry < 2 or ns.min_len < 1 or ns.max_len < ns.min_len:
        raise UsageError("need --max-entry >= 2 and 1 <= --min-len <= --max-len")
    n = 0
    failures = []
    for k in range(ns.min_len, ns.max_len + 1):
        for a in itertools.product(range(2, ns.max_entry + 1), repeat=k):
            rep = verify_appendix(a)
            n += 1
            failures.extend((a, c) for c in rep.checks if c.status == "fail")
    payload = {"tuples": n, "failures": [{"coeffs": list(a), "lemma": c.name, "lhs": c.lhs, "rhs": c.rhs}
                                         for a, c in failures]}
    if failures:
        text = [f"{len(failures)} lemma failures ({n} tuples)"]
        text += [f"  {','.join(map(str, a))} {c.name}: {c.lhs} vs {c.rhs}" for a, c in failures]
    else:
        text = [f"all lemmas hold ({n} tuples)"]
    rows = [[a, c.name, c.lhs, c.rhs] for a, c in failures]
    out = Output(payload, rows, ["coeffs", "lemma", "lhs", "rhs"], text)
    if failures:
        out.exit_code = 1
    return out


def _need(value: str | None, flag: str) -> str:
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # route argparse failures through the usage exit code
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text"), default="text")
    common.add_argument("--seed", type=int, default=None, help="reserved; has no effect")

    p = _Parser(prog="plumbing-census", description="Exact contact-topology census for cyclic plumbings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("cf", cmd_cf, "negative continued fractions")
    sp.add_argument("--eval", metavar="A1,A2,...")
    sp.add_argument("--expand", metavar="P/Q")
    sp.add_argument("--convergents", metavar="A1,A2,...")

    sp = add("bypass", cmd_bypass, "bypass attachment slope (write negative slopes as --s=-5/2)")
    sp.add_argument("--s", required=True, help="dividing slope")
    sp.add_argument("--r", required=True, help="ruling slope")
    sp.add_argument("--side", choices=("front", "back"), default="front")

    sp = add("slopes", cmd_slopes, "boundary slopes of the three-torus decomposition")
    sp.add_argument("--a")
    sp.add_argument("--z")
    sp.add_argument("--t0", default="-1", help="slope on T0 (default -1)")
    sp.add_argument("--m", type=int, default=10, help="fiber twisting (default 10)")

    for name, fn, help_ in (("dual", cmd_dual, "dual framing cycle"),):
        sp = add(name, fn, help_)
        sp.add_argument("--a")
        sp.add_argument("--sign", choices=("+", "-"), default="+")

    sp = add("embeddable", cmd_embeddable, "embeddability of a cycle (or of dual framings with --d)")
    sp.add_argument("--a")
    sp.add_argument("--d")
    sp.add_argument("--max-k", type=int, default=None)

    for name, fn, help_ in (("stein", cmd_stein, "fillability tags with embeddability resolved"),
                            ("census", cmd_census, "tight contact structure census")):
        sp = add(name, fn, help_)
        sp.add_argument("--sign", choices=("+", "-"), default="+")
        sp.add_argument("--a")
        sp.add_argument("--z")
        sp.add_argument("--torsion", type=int, default=1, help="representative torsion level (default 1)")
        sp.add_argument("--max-k", type=int, default=None)
        if name == "census":
            sp.add_argument("--grid", action="store_true", help="run over a grid of specs")
            sp.add_argument("--a-first", help="values of a_1, e.g. 3,4")
            sp.add_argument("--a-entries", help="values of a_2.., e.g. 2-4")
            sp.add_argument("--a-len", help="lengths of a, e.g. 2-3")
            sp.add_argument("--z-entries", help="values of z_j, e.g. 2-4")
            sp.add_argument("--z-len", help="lengths of z, e.g. 1-2")
            sp.add_argument("--signs", default="+-")

    sp = add("verify", cmd_verify, "sweep the continued-fraction identities")
    sp.add_argument("--appendix", action="store_true")
    sp.add_argument("--max-entry", type=int, default=6)
    sp.add_argument("--min-len", type=int, default=2)
    sp.add_argument("--max-len", type=int, default=6)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        out = ns.fn(ns)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out.render(ns.format))
    return out.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
