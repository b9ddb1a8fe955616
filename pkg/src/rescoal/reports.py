"""Parameter sweeps, report serialization and the resistance-energy table.

All float output goes through :func:`fmt` (12 significant digits) so that
reports are byte-identical across runs and across ``jobs`` settings.
"""

from __future__ import annotations

import csv
import io
import json
import math
import operator
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from itertools import product

import numpy as np

from . import graphs as gr
from .errors import InvalidParameterError, ParseError, RescoalError
from .indices import VerificationReport, resistance_energy, verify
from .resistance import rd_kcoal_complete

__all__ = [
    "SweepRange",
    "parse_range",
    "parse_constraint",
    "default_sweep",
    "enumerate_specs",
    "random_graphs",
    "run_sweep",
    "summarize",
    "fmt",
    "reports_to_csv",
    "reports_to_json",
    "reports_to_text",
    "RE_TABLE",
    "retable_rows",
    "retable_csv",
    "matrix_to_csv",
]

SIG_DIGITS = 12


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering; ``nan`` for undefined values."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0.0:
        return "0"
    return f"{x:.{SIG_DIGITS}g}"


# ---------------------------------------------------------------------------
# sweeps

_OPS = {"<=": operator.le, "<": operator.lt, ">=": operator.ge, ">": operator.gt,
        "==": operator.eq, "!=": operator.ne}


@dataclass(frozen=True)
class SweepRange:
    """Inclusive integer ranges per parameter plus optional chained constraints
    such as ``k<=p2<=p1``."""

    ranges: tuple
    tol: float = 1e-9
    constraints: tuple = ()

    def __post_init__(self):
        for name, lo, hi in self.ranges:
            if lo > hi:
                raise InvalidParameterError(f"empty range for {name}: {lo}..{hi}")

    def satisfied(self, values: dict) -> bool:
        return all(c(values) for c in self.constraints)


def parse_range(text: str) -> tuple:
    """``p1=2:10`` or ``p1=4`` -> ``("p1", lo, hi)``."""
    m = re.fullmatch(r"\s*(\w+)\s*=\s*(-?\d+)\s*(?::\s*(-?\d+))?\s*", text)
    if not m:
        raise ParseError(f"bad range {text!r}; expected name=lo:hi")
    lo = int(m.group(2))
    hi = int(m.group(3)) if m.group(3) is not None else lo
    return (m.group(1), lo, hi)


class _Chain:
    """Chained comparison over parameter names and integer literals."""

    def __init__(self, text: str):
        tokens = re.findall(r"<=|>=|==|!=|<|>|\w+", text.replace(" ", ""))
        if len(tokens) < 3 or len(tokens) % 2 == 0 or "".join(tokens) != text.replace(" ", ""):
            raise ParseError(f"bad constraint {text!r}")
        self.terms = tokens[0::2]
        self.ops = tokens[1::2]
        if any(op not in _OPS for op in self.ops):
            raise ParseError(f"bad operator in constraint {text!r}")
        self.text = text

    def _value(self, term, values):
        if re.fullmatch(r"-?\d+", term):
            return int(term)
        if term not in values:
            raise ParseError(f"constraint {self.text!r} names unknown parameter {term!r}")
        return values[term]

    def __call__(self, values: dict) -> bool:
        vals = [self._value(t, values) for t in self.terms]
        return all(_OPS[op](a, b) for op, a, b in zip(self.ops, vals, vals[1:]))

    def __repr__(self):
        return f"_Chain({self.text!r})"


def parse_constraint(text: str):
    return _Chain(text)


_DEFAULTS = {
    "kcoal": (dict(p1=(1, 8), p2=(1, 8), k=(1, 8)), ("k<=p2<=p1",)),
    "windmill": (dict(n=(2, 6), t=(2, 5)), ()),
    "rose3": ({}, ()),
    "joincoal": (dict(p=(1, 5), k=(1, 5)), ()),
    "starjoin": (dict(p=(2, 6)), ()),
    "bipstar": (dict(p=(1, 6), q=(1, 6), n=(1, 6)), ()),
    "bipcomplete": (dict(p=(1, 6), q=(1, 6), n=(1, 6)), ()),
    "pineapple": (dict(p=(2, 8), q=(1, 6)), ()),
    "kite": (dict(p=(2, 10)), ()),
    "dandelion": (dict(n=(3, 15), l=(2, 14)), ()),
}


def default_sweep(family: str, tol: float = 1e-9) -> SweepRange:
    if family not in _DEFAULTS:
        raise ParseError(f"unknown family {family!r}")
    ranges, cons = _DEFAULTS[family]
    return SweepRange(tuple((k, lo, hi) for k, (lo, hi) in ranges.items()), tol,
                      tuple(parse_constraint(c) for c in cons))


def enumerate_specs(family: str, sweep: SweepRange, graphs=()) -> list:
    """Every valid spec inside the sweep, in deterministic order.

    For ``joincoal``/``starjoin`` each tuple is paired with every graph in
    ``graphs``.
    """
    cls = gr.FAMILIES.get(family)
    if cls is None:
        raise ParseError(f"unknown family {family!r}")
    names = [f.name for f in fields(cls)]
    int_fields = [f for f in names if f != "G"]
    given = {name: (lo, hi) for name, lo, hi in sweep.ranges}
    unknown = set(given) - set(int_fields)
    if unknown:
        raise ParseError(f"family {family} has no parameter(s) {', '.join(sorted(unknown))}")
    defaults = dict(_DEFAULTS[family][0])
    axes = []
    for name in int_fields:
        lo, hi = given.get(name, defaults.get(name, (None, None)))
        if lo is None:
            raise ParseError(f"no range given for {family} parameter {name}")
        axes.append(range(lo, hi + 1))
    needs_graph = "G" in names
    if needs_graph and not graphs:
        raise ParseError(f"family {family} needs at least one graph G")
    specs = []
    for combo in product(*axes):
        values = dict(zip(int_fields, combo))
        if not sweep.satisfied(values):
            continue
        for g in (graphs if needs_graph else [None]):
            kwargs = dict(values, G=g) if needs_graph else values
            spec = cls(**kwargs)
            try:
                spec.validate()
            except RescoalError:
                continue
            specs.append(spec)
    return specs


def random_graphs(count: int, max_order: int = 8, seed: int = 0, edge_prob: float = 0.5) -> list:
    """``count`` Erdos-Renyi graphs with orders drawn from ``1..max_order``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_order + 1))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
        out.append(gr.Graph.from_edges(n, edges))
    return out


def _verify_task(args):
    index, spec, tol = args
    return verify(index, spec, tol)


def run_sweep(specs, indices, tol: float = 1e-9, jobs: int = 1) -> list:
    """Verify every (spec, index) pair; output sorted independently of ``jobs``."""
    tasks = [(idx, spec, tol) for spec in specs for idx in indices]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        reports = [_verify_task(t) for t in tasks]
    return sorted(reports, key=VerificationReport.sort_key)


def summarize(reports) -> dict:
    counts = {"total": 0, "match": 0, "mismatch": 0, "undefined": 0}
    for r in reports:
        counts["total"] += 1
        counts[r.verdict] += 1
    return counts


# ---------------------------------------------------------------------------
# serialization

REPORT_COLUMNS = ("family", "params", "index", "formula_value", "oracle_value",
                  "abs_diff", "rel_diff", "verdict", "tol", "note")
_FLOAT_COLUMNS = {"formula_value", "oracle_value", "abs_diff", "rel_diff", "tol"}


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _formatted(rec: dict) -> dict:
    return {k: (fmt(v) if k in _FLOAT_COLUMNS else v) for k, v in rec.items()}


def reports_to_csv(reports) -> str:
    rows = [[_formatted(r.as_record())[c] for c in REPORT_COLUMNS] for r in reports]
    return _csv_text(REPORT_COLUMNS, rows)


def _json_number(x):
    s = fmt(x)
    return None if s == "nan" else float(s)


def reports_to_json(reports, summary: dict | None = None) -> str:
    records = []
    for r in reports:
        rec = r.as_record()
        for k in _FLOAT_COLUMNS:
            rec[k] = _json_number(rec[k])
        records.append(rec)
    payload = {"reports": records}
    if summary is not None:
        payload["summary"] = summary
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def reports_to_text(reports) -> str:
    lines = []
    for r in reports:
        rec = _formatted(r.as_record())
        lines.append(f"{rec['verdict']:<9} {rec['family']:<11} {rec['params']:<28} {rec['index']:<17} "
                     f"formula={rec['formula_value']} oracle={rec['oracle_value']} "
                     f"abs_diff={rec['abs_diff']}" + (f"  [{rec['note']}]" if rec["note"] else ""))
    return "\n".join(lines) + ("\n" if lines else "")


def matrix_to_csv(m) -> str:
    m = np.atleast_2d(m)
    header = [f"v{i}" for i in range(m.shape[1])]
    return _csv_text(header, [[fmt(x) for x in row] for row in m])


# ---------------------------------------------------------------------------
# resistance-energy table: (row, p1, p2, k, tabulated RE), verbatim

RE_TABLE = (
    (1, 3, 2, 1, 6.21), (2, 4, 2, 1, 6.92), (3, 5, 2, 1, 7.79), (4, 6, 2, 1, 7.91),
    (5, 2, 3, 1, 6.23), (6, 3, 3, 1, 7.29), (7, 4, 3, 1, 7.91), (8, 5, 3, 1, 8.37),
    (9, 6, 3, 1, 8.76), (10, 2, 4, 1, 6.92), (11, 3, 4, 1, 7.9), (12, 4, 4, 1, 8.44),
    (13, 5, 4, 1, 8.82), (14, 6, 4, 1, 9.14), (15, 5, 5, 1, 9.13), (16, 6, 5, 1, 9.4),
    (17, 7, 5, 1, 9.6), (18, 2, 2, 2, 4), (19, 3, 2, 2, 4.36), (20, 4, 2, 2, 4.45),
    (21, 5, 2, 2, 4.48), (22, 6, 2, 2, 4.48), (23, 2, 3, 2, 4.4), (24, 3, 3, 2, 4.92),
    (25, 4, 3, 2, 5.63), (26, 5, 3, 2, 5.42), (27, 6, 3, 2, 5.59), (28, 2, 4, 2, 4.56),
    (29, 3, 4, 2, 5.23), (30, 4, 4, 2, 5.64), (31, 5, 4, 2, 5.92), (32, 6, 4, 2, 6.17),
    (33, 5, 5, 2, 6.27), (34, 6, 5, 2, 6.52), (35, 7, 5, 2, 6.73), (36, 4, 3, 3, 8.14),
    (37, 5, 3, 3, 8.18), (38, 6, 3, 3, 8.19), (39, 4, 4, 3, 8.25), (40, 5, 4, 3, 8.3),
    (41, 6, 4, 3, 8.43), (42, 5, 5, 3, 8.36), (43, 6, 5, 3, 8.39), (44, 7, 5, 3, 8.41),
    (45, 6, 5, 4, 2.92), (46, 7, 5, 4, 2.77),
)

RETABLE_COLUMNS = ("row", "p1", "p2", "k", "RE_paper", "RE_computed", "diff")


def retable_rows() -> list:
    """Each tabulated RE next to the eigensolve of the closed-form matrix."""
    rows = []
    for row, p1, p2, k, re_paper in RE_TABLE:
        computed = resistance_energy(rd_kcoal_complete(p1, p2, k))
        rows.append({"row": row, "p1": p1, "p2": p2, "k": k, "RE_paper": float(re_paper),
                     "RE_computed": computed, "diff": computed - re_paper})
    return rows


def retable_csv(rows=None) -> str:
    rows = retable_rows() if rows is None else rows
    body = [[r["row"], r["p1"], r["p2"], r["k"], fmt(r["RE_paper"]), fmt(r["RE_computed"]), fmt(r["diff"])]
            for r in rows]
    return _csv_text(RETABLE_COLUMNS, body)
