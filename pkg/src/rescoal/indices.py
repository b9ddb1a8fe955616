"""Resistance-based graph indices.

Definition route: sums over a resistance matrix.  Formula route: the
published closed forms for individual families, evaluated literally (exact
rationals when every input is an integer).  :func:`verify` compares the two
and never corrects a formula; a disagreement is reported as a mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import graphs as gr
from .errors import FormulaUndefinedError, InvalidParameterError, UnsupportedPairError
from .graphs import Graph
from .linalg import sym_eigen
from .resistance import ResistanceMatrix, closed_form, resistance_oracle

__all__ = [
    "INDEX_NAMES",
    "IndexValue",
    "VerificationReport",
    "kirchhoff_index",
    "kemeny_constant",
    "additive_dk",
    "multiplicative_dk",
    "mixed_dk",
    "resistance_energy",
    "definition_indices",
    "paper_formula",
    "supported_indices",
    "verify",
]

INDEX_NAMES = ("kirchhoff", "kemeny", "additive_dk", "multiplicative_dk", "mixed_dk", "resistance_energy")
NONNEGATIVE = {"kirchhoff", "additive_dk", "multiplicative_dk", "mixed_dk", "resistance_energy"}


@dataclass(frozen=True)
class IndexValue:
    index: str
    value: float
    route: str = "definition"

    def __post_init__(self):
        if self.index not in INDEX_NAMES:
            raise InvalidParameterError(f"unknown index {self.index!r}")
        if self.route not in ("definition", "paper_formula"):
            raise InvalidParameterError(f"unknown route {self.route!r}")


def _entries(r):
    return r.entries if isinstance(r, ResistanceMatrix) else np.asarray(r, dtype=float)


def _upper(a: np.ndarray) -> np.ndarray:
    return a[np.triu_indices(a.shape[0], 1)]


def kirchhoff_index(r) -> float:
    """Sum of resistances over unordered vertex pairs."""
    return float(_upper(_entries(r)).sum())


def kemeny_constant(g: Graph, r) -> float:
    """``(1/4m) * sum over ordered pairs of d_i d_j r_ij``."""
    d = g.degrees().astype(float)
    return float(d @ _entries(r) @ d) / (4 * g.m)


def additive_dk(g: Graph, r) -> float:
    d = g.degrees().astype(float)
    return float(_upper((d[:, None] + d[None, :]) * _entries(r)).sum())


def multiplicative_dk(g: Graph, r) -> float:
    d = g.degrees().astype(float)
    return float(_upper(np.outer(d, d) * _entries(r)).sum())


def mixed_dk(g: Graph, r) -> float:
    d = g.degrees().astype(float)
    if np.any(d == 0):
        raise InvalidParameterError("mixed degree-Kirchhoff index is undefined with an isolated vertex")
    ratio = d[:, None] / d[None, :]
    return float(_upper((ratio + ratio.T) * _entries(r)).sum())


def resistance_energy(r) -> float:
    """Sum of the absolute eigenvalues of the resistance matrix."""
    vals, _ = sym_eigen(_entries(r))
    return float(np.abs(vals).sum())


def definition_indices(g: Graph, r=None) -> dict:
    """All six indices by definition; ``r`` defaults to the oracle matrix of ``g``."""
    r = resistance_oracle(g) if r is None else r
    return {
        "kirchhoff": kirchhoff_index(r),
        "kemeny": kemeny_constant(g, r),
        "additive_dk": additive_dk(g, r),
        "multiplicative_dk": multiplicative_dk(g, r),
        "mixed_dk": mixed_dk(g, r),
        "resistance_energy": resistance_energy(r),
    }


def _definition_value(index: str, g: Graph, r) -> float:
    if index == "kirchhoff":
        return kirchhoff_index(r)
    if index == "resistance_energy":
        return resistance_energy(r)
    return {"kemeny": kemeny_constant, "additive_dk": additive_dk,
            "multiplicative_dk": multiplicative_dk, "mixed_dk": mixed_dk}[index](g, r)


# ---------------------------------------------------------------------------
# published closed forms, transcribed term by term


def _kcoal_kirchhoff(p1, p2, k):
    t = p1 + p2 - k
    first = (p1 - k) * (p2 - k) * (k + 1) * (
        p1 * (k + t) + p2 + Fraction(p2 * k, k + 1)
        + Fraction(p2 * k * (p1 * k + p1 * t - t), (p2 - k) * (k + 1)))
    second = k * p1 * (p2 - k) * (p2 * (t + 2 * k) - t * (k + 1) + k * p2 * (k - 1))
    return Fraction(1, k * p1 * p2 * t) * (first + second)


def _kcoal_rstar_bracket(p1, p2, k):
    t = p1 + p2 - k
    inner = (p1 * (t - 1) * (p2 * k * (k - 1) + (p2 - 1) * (p2 - k) * ((k + 1) * (p1 - k) + 2 * p2 * k))
             + p2 * (p1 - 1) * (p1 - k) * (2 * p1 * k + (p2 - k) * (k + 1)))
    return (Fraction(t - 1, t) * inner
            + p1 * (p2 - k) * (p2 - 1) ** 2 * (p2 - k - 1)
            + Fraction((p1 - k) * (p1 - 1) * (p2 * k * (p1 - k - 1) * (p1 - 1)
                                              + (p2 - k) * (p2 - 1) * (p1 + p2) * (k + 1)), k))


def _kcoal_kemeny(p1, p2, k):
    m = comb(p1, 2) + comb(p2, 2) - comb(k, 2)
    return Fraction(1, 2 * m * p1 * p2) * _kcoal_rstar_bracket(p1, p2, k)


def _kcoal_multiplicative(p1, p2, k):
    return Fraction(1, p1 * p2) * _kcoal_rstar_bracket(p1, p2, k)


def _kcoal_additive(p1, p2, k):
    t = p1 + p2 - k
    return (Fraction(2 * p1 * k * (k - 1) * (t - 1) + k * (p1 - k) * (2 * t - 2) * ((2 * t) + p2 - k), p1 * t)
            + Fraction((p1 - k) * (p2 - k) * (p1 + p2 - 2) * (p1 + p2) * (k + 1), k * p1 * p2)
            + Fraction((p2 - k) * (p1 + 2 * p2 - k - 2) * ((k + 1) * (p1 - k) + 2 * p2 * k), p2 * t)
            + Fraction(2 * p2 * (p1 - k) * (p1 - k - 1) * (p1 - 1)
                       + 2 * p1 * (p2 - k) * (p2 - k - 1) * (p2 - 1), p1 * p2))


def _kcoal_mixed(p1, p2, k):
    t = p1 + p2 - k
    return (Fraction(2 * k * (k - 1), t)
            + Fraction((p1 - k) * ((t - 1) ** 2 + (p1 - 1) ** 2) * (k * (2 * t) + (p2 - k)),
                       p1 * (p1 - 1) * t * (t - 1))
            + Fraction((p2 - k) * ((t - 1) ** 2 + (p2 - 1) ** 2) * ((k + 1) * (p1 - k) + 2 * p2 * k),
                       p2 * (p2 - 1) * t * (t - 1))
            + Fraction(2 * (p1 - k) * (p1 - k - 1), p1)
            + Fraction(2 * (p2 - k) * (p2 - k - 1), p2)
            + Fraction((p1 - k) * (p2 - k) * ((p1 - 1) ** 2 + (p2 - 1) ** 2) * (p1 + p2) * (k + 1),
                       k * p1 * p2 * (p1 - 1) * (p2 - 1)))


def _windmill_kirchhoff(n, t):
    return Fraction(2 * n**2 * t**2 - n**2 * t + n * t, n + 1)


def _windmill_kemeny(n, t):
    return Fraction(n**2 * (2 * t - 1), n + 1)


def _pineapple_kirchhoff(p, q):
    return q * (p + q + 3) + p + 1 - Fraction(2, p) * (q + 1)


def _pineapple_kemeny(p, q):
    num = (p**4 - p**3 + p**3 * q + 3 * p**2 * q + 2 * p * q**2
           - 3 * p**2 - 7 * p * q + 7 * p + 4 * q - 2)
    return Fraction(num, p * (p - 1) + 2 * q)


def _dandelion_kirchhoff(n, l):  # noqa: E741
    return Fraction(l**2 * (3 * n - 2 * l + 2) + l * (5 - 9 * n) + 6 * (n**2 - 1), 6)


def _dandelion_kemeny(n, l):  # noqa: E741
    return (Fraction((n + 1) * (2 * l**2 - 1) + 2 * n * (n - 3 * l), 2 * (n - 1))
            + Fraction(l * (5 - 2 * l**2), 3 * (n - 1)))


_FORMULAS = {
    ("kcoal", "kirchhoff"): (_kcoal_kirchhoff, ("p1", "p2", "k")),
    ("kcoal", "kemeny"): (_kcoal_kemeny, ("p1", "p2", "k")),
    ("kcoal", "additive_dk"): (_kcoal_additive, ("p1", "p2", "k")),
    ("kcoal", "multiplicative_dk"): (_kcoal_multiplicative, ("p1", "p2", "k")),
    ("kcoal", "mixed_dk"): (_kcoal_mixed, ("p1", "p2", "k")),
    ("windmill", "kirchhoff"): (_windmill_kirchhoff, ("n", "t")),
    ("windmill", "kemeny"): (_windmill_kemeny, ("n", "t")),
    ("pineapple", "kirchhoff"): (_pineapple_kirchhoff, ("p", "q")),
    ("pineapple", "kemeny"): (_pineapple_kemeny, ("p", "q")),
    ("dandelion", "kirchhoff"): (_dandelion_kirchhoff, ("n", "l")),
    ("dandelion", "kemeny"): (_dandelion_kemeny, ("n", "l")),
}


def supported_indices(family: str) -> list:
    """Names accepted by :func:`verify` for a family; ``"resistance"`` is the
    closed-form matrix check and is available for every family."""
    return ["resistance"] + [idx for (fam, idx) in _FORMULAS if fam == family]


def paper_formula(index: str, spec):
    """Evaluate the published closed form for ``index`` on ``spec``.

    Returns a :class:`fractions.Fraction` for integer parameters.
    """
    gr.validate_spec(spec)
    entry = _FORMULAS.get((spec.name, index))
    if entry is None:
        raise UnsupportedPairError(f"no published {index} formula for family {spec.name}")
    func, keys = entry
    args = [getattr(spec, key) for key in keys]
    try:
        return func(*args)
    except ZeroDivisionError:
        raise FormulaUndefinedError(
            f"{index} formula for {gr.format_spec(spec)} divides by zero") from None


@dataclass(frozen=True)
class VerificationReport:
    """One formula-versus-definition comparison.

    ``verdict`` is ``"match"`` when ``abs_diff <= tol * max(1, |oracle|)``,
    ``"mismatch"`` otherwise, and ``"undefined"`` when the printed formula
    cannot be evaluated at these parameters.
    """

    family: str
    params: tuple
    index: str
    formula_value: float
    oracle_value: float
    abs_diff: float
    rel_diff: float
    verdict: str
    tol: float
    note: str = field(default="")

    @property
    def params_text(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params)

    def sort_key(self):
        return (self.family, tuple((k, _sortable(v)) for k, v in self.params), self.index)

    def as_record(self) -> dict:
        return {
            "family": self.family,
            "params": self.params_text,
            "index": self.index,
            "formula_value": self.formula_value,
            "oracle_value": self.oracle_value,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "verdict": self.verdict,
            "tol": self.tol,
            "note": self.note,
        }


def _sortable(v):
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


def _report_params(spec) -> tuple:
    out = []
    for key, val in gr.spec_params(spec).items():
        out.append((key, gr.graph_token(val) if isinstance(val, Graph) else val))
    return tuple(out)


def _judge(formula: float, oracle: float, tol: float):
    abs_diff = abs(formula - oracle)
    scale = max(1.0, abs(oracle))
    return abs_diff, abs_diff / scale, ("match" if abs_diff <= tol * scale else "mismatch")


def verify(index: str, spec, tol: float = 1e-9) -> VerificationReport:
    """Compare a closed form against the definition route on the oracle matrix.

    ``index="resistance"`` compares the closed-form resistance matrix with the
    oracle entrywise; the report then carries both entries at the position of
    largest deviation, so ``abs_diff`` is the max entrywise deviation.
    """
    gr.validate_spec(spec)
    if index not in supported_indices(spec.name):
        raise UnsupportedPairError(f"no published {index} formula for family {spec.name}")
    g = gr.build_family(spec)
    oracle_r = resistance_oracle(g)
    note = ""
    if isinstance(spec, (gr.JoinCoal, gr.StarJoinCoal)) and not spec.G.is_connected():
        note = "G disconnected"

    if index == "resistance":
        closed = closed_form(spec).entries
        dev = np.abs(closed - oracle_r.entries)
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        formula, oracle = float(closed[i, j]), float(oracle_r.entries[i, j])
    else:
        oracle = _definition_value(index, g, oracle_r)
        try:
            formula = float(paper_formula(index, spec))
        except FormulaUndefinedError:
            return VerificationReport(spec.name, _report_params(spec), index, float("nan"), oracle,
                                      float("nan"), float("nan"), "undefined", tol,
                                      "formula divides by zero")
    abs_diff, rel_diff, verdict = _judge(formula, oracle, tol)
    return VerificationReport(spec.name, _report_params(spec), index, formula, oracle,
                              abs_diff, rel_diff, verdict, tol, note)
