"""Resistance-distance matrices.

Two independent routes:

* :func:`resistance_oracle` works for any connected graph, going through the
  group inverse of the Laplacian.
* ``rd_*`` functions evaluate closed-form block formulas for the coalescence
  families.  Each matrix is laid out in the canonical vertex order produced
  by :func:`rescoal.graphs.build_family` for the matching spec.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import graphs as gr
from .errors import InconsistentInverseError, InvalidParameterError
from .graphs import Graph, laplacian
from .linalg import GenInverse, checked_inverse, laplacian_pseudoinverse

__all__ = [
    "ResistanceMatrix",
    "resistance_from_generalized_inverse",
    "resistance_oracle",
    "rd_kcoal_complete",
    "rd_windmill",
    "rd_join_coalescence",
    "rd_star_coalescence",
    "rd_bipartite_star",
    "rd_bipartite_complete",
    "rd_pineapple",
    "rd_kite",
    "rd_dandelion",
    "closed_form",
    "max_deviation",
]


@dataclass(frozen=True)
class ResistanceMatrix:
    entries: np.ndarray
    provenance: str = "oracle"

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij):
        return self.entries[ij]

    def metric_violations(self) -> dict:
        """Largest violation of each metric axiom (0.0 means satisfied exactly)."""
        r = self.entries
        n = self.n
        tri = 0.0
        for k in range(n):
            excess = r - (r[:, k:k + 1] + r[k:k + 1, :])
            tri = max(tri, float(excess.max(initial=0.0)))
        off = r[~np.eye(n, dtype=bool)]
        return {
            "symmetry": float(np.max(np.abs(r - r.T), initial=0.0)),
            "diagonal": float(np.max(np.abs(np.diag(r)), initial=0.0)),
            "negativity": float(max(0.0, -off.min(initial=0.0))),
            "triangle": tri,
        }

    def is_metric(self, tol: float = 1e-9) -> bool:
        return all(v <= tol for v in self.metric_violations().values())


def max_deviation(a, b) -> float:
    a = a.entries if isinstance(a, ResistanceMatrix) else np.asarray(a)
    b = b.entries if isinstance(b, ResistanceMatrix) else np.asarray(b)
    if a.shape != b.shape:
        raise InvalidParameterError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b), initial=0.0))


def resistance_from_generalized_inverse(h: GenInverse | np.ndarray, tol: float = 1e-9,
                                        provenance: str = "oracle") -> ResistanceMatrix:
    """``r_ij = h_ii + h_jj - h_ij - h_ji`` for a {1}-inverse or group inverse ``h``."""
    x = h.matrix if isinstance(h, GenInverse) else np.asarray(h, dtype=float)
    d = np.diag(x)
    r = d[:, None] + d[None, :] - x - x.T
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 0.0)
    if r.size and r.min() < -tol:
        raise InconsistentInverseError(
            f"negative resistance {r.min():.3g}; the matrix is not a generalized inverse of a Laplacian")
    return ResistanceMatrix(r, provenance)


def resistance_oracle(g: Graph) -> ResistanceMatrix:
    return resistance_from_generalized_inverse(laplacian_pseudoinverse(laplacian(g)), provenance="oracle")


def _block_constant(sizes, table) -> np.ndarray:
    """Expand a block-constant table into a full matrix with zero diagonal.

    ``table[a][b]`` is the value shared by every entry between block ``a``
    and block ``b`` (off-diagonal entries for ``a == b``).  Zero-width blocks
    simply vanish.
    """
    table = np.asarray(table, dtype=float)
    owner = np.repeat(np.arange(len(sizes)), sizes)
    r = table[np.ix_(owner, owner)]
    np.fill_diagonal(r, 0.0)
    return r


def _closed(r: np.ndarray, family: str) -> ResistanceMatrix:
    return ResistanceMatrix(r, f"closed_form:{family}")


def rd_kcoal_complete(p1: int, p2: int, k: int) -> ResistanceMatrix:
    """K_{p1} o_k K_{p2}; blocks (identified set T, K_{p1} minus T, K_{p2} minus T)."""
    gr.KCoalComplete(p1, p2, k).validate()
    t = p1 + p2 - k
    tt = 2 / t
    ta = ((k + 1) * (p2 - k) + 2 * p1 * k) / (k * p1 * t)
    tb = ((k + 1) * (p1 - k) + 2 * p2 * k) / (k * p2 * t)
    ab = (p1 + p2) * (k + 1) / (k * p1 * p2)
    table = [[tt, ta, tb],
             [ta, 2 / p1, ab],
             [tb, ab, 2 / p2]]
    return _closed(_block_constant([k, p1 - k, p2 - k], table), "kcoal")


def rd_windmill(n: int, t: int) -> ResistanceMatrix:
    """W_{n+1}^t; centre first, then the t blocks of n vertices each."""
    gr.Windmill(n, t).validate()
    near, far = 2 / (n + 1), 4 / (n + 1)
    table = np.full((t + 1, t + 1), far)
    table[0, :] = table[:, 0] = near
    np.fill_diagonal(table, near)
    return _closed(_block_constant([1] + [n] * t, table), "windmill")


def _shifted_inverse(g: Graph, k: int) -> np.ndarray:
    # (L(G) + kI) is positive definite even for disconnected G
    return checked_inverse(laplacian(g) + k * np.eye(g.n), "L(G) + kI")


def rd_join_coalescence(p: int, k: int, g: Graph) -> ResistanceMatrix:
    """K_p o_k (G v K_k); blocks (T, K_p minus T, G)."""
    gr.JoinCoal(p, k, g).validate()
    n = g.n
    m = _shifted_inverse(g, k)
    md = np.diag(m)
    head = _block_constant([k, p - k], [[2 / (p + n), (k * (2 * p + n) + n) / (k * p * (p + n))],
                                        [(k * (2 * p + n) + n) / (k * p * (p + n)), 2 / p]])
    to_g = np.concatenate([np.full(k, (k - 1) / (k * (p + n))),
                           np.full(p - k, (k + 1) / (k * p))])[:, None] + md[None, :]
    g_block = md[:, None] + md[None, :] - 2 * m
    np.fill_diagonal(g_block, 0.0)
    r = np.block([[head, to_g], [to_g.T, g_block]])
    return _closed(r, "joincoal")


def rd_star_coalescence(p: int, g: Graph) -> ResistanceMatrix:
    """K_{1,p-1} o_1 (G v K_1); blocks (centre u*, star leaves, G)."""
    gr.StarJoinCoal(p, g).validate()
    m = _shifted_inverse(g, 1)
    md = np.diag(m)
    head = _block_constant([1, p - 1], [[0.0, 1.0], [1.0, 2.0]])
    to_g = np.concatenate([[0.0], np.ones(p - 1)])[:, None] + md[None, :]
    g_block = md[:, None] + md[None, :] - 2 * m
    np.fill_diagonal(g_block, 0.0)
    r = np.block([[head, to_g], [to_g.T, g_block]])
    return _closed(r, "starjoin")


def rd_bipartite_star(p: int, q: int, n: int) -> ResistanceMatrix:
    """K_{p,q} o_1 K_{1,n}; blocks (u*, rest of the p-side, q-side, star leaves)."""
    gr.BipartiteStar(p, q, n).validate()
    pp = 2 / q
    pq = (p + q - 1) / (p * q)
    p_leaf = (q + 2) / q
    q_leaf = (q * (p + 1) + (p - 1)) / (p * q)
    table = [[0.0, pp, pq, 1.0],
             [pp, pp, pq, p_leaf],
             [pq, pq, 2 / p, q_leaf],
             [1.0, p_leaf, q_leaf, 2.0]]
    return _closed(_block_constant([1, p - 1, q, n], table), "bipstar")


def rd_bipartite_complete(p: int, q: int, n: int) -> ResistanceMatrix:
    """K_{p,q} o_1 K_n; blocks (u*, rest of the p-side, q-side, rest of K_n)."""
    gr.BipartiteComplete(p, q, n).validate()
    pp = 2 / q
    pq = (p + q - 1) / (p * q)
    p_k = 2 * (q + n) / (q * n)
    q_k = (q * (n + 2 * p) + n * (p - 1)) / (n * p * q)
    table = [[0.0, pp, pq, 2 / n],
             [pp, pp, pq, p_k],
             [pq, pq, 2 / p, q_k],
             [2 / n, p_k, q_k, 2 / n]]
    return _closed(_block_constant([1, p - 1, q, n - 1], table), "bipcomplete")


def rd_pineapple(p: int, q: int) -> ResistanceMatrix:
    """K_p^q; blocks (v**, rest of K_p, pendant leaves)."""
    gr.Pineapple(p, q).validate()
    table = [[0.0, 2 / p, 1.0],
             [2 / p, 2 / p, (p + 2) / p],
             [1.0, (p + 2) / p, 2.0]]
    return _closed(_block_constant([1, p - 1, q], table), "pineapple")


def rd_kite(p: int) -> ResistanceMatrix:
    """K_p o_1 K_2; blocks (v*, rest of K_p, the pendant u2)."""
    gr.Kite(p).validate()
    table = [[0.0, 2 / p, 1.0],
             [2 / p, 2 / p, (p + 2) / p],
             [1.0, (p + 2) / p, 0.0]]
    return _closed(_block_constant([1, p - 1, 1], table), "kite")


def rd_dandelion(n: int, l: int) -> ResistanceMatrix:  # noqa: E741
    """D(n, l); path positions 0..l-1 (position 0 is the star centre), then the leaves."""
    gr.Dandelion(n, l).validate()
    pos = np.arange(l, dtype=float)
    r = np.empty((n, n))
    r[:l, :l] = np.abs(pos[:, None] - pos[None, :])
    r[:l, l:] = (pos + 1)[:, None]
    r[l:, :l] = r[:l, l:].T
    r[l:, l:] = 2.0
    np.fill_diagonal(r, 0.0)
    return _closed(r, "dandelion")


def closed_form(spec) -> ResistanceMatrix:
    """Closed-form resistance matrix for a family spec, in build_family order."""
    gr.validate_spec(spec)
    if isinstance(spec, gr.KCoalComplete):
        return rd_kcoal_complete(spec.p1, spec.p2, spec.k)
    if isinstance(spec, gr.Windmill):
        return rd_windmill(spec.n, spec.t)
    if isinstance(spec, gr.Rose3):
        return ResistanceMatrix(rd_windmill(2, 3).entries, "closed_form:rose3")
    if isinstance(spec, gr.JoinCoal):
        return rd_join_coalescence(spec.p, spec.k, spec.G)
    if isinstance(spec, gr.StarJoinCoal):
        return rd_star_coalescence(spec.p, spec.G)
    if isinstance(spec, gr.BipartiteStar):
        return rd_bipartite_star(spec.p, spec.q, spec.n)
    if isinstance(spec, gr.BipartiteComplete):
        return rd_bipartite_complete(spec.p, spec.q, spec.n)
    if isinstance(spec, gr.Pineapple):
        return rd_pineapple(spec.p, spec.q)
    if isinstance(spec, gr.Kite):
        return rd_kite(spec.p)
    if isinstance(spec, gr.Dandelion):
        return rd_dandelion(spec.n, spec.l)
    raise InvalidParameterError(f"no closed form for {spec!r}")  # pragma: no cover
