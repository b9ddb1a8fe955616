"""Graph construction: standard families, joins, k-coalescences and the
parametric coalescence families.

Every constructor fixes a canonical vertex ordering.  For a coalescence
``G o_k H`` the identified vertices come first (in the order of ``S_G``),
then the remaining vertices of ``G`` in increasing index, then the remaining
vertices of ``H``.  The closed-form resistance matrices in
:mod:`rescoal.resistance` are laid out in the same order, so the two routes
can be compared entrywise without any relabelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields
from itertools import combinations
from pathlib import Path
from typing import ClassVar, Iterable, Sequence, Union

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import GraphStructureError, InvalidParameterError, ParseError

__all__ = [
    "Graph",
    "make_standard",
    "join",
    "k_coalescence",
    "laplacian",
    "KCoalComplete",
    "Windmill",
    "Rose3",
    "JoinCoal",
    "StarJoinCoal",
    "BipartiteStar",
    "BipartiteComplete",
    "Pineapple",
    "Kite",
    "Dandelion",
    "FamilySpec",
    "FAMILIES",
    "build_family",
    "validate_spec",
    "spec_params",
    "format_spec",
    "parse_spec",
    "parse_graph",
    "graph_token",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "parse_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` holds normalised pairs ``(u, v)`` with ``u < v``.  ``labels`` is
    an optional per-vertex role tag; ``name`` is a display token and takes no
    part in equality.
    """

    n: int
    edges: frozenset
    labels: tuple | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"graph needs at least one vertex, got n={self.n}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphStructureError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphStructureError(f"edge {e} has an endpoint outside [0, {self.n})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphStructureError("labels must have one entry per vertex")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None, name: str = "") -> "Graph":
        edges = list(edges)
        norm = [(min(u, v), max(u, v)) for u, v in edges]
        if len(set(norm)) != len(norm):
            raise GraphStructureError("duplicate edge in edge list")
        return cls(n, frozenset(norm), labels, name)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        if self.edges:
            idx = np.array(self.sorted_edges())
            a[idx[:, 0], idx[:, 1]] = 1.0
            a[idx[:, 1], idx[:, 0]] = 1.0
        return a

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def neighbors(self, v: int) -> set:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        ncomp, _ = connected_components(self.adjacency(), directed=False)
        return ncomp == 1

    def induces_clique(self, vertices: Sequence[int]) -> bool:
        return all((min(u, v), max(u, v)) in self.edges for u, v in combinations(vertices, 2))

    def relabel(self, labels) -> "Graph":
        return Graph(self.n, self.edges, tuple(labels), self.name)

    def named(self, name: str) -> "Graph":
        return Graph(self.n, self.edges, self.labels, name)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"Graph({tag.strip() or 'n=' + str(self.n)}, n={self.n}, m={self.m})"


def _check_size(value, what, minimum=1):
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < minimum:
        raise InvalidParameterError(f"{what} must be an integer >= {minimum}, got {value!r}")


def make_standard(kind: str, *sizes: int) -> Graph:
    """Build a named graph.

    ``complete n``, ``path n``, ``cycle n`` (n >= 3), ``star n`` (the star
    K_{1,n}, centre first), ``complete_bipartite a b`` (left part first) and
    ``empty n`` (no edges).
    """
    expected = 2 if kind == "complete_bipartite" else 1
    if len(sizes) != expected:
        raise InvalidParameterError(f"{kind} takes {expected} size(s), got {len(sizes)}")
    for s in sizes:
        _check_size(s, f"{kind} size")
    if kind == "complete":
        (n,) = sizes
        return Graph(n, frozenset(combinations(range(n), 2)), name=f"K{n}")
    if kind == "path":
        (n,) = sizes
        return Graph(n, frozenset((i, i + 1) for i in range(n - 1)), name=f"P{n}")
    if kind == "cycle":
        (n,) = sizes
        _check_size(n, "cycle size", 3)
        edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
        return Graph(n, frozenset(edges), name=f"C{n}")
    if kind == "star":
        (leaves,) = sizes
        return Graph(leaves + 1, frozenset((0, j) for j in range(1, leaves + 1)), name=f"S{leaves}")
    if kind == "complete_bipartite":
        a, b = sizes
        edges = frozenset((i, a + j) for i in range(a) for j in range(b))
        return Graph(a + b, edges, name=f"K{a}x{b}")
    if kind == "empty":
        (n,) = sizes
        return Graph(n, frozenset(), name=f"E{n}")
    raise InvalidParameterError(f"unknown graph kind {kind!r}")


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them; ``g`` first."""
    off = g.n
    edges = set(g.edges)
    edges.update((u + off, v + off) for u, v in h.edges)
    edges.update((u, off + v) for u in range(g.n) for v in range(h.n))
    name = f"({g.name}v{h.name})" if g.name and h.name else ""
    return Graph(g.n + h.n, frozenset(edges), name=name)


def k_coalescence(g: Graph, s_g: Sequence[int], h: Graph, s_h: Sequence[int]) -> Graph:
    """Identify ``s_g[i]`` with ``s_h[i]``; both sets must induce cliques."""
    s_g, s_h = list(s_g), list(s_h)
    if len(s_g) != len(s_h):
        raise GraphStructureError(f"identification sets differ in length ({len(s_g)} vs {len(s_h)})")
    if not s_g:
        raise GraphStructureError("k-coalescence needs k >= 1")
    for s, graph, side in ((s_g, g, "first"), (s_h, h, "second")):
        if len(set(s)) != len(s) or not all(0 <= v < graph.n for v in s):
            raise GraphStructureError(f"bad identification set {s} for the {side} graph")
        if not graph.induces_clique(s):
            raise GraphStructureError(f"vertices {s} do not induce a complete subgraph of the {side} graph")

    k = len(s_g)
    map_g = {v: i for i, v in enumerate(s_g)}
    map_h = {v: i for i, v in enumerate(s_h)}
    nxt = k
    g_rest = [v for v in range(g.n) if v not in map_g]
    for v in g_rest:
        map_g[v] = nxt
        nxt += 1
    h_rest = [v for v in range(h.n) if v not in map_h]
    for v in h_rest:
        map_h[v] = nxt
        nxt += 1

    edges = {tuple(sorted((map_g[u], map_g[v]))) for u, v in g.edges}
    edges |= {tuple(sorted((map_h[u], map_h[v]))) for u, v in h.edges}

    labels = ["identified"] * k
    labels += [(g.labels[v] if g.labels and g.labels[v] else "left") for v in g_rest]
    labels += [(h.labels[v] if h.labels and h.labels[v] else "right") for v in h_rest]
    return Graph(nxt, frozenset(edges), tuple(labels))


def laplacian(g: Graph) -> np.ndarray:
    a = g.adjacency()
    return np.diag(a.sum(axis=1)) - a


# ---------------------------------------------------------------------------
# parametric families


@dataclass(frozen=True)
class KCoalComplete:
    """K_{p1} o_k K_{p2}."""

    p1: int
    p2: int
    k: int
    name: ClassVar[str] = "kcoal"

    def validate(self):
        for f in ("p1", "p2", "k"):
            _check_size(getattr(self, f), f)
        if self.k > min(self.p1, self.p2):
            raise InvalidParameterError(f"kcoal requires k <= min(p1, p2), got k={self.k}")
        if self.p1 + self.p2 - self.k < 2:
            raise InvalidParameterError("kcoal requires p1 + p2 - k >= 2")


@dataclass(frozen=True)
class Windmill:
    """t copies of K_{n+1} sharing one vertex."""

    n: int
    t: int
    name: ClassVar[str] = "windmill"

    def validate(self):
        _check_size(self.n, "n", 2)
        _check_size(self.t, "t", 2)


@dataclass(frozen=True)
class Rose3:
    """Three triangles through one vertex; the same graph as Windmill(2, 3)."""

    name: ClassVar[str] = "rose3"

    def validate(self):
        pass


@dataclass(frozen=True)
class JoinCoal:
    """K_p o_k (G v K_k), identifying the K_k part of the join."""

    p: int
    k: int
    G: Graph
    name: ClassVar[str] = "joincoal"

    def validate(self):
        _check_size(self.k, "k")
        _check_size(self.p, "p")
        if self.p < self.k:
            raise InvalidParameterError(f"joincoal requires p >= k, got p={self.p}, k={self.k}")


@dataclass(frozen=True)
class StarJoinCoal:
    """K_{1,p-1} o_1 (G v K_1), identifying the star centre with the K_1."""

    p: int
    G: Graph
    name: ClassVar[str] = "starjoin"

    def validate(self):
        _check_size(self.p, "p", 2)


@dataclass(frozen=True)
class BipartiteStar:
    """K_{p,q} o_1 K_{1,n}: a left-part vertex identified with the star centre."""

    p: int
    q: int
    n: int
    name: ClassVar[str] = "bipstar"

    def validate(self):
        for f in ("p", "q", "n"):
            _check_size(getattr(self, f), f)


@dataclass(frozen=True)
class BipartiteComplete:
    """K_{p,q} o_1 K_n: a left-part vertex identified with a vertex of K_n."""

    p: int
    q: int
    n: int
    name: ClassVar[str] = "bipcomplete"

    def validate(self):
        for f in ("p", "q", "n"):
            _check_size(getattr(self, f), f)


@dataclass(frozen=True)
class Pineapple:
    """K_p with q pendant vertices at one vertex."""

    p: int
    q: int
    name: ClassVar[str] = "pineapple"

    def validate(self):
        _check_size(self.p, "p", 2)
        _check_size(self.q, "q", 1)


@dataclass(frozen=True)
class Kite:
    """K_p with one pendant vertex (K_p o_1 K_2)."""

    p: int
    name: ClassVar[str] = "kite"

    def validate(self):
        _check_size(self.p, "p", 2)


@dataclass(frozen=True)
class Dandelion:
    """D(n, l): path on l vertices glued at one end to the centre of K_{1,n-l}."""

    n: int
    l: int  # noqa: E741
    name: ClassVar[str] = "dandelion"

    def validate(self):
        _check_size(self.n, "n", 3)
        _check_size(self.l, "l", 2)
        if self.l > self.n - 1:
            raise InvalidParameterError(f"dandelion requires 2 <= l <= n-1, got n={self.n}, l={self.l}")


FamilySpec = Union[
    KCoalComplete, Windmill, Rose3, JoinCoal, StarJoinCoal,
    BipartiteStar, BipartiteComplete, Pineapple, Kite, Dandelion,
]

FAMILIES = {
    cls.name: cls
    for cls in (KCoalComplete, Windmill, Rose3, JoinCoal, StarJoinCoal,
                BipartiteStar, BipartiteComplete, Pineapple, Kite, Dandelion)
}


def validate_spec(spec) -> None:
    if type(spec) not in FAMILIES.values():
        raise InvalidParameterError(f"not a family spec: {spec!r}")
    spec.validate()


def spec_params(spec) -> dict:
    return {f.name: getattr(spec, f.name) for f in fields(spec)}


def build_family(spec) -> Graph:
    """Build the graph of a family spec in canonical vertex order."""
    validate_spec(spec)
    if isinstance(spec, KCoalComplete):
        s = list(range(spec.k))
        return k_coalescence(make_standard("complete", spec.p1), s,
                             make_standard("complete", spec.p2), s)
    if isinstance(spec, (Windmill, Rose3)):
        n, t = (2, 3) if isinstance(spec, Rose3) else (spec.n, spec.t)
        block = make_standard("complete", n + 1)
        g = block
        for _ in range(t - 1):
            g = k_coalescence(g, [0], block, [0])
        return g
    if isinstance(spec, JoinCoal):
        h = join(spec.G, make_standard("complete", spec.k))
        kp = make_standard("complete", spec.p)
        g = k_coalescence(kp, list(range(spec.k)), h, list(range(spec.G.n, spec.G.n + spec.k)))
        return g
    if isinstance(spec, StarJoinCoal):
        h = join(spec.G, make_standard("complete", 1))
        return k_coalescence(make_standard("star", spec.p - 1), [0], h, [spec.G.n])
    if isinstance(spec, BipartiteStar):
        return k_coalescence(make_standard("complete_bipartite", spec.p, spec.q), [0],
                             make_standard("star", spec.n), [0])
    if isinstance(spec, BipartiteComplete):
        return k_coalescence(make_standard("complete_bipartite", spec.p, spec.q), [0],
                             make_standard("complete", spec.n), [0])
    if isinstance(spec, Pineapple):
        return k_coalescence(make_standard("complete", spec.p), [0],
                             make_standard("star", spec.q), [0])
    if isinstance(spec, Kite):
        return k_coalescence(make_standard("complete", spec.p), [0],
                             make_standard("complete", 2), [0])
    if isinstance(spec, Dandelion):
        return k_coalescence(make_standard("path", spec.l), [0],
                             make_standard("star", spec.n - spec.l), [0])
    raise InvalidParameterError(f"unknown family spec {spec!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# text formats

_GRAPH_TOKEN = re.compile(r"^(?:(K|P|C|S|E)(\d+)|K(\d+)x(\d+))$")
_KIND = {"K": "complete", "P": "path", "C": "cycle", "S": "star", "E": "empty"}


def graph_token(g: Graph) -> str:
    """Compact text form: the standard name if known, else ``n[u-v/...]``."""
    if g.name and _GRAPH_TOKEN.match(g.name):
        return g.name
    body = "/".join(f"{u}-{v}" for u, v in g.sorted_edges())
    return f"{g.n}[{body}]"


def parse_graph(token: str) -> Graph:
    """Parse a graph token: ``K4``, ``P3``, ``C5``, ``S3``, ``E2``, ``K2x3``,
    ``5[0-1/1-2]`` or ``@path/to/edges.txt``."""
    token = token.strip()
    if token.startswith("@"):
        return read_edge_list(token[1:])
    m = _GRAPH_TOKEN.match(token)
    if m:
        if m.group(1):
            return make_standard(_KIND[m.group(1)], int(m.group(2)))
        return make_standard("complete_bipartite", int(m.group(3)), int(m.group(4)))
    m = re.match(r"^(\d+)\[(.*)\]$", token)
    if m:
        n = int(m.group(1))
        edges = []
        for part in filter(None, m.group(2).split("/")):
            try:
                u, v = (int(x) for x in part.split("-"))
            except ValueError:
                raise ParseError(f"bad edge {part!r} in graph token {token!r}") from None
            edges.append((u, v))
        return Graph.from_edges(n, edges)
    raise ParseError(f"unrecognised graph token {token!r}")


def format_spec(spec) -> str:
    parts = []
    for key, val in spec_params(spec).items():
        parts.append(f"{key}={graph_token(val) if isinstance(val, Graph) else val}")
    return f"{spec.name}:{','.join(parts)}" if parts else spec.name


def parse_spec(text: str):
    """Parse ``family:key=value,...`` (e.g. ``kcoal:p1=4,p2=3,k=2``) into a validated spec."""
    text = text.strip()
    fam, _, rest = text.partition(":")
    cls = FAMILIES.get(fam.strip().lower())
    if cls is None:
        raise ParseError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    wanted = {f.name: f for f in fields(cls)}
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in wanted:
            raise ParseError(f"unexpected token {item!r} for family {cls.name}")
        if key == "G":
            kwargs[key] = parse_graph(val)
        else:
            try:
                kwargs[key] = int(val)
            except ValueError:
                raise ParseError(f"parameter {key} expects an integer, got {val!r}") from None
    missing = [k for k in wanted if k not in kwargs]
    if missing:
        raise ParseError(f"family {cls.name} is missing parameter(s) {', '.join(missing)}")
    spec = cls(**kwargs)
    spec.validate()
    return spec


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty edge list")
    lineno, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise ParseError(f"line {lineno}: header must be 'n m', got {' '.join(head)!r}") from None
    edges = []
    for lineno, tok in rows[1:]:
        try:
            u, v = (int(x) for x in tok)
        except ValueError:
            raise ParseError(f"line {lineno}: expected 'u v', got {' '.join(tok)!r}") from None
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} were listed")
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))
