"""Graph-to-graph constructions: opposite, delay D_n(E), higher dual E(p,q).

Derived graphs are LabeledGraphs: every vertex/edge id carries a provenance
label recording the source-graph object it encodes (a path, or a pair (e,j)
for delay chains).  Dual-graph ids are the edge-id tuples joined with ",";
delay ids are formatted "w(e,j)" / "f(e,j)".
"""

from __future__ import annotations

from typing import Optional

from .errors import PreconditionError, StructuralError
from .graph import Graph, Path, concatenate, enumerate_paths

Label = tuple


class LabeledGraph(Graph):
    """A Graph whose vertices and edges remember what they were built from."""

    def __init__(self, vertices, edges, vertex_labels: dict, edge_labels: dict):
        super().__init__(vertices, edges)
        if set(vertex_labels) != set(self.vertices):
            raise StructuralError("vertex labels not bijective with vertices")
        if set(edge_labels) != {e.id for e in self.edges}:
            raise StructuralError("edge labels not bijective with edges")
        self.vertex_labels = dict(vertex_labels)
        self.edge_labels = dict(edge_labels)


def _identity_labeled(g: Graph) -> LabeledGraph:
    return LabeledGraph(
        g.vertices,
        [(e.id, e.src, e.dst) for e in g.edges],
        {v: ("vertex", v) for v in g.vertices},
        {e.id: ("edge", e.id) for e in g.edges},
    )


def opposite(g: Graph) -> LabeledGraph:
    """Same vertices; each edge reversed: e^op has r(e^op) = s(e), s(e^op) = r(e)."""
    return LabeledGraph(
        g.vertices,
        [(e.id, e.dst, e.src) for e in g.edges],
        {v: ("vertex", v) for v in g.vertices},
        {e.id: ("op", e.id) for e in g.edges},
    )


def delay_vertex_id(e: str, j: int) -> str:
    return f"w({e},{j})"


def delay_edge_id(e: str, j: int) -> str:
    return f"f({e},{j})"


def delay(g: Graph, n: int) -> LabeledGraph:
    """D_n(E): each edge subdivided into an n-edge chain through new vertices.

    r(f_{e,1}) = r(e), r(f_{e,j}) = w_{e,j-1} for j >= 2,
    s(f_{e,j}) = w_{e,j} for j < n, s(f_{e,n}) = s(e).
    """
    if n < 1:
        raise PreconditionError("delay requires n >= 1")
    if n == 1:
        return _identity_labeled(g)
    vertices = list(g.vertices)
    vertex_labels: dict[str, Label] = {v: ("vertex", v) for v in g.vertices}
    edges: list[tuple[str, str, str]] = []
    edge_labels: dict[str, Label] = {}
    for e in g.edges:
        for j in range(1, n):
            w = delay_vertex_id(e.id, j)
            vertices.append(w)
            vertex_labels[w] = ("w", e.id, j)
        for j in range(1, n + 1):
            dst = e.dst if j == 1 else delay_vertex_id(e.id, j - 1)
            src = e.src if j == n else delay_vertex_id(e.id, j)
            f = delay_edge_id(e.id, j)
            edges.append((f, src, dst))
            edge_labels[f] = ("f", e.id, j)
    return LabeledGraph(vertices, edges, vertex_labels, edge_labels)


def join_ids(ids: tuple[str, ...]) -> str:
    return ",".join(ids)


def higher_dual(g: Graph, p: int, q: int) -> LabeledGraph:
    """E(p,q): vertices are p-paths, edges are q-paths, range/source by windowing.

    For p >= 1 the range of the edge e_1...e_q is e_1...e_p and its source is
    e_{q-p+1}...e_q; for p = 0 they are r(e_1) and s(e_q).
    """
    if p < 0 or q <= p:
        raise PreconditionError("higher_dual requires 0 <= p < q")
    if p == 0:
        vertices = list(g.vertices)
        vertex_labels: dict[str, Label] = {v: ("vertex", v) for v in g.vertices}
    else:
        vpaths = enumerate_paths(g, p)
        vertices = [join_ids(mu.edge_ids) for mu in vpaths]
        vertex_labels = {
            join_ids(mu.edge_ids): ("path", mu.edge_ids) for mu in vpaths
        }
    edges = []
    edge_labels: dict[str, Label] = {}
    for mu in enumerate_paths(g, q):
        eid = join_ids(mu.edge_ids)
        if p == 0:
            dst, src = mu.r, mu.s
        else:
            dst = join_ids(mu.edge_ids[:p])
            src = join_ids(mu.edge_ids[q - p :])
        edges.append((eid, src, dst))
        edge_labels[eid] = ("path", mu.edge_ids)
    return LabeledGraph(vertices, edges, vertex_labels, edge_labels)


def higher_power(g: Graph, m: int) -> LabeledGraph:
    """E(0,m), the m-th higher-power graph."""
    if m < 1:
        raise PreconditionError("higher_power requires m >= 1")
    return higher_dual(g, 0, m)


def delay_embed_path(g: Graph, n: int, mu: Path, D: Optional[LabeledGraph] = None) -> Path:
    """D_n^*(e_1...e_k) = f_{e_1,1}...f_{e_1,n} ... f_{e_k,1}...f_{e_k,n}.

    Range- and source-preserving under the vertex inclusion E^0 into D_n(E)^0.
    A prebuilt delay graph may be passed to avoid rebuilding it.
    """
    if mu.graph is not g:
        raise StructuralError("path does not belong to the given graph")
    if D is None:
        D = delay(g, n)
    if n == 1:
        return Path(D, mu.edge_ids) if mu.edge_ids else Path(D, (), mu.anchor)
    if not mu.edge_ids:
        return Path(D, (), mu.anchor)
    ids = tuple(
        delay_edge_id(e, j) for e in mu.edge_ids for j in range(1, n + 1)
    )
    return Path(D, ids)


def dual_word_to_path(g: Graph, dual: LabeledGraph, mu: Path) -> Path:
    """Flatten a path of E(p,q) (or a vertex, for p >= 1) back to a path of g."""
    if mu.graph is not dual:
        raise StructuralError("path does not belong to the given dual graph")
    if not mu.edge_ids:
        label = dual.vertex_labels[mu.anchor]
        if label[0] == "vertex":
            return Path(g, (), label[1])
        return Path(g, tuple(label[1]))
    p = _dual_overlap(dual)
    out: tuple[str, ...] = ()
    for i, eid in enumerate(mu.edge_ids):
        word = dual.edge_labels[eid][1]
        out += word if i == 0 else word[p:]
    return Path(g, out)


def _dual_overlap(dual: LabeledGraph) -> int:
    """The parameter p of an E(p,q) graph, read off a vertex label."""
    label = next(iter(dual.vertex_labels.values()))
    return 0 if label[0] == "vertex" else len(label[1])
