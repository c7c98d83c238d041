# Cyclograph is a molecular similarity toolbox built on graphs of cycles.
#
# Copyright (C) 2022  Cyclograph developers.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/>.
"""Maximum common edge subgraph under a vertex compatibility function.

Both molecular graphs and graphs of cycles are handled through
`LabeledGraph`. The common subgraph is found as a maximum clique of a
compatibility graph whose nodes are oriented pairs of edges: the node
``(e1, e2, flipped)`` maps the first endpoint of ``e1`` to the first (or,
if flipped, the second) endpoint of ``e2``. Two nodes are adjacent when
their vertex mappings agree, which makes cliques and common subgraphs
correspond exactly.
"""
from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass
from typing import Tuple, Union

import networkx as nx
import numpy as np
from mashumaro.mixins.json import DataClassJSONMixin

from cyclograph.cycles.cyclegraph import CycleGraph
from cyclograph.molecule.graph import MolecularGraph
from cyclograph.similarity.clique import (
    CompatibilityGraph,
    SearchStatus,
    max_clique,
)

logger = logging.getLogger(__name__)

VertexLabel = Union[str, int]
EdgeLabel = Tuple[Union[str, int], ...]

EPSILON = 1e-9
_BLOCK_ROWS = 1024


class PiMode(enum.Enum):
    """Kind of vertex labels compared by the compatibility function."""

    MOLECULAR = "molecular"
    CYCLE = "cycle"


@dataclass(frozen=True)
class PiConstraint(DataClassJSONMixin):
    """Compatibility rules of vertices and edges.

    Parameters
    ----------
    mode
        Element symbols are compared in molecular mode, cycle lengths in
        cycle mode.
    cycle_tolerance
        Two cycle lengths are compatible when their difference is at most
        this fraction of the smaller one.
    theta_tolerance
        Same rule for the ``theta`` labels of edges of graphs of cycles.
        With the default of 0 they must be equal.
    """

    mode: PiMode
    cycle_tolerance: float = 0.2
    theta_tolerance: float = 0.0

    def __post_init__(self) -> None:
        """Check the tolerances."""
        if self.cycle_tolerance < 0 or self.theta_tolerance < 0:
            raise ValueError(
                "Tolerances must be non-negative, got "
                f"{self.cycle_tolerance} and {self.theta_tolerance}"
            )


@dataclass(frozen=True)
class LabeledEdge:
    """An edge with the labels of its endpoints and its own label."""

    a: int
    b: int
    a_label: VertexLabel
    b_label: VertexLabel
    label: EdgeLabel


@dataclass(frozen=True)
class LabeledGraph:
    """Vertex- and edge-labeled simple graph."""

    name: str
    vertex_labels: Tuple[VertexLabel, ...]
    edges: Tuple[LabeledEdge, ...]

    @classmethod
    def from_molecular_graph(cls, g: MolecularGraph) -> LabeledGraph:
        """Label atoms by element and bonds by order."""
        labels = tuple(atom.element for atom in g.atoms)
        edges = tuple(
            LabeledEdge(
                a=bond.a,
                b=bond.b,
                a_label=labels[bond.a],
                b_label=labels[bond.b],
                label=(bond.order.value,),
            )
            for bond in g.bonds
        )
        return cls(name=g.name, vertex_labels=labels, edges=edges)

    @classmethod
    def from_cycle_graph(cls, cg: CycleGraph) -> LabeledGraph:
        """Label cycles by length and edges by ``(nu, theta)``."""
        labels = tuple(cg.mu)
        edges = tuple(
            LabeledEdge(
                a=edge.u,
                b=edge.v,
                a_label=labels[edge.u],
                b_label=labels[edge.v],
                label=(edge.nu, edge.theta),
            )
            for edge in cg.edges
        )
        return cls(name=cg.molecule, vertex_labels=labels, edges=edges)

    @property
    def n_vertices(self) -> int:
        """Number of vertices."""
        return len(self.vertex_labels)

    @property
    def n_edges(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def size(self) -> int:
        """Number of vertices plus number of edges."""
        return self.n_vertices + self.n_edges

    def canonical_key(self) -> tuple:
        """Total order on graphs, equal keys meaning equal graphs."""
        return (
            self.n_vertices,
            self.n_edges,
            [str(label) for label in self.vertex_labels],
            [(e.a, e.b, [str(x) for x in e.label]) for e in self.edges],
        )


@dataclass(frozen=True)
class McesResult:
    """Common subgraph of two graphs and its similarity score.

    Parameters
    ----------
    matched_edges
        Pairs ``(edge index in g1, edge index in g2)``.
    vertex_mapping
        Pairs ``(vertex of g1, vertex of g2)``, sorted.
    v12
        Number of vertices touched by the matched edges. When one of the
        graphs has no edge, number of vertices paired by label instead.
    e12
        Number of matched edges.
    score
        ``(v12 + e12)**2 / ((|V1| + |E1|) * (|V2| + |E2|))``.
    status
        Whether the common subgraph is proven maximum.
    """

    matched_edges: Tuple[Tuple[int, int], ...]
    vertex_mapping: Tuple[Tuple[int, int], ...]
    v12: int
    e12: int
    score: float
    status: SearchStatus

    def swapped(self) -> McesResult:
        """Get the same result with the roles of the two graphs exchanged."""
        return McesResult(
            matched_edges=tuple(sorted((e2, e1) for e1, e2 in self.matched_edges)),
            vertex_mapping=tuple(sorted((v2, v1) for v1, v2 in self.vertex_mapping)),
            v12=self.v12,
            e12=self.e12,
            score=self.score,
            status=self.status,
        )


def _within(x: float, y: float, tolerance: float) -> bool:
    return abs(x - y) <= tolerance * min(x, y) + EPSILON


def pi_compatible_vertices(
    v1: VertexLabel, v2: VertexLabel, c: PiConstraint
) -> bool:
    """Check whether two vertex labels may be matched.

    Parameters
    ----------
    v1, v2
        Element symbols in molecular mode, cycle lengths in cycle mode.
    c
        The compatibility rules.

    Returns
    -------
    bool
        Equality of the symbols, or cycle lengths differing by at most
        ``c.cycle_tolerance`` times the smaller one.
    """
    if c.mode is PiMode.MOLECULAR:
        return v1 == v2
    return _within(v1, v2, c.cycle_tolerance)  # type: ignore[arg-type]


def _edge_labels_compatible(l1: EdgeLabel, l2: EdgeLabel, c: PiConstraint) -> bool:
    if c.mode is PiMode.MOLECULAR:
        return l1 == l2
    (nu1, theta1), (nu2, theta2) = l1, l2
    return nu1 == nu2 and _within(theta1, theta2, c.theta_tolerance)


def edge_orientations(
    e1: LabeledEdge, e2: LabeledEdge, c: PiConstraint
) -> list[bool]:
    """List the ways of mapping `e1` onto `e2`.

    Returns
    -------
    list[bool]
        ``False`` if ``a -> a, b -> b`` is allowed, ``True`` if
        ``a -> b, b -> a`` is allowed. Empty when the edge labels differ.
    """
    if not _edge_labels_compatible(e1.label, e2.label, c):
        return []

    orientations = []
    if pi_compatible_vertices(e1.a_label, e2.a_label, c) and pi_compatible_vertices(
        e1.b_label, e2.b_label, c
    ):
        orientations.append(False)
    if pi_compatible_vertices(e1.a_label, e2.b_label, c) and pi_compatible_vertices(
        e1.b_label, e2.a_label, c
    ):
        orientations.append(True)
    return orientations


def edge_compatible(e1: LabeledEdge, e2: LabeledEdge, c: PiConstraint) -> bool:
    """Check whether two edges may be matched in at least one orientation."""
    return bool(edge_orientations(e1, e2, c))


def build_compatibility_graph(
    g1: LabeledGraph, g2: LabeledGraph, c: PiConstraint
) -> CompatibilityGraph:
    """Build the compatibility graph of two labeled graphs.

    Parameters
    ----------
    g1, g2
        The graphs.
    c
        The compatibility rules.

    Returns
    -------
    CompatibilityGraph
        Nodes ``(e1, e2, flipped)`` for every compatible oriented pair of
        edges. Two nodes are adjacent when, for any endpoints ``s`` and
        ``s'`` of their edges in `g1` mapped to ``t`` and ``t'`` in `g2`,
        ``s == s'`` exactly when ``t == t'``.
    """
    nodes = [
        (i, k, flipped)
        for i, e1 in enumerate(g1.edges)
        for k, e2 in enumerate(g2.edges)
        for flipped in edge_orientations(e1, e2, c)
    ]
    if not nodes:
        return CompatibilityGraph.empty()

    src = np.array([(g1.edges[i].a, g1.edges[i].b) for i, _, _ in nodes])
    dst = np.array(
        [
            (g2.edges[k].b, g2.edges[k].a)
            if flipped
            else (g2.edges[k].a, g2.edges[k].b)
            for _, k, flipped in nodes
        ]
    )

    n = len(nodes)
    adjacency = np.empty((n, n), dtype=bool)
    for start in range(0, n, _BLOCK_ROWS):
        rows = slice(start, min(start + _BLOCK_ROWS, n))
        block = np.ones((rows.stop - start, n), dtype=bool)
        for p in range(2):
            for q in range(2):
                same_src = src[rows, p, None] == src[None, :, q]
                same_dst = dst[rows, p, None] == dst[None, :, q]
                block &= same_src == same_dst
        adjacency[rows] = block
    np.fill_diagonal(adjacency, False)

    return CompatibilityGraph(nodes=tuple(nodes), adjacency=adjacency)


def _vertex_mapping(
    g1: LabeledGraph, g2: LabeledGraph, nodes: list[tuple[int, int, bool]]
) -> dict[int, int]:
    """Read the vertex mapping of a clique, checking that it is consistent."""
    mapping: dict[int, int] = {}
    for i, k, flipped in nodes:
        e1, e2 = g1.edges[i], g2.edges[k]
        targets = (e2.b, e2.a) if flipped else (e2.a, e2.b)
        for s, t in zip((e1.a, e1.b), targets):
            if mapping.setdefault(s, t) != t:
                raise RuntimeError(f"Vertex {s} of {g1.name!r} mapped twice")

    if len(set(mapping.values())) != len(mapping):
        raise RuntimeError(f"Vertex mapping into {g2.name!r} is not injective")

    edges2 = {frozenset((e.a, e.b)): k for k, e in enumerate(g2.edges)}
    for i, k, _ in nodes:
        e1 = g1.edges[i]
        if edges2.get(frozenset((mapping[e1.a], mapping[e1.b]))) != k:
            raise RuntimeError(f"Edge {i} of {g1.name!r} is not mapped on edge {k}")

    return mapping


def _match_remaining(
    g1: LabeledGraph, g2: LabeledGraph, c: PiConstraint, mapping: dict[int, int]
) -> dict[int, int]:
    """Pair the vertices of two graphs by label when one has no edge."""
    free1 = [v for v in range(g1.n_vertices) if v not in mapping]
    used2 = set(mapping.values())
    free2 = [v for v in range(g2.n_vertices) if v not in used2]
    if not free1 or not free2:
        return {}

    offset = g1.n_vertices
    bipartite = nx.Graph()
    bipartite.add_nodes_from(free1)
    bipartite.add_nodes_from(offset + v for v in free2)
    bipartite.add_edges_from(
        (v1, offset + v2)
        for v1 in free1
        for v2 in free2
        if pi_compatible_vertices(g1.vertex_labels[v1], g2.vertex_labels[v2], c)
    )
    matching = nx.bipartite.maximum_matching(bipartite, top_nodes=free1)

    return {v1: matching[v1] - offset for v1 in free1 if v1 in matching}


def _similarity(
    g1: LabeledGraph, g2: LabeledGraph, c: PiConstraint, budget_s: float
) -> McesResult:
    compatibility = build_compatibility_graph(g1, g2, c)
    clique = max_clique(compatibility, budget_s)

    nodes = [compatibility.nodes[node] for node in clique.nodes]
    mapping = _vertex_mapping(g1, g2, nodes)
    if g1.n_edges == 0 or g2.n_edges == 0:
        mapping.update(_match_remaining(g1, g2, c, mapping))

    v12 = len(mapping)
    e12 = len(nodes)
    score = (v12 + e12) ** 2 / (g1.size * g2.size)

    return McesResult(
        matched_edges=tuple(sorted((i, k) for i, k, _ in nodes)),
        vertex_mapping=tuple(sorted(mapping.items())),
        v12=v12,
        e12=e12,
        score=score,
        status=clique.status,
    )


def _as_labeled(g: Union[LabeledGraph, MolecularGraph, CycleGraph]) -> LabeledGraph:
    if isinstance(g, LabeledGraph):
        return g
    if isinstance(g, MolecularGraph):
        return LabeledGraph.from_molecular_graph(g)
    if isinstance(g, CycleGraph):
        return LabeledGraph.from_cycle_graph(g)
    raise TypeError(f"Cannot compare objects of type {type(g).__name__}")


def similarity(
    g1: Union[LabeledGraph, MolecularGraph, CycleGraph],
    g2: Union[LabeledGraph, MolecularGraph, CycleGraph],
    c: PiConstraint,
    budget_s: float,
) -> McesResult:
    """Compute the common subgraph similarity of two graphs.

    Parameters
    ----------
    g1, g2
        Labeled graphs, molecular graphs or graphs of cycles.
    c
        The compatibility rules. Its mode must suit the kind of graphs.
    budget_s
        Time budget of the clique search, in seconds.

    Returns
    -------
    McesResult
        The common subgraph, in terms of `g1` and `g2`, and its score. The
        score is 0 when either graph has no vertex. Exchanging `g1` and `g2`
        gives the same score.

    Raises
    ------
    ValueError
        If `budget_s` is not positive.
    """
    if not budget_s > 0:
        raise ValueError(f"The time budget must be positive, got {budget_s}")
    lg1, lg2 = _as_labeled(g1), _as_labeled(g2)

    if lg1.size == 0 or lg2.size == 0:
        return McesResult(
            matched_edges=(),
            vertex_mapping=(),
            v12=0,
            e12=0,
            score=0.0,
            status=SearchStatus.EXACT,
        )

    start = time.perf_counter()
    swap = lg2.canonical_key() < lg1.canonical_key()
    if swap:
        result = _similarity(lg2, lg1, c, budget_s).swapped()
    else:
        result = _similarity(lg1, lg2, c, budget_s)

    logger.debug(
        f"{lg1.name!r} vs {lg2.name!r} ({c.mode.value}): v12={result.v12}, "
        f"e12={result.e12}, score={result.score:.4f}, {result.status.value}, "
        f"{time.perf_counter() - start:.3f} s"
    )
    return result

