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
"""Graph of cycles of a molecule.

Vertices are the cycles of a generator, labeled by their length ``mu``.
Two cycles of the same 2-connected component sharing at least one atom are
joined by a type-1 edge (``nu = 1``) whose ``theta`` is the number of
shared bonds. Two cycles of different components are joined by a type-2
edge (``nu = 2``) when a path made only of bonds lying on no generator
cycle links them; ``theta`` is then the length of the shortest such path.
"""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Any, Tuple

import networkx as nx
from mashumaro.exceptions import InvalidFieldValue, MissingField
from mashumaro.mixins.json import DataClassJSONMixin

from cyclograph.cycles.cyclespace import popcount, touched_atoms
from cyclograph.cycles.generator import DEFAULT_J, Generator, build_generator
from cyclograph.cycles.graphcore import path_lengths
from cyclograph.molecule.graph import MolecularGraph, SchemaViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleVertex(DataClassJSONMixin):
    """A generator cycle seen as a vertex of the graph of cycles."""

    mu: int
    component: int = 0
    bonds: Tuple[int, ...] = ()


@dataclass(frozen=True)
class CycleEdge(DataClassJSONMixin):
    """An edge of the graph of cycles, with ``u < v``."""

    u: int
    v: int
    nu: int
    theta: int

    def __post_init__(self) -> None:
        """Validate the labels."""
        if not 0 <= self.u < self.v:
            raise ValueError(f"Edge endpoints must satisfy 0 <= u < v, got {self}")
        if self.nu not in {1, 2}:
            raise ValueError(f"Edge type must be 1 or 2, got {self.nu}")
        if self.theta < 0:
            raise ValueError(f"Edge label must be non-negative, got {self.theta}")


@dataclass(frozen=True)
class CycleGraph(DataClassJSONMixin):
    """Graph of cycles of a molecule induced by a generator."""

    molecule: str
    j: int
    vertices: Tuple[CycleVertex, ...]
    edges: Tuple[CycleEdge, ...]

    def __post_init__(self) -> None:
        """Check that edges reference existing vertices, at most once."""
        pairs = set()
        for edge in self.edges:
            if edge.v >= len(self.vertices):
                raise ValueError(f"Edge {edge} references a missing vertex")
            if (edge.u, edge.v) in pairs:
                raise ValueError(f"Duplicate edge between {edge.u} and {edge.v}")
            pairs.add((edge.u, edge.v))

    @property
    def n_vertices(self) -> int:
        """Number of cycles."""
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def mu(self) -> list[int]:
        """Cycle lengths in vertex order."""
        return [vertex.mu for vertex in self.vertices]

    def to_networkx(self) -> nx.Graph:
        """Convert to a `networkx.Graph` with ``mu``, ``nu`` and ``theta``."""
        graph = nx.Graph(name=self.molecule)
        for i, vertex in enumerate(self.vertices):
            graph.add_node(i, mu=vertex.mu, component=vertex.component)
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, nu=edge.nu, theta=edge.theta)
        return graph


def type1_edges(g: MolecularGraph, gen: Generator) -> list[CycleEdge]:
    """Join the cycles of a component that share at least one atom.

    Parameters
    ----------
    g
        The molecular graph.
    gen
        Its generator.

    Returns
    -------
    list[CycleEdge]
        Edges with ``nu = 1`` and ``theta`` the number of shared bonds,
        possibly 0 when the cycles only share atoms.
    """
    atoms = [touched_atoms(g, cycle.cycle) for cycle in gen.cycles]

    edges = []
    for u, v in itertools.combinations(range(len(gen.cycles)), 2):
        cu, cv = gen.cycles[u], gen.cycles[v]
        if cu.component_id != cv.component_id or not atoms[u] & atoms[v]:
            continue
        theta = popcount(cu.cycle.bits & cv.cycle.bits)
        edges.append(CycleEdge(u=u, v=v, nu=1, theta=theta))

    return edges


def type2_edges(g: MolecularGraph, gen: Generator) -> list[CycleEdge]:
    """Join the cycles of different components linked by a cycle-free path.

    Only bonds lying on no generator cycle may be used by the path, so a
    path of length 0 (a shared atom) is always acceptable.

    Parameters
    ----------
    g
        The molecular graph.
    gen
        Its generator.

    Returns
    -------
    list[CycleEdge]
        Edges with ``nu = 2`` and ``theta`` the length of the shortest such
        path.
    """
    covered = gen.covered_bonds
    free = nx.Graph()
    free.add_nodes_from(range(g.n_atoms))
    free.add_edges_from(
        bond.key for index, bond in enumerate(g.bonds) if not covered >> index & 1
    )
    atoms = [touched_atoms(g, cycle.cycle) for cycle in gen.cycles]

    edges = []
    for u in range(len(gen.cycles)):
        distances = path_lengths(free, sorted(atoms[u]))
        for v in range(u + 1, len(gen.cycles)):
            if gen.cycles[u].component_id == gen.cycles[v].component_id:
                continue
            reachable = [distances[atom] for atom in atoms[v] if atom in distances]
            if reachable:
                edges.append(CycleEdge(u=u, v=v, nu=2, theta=min(reachable)))

    return edges


def from_generator(g: MolecularGraph, gen: Generator) -> CycleGraph:
    """Assemble the graph of cycles of a molecule and one of its generators."""
    vertices = tuple(
        CycleVertex(
            mu=cycle.length,
            component=cycle.component_id,
            bonds=cycle.cycle.bond_indices(),
        )
        for cycle in gen.cycles
    )
    edges = sorted(type1_edges(g, gen) + type2_edges(g, gen), key=lambda e: (e.u, e.v))

    return CycleGraph(molecule=g.name, j=gen.j, vertices=vertices, edges=tuple(edges))


def build_cycle_graph(g: MolecularGraph, j: int = DEFAULT_J) -> CycleGraph:
    """Build the graph of cycles of a molecule.

    Parameters
    ----------
    g
        The molecular graph, hydrogen-suppressed.
    j
        Maximum cycle length, 0 for no bound.

    Returns
    -------
    CycleGraph
        Vertices in generator order (component, length, bond indices) and
        edges sorted by endpoints.
    """
    cg = from_generator(g, build_generator(g, j))
    logger.debug(
        f"Graph of cycles of {g.name!r} (j={j}): {cg.n_vertices} vertices, "
        f"{cg.n_edges} edges"
    )
    return cg


def kernel(cg: CycleGraph) -> CycleGraph:
    """Extract the largest connected part of the graph made of type-1 edges.

    This is the largest fused ring system of the molecule. Ties are broken
    in favour of the part containing the smallest vertex id.

    Parameters
    ----------
    cg
        The graph of cycles.

    Returns
    -------
    CycleGraph
        The induced subgraph on the kernel cycles with its type-1 edges only,
        vertices renumbered in their original order. Empty if `cg` is empty.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(cg.n_vertices))
    graph.add_edges_from((e.u, e.v) for e in cg.edges if e.nu == 1)

    parts = sorted(
        (sorted(part) for part in nx.connected_components(graph)),
        key=lambda part: (-len(part), part[0]),
    )
    kept = parts[0] if parts else []
    new_ids = {old: new for new, old in enumerate(kept)}

    return CycleGraph(
        molecule=cg.molecule,
        j=cg.j,
        vertices=tuple(cg.vertices[old] for old in kept),
        edges=tuple(
            CycleEdge(u=new_ids[e.u], v=new_ids[e.v], nu=1, theta=e.theta)
            for e in cg.edges
            if e.nu == 1 and e.u in new_ids and e.v in new_ids
        ),
    )


def to_dot(cg: CycleGraph) -> str:
    """Render the graph of cycles in the DOT language.

    Each 2-connected component becomes a cluster. Vertices are labeled by
    ``mu`` and edges by ``theta``; type-2 edges are dashed.
    """
    lines = [f'graph "{_escape(cg.molecule)}" {{', "  node [shape=circle];"]

    components = sorted({vertex.component for vertex in cg.vertices})
    for component in components:
        lines.append(f"  subgraph cluster_{component} {{")
        lines.append(f'    label="component {component}";')
        for i, vertex in enumerate(cg.vertices):
            if vertex.component == component:
                lines.append(f'    c{i} [label="μ={vertex.mu}"];')
        lines.append("  }")

    for edge in cg.edges:
        style = ", style=dashed" if edge.nu == 2 else ""
        lines.append(f'  c{edge.u} -- c{edge.v} [label="θ={edge.theta}"{style}];')
    lines.append("}")

    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_json(cg: CycleGraph) -> str:
    """Serialize a graph of cycles to JSON."""
    return cg.to_json()


def from_dict(raw: Any) -> CycleGraph:
    """Build a graph of cycles from its dictionary form.

    Raises
    ------
    SchemaViolation
        If `raw` is not an object with the expected fields or describes an
        invalid graph.
    """
    if not isinstance(raw, dict):
        raise SchemaViolation("The top level of a graph of cycles must be an object")

    try:
        return CycleGraph.from_dict(raw)
    except (MissingField, InvalidFieldValue, ValueError, TypeError) as exc:
        raise SchemaViolation(str(exc)) from exc


def from_json(text: str | bytes) -> CycleGraph:
    """Deserialize a graph of cycles from JSON.

    Parameters
    ----------
    text
        A JSON document ``{"molecule": ..., "j": ..., "vertices": [...],
        "edges": [...]}``. Vertices need only their ``mu``.

    Returns
    -------
    CycleGraph
        The graph of cycles.

    Raises
    ------
    SchemaViolation
        If the document is not valid JSON or does not describe a graph of
        cycles.
    """
    try:
        raw = json.loads(text)
    except ValueError as exc:
        raise SchemaViolation(f"Not a JSON document: {exc}") from exc

    return from_dict(raw)
