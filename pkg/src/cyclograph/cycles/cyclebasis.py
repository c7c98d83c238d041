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
"""Horton's minimum cycle basis of a 2-connected component."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import networkx as nx

from cyclograph.cycles.cyclespace import CycleVector, EliminationBasis
from cyclograph.cycles.graphcore import BiconnectedComponent, component_graph
from cyclograph.molecule.graph import MolecularGraph

logger = logging.getLogger(__name__)


class NotBiconnected(Exception):
    """The input of the basis computation is not 2-edge-connected."""


@dataclass(frozen=True)
class ShortestPath:
    """A shortest path from a source atom, listed from the source."""

    atoms: Tuple[int, ...]
    bonds: Tuple[int, ...]

    @property
    def length(self) -> int:
        """Number of bonds."""
        return len(self.bonds)


PathTable = Dict[int, Dict[int, ShortestPath]]


@dataclass(frozen=True)
class HortonCandidate:
    """The cycle made of P(v, x), P(v, y) and the bond [x, y]."""

    via_vertex: int
    via_bond: int
    cycle: CycleVector


@dataclass(frozen=True)
class MinimumCycleBasis:
    """Minimum cycle basis of one component."""

    component_id: int
    cycles: Tuple[CycleVector, ...]

    @property
    def total_weight(self) -> int:
        """Sum of the cycle lengths."""
        return sum(cycle.length for cycle in self.cycles)

    @property
    def lengths(self) -> list[int]:
        """Cycle lengths in basis order."""
        return [cycle.length for cycle in self.cycles]


def _bfs_paths(graph: nx.Graph, source: int) -> dict[int, ShortestPath]:
    """Breadth-first shortest paths, exploring neighbours by increasing id."""
    parents = dict(nx.bfs_predecessors(graph, source, sort_neighbors=sorted))

    paths = {source: ShortestPath(atoms=(source,), bonds=())}
    # BFS order guarantees the parent path is already known
    for atom, parent in parents.items():
        parent_path = paths[parent]
        paths[atom] = ShortestPath(
            atoms=parent_path.atoms + (atom,),
            bonds=parent_path.bonds + (graph.edges[parent, atom]["index"],),
        )
    return paths


def all_pairs_shortest_paths(
    g: MolecularGraph, component: BiconnectedComponent
) -> PathTable:
    """Compute one shortest path between every ordered pair of atoms.

    Parameters
    ----------
    g
        The molecular graph.
    component
        The component whose atoms and bonds are used.

    Returns
    -------
    PathTable
        ``table[v][x]`` is the path from `v` to `x`. Ties are broken by the
        breadth-first search exploring neighbours by increasing atom id.
    """
    graph = component_graph(g, component)
    return {source: _bfs_paths(graph, source) for source in sorted(graph.nodes)}


def horton_candidates(
    g: MolecularGraph,
    component: BiconnectedComponent,
    paths: Optional[PathTable] = None,
) -> list[HortonCandidate]:
    """Generate the candidate cycles of Horton's algorithm.

    For every atom ``v`` and bond ``[x, y]`` of the component, the cycle
    ``P(v, x) + P(v, y) + [x, y]`` is a candidate when the two paths only
    meet at ``v`` and neither of them runs through ``[x, y]``.

    Parameters
    ----------
    g
        The molecular graph.
    component
        The component.
    paths
        Precomputed shortest paths of the component.

    Returns
    -------
    list[HortonCandidate]
        The candidates, all elementary cycles, by increasing ``v`` and bond
        index. The same cycle may appear several times.
    """
    if paths is None:
        paths = all_pairs_shortest_paths(g, component)

    candidates = []
    bond_indices = sorted(component.bond_indices)
    for v in sorted(paths):
        from_v = paths[v]
        for index in bond_indices:
            x, y = g.bonds[index].key
            path_x, path_y = from_v[x], from_v[y]
            if set(path_x.atoms) & set(path_y.atoms) != {v}:
                continue
            if index in path_x.bonds or index in path_y.bonds:
                continue
            cycle = CycleVector.from_bonds(
                path_x.bonds + path_y.bonds + (index,), g.n_bonds
            )
            candidates.append(HortonCandidate(v, index, cycle))

    return candidates


def minimum_cycle_basis(
    g: MolecularGraph, component: BiconnectedComponent
) -> MinimumCycleBasis:
    """Compute a minimum cycle basis of a component with Horton's algorithm.

    The candidates are deduplicated, sorted by length and then
    lexicographically on their bond indices, and greedily kept when
    independent of the cycles already kept.

    Parameters
    ----------
    g
        The molecular graph.
    component
        A 2-edge-connected component of `g`.

    Returns
    -------
    MinimumCycleBasis
        ``m - n + 1`` independent cycles of minimum total length, sorted.

    Raises
    ------
    NotBiconnected
        If the component is disconnected or contains an isthmus.
    """
    graph = component_graph(g, component)
    if (
        graph.number_of_edges() == 0
        or not nx.is_connected(graph)
        or nx.has_bridges(graph)
    ):
        raise NotBiconnected(
            f"Component {component.component_id} of {g.name!r} is not "
            "2-edge-connected"
        )

    unique = {c.cycle.bits: c.cycle for c in horton_candidates(g, component)}
    ordered = sorted(unique.values(), key=CycleVector.sort_key)

    dimension = component.cyclomatic_number
    elimination = EliminationBasis(g.n_bonds)
    cycles = []
    for cycle in ordered:
        if elimination.insert(cycle):
            cycles.append(cycle)
            if len(cycles) == dimension:
                break

    if len(cycles) != dimension:
        raise RuntimeError(
            f"Found {len(cycles)} independent cycles, expected {dimension}"
        )
    logger.debug(
        f"Component {component.component_id} of {g.name!r}: {len(unique)} "
        f"candidates, basis lengths {[c.length for c in cycles]}"
    )

    return MinimumCycleBasis(component_id=component.component_id, cycles=tuple(cycles))
