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
"""Structural reduction of molecular graphs.

The structural part of a molecule is what remains once the leaves are
pruned and the isthmuses (bridges) are removed. It splits into
2-connected components, the blocks of the bridgeless graph, which
partition the non-isthmus bonds. Each of them is also 2-edge-connected.
Two rings meeting at a single atom (spiro atom) land in two different
components sharing that atom.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, Optional

import networkx as nx

from cyclograph.molecule.graph import Bond, MolecularGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructuralGraph:
    """A subgraph of a molecular graph given by kept atoms and bonds.

    Ids and indices are those of `base`, so that cycle vectors computed on
    the structural graph are directly valid on the molecule.
    """

    base: MolecularGraph
    kept_atoms: FrozenSet[int]
    kept_bonds: FrozenSet[int]

    @classmethod
    def from_molecular_graph(cls, g: MolecularGraph) -> StructuralGraph:
        """Wrap a molecular graph without removing anything."""
        return cls(
            base=g,
            kept_atoms=frozenset(range(g.n_atoms)),
            kept_bonds=frozenset(range(g.n_bonds)),
        )

    @property
    def is_empty(self) -> bool:
        """Whether no bond is kept."""
        return not self.kept_bonds

    def to_networkx(self) -> nx.Graph:
        """Convert the kept part to a `networkx.Graph` with bond indices."""
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.kept_atoms))
        for index in sorted(self.kept_bonds):
            bond = self.base.bonds[index]
            graph.add_edge(bond.a, bond.b, index=index)
        return graph

    def without_bonds(self, bonds: AbstractSet[int]) -> StructuralGraph:
        """Drop bonds, then drop the atoms left without any kept bond."""
        kept_bonds = self.kept_bonds - bonds
        touched = {atom for i in kept_bonds for atom in self.base.bonds[i].key}
        return StructuralGraph(
            base=self.base,
            kept_atoms=frozenset(self.kept_atoms & touched),
            kept_bonds=frozenset(kept_bonds),
        )


@dataclass(frozen=True)
class BiconnectedComponent:
    """A block of bonds of the bridgeless structural graph."""

    component_id: int
    bond_indices: FrozenSet[int]
    atom_ids: FrozenSet[int]

    @property
    def cyclomatic_number(self) -> int:
        """Dimension of the cycle space of the component."""
        return len(self.bond_indices) - len(self.atom_ids) + 1


def _as_structural(g: MolecularGraph | StructuralGraph) -> StructuralGraph:
    if isinstance(g, StructuralGraph):
        return g
    return StructuralGraph.from_molecular_graph(g)


def prune_leaves(g: MolecularGraph | StructuralGraph) -> StructuralGraph:
    """Repeatedly delete atoms of degree lower than 2.

    Parameters
    ----------
    g
        A molecular graph or an already reduced structural graph.

    Returns
    -------
    StructuralGraph
        The 2-core of the graph, i.e. the largest subgraph in which every
        atom has at least two neighbours. It is empty for acyclic molecules.
    """
    sg = _as_structural(g)
    core = nx.k_core(sg.to_networkx(), k=2)

    return StructuralGraph(
        base=sg.base,
        kept_atoms=frozenset(core.nodes),
        kept_bonds=frozenset(index for _, _, index in core.edges(data="index")),
    )


def find_isthmuses(g: MolecularGraph | StructuralGraph) -> frozenset[int]:
    """Find the bonds lying on no cycle.

    Parameters
    ----------
    g
        A molecular graph or a structural graph.

    Returns
    -------
    frozenset[int]
        Indices of the bonds whose deletion increases the number of
        connected components.
    """
    sg = _as_structural(g)
    graph = sg.to_networkx()

    return frozenset(graph.edges[u, v]["index"] for u, v in nx.bridges(graph))


def structural_core(g: MolecularGraph) -> StructuralGraph:
    """Prune the leaves and remove the isthmuses of a molecular graph."""
    pruned = prune_leaves(g)
    return pruned.without_bonds(find_isthmuses(pruned))


def biconnected_components(g: StructuralGraph) -> list[BiconnectedComponent]:
    """Split the structural graph into 2-connected components.

    Isthmuses still present in `g` are discarded first, so the result does
    not depend on whether `g` went through `structural_core`.

    Parameters
    ----------
    g
        The structural graph.

    Returns
    -------
    list[BiconnectedComponent]
        The components, numbered by increasing smallest atom id, then by
        smallest bond index for blocks meeting at their smallest atom.
    """
    core = g.without_bonds(find_isthmuses(g))
    graph = core.to_networkx()

    blocks = []
    for edges in nx.biconnected_component_edges(graph):
        atoms = frozenset(atom for edge in edges for atom in edge)
        bonds = frozenset(graph.edges[u, v]["index"] for u, v in edges)
        blocks.append(((min(atoms), min(bonds)), atoms, bonds))

    blocks.sort(key=lambda block: block[0])
    components = [
        BiconnectedComponent(component_id=i, bond_indices=bonds, atom_ids=atoms)
        for i, (_, atoms, bonds) in enumerate(blocks)
    ]
    logger.debug(
        f"Molecule {g.base.name!r}: {len(components)} 2-connected components"
    )

    return components


def component_graph(g: MolecularGraph, component: BiconnectedComponent) -> nx.Graph:
    """Build the `networkx.Graph` of a component with bond indices on edges."""
    sg = StructuralGraph(
        base=g, kept_atoms=component.atom_ids, kept_bonds=component.bond_indices
    )
    return sg.to_networkx()


def path_lengths(graph: nx.Graph, sources: Iterable[int]) -> dict[int, int]:
    """Get the hop distance from the closest source to every reachable atom."""
    starts = [source for source in sources if source in graph]
    if not starts:
        return {}
    return dict(nx.multi_source_dijkstra_path_length(graph, starts))


def shortest_path_len(
    g: MolecularGraph,
    sources: AbstractSet[int],
    targets: AbstractSet[int],
    forbidden_bonds: AbstractSet[int] = frozenset(),
) -> Optional[int]:
    """Get the length of a shortest path between two sets of atoms.

    Parameters
    ----------
    g
        The molecular graph.
    sources
        Atom ids where the path may start.
    targets
        Atom ids where the path may end.
    forbidden_bonds
        Indices of the bonds the path may not use.

    Returns
    -------
    int or None
        The minimum number of bonds of such a path, 0 if the two sets
        intersect, or None if no path exists.

    Raises
    ------
    ValueError
        If `sources` or `targets` is empty.
    """
    if not sources or not targets:
        raise ValueError("Sources and targets must be non-empty")

    graph = nx.Graph()
    graph.add_nodes_from(range(g.n_atoms))
    graph.add_edges_from(
        bond.key for index, bond in enumerate(g.bonds) if index not in forbidden_bonds
    )
    distances = path_lengths(graph, sources)
    reachable = [distances[target] for target in targets if target in distances]

    return min(reachable) if reachable else None


def structural_molecular_graph(g: MolecularGraph) -> MolecularGraph:
    """Restrict a molecular graph to its structural part.

    Parameters
    ----------
    g
        The molecular graph.

    Returns
    -------
    MolecularGraph
        The graph made of the bonds lying on cycles and of their atoms,
        with ids and indices re-densified in their original order.
    """
    core = structural_core(g)
    new_ids = {old: new for new, old in enumerate(sorted(core.kept_atoms))}

    return MolecularGraph(
        name=g.name,
        atoms=tuple(g.atoms[old] for old in sorted(core.kept_atoms)),
        bonds=tuple(
            Bond(new_ids[bond.a], new_ids[bond.b], bond.order)
            for bond in (g.bonds[i] for i in sorted(core.kept_bonds))
        ),
    )


def cyclomatic_number(g: MolecularGraph) -> int:
    """Get the dimension of the cycle space, m - n + (connected components)."""
    if g.n_atoms == 0:
        return 0
    n_components = nx.number_connected_components(g.to_networkx())
    return g.n_bonds - g.n_atoms + n_components
