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
from __future__ import annotations

import itertools
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx
import numpy as np
import pytest

from cyclograph.molecule.graph import Atom, Bond, BondOrder, MolecularGraph
from cyclograph.molecule.molfile import read_molecules


def _make_graph(
    edges: Iterable[Sequence[int]],
    elements: Optional[Sequence[str]] = None,
    name: str = "graph",
    orders: Optional[Sequence[BondOrder]] = None,
) -> MolecularGraph:
    """Build a molecular graph from a list of edges, carbon by default."""
    edges = [tuple(edge) for edge in edges]
    if elements is None:
        n = 1 + max((max(edge) for edge in edges), default=-1)
        elements = ["C"] * n
    if orders is None:
        orders = [BondOrder.SINGLE] * len(edges)

    return MolecularGraph(
        name=name,
        atoms=tuple(Atom(element) for element in elements),
        bonds=tuple(Bond(a, b, order) for (a, b), order in zip(edges, orders)),
    )


def _random_connected_graph(
    rng: np.random.Generator, n: int, m: int
) -> list[tuple[int, int]]:
    """Draw a random spanning tree on `n` vertices plus extra edges, m in total."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))

    candidates = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    n_extra = max(0, min(m - len(edges), len(candidates)))
    for i in rng.choice(len(candidates), size=n_extra, replace=False):
        edges.add(candidates[int(i)])

    return sorted(edges)


def _cycle_space(g: MolecularGraph) -> list[int]:
    """List all non-zero elements of the cycle space as bit sets of bonds."""
    index = {bond.key: i for i, bond in enumerate(g.bonds)}
    fundamental = []
    for nodes in nx.cycle_basis(g.to_networkx()):
        bits = 0
        for u, v in zip(nodes, nodes[1:] + nodes[:1]):
            bits |= 1 << index[(min(u, v), max(u, v))]
        fundamental.append(bits)

    elements = set()
    for size in range(1, len(fundamental) + 1):
        for subset in itertools.combinations(fundamental, size):
            bits = 0
            for cycle in subset:
                bits ^= cycle
            elements.add(bits)
    return sorted(elements)


def _relabel(g: MolecularGraph, rng: np.random.Generator) -> MolecularGraph:
    """Permute the atom ids and the bond order of a graph, flipping some bonds."""
    perm = [int(i) for i in rng.permutation(g.n_atoms)]
    atoms = [g.atoms[0]] * g.n_atoms
    for old, new in enumerate(perm):
        atoms[new] = g.atoms[old]

    bonds = []
    for index in rng.permutation(g.n_bonds):
        bond = g.bonds[int(index)]
        a, b = perm[bond.a], perm[bond.b]
        if rng.random() < 0.5:
            a, b = b, a
        bonds.append(Bond(a, b, bond.order))

    return MolecularGraph(name=g.name, atoms=tuple(atoms), bonds=tuple(bonds))


@pytest.fixture(scope="session")
def molecules_dir() -> Path:
    return Path(__file__).parent / "data" / "molecules"


@pytest.fixture(scope="session")
def corpus_path(molecules_dir) -> Path:
    return molecules_dir / "corpus.sdf"


@pytest.fixture(scope="session")
def load_molecule(molecules_dir) -> Callable[[str], MolecularGraph]:
    """Read a hydrogen-suppressed fixture molecule by file stem."""

    def _load(name: str) -> MolecularGraph:
        (record,) = read_molecules(molecules_dir / f"{name}.mol")
        assert record.graph is not None, record.error
        return record.graph

    return _load


@pytest.fixture(scope="session")
def make_graph():
    """Build a molecular graph from edges, see `_make_graph`."""
    return _make_graph


@pytest.fixture(scope="session")
def random_connected_graph():
    """Draw random connected edge lists, see `_random_connected_graph`."""
    return _random_connected_graph


@pytest.fixture(scope="session")
def cycle_space():
    """Enumerate a cycle space, see `_cycle_space`."""
    return _cycle_space


@pytest.fixture(scope="session")
def relabel():
    """Draw isomorphic copies of a graph, see `_relabel`."""
    return _relabel
