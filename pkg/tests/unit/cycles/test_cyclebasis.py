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

import networkx as nx
import numpy as np
import pytest

from cyclograph.cycles.cyclebasis import (
    NotBiconnected,
    all_pairs_shortest_paths,
    horton_candidates,
    minimum_cycle_basis,
)
from cyclograph.cycles.cyclespace import CycleVector, EliminationBasis, is_elementary
from cyclograph.cycles.graphcore import (
    BiconnectedComponent,
    biconnected_components,
    cyclomatic_number,
    prune_leaves,
    structural_core,
)


def minimum_weight(g, elements: list[int]) -> int:
    """Greedy minimum weight basis over the whole cycle space."""
    basis = EliminationBasis(g.n_bonds)
    weight = 0
    for bits in sorted(elements, key=lambda b: (bin(b).count("1"), b)):
        if basis.insert(CycleVector(bits, g.n_bonds)):
            weight += bin(bits).count("1")
    return weight


def bases(g):
    return [
        minimum_cycle_basis(g, component)
        for component in biconnected_components(prune_leaves(g))
    ]


def basis_lengths(g) -> list[int]:
    return sorted(length for basis in bases(g) for length in basis.lengths)


class TestShortestPaths:
    def test_lengths_match_networkx(self, load_molecule):
        g = load_molecule("cholesterol")
        (component,) = biconnected_components(structural_core(g))
        table = all_pairs_shortest_paths(g, component)

        graph = g.to_networkx().subgraph(component.atom_ids)
        expected = dict(nx.all_pairs_shortest_path_length(graph))
        for v, paths in table.items():
            assert {x: p.length for x, p in paths.items()} == expected[v]

    def test_paths_are_walks(self, make_graph):
        g = make_graph([(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
        (component,) = biconnected_components(prune_leaves(g))
        for v, paths in all_pairs_shortest_paths(g, component).items():
            for x, path in paths.items():
                assert path.atoms[0] == v
                assert path.atoms[-1] == x
                for (a, b), index in zip(zip(path.atoms, path.atoms[1:]), path.bonds):
                    assert g.bonds[index].key == (min(a, b), max(a, b))


class TestHortonCandidates:
    def test_candidates_are_elementary(self, load_molecule):
        g = load_molecule("strychnine")
        (component,) = biconnected_components(structural_core(g))
        candidates = horton_candidates(g, component)

        assert candidates
        assert all(is_elementary(g, c.cycle) for c in candidates)

    def test_square_with_diagonal(self, make_graph):
        g = make_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        (component,) = biconnected_components(prune_leaves(g))
        lengths = {c.cycle.length for c in horton_candidates(g, component)}
        assert lengths <= {3, 4}
        assert 3 in lengths


class TestMinimumCycleBasis:
    @pytest.mark.parametrize(
        "edges, lengths",
        [
            ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], [6]),
            ([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], [3, 3, 3]),
            ([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], [3, 3]),
        ],
    )
    def test_small_graphs(self, make_graph, edges, lengths):
        (basis,) = bases(make_graph(edges))
        assert basis.lengths == lengths
        assert basis.total_weight == sum(lengths)

    def test_naphthalene(self, load_molecule):
        (basis,) = bases(load_molecule("naphthalene"))
        assert basis.lengths == [6, 6]

    def test_cycles_are_sorted(self, load_molecule):
        (basis,) = bases(load_molecule("strychnine"))
        keys = [cycle.sort_key() for cycle in basis.cycles]
        assert keys == sorted(keys)
        assert basis.lengths == [5, 5, 6, 6, 6, 6, 7]

    def test_amphotericin_b(self, load_molecule):
        all_bases = bases(load_molecule("amphotericin_b"))
        lengths = sorted(length for basis in all_bases for length in basis.lengths)
        assert lengths == [6, 6, 36]

    def test_not_biconnected(self, make_graph):
        g = make_graph([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
        component = BiconnectedComponent(
            component_id=0,
            bond_indices=frozenset(range(g.n_bonds)),
            atom_ids=frozenset(range(g.n_atoms)),
        )
        with pytest.raises(NotBiconnected):
            minimum_cycle_basis(g, component)

    def test_empty_component(self, make_graph):
        g = make_graph([(0, 1)])
        component = BiconnectedComponent(0, frozenset(), frozenset())
        with pytest.raises(NotBiconnected):
            minimum_cycle_basis(g, component)

    def test_random_graphs(self, make_graph, random_connected_graph, cycle_space):
        rng = np.random.default_rng(2022)
        for _ in range(200):
            n = int(rng.integers(3, 11))
            m = int(rng.integers(n, 15))
            g = make_graph(random_connected_graph(rng, n, m))

            all_bases = bases(g)
            cycles = [cycle for basis in all_bases for cycle in basis.cycles]

            assert len(cycles) == cyclomatic_number(g) == g.n_bonds - g.n_atoms + 1
            assert sum(b.total_weight for b in all_bases) == minimum_weight(
                g, cycle_space(g)
            )
            assert all(is_elementary(g, cycle) for cycle in cycles)

            independence = EliminationBasis(g.n_bonds)
            assert all(independence.insert(cycle) for cycle in cycles)

    @pytest.mark.parametrize(
        "name", ["quinine", "strychnine", "docetaxel", "manzamine_a", "brevetoxin_a"]
    )
    def test_relabeled_molecules(self, load_molecule, relabel, name):
        g = load_molecule(name)
        lengths = basis_lengths(g)

        rng = np.random.default_rng(5)
        for _ in range(3):
            copy = relabel(g, rng)
            assert basis_lengths(copy) == lengths

    def test_relabeled_random_graphs(self, make_graph, random_connected_graph, relabel):
        rng = np.random.default_rng(8)
        for _ in range(100):
            n = int(rng.integers(3, 11))
            m = int(rng.integers(n, 15))
            g = make_graph(random_connected_graph(rng, n, m))
            copy = relabel(g, rng)

            assert basis_lengths(copy) == basis_lengths(g)
