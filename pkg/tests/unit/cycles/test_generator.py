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

from collections import Counter

import numpy as np
import pytest

from cyclograph.cycles.cyclebasis import minimum_cycle_basis
from cyclograph.cycles.cyclespace import CycleVector, EliminationBasis, is_elementary
from cyclograph.cycles.generator import (
    DEFAULT_J,
    CycleOrigin,
    Generator,
    augment_basis,
    build_generator,
)
from cyclograph.cycles.graphcore import biconnected_components, prune_leaves

# Two bridgehead atoms 0 and 1 joined by three paths of two atoms
BICYCLO_222 = [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)]
# Two fused squares
LADDER = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]


def origins(gen: Generator) -> list[CycleOrigin]:
    return [cycle.origin for cycle in gen.cycles]


def signatures(gen: Generator) -> list[tuple[int, int]]:
    """Sorted pairs of cycle length and number of cycles in the component."""
    sizes = Counter(cycle.component_id for cycle in gen.cycles)
    return sorted((cycle.length, sizes[cycle.component_id]) for cycle in gen.cycles)


class TestAugmentBasis:
    def test_bicyclo_adds_third_ring(self, make_graph):
        g = make_graph(BICYCLO_222)
        (component,) = biconnected_components(prune_leaves(g))
        basis = minimum_cycle_basis(g, component)

        cycles = augment_basis(basis, g)

        assert [c.length for c in cycles] == [6, 6, 6]
        assert sorted(c.origin.value for c in cycles) == ["basis", "basis", "xor_pair"]
        assert len({c.cycle.bits for c in cycles}) == 3

    def test_ladder_keeps_basis(self, make_graph):
        g = make_graph(LADDER)
        (component,) = biconnected_components(prune_leaves(g))
        cycles = augment_basis(minimum_cycle_basis(g, component), g)

        # The perimeter is longer than both squares
        assert [c.length for c in cycles] == [4, 4]
        assert all(c.origin is CycleOrigin.BASIS for c in cycles)

    def test_added_cycles_are_elementary(self, load_molecule):
        g = load_molecule("vomicine")
        gen = build_generator(g, j=0)
        assert all(is_elementary(g, cycle.cycle) for cycle in gen.cycles)


class TestBuildGenerator:
    def test_default_j(self):
        assert DEFAULT_J == 9

    def test_acyclic(self, load_molecule):
        gen = build_generator(load_molecule("ethanol"))
        assert len(gen) == 0
        assert gen.covered_bonds == 0

    def test_benzene(self, load_molecule):
        gen = build_generator(load_molecule("benzene"))
        assert gen.lengths == [6]
        assert gen.covered_bonds == 0b111111

    def test_naphthalene(self, load_molecule):
        gen = build_generator(load_molecule("naphthalene"), j=0)
        assert gen.lengths == [6, 6]

    def test_quinine(self, load_molecule):
        gen = build_generator(load_molecule("quinine"), j=0)

        assert gen.lengths == [6, 6, 6, 6, 6]
        assert [cycle.component_id for cycle in gen.cycles] == [0, 0, 1, 1, 1]
        assert origins(gen).count(CycleOrigin.XOR_PAIR) == 1

    def test_strychnine_does_not_depend_on_j(self, load_molecule):
        g = load_molecule("strychnine")
        for j in (0, 7, 9):
            assert build_generator(g, j).lengths == [5, 5, 6, 6, 6, 6, 7]

    @pytest.mark.parametrize(
        "j, lengths",
        [
            (0, [5, 6, 6, 6, 7, 9, 9]),
            (9, [5, 6, 6, 6, 7, 9, 9]),
            (7, [5, 6, 6, 6, 7]),
        ],
    )
    def test_vomicine(self, load_molecule, j, lengths):
        gen = build_generator(load_molecule("vomicine"), j)
        assert gen.j == j
        assert gen.lengths == lengths

    def test_docetaxel(self, load_molecule):
        g = load_molecule("docetaxel")
        gen = build_generator(g, j=0)

        assert set(gen.lengths) <= {4, 6, 8}
        assert gen.lengths == [4, 6, 6, 8, 6, 6]
        assert len(build_generator(g, j=7)) == 5

    def test_order(self, load_molecule):
        gen = build_generator(load_molecule("manzamine_a"), j=0)
        keys = [cycle.sort_key() for cycle in gen.cycles]
        assert keys == sorted(keys)

    def test_negative_j(self, load_molecule):
        with pytest.raises(ValueError, match="non-negative"):
            build_generator(load_molecule("benzene"), j=-1)


    @pytest.mark.parametrize(
        "name", ["naphthalene", "quinine", "strychnine", "cholesterol"]
    )
    def test_relabeled_molecules(self, load_molecule, relabel, name):
        g = load_molecule(name)
        expected = signatures(build_generator(g, j=0))

        rng = np.random.default_rng(13)
        for _ in range(3):
            assert signatures(build_generator(relabel(g, rng), j=0)) == expected


class TestRestricted:
    def test_matches_build(self, load_molecule):
        g = load_molecule("manzamine_a")
        full = build_generator(g, j=0)
        for j in (5, 6, 7, 9, 12):
            assert full.restricted(j) == build_generator(g, j)

    def test_zero_keeps_everything(self, load_molecule):
        full = build_generator(load_molecule("amphotericin_b"), j=0)
        assert full.restricted(0).cycles == full.cycles
        assert full.restricted(7).lengths == [6, 6]

    def test_negative_j(self, load_molecule):
        with pytest.raises(ValueError):
            build_generator(load_molecule("benzene")).restricted(-2)


def test_short_cycles_are_spanned(make_graph, random_connected_graph, cycle_space):
    """Every cycle of length at most j is a sum of generator cycles up to j."""
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(3, 10))
        m = int(rng.integers(n, 14))
        g = make_graph(random_connected_graph(rng, n, m))
        full = build_generator(g, j=0)
        elements = [CycleVector(bits, g.n_bonds) for bits in cycle_space(g)]

        for j in range(3, max(full.lengths) + 1):
            basis = EliminationBasis(g.n_bonds)
            for cycle in full.restricted(j).cycles:
                basis.insert(cycle.cycle)
            assert all(basis.spans(c) for c in elements if c.length <= j)
