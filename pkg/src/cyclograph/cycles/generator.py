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
"""Generator of cycles of a molecule.

The generator of a molecule gathers, for every 2-connected component,
its minimum cycle basis together with the elementary cycles obtained by
adding two basis cycles whenever the sum is as long as the longer of the
two. Cycles longer than ``j`` are finally dropped (``j = 0`` keeps all).
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

from cyclograph.cycles.cyclebasis import MinimumCycleBasis, minimum_cycle_basis
from cyclograph.cycles.cyclespace import CycleVector, is_elementary
from cyclograph.cycles.graphcore import biconnected_components, prune_leaves
from cyclograph.molecule.graph import MolecularGraph

logger = logging.getLogger(__name__)

DEFAULT_J = 9


class CycleOrigin(enum.Enum):
    """How a generator cycle was obtained."""

    BASIS = "basis"
    XOR_PAIR = "xor_pair"


@dataclass(frozen=True)
class GeneratorCycle:
    """An elementary cycle of the generator."""

    cycle: CycleVector
    component_id: int
    origin: CycleOrigin = CycleOrigin.BASIS

    @property
    def length(self) -> int:
        """Number of bonds of the cycle."""
        return self.cycle.length

    def sort_key(self) -> tuple[int, int, Tuple[int, ...]]:
        """Order by component, then length, then bond indices."""
        return (self.component_id, self.length, self.cycle.bond_indices())


@dataclass(frozen=True)
class Generator:
    """Cycles of a molecule with length at most `j` (no bound if ``j = 0``)."""

    j: int
    cycles: Tuple[GeneratorCycle, ...]

    def __len__(self) -> int:
        """Get the number of cycles."""
        return len(self.cycles)

    def __iter__(self) -> Iterator[GeneratorCycle]:
        """Iterate over the cycles."""
        return iter(self.cycles)

    @property
    def lengths(self) -> list[int]:
        """Cycle lengths in generator order."""
        return [cycle.length for cycle in self.cycles]

    @property
    def covered_bonds(self) -> int:
        """Bit set of the bonds lying on at least one generator cycle."""
        bits = 0
        for cycle in self.cycles:
            bits |= cycle.cycle.bits
        return bits

    def restricted(self, j: int) -> Generator:
        """Keep the cycles of length at most `j`, all of them if ``j = 0``."""
        if j < 0:
            raise ValueError(f"j must be non-negative, got {j}")
        if j == 0:
            return Generator(j=self.j, cycles=self.cycles)
        return Generator(
            j=j, cycles=tuple(cycle for cycle in self.cycles if cycle.length <= j)
        )


def augment_basis(
    basis: MinimumCycleBasis, g: MolecularGraph
) -> list[GeneratorCycle]:
    """Add to a basis the sums of pairs of basis cycles.

    The sum ``c = ca + cb`` of two cycles of the original basis is added when
    it is elementary, new, and ``|c| = max(|ca|, |cb|)``. Cycles added during
    the pass are not combined again.

    Parameters
    ----------
    basis
        Minimum cycle basis of one component of `g`.
    g
        The molecular graph.

    Returns
    -------
    list[GeneratorCycle]
        Basis cycles and added cycles, sorted by length then bond indices.
    """
    cycles = [
        GeneratorCycle(cycle, basis.component_id, CycleOrigin.BASIS)
        for cycle in basis.cycles
    ]
    seen = {cycle.bits for cycle in basis.cycles}

    added = []
    for ca, cb in itertools.combinations(basis.cycles, 2):
        c = ca ^ cb
        if c.bits in seen or c.length != max(ca.length, cb.length):
            continue
        if not is_elementary(g, c):
            continue
        seen.add(c.bits)
        added.append(GeneratorCycle(c, basis.component_id, CycleOrigin.XOR_PAIR))

    if added:
        logger.debug(
            f"Component {basis.component_id} of {g.name!r}: added "
            f"{len(added)} cycles of lengths {[c.length for c in added]}"
        )

    return sorted(cycles + added, key=GeneratorCycle.sort_key)


def build_generator(g: MolecularGraph, j: int = DEFAULT_J) -> Generator:
    """Build the generator of cycles of a molecule.

    Parameters
    ----------
    g
        The molecular graph, hydrogen-suppressed.
    j
        Maximum cycle length. With ``j = 0`` no cycle is filtered out.

    Returns
    -------
    Generator
        The cycles ordered by component, length and bond indices.

    Raises
    ------
    ValueError
        If `j` is negative.
    """
    if j < 0:
        raise ValueError(f"j must be non-negative, got {j}")

    cycles: list[GeneratorCycle] = []
    for component in biconnected_components(prune_leaves(g)):
        basis = minimum_cycle_basis(g, component)
        cycles.extend(augment_basis(basis, g))

    if j > 0:
        cycles = [cycle for cycle in cycles if cycle.length <= j]
    logger.debug(
        f"Generator of {g.name!r} (j={j}): lengths {[c.length for c in cycles]}"
    )

    return Generator(j=j, cycles=tuple(cycles))
