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
"""GF(2) arithmetic on cycle vectors.

A cycle vector is the incidence vector of a set of bonds over the bond
indices of a molecular graph. It is stored as a Python integer used as a
bit set: bit ``k`` is set when bond ``k`` belongs to the cycle. Addition
over GF(2) is then the bitwise XOR.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import networkx as nx

from cyclograph.molecule.graph import MolecularGraph


class DimensionMismatch(Exception):
    """Two cycle vectors (or a vector and a graph) use different bond sets."""


def popcount(bits: int) -> int:
    """Count the set bits of a non-negative integer."""
    return bin(bits).count("1")


def lowest_bit(bits: int) -> int:
    """Get the position of the lowest set bit of a positive integer."""
    return (bits & -bits).bit_length() - 1


@dataclass(frozen=True)
class CycleVector:
    """Incidence vector of a set of bonds.

    Parameters
    ----------
    bits
        Bit set of bond indices.
    width
        Number of bonds of the indexed bond set.
    """

    bits: int
    width: int

    def __post_init__(self) -> None:
        """Check that the bits fit in the width."""
        if self.width < 0 or self.bits < 0:
            raise ValueError("Width and bits must be non-negative")
        if self.bits >> self.width:
            raise ValueError(f"Bits {self.bits:b} exceed the width {self.width}")

    @classmethod
    def from_bonds(cls, bond_indices: Iterable[int], width: int) -> CycleVector:
        """Build a vector from bond indices. Repeated indices cancel out."""
        bits = 0
        for index in bond_indices:
            bits ^= 1 << index
        return cls(bits, width)

    @classmethod
    def zero(cls, width: int) -> CycleVector:
        """Get the zero vector."""
        return cls(0, width)

    @property
    def length(self) -> int:
        """Number of bonds in the vector."""
        return popcount(self.bits)

    def bond_indices(self) -> Tuple[int, ...]:
        """Get the bond indices in increasing order."""
        bits = self.bits
        indices = []
        while bits:
            low = bits & -bits
            indices.append(low.bit_length() - 1)
            bits ^= low
        return tuple(indices)

    def sort_key(self) -> tuple[int, Tuple[int, ...]]:
        """Key ordering vectors by length, then lexicographically on bonds."""
        return self.length, self.bond_indices()

    def __bool__(self) -> bool:
        """Whether the vector is non-zero."""
        return self.bits != 0

    def __xor__(self, other: CycleVector) -> CycleVector:
        """Add two vectors over GF(2)."""
        return xor(self, other)


def xor(c1: CycleVector, c2: CycleVector) -> CycleVector:
    """Add two cycle vectors over GF(2).

    Raises
    ------
    DimensionMismatch
        If the vectors do not have the same width.
    """
    if c1.width != c2.width:
        raise DimensionMismatch(
            f"Cannot add vectors of width {c1.width} and {c2.width}"
        )
    return CycleVector(c1.bits ^ c2.bits, c1.width)


def touched_atoms(g: MolecularGraph, c: CycleVector) -> frozenset[int]:
    """Get the atoms incident to the bonds of a vector."""
    _check_width(g, c)
    return frozenset(atom for i in c.bond_indices() for atom in g.bonds[i].key)


def is_elementary(g: MolecularGraph, c: CycleVector) -> bool:
    """Check whether a vector is a single elementary cycle of `g`.

    Parameters
    ----------
    g
        The molecular graph indexing the bonds.
    c
        The cycle vector.

    Returns
    -------
    bool
        True if the bonds of `c` form one connected cycle in which every
        touched atom has exactly two of these bonds. The zero vector is not
        elementary.
    """
    _check_width(g, c)
    if not c:
        return False

    graph = nx.Graph()
    graph.add_edges_from(g.bonds[i].key for i in c.bond_indices())
    if any(degree != 2 for _, degree in graph.degree):
        return False

    return nx.is_connected(graph)


def _check_width(g: MolecularGraph, c: CycleVector) -> None:
    if c.width != g.n_bonds:
        raise DimensionMismatch(
            f"Vector of width {c.width} on a graph with {g.n_bonds} bonds"
        )


class EliminationBasis:
    """Incremental Gaussian elimination over GF(2).

    Every row is stored under its pivot, the lowest bond index it contains,
    and no two rows share a pivot. Reducing a vector repeatedly cancels its
    lowest bond with the row having that pivot.

    Parameters
    ----------
    width
        Number of bonds of the indexed bond set.
    """

    def __init__(self, width: int) -> None:
        self.width = width
        self._rows: dict[int, int] = {}

    @property
    def rank(self) -> int:
        """Number of independent vectors inserted so far."""
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        """Pivot bond indices in increasing order."""
        return sorted(self._rows)

    @property
    def rows(self) -> list[CycleVector]:
        """Rows in increasing pivot order."""
        return [CycleVector(self._rows[p], self.width) for p in self.pivots]

    def reduce(self, c: CycleVector) -> tuple[CycleVector, bool]:
        """Reduce a vector against the rows.

        Returns
        -------
        residual : CycleVector
            What is left of `c` after elimination.
        independent : bool
            Whether `c` is outside of the span of the rows.

        Raises
        ------
        DimensionMismatch
            If the width of `c` differs from the width of the basis.
        """
        if c.width != self.width:
            raise DimensionMismatch(
                f"Vector of width {c.width} against a basis of width {self.width}"
            )

        residual = c.bits
        while residual:
            row = self._rows.get(lowest_bit(residual))
            if row is None:
                break
            residual ^= row

        return CycleVector(residual, self.width), residual != 0

    def insert(self, c: CycleVector) -> bool:
        """Insert a vector if it is independent of the rows.

        Returns
        -------
        bool
            Whether the vector was independent, and thus inserted.
        """
        residual, independent = self.reduce(c)
        if independent:
            self._rows[lowest_bit(residual.bits)] = residual.bits
        return independent

    def spans(self, c: CycleVector) -> bool:
        """Check whether a vector lies in the span of the rows."""
        return not self.reduce(c)[1]


def reduce(basis: EliminationBasis, c: CycleVector) -> tuple[CycleVector, bool]:
    """Reduce `c` against `basis`, see `EliminationBasis.reduce`."""
    return basis.reduce(c)
