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
"""Implementation of the molecular graph data structure."""
from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

import networkx as nx
from mashumaro.exceptions import InvalidFieldValue, MissingField
from mashumaro.mixins.json import DataClassJSONMixin

logger = logging.getLogger(__name__)

ELEMENT_SYMBOLS = frozenset(
    """
    H He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe Co Ni
    Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb Te I Xe
    Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf Ta W Re Os Ir Pt Au
    Hg Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es Fm Md No Lr Rf
    Db Sg Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og
    """.split()
)


class SchemaViolation(Exception):
    """A JSON document does not follow the molecular graph schema."""


class BondOrder(enum.Enum):
    """Covalent bond label."""

    SINGLE = "single"
    DOUBLE = "double"
    TRIPLE = "triple"
    AROMATIC = "aromatic"

    @classmethod
    def from_code(cls, code: int) -> BondOrder:
        """Get the bond order of an MDL bond type code.

        Parameters
        ----------
        code
            The bond type column of a V2000 bond line (1, 2, 3 or 4).

        Returns
        -------
        BondOrder
            The corresponding bond order.

        Raises
        ------
        ValueError
            If the code is not one of the four plain bond types.
        """
        try:
            return _CODE_TO_ORDER[code]
        except KeyError:
            raise ValueError(f"Unsupported bond type code {code}") from None

    @property
    def code(self) -> int:
        """MDL bond type code of this order."""
        return _ORDER_TO_CODE[self]


_CODE_TO_ORDER = {
    1: BondOrder.SINGLE,
    2: BondOrder.DOUBLE,
    3: BondOrder.TRIPLE,
    4: BondOrder.AROMATIC,
}
_ORDER_TO_CODE = {order: code for code, order in _CODE_TO_ORDER.items()}


@dataclass(frozen=True)
class Atom(DataClassJSONMixin):
    """A heavy (or hydrogen) atom, identified by its position in the graph."""

    element: str

    def __post_init__(self) -> None:
        """Validate the element symbol."""
        if not isinstance(self.element, str):
            raise TypeError(f"Element must be a string, got {self.element!r}")
        if self.element not in ELEMENT_SYMBOLS:
            raise ValueError(f"Unknown element symbol {self.element!r}")


@dataclass(frozen=True)
class Bond(DataClassJSONMixin):
    """An undirected bond between atoms `a` and `b`."""

    a: int
    b: int
    order: BondOrder = BondOrder.SINGLE

    def __post_init__(self) -> None:
        """Validate the endpoints."""
        for atom_id in (self.a, self.b):
            if not isinstance(atom_id, int) or isinstance(atom_id, bool):
                raise TypeError(f"Atom ids must be integers, got {atom_id!r}")
        if not isinstance(self.order, BondOrder):
            raise TypeError(f"Bond order must be a BondOrder, got {self.order!r}")
        if self.a < 0 or self.b < 0:
            raise ValueError(f"Negative atom id in bond ({self.a}, {self.b})")
        if self.a == self.b:
            raise ValueError(f"Self-loop on atom {self.a}")

    @property
    def key(self) -> Tuple[int, int]:
        """Unordered pair of endpoints as a sorted tuple."""
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)

    def other(self, atom_id: int) -> int:
        """Get the endpoint opposite to `atom_id`."""
        if atom_id == self.a:
            return self.b
        if atom_id == self.b:
            return self.a
        raise ValueError(f"Atom {atom_id} is not an endpoint of {self.key}")


@dataclass(frozen=True)
class MolecularGraph(DataClassJSONMixin):
    """Simple undirected labeled graph of a molecule.

    Atom ids and bond indices are implicit: they are the positions in
    `atoms` and `bonds`. Bond indices are the coordinates of cycle vectors,
    so the order of `bonds` is part of the identity of the graph.
    """

    name: str
    atoms: Tuple[Atom, ...]
    bonds: Tuple[Bond, ...]

    def __post_init__(self) -> None:
        """Check that the bonds describe a simple graph on the atoms."""
        if not isinstance(self.name, str):
            raise TypeError(f"Molecule name must be a string, got {self.name!r}")
        n = len(self.atoms)
        seen = set()
        for index, bond in enumerate(self.bonds):
            if bond.a >= n or bond.b >= n:
                raise ValueError(
                    f"Bond {index} references atom {max(bond.a, bond.b)} "
                    f"but the graph has {n} atoms"
                )
            if bond.key in seen:
                raise ValueError(f"Duplicate bond between atoms {bond.key}")
            seen.add(bond.key)

    @property
    def n_atoms(self) -> int:
        """Number of atoms."""
        return len(self.atoms)

    @property
    def n_bonds(self) -> int:
        """Number of bonds."""
        return len(self.bonds)

    def elements(self) -> Iterator[str]:
        """Iterate over the element symbols in atom id order."""
        return (atom.element for atom in self.atoms)

    def to_networkx(self) -> nx.Graph:
        """Convert to a `networkx.Graph`.

        Nodes are atom ids with an ``element`` attribute, edges carry the
        bond ``index`` and ``order``.
        """
        graph = nx.Graph(name=self.name)
        for atom_id, atom in enumerate(self.atoms):
            graph.add_node(atom_id, element=atom.element)
        for index, bond in enumerate(self.bonds):
            graph.add_edge(bond.a, bond.b, index=index, order=bond.order)
        return graph


def suppress_hydrogens(g: MolecularGraph) -> MolecularGraph:
    """Remove the hydrogen atoms and their bonds.

    Parameters
    ----------
    g
        Molecular graph, possibly with explicit hydrogens.

    Returns
    -------
    MolecularGraph
        The hydrogen-free graph. Atom ids and bond indices are re-densified
        while keeping their relative order.
    """
    new_ids = {}
    atoms = []
    for atom_id, atom in enumerate(g.atoms):
        if atom.element != "H":
            new_ids[atom_id] = len(atoms)
            atoms.append(atom)

    if len(atoms) == g.n_atoms:
        return g

    bonds = tuple(
        Bond(new_ids[bond.a], new_ids[bond.b], bond.order)
        for bond in g.bonds
        if bond.a in new_ids and bond.b in new_ids
    )
    logger.debug(
        f"Suppressed {g.n_atoms - len(atoms)} hydrogens from molecule {g.name!r}"
    )

    return MolecularGraph(name=g.name, atoms=tuple(atoms), bonds=bonds)


def to_json(g: MolecularGraph) -> str:
    """Serialize a molecular graph to the JSON graph format."""
    return g.to_json()


def from_json(text: str | bytes) -> MolecularGraph:
    """Deserialize a molecular graph from the JSON graph format.

    Parameters
    ----------
    text
        A JSON document ``{"name": ..., "atoms": [...], "bonds": [...]}``.

    Returns
    -------
    MolecularGraph
        The molecular graph.

    Raises
    ------
    SchemaViolation
        If the document is not valid JSON, misses a field, or describes
        something which is not a simple labeled graph.
    """
    try:
        raw = json.loads(text)
    except ValueError as exc:
        raise SchemaViolation(f"Not a JSON document: {exc}") from exc

    if not isinstance(raw, dict):
        raise SchemaViolation("The top level of a molecular graph must be an object")

    try:
        return MolecularGraph.from_dict(raw)
    except (MissingField, InvalidFieldValue, ValueError, TypeError) as exc:
        raise SchemaViolation(str(exc)) from exc
