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
"""Readers and writers for MDL molfiles (V2000) and SD files."""
from __future__ import annotations

import logging
import pathlib
from dataclasses import dataclass
from typing import Iterator, Optional

from cyclograph.molecule.graph import (
    Atom,
    Bond,
    BondOrder,
    MolecularGraph,
    SchemaViolation,
    from_json,
    suppress_hydrogens,
)

logger = logging.getLogger(__name__)

RECORD_SEPARATOR = "$$$$"


class MalformedRecord(Exception):
    """A molfile record cannot be parsed.

    Parameters
    ----------
    message
        Description of the problem.
    record_index
        Zero-based position of the record in its SD file, if known.
    """

    def __init__(self, message: str, record_index: int | None = None) -> None:
        self.message = message
        self.record_index = record_index
        if record_index is not None:
            message = f"record {record_index + 1}: {message}"
        super().__init__(message)


class UnsupportedVersion(MalformedRecord):
    """The molfile uses a connection table version other than V2000."""


@dataclass(frozen=True)
class SdfRecord:
    """One record of a corpus, parsed or not.

    Exactly one of `graph` and `error` is set.
    """

    index: int
    name: str
    graph: Optional[MolecularGraph]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        """Whether the record was parsed successfully."""
        return self.graph is not None


def _parse_int(field: str, what: str) -> int:
    try:
        return int(field)
    except ValueError:
        raise MalformedRecord(f"Cannot read {what} from {field!r}") from None


def parse_molfile(text: str) -> MolecularGraph:
    """Parse a V2000 molfile.

    Only the header, the counts line, the atom block and the bond block
    are read. Coordinates are validated and dropped, and so is everything
    after the bond block (properties, SD data items).

    Parameters
    ----------
    text
        The molfile content.

    Returns
    -------
    MolecularGraph
        The graph with all atoms, hydrogens included, and all bonds. Bond
        type 4 is kept as `BondOrder.AROMATIC`.

    Raises
    ------
    UnsupportedVersion
        If the counts line declares a V3000 connection table.
    MalformedRecord
        If the counts line, an atom line or a bond line cannot be read, or
        if a bond references an atom outside of the atom block.
    """
    lines = text.splitlines()
    if len(lines) < 4:
        raise MalformedRecord("A molfile needs a 3-line header and a counts line")

    name = lines[0].strip()
    counts = lines[3]
    if "V3000" in counts:
        raise UnsupportedVersion("V3000 molfiles are not supported")
    if len(counts) < 6:
        raise MalformedRecord(f"Bad counts line {counts!r}")
    n_atoms = _parse_int(counts[0:3], "the atom count")
    n_bonds = _parse_int(counts[3:6], "the bond count")

    atom_lines = lines[4 : 4 + n_atoms]
    bond_lines = lines[4 + n_atoms : 4 + n_atoms + n_bonds]
    if len(atom_lines) != n_atoms or len(bond_lines) != n_bonds:
        raise MalformedRecord(
            f"Expected {n_atoms} atom and {n_bonds} bond lines, the record is "
            "truncated"
        )

    atoms = []
    for line_number, line in enumerate(atom_lines, start=5):
        try:
            for start in (0, 10, 20):
                float(line[start : start + 10])
        except ValueError:
            raise MalformedRecord(f"Bad coordinates on line {line_number}") from None
        symbol = line[31:34].strip()
        try:
            atoms.append(Atom(symbol))
        except ValueError as exc:
            raise MalformedRecord(f"Line {line_number}: {exc}") from None

    bonds: dict[tuple[int, int], Bond] = {}
    for line_number, line in enumerate(bond_lines, start=5 + n_atoms):
        first = _parse_int(line[0:3], f"the first atom on line {line_number}")
        second = _parse_int(line[3:6], f"the second atom on line {line_number}")
        code = _parse_int(line[6:9], f"the bond type on line {line_number}")
        for atom_number in (first, second):
            if not 1 <= atom_number <= n_atoms:
                raise MalformedRecord(
                    f"Line {line_number}: atom index {atom_number} is out of "
                    f"range 1..{n_atoms}"
                )
        try:
            bond = Bond(first - 1, second - 1, BondOrder.from_code(code))
        except ValueError as exc:
            raise MalformedRecord(f"Line {line_number}: {exc}") from None

        if bond.key in bonds:
            logger.warning(
                f"Molecule {name!r}: multiple bonds between atoms {first} and "
                f"{second}, keeping the first one ({bonds[bond.key].order.value})"
            )
            continue
        bonds[bond.key] = bond

    return MolecularGraph(name=name, atoms=tuple(atoms), bonds=tuple(bonds.values()))


def _split_records(text: str) -> Iterator[str]:
    """Split an SD file into molfile records."""
    record: list[str] = []
    for line in text.splitlines():
        if line.strip() == RECORD_SEPARATOR:
            yield "\n".join(record)
            record = []
        else:
            record.append(line)

    # Last record without a trailing separator
    if any(line.strip() for line in record):
        yield "\n".join(record)


def parse_sdf(text: str) -> list[MolecularGraph]:
    """Parse all the records of an SD file.

    Parameters
    ----------
    text
        The SD file content. Records are separated by ``$$$$`` lines.

    Returns
    -------
    list[MolecularGraph]
        One graph per record, in file order. Hydrogens are kept.

    Raises
    ------
    MalformedRecord
        For the first record that cannot be parsed, with its index attached.
    """
    graphs = []
    for index, record in enumerate(_split_records(text)):
        try:
            graphs.append(parse_molfile(record))
        except MalformedRecord as exc:
            raise type(exc)(exc.message, record_index=index) from exc

    return graphs


def iter_sdf(text: str, *, hydrogens: bool = False) -> Iterator[SdfRecord]:
    """Iterate over the records of an SD file without stopping on errors.

    Parameters
    ----------
    text
        The SD file content.
    hydrogens
        If False, hydrogens are suppressed from every parsed graph.

    Yields
    ------
    SdfRecord
        The parsed record, or the error message for a corrupt one.
    """
    for index, record in enumerate(_split_records(text)):
        header = record.split("\n", 1)[0].strip()
        try:
            graph = parse_molfile(record)
        except MalformedRecord as exc:
            logger.warning(f"Skipping record {index + 1} ({header!r}): {exc}")
            yield SdfRecord(index=index, name=header, graph=None, error=str(exc))
            continue

        if not hydrogens:
            graph = suppress_hydrogens(graph)
        yield SdfRecord(index=index, name=graph.name, graph=graph)


def read_molecules(path: pathlib.Path, *, hydrogens: bool = False) -> list[SdfRecord]:
    """Read the molecules stored in a file.

    Parameters
    ----------
    path
        An SD file (``.sdf``, ``.sd``), a molfile (``.mol``) or a molecular
        graph in the JSON graph format (``.json``).
    hydrogens
        If False, hydrogens are suppressed from every parsed graph.

    Returns
    -------
    list[SdfRecord]
        The records of the file. Single-molecule formats give one record.

    Raises
    ------
    ValueError
        If the file extension is not supported.
    OSError
        If the file cannot be read.
    """
    suffix = path.suffix.lower()
    text = path.read_text(encoding="utf-8")

    if suffix in {".sdf", ".sd"}:
        return list(iter_sdf(text, hydrogens=hydrogens))

    if suffix not in {".mol", ".json"}:
        raise ValueError(f"Unsupported molecule file format {path.suffix!r}")

    try:
        graph = parse_molfile(text) if suffix == ".mol" else from_json(text)
    except (MalformedRecord, SchemaViolation) as exc:
        logger.warning(f"Cannot read {path}: {exc}")
        return [SdfRecord(index=0, name=path.stem, graph=None, error=str(exc))]

    if not hydrogens:
        graph = suppress_hydrogens(graph)
    return [SdfRecord(index=0, name=graph.name or path.stem, graph=graph)]


def to_molfile(g: MolecularGraph, comment: str = "") -> str:
    """Write a molecular graph as a V2000 molfile with zero coordinates.

    Parameters
    ----------
    g
        The molecular graph.
    comment
        Content of the third header line.

    Returns
    -------
    str
        The molfile, terminated by ``M  END`` and a newline.
    """
    lines = [
        g.name,
        "  cyclograph",
        comment,
        f"{g.n_atoms:3d}{g.n_bonds:3d}  0  0  0  0  0  0  0  0999 V2000",
    ]
    for atom in g.atoms:
        lines.append(
            f"{0:10.4f}{0:10.4f}{0:10.4f} {atom.element:<3s} 0"
            + "  0" * 11
        )
    for bond in g.bonds:
        lines.append(f"{bond.a + 1:3d}{bond.b + 1:3d}{bond.order.code:3d}  0")
    lines.append("M  END")

    return "\n".join(lines) + "\n"
