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
"""Implementation of the gc subcommand."""
from __future__ import annotations

import argparse
import logging
import pathlib

from cyclograph.cycles.generator import DEFAULT_J

logger = logging.getLogger(__name__)


def init_parser(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Initialise the argument parser for the gc subcommand.

    Parameters
    ----------
    parser
        The argument parser to initialise.

    Returns
    -------
    argparse.ArgumentParser
        The initialised argument parser. The same object as the `parser`
        argument.
    """
    parser.description = "Write the graph of cycles of one molecule"

    parser.add_argument(
        "--in",
        dest="input_path",
        required=True,
        type=pathlib.Path,
        help="Molecule file (.sdf, .sd, .mol or .json).",
    )
    parser.add_argument(
        "--record",
        type=int,
        default=0,
        help="0-based index of the record to use in a multi-record file.",
    )
    parser.add_argument(
        "--j",
        type=int,
        default=DEFAULT_J,
        help="Maximum cycle length, 0 for no bound.",
    )
    parser.add_argument(
        "--out",
        dest="output_path",
        required=True,
        type=pathlib.Path,
        help="""
        Output file. A .dot suffix writes Graphviz DOT, a .json suffix the
        JSON form of the graph of cycles.
        """,
    )
    parser.add_argument(
        "--kernel",
        action="store_true",
        help="Only keep the largest fused ring system.",
    )

    return parser


def run(
    input_path: pathlib.Path,
    record: int,
    j: int,
    output_path: pathlib.Path,
    *,
    kernel: bool,
) -> int:
    """Run the gc subcommand.

    Parameter description and potential defaults are documented inside of
    the `init_parser` function.
    """
    from cyclograph.cycles import cyclegraph
    from cyclograph.molecule.molfile import read_molecules

    suffix = output_path.suffix.lower()
    if suffix not in {".json", ".dot"}:
        logger.error(f"Unsupported output format {output_path.suffix!r}")
        return 2
    if j < 0:
        logger.error(f"j must be non-negative, got {j}")
        return 2

    try:
        records = read_molecules(input_path)
    except OSError as exc:
        logger.error(f"Cannot read {input_path}: {exc}")
        return 1
    except ValueError as exc:
        logger.error(str(exc))
        return 2

    selected = [r for r in records if r.index == record]
    if not selected or selected[0].graph is None:
        logger.error(f"No readable record {record} in {input_path}")
        return 1

    cg = cyclegraph.build_cycle_graph(selected[0].graph, j)
    if kernel:
        cg = cyclegraph.kernel(cg)

    text = cyclegraph.to_dot(cg) if suffix == ".dot" else cyclegraph.to_json(cg)
    try:
        output_path.write_text(text, encoding="utf-8")
    except OSError as exc:
        logger.error(f"Cannot write {output_path}: {exc}")
        return 1

    logger.info(
        f"Graph of cycles of {cg.molecule!r}: {cg.n_vertices} vertices, "
        f"{cg.n_edges} edges, written to {output_path.resolve().as_uri()}"
    )
    return 0
