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
"""Implementation of the cache subcommand."""
from __future__ import annotations

import argparse
import functools
import json
import logging
import pathlib
from dataclasses import dataclass
from typing import Any, Dict, Optional

from mashumaro.exceptions import InvalidFieldValue, MissingField
from mashumaro.mixins.json import DataClassJSONMixin

from cyclograph.cycles.cyclebasis import NotBiconnected
from cyclograph.cycles.cyclegraph import CycleGraph, build_cycle_graph
from cyclograph.cycles.generator import DEFAULT_J
from cyclograph.molecule.graph import SchemaViolation
from cyclograph.molecule.molfile import SdfRecord, read_molecules

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GcCache(DataClassJSONMixin):
    """Graphs of cycles of a corpus, keyed by record index.

    A record whose graph could not be built maps to None.
    """

    j: int
    graphs: Dict[int, Optional[CycleGraph]]

    @classmethod
    def __pre_deserialize__(cls, d: Dict[Any, Any]) -> Dict[Any, Any]:
        """Turn the record indices back into integers."""
        graphs = d.get("graphs")
        if isinstance(graphs, dict):
            d = {**d, "graphs": {int(index): cg for index, cg in graphs.items()}}
        return d

    def to_json(self) -> str:  # type: ignore[override]
        """Serialize with sorted keys so that equal caches give equal text."""
        encoder = functools.partial(json.dumps, indent=2, sort_keys=True)
        return super().to_json(encoder=encoder) + "\n"


def init_parser(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Initialise the argument parser for the cache subcommand.

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
    parser.description = "Build the graphs of cycles of a corpus once for all"

    parser.add_argument(
        "--corpus",
        required=True,
        type=pathlib.Path,
        help="SD file (or .mol/.json file) holding the corpus.",
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
        help="Path of the JSON cache file.",
    )

    return parser


def build_gc_cache(records: list[SdfRecord], j: int) -> GcCache:
    """Build the graph of cycles of every corpus record.

    Parameters
    ----------
    records
        The corpus, as read by `read_molecules`.
    j
        Maximum cycle length, 0 for no bound.

    Returns
    -------
    GcCache
        The graphs, None for records which could not be parsed or reduced.
    """
    graphs: Dict[int, Optional[CycleGraph]] = {}
    for record in records:
        if record.graph is None:
            logger.warning(f"Record {record.index} is unreadable: {record.error}")
            graphs[record.index] = None
            continue
        try:
            graphs[record.index] = build_cycle_graph(record.graph, j)
        except (NotBiconnected, RuntimeError) as exc:
            logger.warning(f"No graph of cycles for record {record.index}: {exc}")
            graphs[record.index] = None

    return GcCache(j=j, graphs=graphs)


def load_gc_cache(path: pathlib.Path) -> GcCache:
    """Read a cache file.

    Raises
    ------
    OSError
        If the file cannot be read.
    SchemaViolation
        If the file is not a cache.
    """
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise SchemaViolation(f"{path} is not a JSON document: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaViolation(f"The top level of {path} must be an object")

    try:
        gc_cache = GcCache.from_dict(raw)
    except (
        MissingField,
        InvalidFieldValue,
        ValueError,
        TypeError,
        AttributeError,
    ) as exc:
        raise SchemaViolation(f"{path} is not a graph of cycles cache: {exc}") from exc

    logger.info(f"Loaded {len(gc_cache.graphs)} graphs of cycles from {path}")
    return gc_cache


def run(corpus: pathlib.Path, j: int, output_path: pathlib.Path) -> int:
    """Run the cache subcommand.

    Parameter description and potential defaults are documented inside of
    the `init_parser` function.
    """
    if j < 0:
        logger.error(f"j must be non-negative, got {j}")
        return 2

    try:
        records = read_molecules(corpus)
    except OSError as exc:
        logger.error(f"Cannot read the corpus: {exc}")
        return 1
    except ValueError as exc:
        logger.error(str(exc))
        return 2

    cache = build_gc_cache(records, j)
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(cache.to_json(), encoding="utf-8")
    except OSError as exc:
        logger.error(f"Cannot write the cache: {exc}")
        return 1

    n_missing = sum(cg is None for cg in cache.graphs.values())
    logger.info(
        f"Cached {len(cache.graphs) - n_missing} graphs of cycles "
        f"({n_missing} missing) to {output_path.resolve().as_uri()}"
    )
    return 0
