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
"""Implementation of the compare subcommand."""
from __future__ import annotations

import argparse
import json
import logging
import pathlib

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


class CorpusMismatch(Exception):
    """Two rankings do not cover the same corpus."""


def init_parser(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Initialise the argument parser for the compare subcommand.

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
    parser.description = "Compare the top hits of an mg and a gc search"

    parser.add_argument(
        "--mg",
        dest="ranking_mg",
        required=True,
        type=pathlib.Path,
        help="ranking.csv of the mg search.",
    )
    parser.add_argument(
        "--gc",
        dest="ranking_gc",
        required=True,
        type=pathlib.Path,
        help="ranking.csv of the gc search.",
    )
    parser.add_argument(
        "--k",
        type=int,
        default=20,
        help="Number of top hits compared.",
    )
    parser.add_argument(
        "--out",
        dest="output_path",
        required=True,
        type=pathlib.Path,
        help="Path of the JSON report.",
    )

    return parser


def read_ranking(path: pathlib.Path) -> pd.DataFrame:
    """Read a ranking written by the search subcommand."""
    ranking = pd.read_csv(
        path,
        dtype={"name": str, "status": str},
        keep_default_na=False,
        na_values={"score": [""], "elapsed_ms": [""]},
    )
    missing = {"rank", "name", "score", "status"} - set(ranking.columns)
    if missing:
        raise ValueError(f"{path} misses the columns {sorted(missing)}")
    return ranking


def _top_k(ranking: pd.DataFrame, k: int) -> list[str]:
    exact = ranking[ranking["status"] == "exact"].sort_values("rank")
    return exact["name"].head(k).tolist()


def compare_modes(
    ranking_mg: pd.DataFrame, ranking_gc: pd.DataFrame, k: int
) -> dict:
    """Compare the top hits of two rankings of the same corpus.

    Only pairs computed exactly take part in the top hits; the others are
    counted separately for each mode.

    Parameters
    ----------
    ranking_mg, ranking_gc
        Rankings with the columns ``rank``, ``name``, ``score`` and
        ``status``.
    k
        Number of top hits compared.

    Returns
    -------
    dict
        The size and the names of the intersection of the two top-k lists,
        the lists themselves, the number of timed-out and failed pairs of
        each mode and, for every molecule of either list, its rank in both
        rankings.

    Raises
    ------
    CorpusMismatch
        If the rankings are not over the same molecules.
    ValueError
        If `k` is not positive.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if sorted(ranking_mg["name"]) != sorted(ranking_gc["name"]):
        raise CorpusMismatch("The two rankings are not over the same corpus")

    top_mg = _top_k(ranking_mg, k)
    top_gc = _top_k(ranking_gc, k)
    common = set(top_mg) & set(top_gc)

    rank_mg = ranking_mg.drop_duplicates("name").set_index("name")["rank"]
    rank_gc = ranking_gc.drop_duplicates("name").set_index("name")["rank"]
    displacement = []
    for name in dict.fromkeys(top_mg + top_gc):
        r_mg, r_gc = int(rank_mg[name]), int(rank_gc[name])
        displacement.append(
            {
                "name": name,
                "rank_mg": r_mg,
                "rank_gc": r_gc,
                "displacement": r_gc - r_mg,
            }
        )

    def non_computed(ranking: pd.DataFrame) -> dict[str, int]:
        statuses = ranking["status"]
        return {
            "timeout": int(np.sum(statuses == "timeout_lower_bound")),
            "failed": int(np.sum(statuses == "failed")),
        }

    return {
        "k": k,
        "overlap": len(common),
        "overlap_names": sorted(common),
        "top_k_mg": top_mg,
        "top_k_gc": top_gc,
        "non_computed": {
            "mg": non_computed(ranking_mg),
            "gc": non_computed(ranking_gc),
        },
        "displacement": displacement,
    }


def run(
    ranking_mg: pathlib.Path,
    ranking_gc: pathlib.Path,
    k: int,
    output_path: pathlib.Path,
) -> int:
    """Run the compare subcommand.

    Parameter description and potential defaults are documented inside of
    the `init_parser` function.
    """
    if k < 1:
        logger.error(f"k must be positive, got {k}")
        return 2

    try:
        report = compare_modes(read_ranking(ranking_mg), read_ranking(ranking_gc), k)
    except OSError as exc:
        logger.error(f"Cannot read a ranking: {exc}")
        return 1
    except (CorpusMismatch, ValueError) as exc:
        logger.error(str(exc))
        return 1

    try:
        with output_path.open("w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        logger.error(f"Cannot write {output_path}: {exc}")
        return 1

    logger.info(f"Top-{k} overlap between mg and gc: {report['overlap']}/{k}")
    return 0
