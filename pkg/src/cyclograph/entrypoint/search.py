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
"""Implementation of the search subcommand."""
from __future__ import annotations

import argparse
import enum
import json
import logging
import pathlib
import textwrap
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from mashumaro import DataClassDictMixin

from cyclograph.cycles.cyclegraph import CycleGraph, build_cycle_graph
from cyclograph.cycles.generator import DEFAULT_J
from cyclograph.cycles.graphcore import structural_molecular_graph
from cyclograph.entrypoint.cache import load_gc_cache
from cyclograph.molecule.graph import MolecularGraph, SchemaViolation
from cyclograph.molecule.molfile import SdfRecord, read_molecules
from cyclograph.similarity.mces import LabeledGraph, PiConstraint, PiMode, similarity
from cyclograph.utils import Timer

logger = logging.getLogger(__name__)

RANKING_COLUMNS = ["rank", "name", "score", "status", "elapsed_ms"]
FAILED = "failed"


class SearchMode(enum.Enum):
    """Graphs compared by a search."""

    MG = "mg"
    GC = "gc"


class TargetNotFound(Exception):
    """The target selector matches no readable molecule."""


@dataclass(frozen=True)
class RunConfig(DataClassDictMixin):
    """Settings of a target-versus-corpus search.

    Parameters
    ----------
    mode
        Compare structural molecular graphs (``mg``) or graphs of cycles
        (``gc``).
    target
        Path to a molecule file, corpus index, or corpus molecule name.
    corpus
        Molecule file holding the corpus.
    output_dir
        Directory receiving the ranking, the histogram and the manifest.
    j
        Maximum cycle length of the graphs of cycles, 0 for no bound.
    cycle_tolerance
        Relative tolerance on cycle lengths.
    theta_tolerance
        Relative tolerance on the ``theta`` labels.
    budget_ms
        Time budget of every pair, in milliseconds.
    jobs
        Number of worker processes.
    bucket_width
        Width of the histogram buckets. It must divide 1.
    top_k
        Number of best hits reported in the log.
    cache
        Graph of cycles cache of the corpus, used in ``gc`` mode.
    timings
        Fill the ``elapsed_ms`` column of the ranking. It is left empty
        otherwise, so that repeated runs write identical rankings.
    """

    mode: SearchMode
    target: str
    corpus: pathlib.Path
    output_dir: pathlib.Path
    j: int = DEFAULT_J
    cycle_tolerance: float = 0.2
    theta_tolerance: float = 0.0
    budget_ms: int = 20000
    jobs: int = 1
    bucket_width: float = 0.05
    top_k: int = 20
    cache: Optional[pathlib.Path] = None
    timings: bool = False

    def __post_init__(self) -> None:
        """Validate the settings."""
        if self.budget_ms <= 0:
            raise ValueError(f"The budget must be positive, got {self.budget_ms}")
        if self.j < 0:
            raise ValueError(f"j must be non-negative, got {self.j}")
        if self.cycle_tolerance < 0 or self.theta_tolerance < 0:
            raise ValueError("Tolerances must be non-negative")
        if self.jobs < 1:
            raise ValueError(f"At least one job is needed, got {self.jobs}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be positive, got {self.top_k}")
        n_buckets = round(1 / self.bucket_width) if self.bucket_width > 0 else 0
        if n_buckets < 1 or abs(n_buckets * self.bucket_width - 1) > 1e-9:
            raise ValueError(
                f"The bucket width must divide 1, got {self.bucket_width}"
            )

    @property
    def pi_constraint(self) -> PiConstraint:
        """Compatibility rules of the mode."""
        return PiConstraint(
            mode=PiMode.CYCLE if self.mode is SearchMode.GC else PiMode.MOLECULAR,
            cycle_tolerance=self.cycle_tolerance,
            theta_tolerance=self.theta_tolerance,
        )

    @property
    def n_buckets(self) -> int:
        """Number of histogram buckets."""
        return round(1 / self.bucket_width)


@dataclass(frozen=True)
class PairOutcome:
    """Score of one corpus molecule against the target."""

    score: Optional[float]
    status: str
    elapsed_ms: Optional[float] = None


def init_parser(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Initialise the argument parser for the search subcommand.

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
    parser.formatter_class = argparse.RawDescriptionHelpFormatter
    description = """
    Compare a target molecule with every molecule of a corpus and rank the
    corpus by similarity. In gc mode the graphs of cycles are compared,
    in mg mode the molecular graphs restricted to their cyclic part.

    The output directory receives ranking.csv, histogram.csv and
    manifest.json.
    """
    parser.description = textwrap.dedent(description)

    parser.add_argument(
        "--mode",
        required=True,
        choices=[mode.value for mode in SearchMode],
        help="Compare molecular graphs (mg) or graphs of cycles (gc).",
    )
    parser.add_argument(
        "--target",
        required=True,
        help="""
        Path to a molecule file, 0-based index of a corpus record, or name
        of a corpus molecule.
        """,
    )
    parser.add_argument(
        "--corpus",
        required=True,
        type=pathlib.Path,
        help="SD file (or .mol/.json file) holding the corpus.",
    )
    parser.add_argument(
        "--out",
        dest="output_dir",
        required=True,
        type=pathlib.Path,
        help="Output directory, created if needed.",
    )
    parser.add_argument(
        "--j",
        type=int,
        default=DEFAULT_J,
        help="Maximum cycle length of the graphs of cycles, 0 for no bound.",
    )
    parser.add_argument(
        "--budget-ms",
        type=int,
        default=20000,
        help="Time budget of every pair, in milliseconds.",
    )
    parser.add_argument(
        "--tolerance",
        dest="cycle_tolerance",
        type=float,
        default=0.2,
        help="Relative tolerance on cycle lengths.",
    )
    parser.add_argument(
        "--theta-tolerance",
        type=float,
        default=0.0,
        help="Relative tolerance on the theta edge labels.",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="Number of worker processes.",
    )
    parser.add_argument(
        "--bucket-width",
        type=float,
        default=0.05,
        help="Width of the histogram buckets, a divisor of 1.",
    )
    parser.add_argument(
        "--top-k",
        type=int,
        default=20,
        help="Number of best hits logged at the end of the search.",
    )
    parser.add_argument(
        "--cache",
        type=pathlib.Path,
        help="Graph of cycles cache built by the cache subcommand (gc mode).",
    )
    parser.add_argument(
        "--timings",
        action="store_true",
        help="""
        Fill the elapsed_ms column with the time spent on each pair.
        Without it the column is empty and repeated runs write identical
        rankings.
        """,
    )

    return parser


def resolve_target(selector: str, records: list[SdfRecord]) -> MolecularGraph:
    """Find the target molecule.

    Parameters
    ----------
    selector
        Path to an existing molecule file, otherwise a 0-based corpus index
        if made of digits, otherwise a corpus molecule name.
    records
        The corpus.

    Returns
    -------
    MolecularGraph
        The hydrogen-suppressed target.

    Raises
    ------
    TargetNotFound
        If nothing readable matches the selector.
    """
    path = pathlib.Path(selector)
    if path.is_file():
        candidates = read_molecules(path)
    elif selector.isdigit():
        index = int(selector)
        candidates = [r for r in records if r.index == index]
    else:
        candidates = [r for r in records if r.name == selector]

    for record in candidates:
        if record.graph is not None:
            return record.graph

    raise TargetNotFound(f"No readable molecule matches the target {selector!r}")


def _labeled(g: MolecularGraph, cfg: RunConfig) -> LabeledGraph:
    if cfg.mode is SearchMode.GC:
        return LabeledGraph.from_cycle_graph(build_cycle_graph(g, cfg.j))
    return LabeledGraph.from_molecular_graph(structural_molecular_graph(g))


def _prepare_corpus(
    records: list[SdfRecord], cfg: RunConfig
) -> list[Optional[LabeledGraph]]:
    """Build the graphs compared with the target, None for failed records."""
    cached: dict[int, Optional[CycleGraph]] = {}
    use_cache = cfg.mode is SearchMode.GC and cfg.cache is not None
    if use_cache:
        cache = load_gc_cache(cfg.cache)  # type: ignore[arg-type]
        if cache.j != cfg.j:
            raise ValueError(f"The cache was built with j={cache.j}, not {cfg.j}")
        cached = cache.graphs

    graphs: list[Optional[LabeledGraph]] = []
    for record in records:
        if record.index in cached:
            cg = cached[record.index]
            graphs.append(None if cg is None else LabeledGraph.from_cycle_graph(cg))
        elif record.graph is None:
            graphs.append(None)
        else:
            if use_cache:
                logger.warning(f"Record {record.index} is absent from the cache")
            graphs.append(_labeled(record.graph, cfg))

    return graphs


def _score_pair(
    task: tuple[LabeledGraph, Optional[LabeledGraph], PiConstraint, float]
) -> PairOutcome:
    """Score one corpus molecule, in a worker process."""
    target, candidate, constraint, budget_s = task
    if candidate is None:
        return PairOutcome(score=None, status=FAILED)

    timer = Timer()
    try:
        with timer("similarity"):
            result = similarity(target, candidate, constraint, budget_s)
    except Exception as exc:
        logger.exception(f"Scoring {candidate.name!r} failed: {exc}")
        return PairOutcome(score=None, status=FAILED)

    return PairOutcome(
        score=result.score,
        status=result.status.value,
        elapsed_ms=timer["similarity"],
    )


def rank(
    records: list[SdfRecord], outcomes: list[PairOutcome], timings: bool
) -> pd.DataFrame:
    """Sort the corpus by decreasing score.

    Failed pairs come last. Ties are broken by name, then by corpus index.
    """
    table = pd.DataFrame(
        {
            "index": [record.index for record in records],
            "name": [record.name for record in records],
            "score": [np.nan if o.score is None else o.score for o in outcomes],
            "status": [o.status for o in outcomes],
            "elapsed_ms": [
                o.elapsed_ms if timings and o.elapsed_ms is not None else np.nan
                for o in outcomes
            ],
        },
        columns=["index", "name", "score", "status", "elapsed_ms"],
    )
    table = table.sort_values(
        by=["score", "name", "index"],
        ascending=[False, True, True],
        na_position="last",
    ).reset_index(drop=True)
    table.insert(0, "rank", np.arange(1, len(table) + 1))

    return table[RANKING_COLUMNS]


def histogram(scores: pd.Series, n_buckets: int) -> pd.DataFrame:
    """Count the scores falling in each bucket of [0, 1]."""
    edges = np.linspace(0.0, 1.0, n_buckets + 1)
    counts, _ = np.histogram(scores.dropna().to_numpy(), bins=edges)
    return pd.DataFrame(
        {"bin_start": edges[:-1], "bin_end": edges[1:], "count": counts}
    )


def run_search(cfg: RunConfig) -> dict:
    """Rank a corpus against a target and write the results.

    Parameters
    ----------
    cfg
        The search settings.

    Returns
    -------
    dict
        The manifest written next to the ranking.

    Raises
    ------
    OSError
        If the corpus cannot be read or the outputs cannot be written.
    TargetNotFound
        If the target cannot be resolved.
    SchemaViolation
        If the cache file is corrupt.
    ValueError
        If the corpus format is not supported or the cache does not match
        the settings.
    """
    timer = Timer()

    with timer("read"):
        records = read_molecules(cfg.corpus)
        target = resolve_target(cfg.target, records)
    logger.info(f"Target {target.name!r} against {len(records)} corpus records")

    with timer("prepare"):
        target_graph = _labeled(target, cfg)
        corpus_graphs = _prepare_corpus(records, cfg)

    tasks = [
        (target_graph, graph, cfg.pi_constraint, cfg.budget_ms / 1000)
        for graph in corpus_graphs
    ]
    with timer("score"):
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as executor:
                outcomes = list(executor.map(_score_pair, tasks))
        else:
            outcomes = [_score_pair(task) for task in tasks]

    ranking = rank(records, outcomes, cfg.timings)
    statuses = ranking["status"].value_counts()
    manifest = {
        "config": cfg.to_dict(),
        "target": target.name,
        "records_total": len(records),
        "records_failed": sum(record.graph is None for record in records),
        "pairs_total": len(ranking),
        "pairs_exact": int(statuses.get("exact", 0)),
        "pairs_timeout": int(statuses.get("timeout_lower_bound", 0)),
        "pairs_failed": int(statuses.get(FAILED, 0)),
    }

    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    ranking.to_csv(
        cfg.output_dir / "ranking.csv", index=False, float_format="%.6f"
    )
    histogram(ranking["score"], cfg.n_buckets).to_csv(
        cfg.output_dir / "histogram.csv", index=False, float_format="%.6f"
    )
    manifest["wall_ms"] = round(timer.stats["overall"], 3)
    manifest["steps_ms"] = {k: round(v, 3) for k, v in timer.logs.items()}
    elapsed = [o.elapsed_ms for o in outcomes if o.elapsed_ms is not None]
    manifest["pair_ms"] = {
        "mean": round(float(np.mean(elapsed)), 3) if elapsed else None,
        "max": round(max(elapsed), 3) if elapsed else None,
    }
    with (cfg.output_dir / "manifest.json").open("w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    if manifest["pairs_timeout"]:
        logger.warning(
            f"{manifest['pairs_timeout']} of {len(ranking)} pairs hit the "
            f"{cfg.budget_ms} ms budget, their scores are lower bounds"
        )
    top = ranking.head(cfg.top_k)
    logger.info(
        f"Top {len(top)}: "
        + ", ".join(f"{name} ({score:.3f})" for name, score in zip(top.name, top.score))
    )
    logger.info(f"Wrote results to {cfg.output_dir.resolve().as_uri()}")

    return manifest


def run(
    mode: str,
    target: str,
    corpus: pathlib.Path,
    output_dir: pathlib.Path,
    j: int,
    budget_ms: int,
    cycle_tolerance: float,
    theta_tolerance: float,
    jobs: int,
    bucket_width: float,
    top_k: int,
    cache: pathlib.Path | None,
    *,
    timings: bool,
) -> int:
    """Run the search subcommand.

    Parameter description and potential defaults are documented inside of
    the `init_parser` function.
    """
    try:
        cfg = RunConfig(
            mode=SearchMode(mode),
            target=target,
            corpus=corpus,
            output_dir=output_dir,
            j=j,
            cycle_tolerance=cycle_tolerance,
            theta_tolerance=theta_tolerance,
            budget_ms=budget_ms,
            jobs=jobs,
            bucket_width=bucket_width,
            top_k=top_k,
            cache=cache,
            timings=timings,
        )
    except ValueError as exc:
        logger.error(f"Invalid configuration: {exc}")
        return 2

    try:
        run_search(cfg)
    except (TargetNotFound, SchemaViolation) as exc:
        logger.error(str(exc))
        return 1
    except OSError as exc:
        logger.error(f"Input/output error: {exc}")
        return 1
    except ValueError as exc:
        logger.error(f"Invalid configuration: {exc}")
        return 2

    return 0
