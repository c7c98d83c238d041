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
"""Maximum clique search with a time budget.

The search is a branch and bound over bit sets in which greedy colouring
of the candidates gives the upper bound, in the manner of Tomita's MCQ
family of algorithms. Vertices are relabeled by a degeneracy ordering
before the search starts.
"""
from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class SearchStatus(enum.Enum):
    """Outcome of a budgeted search."""

    EXACT = "exact"
    TIMEOUT = "timeout_lower_bound"


@dataclass(frozen=True)
class CompatibilityGraph:
    """Undirected simple graph given by a boolean adjacency matrix.

    Parameters
    ----------
    nodes
        Payload of every node, for instance the pair of edges it stands for.
    adjacency
        Symmetric and irreflexive boolean matrix of shape
        ``(len(nodes), len(nodes))``.
    """

    nodes: Tuple[Any, ...]
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        """Check the shape, the symmetry and the diagonal of the matrix."""
        n = len(self.nodes)
        if self.adjacency.shape != (n, n):
            raise ValueError(
                f"Adjacency of shape {self.adjacency.shape} for {n} nodes"
            )
        if not np.array_equal(self.adjacency, self.adjacency.T):
            raise ValueError("Adjacency matrix is not symmetric")
        if self.adjacency.diagonal().any():
            raise ValueError("Adjacency matrix has self-loops")

    @classmethod
    def empty(cls) -> CompatibilityGraph:
        """Get the graph without nodes."""
        return cls(nodes=(), adjacency=np.zeros((0, 0), dtype=bool))

    @property
    def n_nodes(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        """Number of edges."""
        return int(self.adjacency.sum()) // 2

    def neighbor_masks(self) -> list[int]:
        """Get the neighbourhood of every node as a bit set."""
        return [
            int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
            for row in self.adjacency
        ]


@dataclass(frozen=True)
class CliqueResult:
    """A clique, as increasing node indices, and how it was obtained."""

    nodes: Tuple[int, ...]
    status: SearchStatus

    @property
    def size(self) -> int:
        """Number of nodes of the clique."""
        return len(self.nodes)


class _Timeout(Exception):
    """The time budget is exhausted."""


def degeneracy_order(adjacency: np.ndarray) -> list[int]:
    """Order the nodes by repeatedly removing one of minimum degree.

    Parameters
    ----------
    adjacency
        Symmetric boolean adjacency matrix.

    Returns
    -------
    list[int]
        Node indices in removal order. Ties go to the smallest index.
    """
    n = adjacency.shape[0]
    degrees = adjacency.sum(axis=1).astype(np.int64)
    removed = np.zeros(n, dtype=bool)
    sentinel = n + 1

    order = []
    for _ in range(n):
        node = int(np.argmin(np.where(removed, sentinel, degrees)))
        order.append(node)
        removed[node] = True
        degrees -= adjacency[node]

    return order


class _CliqueSearch:
    """Branch and bound on relabeled bit sets."""

    def __init__(self, masks: list[int], deadline: float) -> None:
        self.masks = masks
        self.deadline = deadline
        self.best: list[int] = []
        self.n_calls = 0

    def greedy(self) -> None:
        """Seed the lower bound with a greedy clique."""
        clique: list[int] = []
        candidates = (1 << len(self.masks)) - 1
        while candidates:
            node = candidates.bit_length() - 1
            clique.append(node)
            candidates &= self.masks[node]
        self.best = clique

    def colour_sort(self, candidates: int) -> tuple[list[int], list[int]]:
        """Greedily colour the candidates.

        Returns the nodes by non-decreasing colour and, for each of them,
        the number of colours used so far, which bounds the size of any
        clique among the nodes up to it.
        """
        order = []
        bounds = []
        uncoloured = candidates
        colour = 0
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                low = available & -available
                node = low.bit_length() - 1
                available &= ~low & ~self.masks[node]
                uncoloured &= ~low
                order.append(node)
                bounds.append(colour)
        return order, bounds

    def expand(self, clique: list[int], candidates: int) -> None:
        """Extend `clique` with nodes of `candidates`, all adjacent to it."""
        self.n_calls += 1
        if time.perf_counter() > self.deadline:
            raise _Timeout

        order, bounds = self.colour_sort(candidates)
        for node, bound in zip(reversed(order), reversed(bounds)):
            if len(clique) + bound <= len(self.best):
                return
            clique.append(node)
            remaining = candidates & self.masks[node]
            if remaining:
                self.expand(clique, remaining)
            elif len(clique) > len(self.best):
                self.best = list(clique)
            clique.pop()
            candidates &= ~(1 << node)


def max_clique(cg: CompatibilityGraph, budget_s: float) -> CliqueResult:
    """Find a maximum clique within a time budget.

    Parameters
    ----------
    cg
        The graph.
    budget_s
        Wall-clock budget of the search, in seconds.

    Returns
    -------
    CliqueResult
        A maximum clique with status ``exact``, or the largest clique found
        before the budget ran out with status ``timeout_lower_bound``. Among
        cliques of maximum size, the first one found is kept. The greedy
        seed and the branching try the nodes late in the degeneracy order
        first, so this is not the lexicographically smallest node set in
        general, but it only depends on the graph.

    Raises
    ------
    ValueError
        If `budget_s` is not positive.
    """
    if not budget_s > 0:
        raise ValueError(f"The time budget must be positive, got {budget_s}")
    if cg.n_nodes == 0:
        return CliqueResult(nodes=(), status=SearchStatus.EXACT)

    deadline = time.perf_counter() + budget_s

    # Position i of the search holds the i-th node of the degeneracy order,
    # so high bits are tried first by the greedy seed and the branching.
    order = degeneracy_order(cg.adjacency)
    relabeled = cg.adjacency[np.ix_(order, order)]
    relabeled_cg = CompatibilityGraph(nodes=tuple(order), adjacency=relabeled)

    search = _CliqueSearch(relabeled_cg.neighbor_masks(), deadline)
    search.greedy()
    status = SearchStatus.EXACT
    try:
        search.expand([], (1 << cg.n_nodes) - 1)
    except _Timeout:
        status = SearchStatus.TIMEOUT
        logger.info(
            f"Clique search stopped after {budget_s:.3f} s on {cg.n_nodes} "
            f"nodes, keeping a clique of size {len(search.best)}"
        )

    logger.debug(
        f"Clique of size {len(search.best)} on {cg.n_nodes} nodes "
        f"({search.n_calls} branching calls, {status.value})"
    )
    return CliqueResult(
        nodes=tuple(sorted(order[node] for node in search.best)), status=status
    )
