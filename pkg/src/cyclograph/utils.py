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
"""Utilities shared by the subcommands."""
from __future__ import annotations

import logging
import time
from typing import Optional

logger = logging.getLogger(__name__)


class Timer:
    """Context manager measuring named steps in milliseconds.

    The order of execution is `__call__`, `__enter__` and `__exit__`.

    Attributes
    ----------
    inst_time : float
        Time of instantiation.
    name : str or None
        Name of the step being timed.
    logs : dict
        Elapsed milliseconds of every completed step.

    Examples
    --------
    >>> from cyclograph.utils import Timer
    >>>
    >>> timer = Timer()
    >>> with timer("parse"):
    ...     pass
    >>> with timer("score"):
    ...     pass
    >>> sorted(timer.stats)
    ['overall', 'parse', 'score']
    """

    def __init__(self) -> None:
        self.inst_time = time.perf_counter()
        self.name: Optional[str] = None
        self.logs: dict[str, float] = {}
        self.start_time = float("nan")

    def __call__(self, name: str) -> Timer:
        """Set the name of the next step."""
        self.name = name
        return self

    def __enter__(self) -> Timer:
        """Start timing the step."""
        if self.name is None:
            raise ValueError("No step name, call the timer with a name first")
        if self.name in self.logs:
            raise ValueError(f"Step {self.name!r} has already been timed")
        if self.name == "overall":
            raise ValueError("The step name 'overall' is reserved")

        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Record the step unless it raised."""
        if exc_type is None:
            self.logs[self.name] = (time.perf_counter() - self.start_time) * 1000
            logger.debug(f"{self.name} took {self.logs[self.name]:.1f} ms")
        self.start_time = float("nan")
        self.name = None

    def __getitem__(self, item: str) -> float:
        """Get the milliseconds of a step."""
        return self.logs[item]

    @property
    def stats(self) -> dict[str, float]:
        """Milliseconds of every step and since instantiation."""
        return {"overall": (time.perf_counter() - self.inst_time) * 1000, **self.logs}
