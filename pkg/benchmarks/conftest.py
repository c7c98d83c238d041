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

import pathlib

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--corpus",
        default=str(
            pathlib.Path(__file__).parent.parent
            / "tests"
            / "data"
            / "molecules"
            / "corpus.sdf"
        ),
        help="SD file whose molecules are compared",
    )
    parser.addoption("--budget_ms", default=20000, type=int, help="Budget per pair")


@pytest.fixture(scope="session")
def benchmark_parameters(request):
    return {
        "corpus": pathlib.Path(request.config.getoption("--corpus")),
        "budget_ms": request.config.getoption("--budget_ms"),
    }
