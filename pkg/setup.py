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
"""The setup script."""
from setuptools import find_packages, setup

DESCRIPTION = "Molecular similarity search on graphs of cycles"

LONG_DESCRIPTION = """
Cyclograph ranks a corpus of molecules by similarity to a target molecule.

Every molecule is reduced to its graph of cycles, whose vertices are the
rings of the molecule and whose edges tell how the rings are fused or
linked. Two molecules are then compared through the maximum common edge
subgraph of their graphs of cycles, or of their molecular graphs."""

CLASSIFIERS = [
    "Development Status :: 4 - Beta",
    "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
    "Operating System :: Unix",
    "Operating System :: MacOS",
    "Programming Language :: Python",
    "Programming Language :: Python :: 3",
    "Programming Language :: Python :: 3.8",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3 :: Only",
    "Topic :: Scientific/Engineering :: Chemistry",
    "Topic :: Software Development :: Libraries :: Python Modules",
]

PYTHON_REQUIRES = ">=3.8"

INSTALL_REQUIRES = [
    # Serialization framework on top of dataclasses, e.g. 'CycleGraph' to and from JSON.
    "mashumaro>=3.0",
    # >= 2.6 for the sort_neighbors argument of the breadth-first searches
    "networkx>=2.6",
    "numpy>=1.20.1",
    "pandas>=1",
]

EXTRAS_REQUIRE = {
    "dev": [
        "Sphinx",
        "pytest-benchmark",
        "pytest-cov",
        "pytest>=4.6",
        "sphinx-bluebrain-theme",
        "tox",
    ],
}

CONSOLE_SCRIPTS = [
    "cyclograph = cyclograph.entrypoint.parent:main",
]

setup(
    name="cyclograph",
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/x-rst",
    author="Cyclograph developers",
    license="-",
    classifiers=CLASSIFIERS,
    use_scm_version={
        "write_to": "src/cyclograph/version.py",
        "write_to_template": '"""The package version."""\n__version__ = "{version}"\n',
        "local_scheme": "no-local-version",
        "fallback_version": "0.1.0",
    },
    package_dir={"": "src"},
    packages=find_packages("./src"),
    package_data={"cyclograph": ["py.typed"]},
    zip_safe=False,
    python_requires=PYTHON_REQUIRES,
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    entry_points={"console_scripts": CONSOLE_SCRIPTS},
)
