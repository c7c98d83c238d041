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
import argparse
import inspect
import json
import pathlib

import pytest

from cyclograph.entrypoint import cache
from cyclograph.entrypoint.cache import GcCache, build_gc_cache, load_gc_cache
from cyclograph.molecule.graph import SchemaViolation
from cyclograph.molecule.molfile import read_molecules

CACHE_PARAMS = {"corpus", "j", "output_path"}


def test_init_parser():
    parser = cache.init_parser(argparse.ArgumentParser())

    args = parser.parse_args(["--corpus", "c.sdf", "--out", "cache.json"])
    assert vars(args).keys() == CACHE_PARAMS

    # Test the values
    assert args.corpus == pathlib.Path("c.sdf")
    assert args.j == 9
    assert args.output_path == pathlib.Path("cache.json")


def test_run_has_consistent_parameters():
    assert inspect.signature(cache.run).parameters.keys() == CACHE_PARAMS


class TestBuildGcCache:
    def test_corpus(self, corpus_path):
        gc_cache = build_gc_cache(read_molecules(corpus_path), j=9)

        assert gc_cache.j == 9
        assert sorted(gc_cache.graphs) == list(range(10))
        assert gc_cache.graphs[0].molecule == "quinine"
        assert gc_cache.graphs[0].n_vertices == 5
        assert gc_cache.graphs[9].molecule == "hexane"
        assert gc_cache.graphs[9].n_vertices == 0

    def test_unreadable_record(self, corpus_path, tmp_path):
        corpus = tmp_path / "corpus.sdf"
        corpus.write_text("broken\n$$$$\n" + corpus_path.read_text())

        gc_cache = build_gc_cache(read_molecules(corpus), j=9)

        assert gc_cache.graphs[0] is None
        assert gc_cache.graphs[1].molecule == "quinine"


class TestLoadGcCache:
    def test_read_back(self, corpus_path, tmp_path):
        gc_cache = build_gc_cache(read_molecules(corpus_path), j=7)
        path = tmp_path / "cache.json"
        path.write_text(gc_cache.to_json())

        assert load_gc_cache(path) == gc_cache

    def test_none_entries(self, tmp_path):
        path = tmp_path / "cache.json"
        path.write_text(GcCache(j=0, graphs={4: None}).to_json())
        assert load_gc_cache(path).graphs == {4: None}

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[]",
            '{"graphs": {}}',
            '{"j": 9, "graphs": []}',
            '{"j": 9, "graphs": {"x": null}}',
            '{"j": 9, "graphs": {"0": {"molecule": "m"}}}',
            '{"j": 9}',
        ],
    )
    def test_corrupt(self, tmp_path, text):
        path = tmp_path / "cache.json"
        path.write_text(text)
        with pytest.raises(SchemaViolation):
            load_gc_cache(path)

    def test_invalid_graph(self, tmp_path):
        edge = {"u": 0, "v": 3, "nu": 1, "theta": 0}
        graph = {"molecule": "m", "j": 9, "vertices": [{"mu": 6}], "edges": [edge]}
        path = tmp_path / "cache.json"
        path.write_text(json.dumps({"j": 9, "graphs": {"0": graph}}))

        with pytest.raises(SchemaViolation, match="not a graph of cycles cache"):
            load_gc_cache(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_gc_cache(tmp_path / "nope.json")


class TestRun:
    def test_idempotent(self, corpus_path, tmp_path):
        first, second = tmp_path / "first.json", tmp_path / "second.json"

        assert cache.run(corpus_path, 9, first) == 0
        assert cache.run(corpus_path, 9, second) == 0

        assert first.read_text() == second.read_text()
        raw = json.loads(first.read_text())
        assert raw["j"] == 9
        assert raw["graphs"]["0"]["molecule"] == "quinine"

    def test_creates_parent_directory(self, corpus_path, tmp_path):
        path = tmp_path / "a" / "b" / "cache.json"
        assert cache.run(corpus_path, 9, path) == 0
        assert path.exists()

    def test_errors(self, corpus_path, tmp_path):
        assert cache.run(corpus_path, -1, tmp_path / "cache.json") == 2
        assert cache.run(tmp_path / "nope.sdf", 9, tmp_path / "cache.json") == 1

        smi = tmp_path / "corpus.smi"
        smi.write_text("CCO\n")
        assert cache.run(smi, 9, tmp_path / "cache.json") == 2
