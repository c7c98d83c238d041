from __future__ import annotations

import logging
import subprocess

import pytest

from cyclograph import __version__
from cyclograph.entrypoint.parent import _setup_logging, main


@pytest.mark.parametrize("command", ["search", "gc", "compare", "cache"])
def test_commands_work(command):
    subprocess.run(["cyclograph", command, "--help"], check=True)


def test_main_dispatches(molecules_dir, tmp_path):
    output_path = tmp_path / "benzene.json"
    argv = ["gc", "--in", str(molecules_dir / "benzene.mol"), "--out", str(output_path)]

    assert main(argv) == 0
    assert output_path.exists()


def test_main_requires_a_command():
    with pytest.raises(SystemExit):
        main([])


def test_version(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])

    assert exc_info.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


def test_setup_logging(caplog):
    def get_levels(loggers: dict[str, logging.Logger]) -> dict[str, int]:
        """Get logging level for each logger."""
        return {name: logger.getEffectiveLevel() for name, logger in loggers.items()}

    caplog.set_level(logging.WARNING, logger="cyclograph")

    all_loggers = logging.root.manager.loggerDict
    cyclograph_loggers = {
        k: v
        for k, v in all_loggers.items()
        if k.startswith("cyclograph") and isinstance(v, logging.Logger)
    }
    external_loggers = {
        k: v
        for k, v in all_loggers.items()
        if not k.startswith("cyclograph") and isinstance(v, logging.Logger)
    }

    cyclograph_levels_before = get_levels(cyclograph_loggers)
    external_levels_before = get_levels(external_loggers)

    _setup_logging(logging.DEBUG)

    cyclograph_levels_after = get_levels(cyclograph_loggers)
    external_levels_after = get_levels(external_loggers)

    assert set(cyclograph_levels_before.values()) == {logging.WARNING}
    assert set(cyclograph_levels_after.values()) == {logging.DEBUG}

    assert external_levels_before == external_levels_after
