import io
import runpy
import sys
from pathlib import Path

import pytest

from herdability.cli import run

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", [script])
    runpy.run_path(str(DEMOS / script), run_name="__main__")
    assert capsys.readouterr().out


@pytest.mark.parametrize("argv, code", [
    (["check", "cycle.json"], 0),
    (["check", "three_state.json"], 0),
    (["tree", "tree.json"], 1),
    (["sign", "two_state.json"], 0),
    (["ensemble", "two_state.json", "--trials", "20"], 2),
])
def test_demo_systems(argv, code):
    argv = [argv[0], str(DEMOS / "systems" / argv[1]), *argv[2:]]
    assert run(argv, stdout=io.StringIO(), stderr=io.StringIO()) == code
