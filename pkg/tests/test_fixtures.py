"""End-to-end runs of the shipped scenarios: each lands in its intended mode."""

import json

import pytest

from gripsim.cli import run_scenario
from gripsim.scenario import parse_scenario

EXPECTED = {
    "cube40_proximal": (1, True),
    "cyl60_proximal": (2, True),
    "box150_translational": (3, True),
    "cube80_remote": (4, True),
    "cyl120_remote": (5, True),
    "cube125_remote": (5, True),
    "cyl25_proximal": (2, True),
    "cyl40_proximal": (2, True),
    "pingpong_proximal": (2, True),
    "tennis_proximal": (2, True),
    "tape_proximal": (2, True),
    "ruler_thin": (1, True),
    "cardboard_thin": (1, True),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_reaches_its_mode(name, scenario_dir, tmp_path):
    text = (scenario_dir / f"{name}.scn").read_text(encoding="utf-8")
    scn = parse_scenario(text, name=name)
    out = tmp_path / f"{name}.json"
    run_scenario(scn, out, None)
    payload = json.loads(out.read_text())
    mode, success = EXPECTED[name]
    assert payload["result"]["mode"] == mode
    assert payload["result"]["success"] is success


def test_thin_fixtures_compress_the_distal(scenario_dir, tmp_path):
    ratios = {}
    for name in ("ruler_thin", "cardboard_thin"):
        scn = parse_scenario((scenario_dir / f"{name}.scn").read_text(), name=name)
        out = tmp_path / f"{name}.json"
        run_scenario(scn, out, None)
        payload = json.loads(out.read_text())
        ratios[name] = payload["fingers"][0]["R_D"]
        assert payload["result"]["tip_surface_gap"] < 0.01
    assert ratios["ruler_thin"] > ratios["cardboard_thin"] > 0.15
