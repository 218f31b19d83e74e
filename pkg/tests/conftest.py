from pathlib import Path
import textwrap

import pytest
from typer.testing import CliRunner

from coboson.constants import species_preset
from coboson.spectrum import tree_level


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


@pytest.fixture
def hydrogen():
    return species_preset("hydrogen")


@pytest.fixture
def positronium():
    return species_preset("positronium")


@pytest.fixture
def hydrogen_tree(hydrogen):
    return tree_level(hydrogen)


@pytest.fixture
def sample_config(tmp_path: Path) -> dict:
    """
    Write a small run configuration for tests and return metadata.
    """
    out_dir = tmp_path / "out"
    config_text = textwrap.dedent(
        """
        [species]
        preset = "hydrogen"

        [wilson]
        preset = "tree"

        [spectrum]
        n_max = 2
        momenta = "0:40:5"

        [clock]
        ground = "1,0,0,0,0"
        excited = "2,1,0,1,0"
        velocities = "0:0.01 c:3"
        times = "0:1000:3"
        sigma0 = 5.0
        P0 = 2.0

        [scatter]
        separations = "20:40:3"
        angles = "0:90:4"
        angle_unit = "deg"

        [scatter.first]
        r = [0.0, 0.0, 1.0]

        [scatter.second]
        r = [0.0, 0.0, 1.0]
        """
    ).strip()
    path = tmp_path / "config.toml"
    path.write_text(config_text + "\n", encoding="utf-8")
    return {"path": path, "out_dir": out_dir}


@pytest.fixture
def gpe_problem(tmp_path: Path) -> Path:
    """
    Single harmonic mode with a weak contact interaction, small enough to run in tests.
    """
    body = textwrap.dedent(
        """
        [species]
        preset = "hydrogen"

        [gpe]
        length = 20.0
        points = 128
        dt = 1e-3
        steps = 200
        snap_every = 50
        tol = 1e-9
        dtau = 5e-3
        g = [[1.0]]

        [[gpe.mode]]
        label = "trapped"
        mass = 1.0
        potential = "harmonic"
        omega = 1.0
        x0 = 0.5
        sigma = 1.0
        """
    ).strip()
    path = tmp_path / "problem.toml"
    path.write_text(body + "\n", encoding="utf-8")
    return path
