import json
import math
import os
from pathlib import Path
import textwrap

import numpy as np
import pytest

from coboson.config import (
    ClockConfig,
    ConfigError,
    GpeModeConfig,
    ScatterConfig,
    WilsonConfig,
    apply_overrides,
    get_settings,
    load_config,
    load_section,
    settings,
    validate_config,
)
from coboson.constants import ATOMIC, convert


def _write_config(tmp_path: Path, body: str, name: str = "config.toml") -> Path:
    path = tmp_path / name
    path.write_text(textwrap.dedent(body).strip() + "\n", encoding="utf-8")
    return path


def test_rejects_unknown_keys(tmp_path: Path) -> None:
    path = _write_config(
        tmp_path,
        """
        unexpected = "nope"

        [species]
        preset = "hydrogen"
        """,
    )

    with pytest.raises(ConfigError) as exc:
        load_config(path)

    assert "extra" in str(exc.value).lower()


def test_rejects_preset_mixed_with_explicit_masses(tmp_path: Path) -> None:
    path = _write_config(
        tmp_path,
        """
        [species]
        preset = "hydrogen"
        m_e = 1.0
        """,
    )

    with pytest.raises(ConfigError) as exc:
        load_config(path)

    assert "species.preset" in str(exc.value)


def test_custom_species_needs_all_constituents() -> None:
    with pytest.raises(ConfigError) as exc:
        validate_config({"species": {"m_e": 1.0, "Z": 1}})

    assert "m_e, m_n and Z" in str(exc.value)


def test_custom_species_accepts_mass_units() -> None:
    config = validate_config({"species": {"name": "toy", "m_e": 1.0, "m_n": "1.00782503207 u", "Z": 1}})
    species = config.build_species()

    assert species.m_n == pytest.approx(convert(1.00782503207, "u", "m_e"))
    assert species.name == "toy"


def test_unknown_species_preset_is_reported() -> None:
    with pytest.raises(ConfigError) as exc:
        validate_config({"species": {"preset": "unobtainium"}})

    assert "Allowed" in str(exc.value)


def test_missing_file_raises(tmp_path: Path) -> None:
    with pytest.raises(ConfigError) as exc:
        load_config(tmp_path / "absent.toml")

    assert "not found" in str(exc.value)


def test_invalid_toml_raises(tmp_path: Path) -> None:
    path = _write_config(tmp_path, "[species\npreset = 1")

    with pytest.raises(ConfigError) as exc:
        load_config(path)

    assert "Invalid TOML" in str(exc.value)


def test_loads_sample_config(sample_config: dict) -> None:
    config = load_config(sample_config["path"])

    assert config.species.preset == "hydrogen"
    assert config.spectrum.n_max == 2
    assert config.spectrum.momenta == [0.0, 10.0, 20.0, 30.0, 40.0]
    assert config.clock.velocities[-1] == pytest.approx(0.01 * ATOMIC.c)
    assert config.scatter.separations == [20.0, 30.0, 40.0]
    assert config.scatter.angles_rad[-1] == pytest.approx(math.pi / 2)
    assert config.gpe is None


def test_json_config_matches_toml(tmp_path: Path) -> None:
    toml_path = _write_config(
        tmp_path,
        """
        [species]
        preset = "positronium"

        [spectrum]
        n_max = 3
        """,
    )
    json_path = tmp_path / "config.json"
    json_path.write_text(json.dumps({"species": {"preset": "positronium"}, "spectrum": {"n_max": 3}}), encoding="utf-8")

    assert load_config(toml_path).hash == load_config(json_path).hash


def test_config_hash_is_stable_and_sensitive(sample_config: dict) -> None:
    first = load_config(sample_config["path"])
    second = load_config(sample_config["path"])

    assert first.hash == second.hash
    assert len(first.hash) == 64
    changed = first.model_copy(update={"spectrum": apply_overrides(first.spectrum, {"n_max": 3})})
    assert changed.hash != first.hash


def test_state_labels_are_canonicalized() -> None:
    clock = ClockConfig(ground=" 1, 0 ,0,0,0", excited="2;1;0;1;0")

    assert clock.ground == "1,0,0,0,0"
    assert clock.excited == "2,1,0,1,0"


def test_invalid_state_label_names_the_rule() -> None:
    with pytest.raises(ConfigError) as exc:
        validate_config({"species": {"preset": "hydrogen"}, "clock": {"ground": "1,0,1,0,0"}})

    assert "ell >= 1" in str(exc.value)


def test_clock_states_must_differ() -> None:
    with pytest.raises(ConfigError):
        validate_config({"species": {"preset": "hydrogen"}, "clock": {"ground": "1,0,0,0,0", "excited": "1,0,0,0,0"}})


def test_clock_temperature_accepts_kelvin(hydrogen) -> None:
    clock = ClockConfig(temperature="1 K")

    assert clock.temperature == pytest.approx(convert(1.0, "K", "hartree"))
    assert clock.build(hydrogen).Omega > 0.0


def test_unit_dimension_mismatch_is_rejected() -> None:
    with pytest.raises(ConfigError) as exc:
        validate_config({"species": {"preset": "hydrogen"}, "clock": {"sigma0": "2 eV"}})

    assert "sigma0" in str(exc.value)


def test_wilson_overrides(hydrogen) -> None:
    wilson = WilsonConfig(preset="tree", d1_en=0.25).build(hydrogen)

    assert wilson.d1_en == 0.25
    assert wilson.name == "tree+overrides"
    assert WilsonConfig().build(hydrogen).name == "tree"


def test_load_section_accepts_bare_files(tmp_path: Path) -> None:
    bare = _write_config(
        tmp_path,
        """
        separations = "10:20:3"
        angles = "0, 45"
        angle_unit = "deg"

        [first]
        r = "1, 0, 0"
        """,
        name="geometry.toml",
    )

    scatter = load_section(bare, ScatterConfig, "scatter")

    assert scatter.separations == [10.0, 15.0, 20.0]
    assert scatter.angles_rad == pytest.approx([0.0, math.pi / 4])
    assert scatter.first.r == [1.0, 0.0, 0.0]
    assert scatter.second.r == [0.0, 0.0, 1.0]


def test_load_section_defaults_when_run_config_lacks_table(sample_config: dict) -> None:
    wilson = load_section(sample_config["path"], WilsonConfig, "wilson")
    gpe_free = _write_config(sample_config["path"].parent, "[species]\npreset = \"hydrogen\"", name="plain.toml")

    assert wilson.preset == "tree"
    assert load_section(gpe_free, ScatterConfig, "scatter").separations == [10.0]


def test_load_section_reports_validation_errors(tmp_path: Path) -> None:
    path = _write_config(tmp_path, "[scatter]\nangle_unit = \"grad\"")

    with pytest.raises(ConfigError) as exc:
        load_section(path, ScatterConfig, "scatter")

    assert "angle_unit" in str(exc.value)


def test_apply_overrides_revalidates() -> None:
    clock = ClockConfig()

    assert apply_overrides(clock, {}) is clock
    assert apply_overrides(clock, {"P0": 3.0}).P0 == 3.0
    assert apply_overrides(clock, {"times": "0:10:3"}).times == [0.0, 5.0, 10.0]
    with pytest.raises(ConfigError):
        apply_overrides(clock, {"sigma0": -1.0})


def test_gpe_problem_builds(gpe_problem: Path) -> None:
    config = load_config(gpe_problem)
    species = config.build_species()
    problem = config.gpe.build_problem(species, config.build_wilson())
    state = config.gpe.build_state()

    assert problem.labels == ["trapped"]
    assert problem.masses.tolist() == [1.0]
    assert np.allclose(problem.potentials[0], 0.5 * problem.grid.x**2)
    assert problem.contact[0, 0, 0, 0] == 1.0
    assert float(problem.grid.integrate(np.abs(state.psi[0]) ** 2)) == pytest.approx(1.0)


def test_gpe_requires_singular_table_arrays(tmp_path: Path) -> None:
    path = _write_config(
        tmp_path,
        """
        [species]
        preset = "hydrogen"

        [[gpe.modes]]
        mass = 1.0
        """,
    )

    with pytest.raises(ConfigError) as exc:
        load_config(path)

    assert "[[gpe.mode]]" in str(exc.value)


def test_gpe_mode_needs_exactly_one_source() -> None:
    with pytest.raises(ValueError):
        GpeModeConfig()
    with pytest.raises(ValueError):
        GpeModeConfig(state="1,0,0,0,0", mass=1.0)
    assert GpeModeConfig(mass=1.0, offset="1 eV").offset == pytest.approx(convert(1.0, "eV", "hartree"))


def test_gpe_bound_state_modes_and_couplings(tmp_path: Path) -> None:
    path = _write_config(
        tmp_path,
        """
        [species]
        preset = "hydrogen"

        [gpe]
        length = 10.0
        points = 32

        [[gpe.mode]]
        state = "1,0,0,0,0"

        [[gpe.mode]]
        state = "2,1,0,1,0"
        initial = "empty"

        [[gpe.coupling]]
        a = 0
        b = 1
        rabi = 0.2
        phase = 0.5

        [[gpe.contact]]
        indices = [0, 1, 1, 0]
        value = 0.3
        """,
    )
    config = load_config(path)
    problem = config.gpe.build_problem(config.build_species(), config.build_wilson())
    coupling = problem.coupling_at(0.0)[0]

    assert problem.relative_offsets[0] == 0.0
    assert problem.relative_offsets[1] > 0.0
    assert problem.masses[0] < problem.masses[1]
    assert coupling[0, 1] == pytest.approx(0.1 * complex(math.cos(0.5), math.sin(0.5)))
    assert coupling[1, 0] == pytest.approx(np.conj(coupling[0, 1]))
    assert problem.contact[1, 0, 0, 1] == pytest.approx(0.3)
    assert np.all(config.gpe.build_state().psi[1] == 0.0)


def test_gpe_rejects_out_of_range_indices() -> None:
    base = {"species": {"preset": "hydrogen"}}
    with pytest.raises(ConfigError):
        validate_config({**base, "gpe": {"mode": [{"mass": 1.0}], "coupling": [{"a": 0, "b": 1, "rabi": 1.0}]}})
    with pytest.raises(ConfigError):
        validate_config({**base, "gpe": {"mode": [{"mass": 1.0}], "g": [[1.0, 0.0]]}})
    with pytest.raises(ConfigError):
        validate_config({**base, "gpe": {"mode": [{"mass": 1.0}, {"mass": 1.0}], "coupling": [{"a": 0, "b": 1, "kind": "dipole"}]}})


EXAMPLES_DIR = Path(__file__).resolve().parents[1] / "config_examples"


@pytest.mark.parametrize("name", ["hydrogen.toml", "positronium-overrides.toml", "gpe-trap.toml", "gpe-clock.toml"])
def test_shipped_examples_validate(name: str) -> None:
    config = load_config(EXAMPLES_DIR / name)
    species = config.build_species()
    wilson = config.build_wilson()

    if config.gpe is not None:
        problem = config.gpe.build_problem(species, wilson)
        assert problem.n_modes == len(config.gpe.modes)
    else:
        assert config.clock.build(species).Omega > 0.0


def test_shipped_geometry_loads() -> None:
    scatter = load_section(EXAMPLES_DIR / "geometry.json", ScatterConfig, "scatter")

    assert len(scatter.separations) == 9
    assert len(scatter.angles_rad) == 13


def test_project_dotenv_overrides_environment(tmp_path: Path, monkeypatch) -> None:
    project_dir = tmp_path / "project"
    project_dir.mkdir()
    (project_dir / ".env").write_text("COBOSON_OUTPUT_DIR=from-dotenv\n", encoding="utf-8")

    monkeypatch.chdir(project_dir)
    monkeypatch.setenv("COBOSON_OUTPUT_DIR", "env-value")

    settings._load_dotenv()

    assert os.getenv("COBOSON_OUTPUT_DIR") == "from-dotenv"


def test_settings_read_environment(monkeypatch) -> None:
    monkeypatch.setenv("COBOSON_OUTPUT_DIR", "~/runs")
    monkeypatch.setenv("COBOSON_LOG_LEVEL", "DEBUG")
    get_settings.cache_clear()
    try:
        current = get_settings()
        assert current.log_level == "DEBUG"
        assert current.output_path() == Path("~/runs").expanduser()
    finally:
        get_settings.cache_clear()
