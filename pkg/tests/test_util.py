import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from coboson.constants import ATOMIC
from coboson.errors import DomainError, UnitError
from coboson.util import (
    RunManifest,
    format_value,
    manifest_path,
    parse_sweep,
    records_to_rows,
    render_csv,
    render_json,
    write_csv,
    write_manifest,
)


@dataclass
class _Row:
    n: int
    energy: float
    flag: bool


def test_format_value_is_round_trippable() -> None:
    value = 0.1 + 0.2

    assert format_value(value) == "3.0000000000000004e-01"
    assert float(format_value(value)) == value
    assert format_value(np.float64(-2.5)) == "-2.5000000000000000e+00"
    assert format_value(3) == "3"
    assert format_value(np.int64(7)) == "7"
    assert format_value(True) == "1"
    assert format_value("1S") == "1S"


def test_render_csv_header_and_rows() -> None:
    text = render_csv(["n", "energy"], [[1, -0.5], [2, -0.125]])

    assert text.splitlines() == [
        "n,energy",
        "1,-5.0000000000000000e-01",
        "2,-1.2500000000000000e-01",
    ]
    with pytest.raises(ValueError):
        render_csv(["n", "energy"], [[1]])


def test_records_to_rows_picks_columns() -> None:
    rows = records_to_rows([_Row(1, -0.5, True), {"n": 2, "energy": 0.0, "flag": False}], ["energy", "n"])

    assert rows == [[-0.5, 1], [0.0, 2]]


def test_render_json_sorts_keys_and_handles_numpy() -> None:
    text = render_json({"b": np.array([1.0, 2.0]), "a": np.float64(0.5), "path": Path("x.csv")})

    assert list(json.loads(text)) == ["a", "b", "path"]
    assert json.loads(text)["b"] == [1.0, 2.0]
    assert text.endswith("\n")


@pytest.mark.parametrize(
    "sweep, expected",
    [
        ("0:1:3", [0.0, 0.5, 1.0]),
        ("1, 2,3", [1.0, 2.0, 3.0]),
        ("2.5:9:1", [2.5]),
        (4, [4.0]),
        ([1, "2"], [1.0, 2.0]),
    ],
)
def test_parse_sweep_forms(sweep, expected) -> None:
    assert parse_sweep(sweep) == expected


def test_parse_sweep_units() -> None:
    velocities = parse_sweep("0:0.02 c:3", "velocity")

    assert velocities == pytest.approx([0.0, 0.01 * ATOMIC.c, 0.02 * ATOMIC.c])
    with pytest.raises(UnitError):
        parse_sweep("0:1 eV:3", "length")


@pytest.mark.parametrize("sweep", ["0:1:0", "0:1", "0:1:x", "0:1:2:3"])
def test_parse_sweep_rejects_malformed_ranges(sweep: str) -> None:
    with pytest.raises(DomainError):
        parse_sweep(sweep)


def test_manifest_path_for_files_and_directories(tmp_path: Path) -> None:
    run_dir = tmp_path / "gpe"
    run_dir.mkdir()

    assert manifest_path(tmp_path / "levels.csv") == tmp_path / "levels.manifest.json"
    assert manifest_path(tmp_path / "levels") == tmp_path / "levels.manifest.json"
    assert manifest_path(run_dir) == run_dir / "run.manifest.json"


def test_write_csv_and_manifest(tmp_path: Path) -> None:
    data = write_csv(tmp_path / "nested" / "levels.csv", ["n"], [[1], [2]])
    manifest = RunManifest(command="spectrum", arguments={"nmax": 2})
    manifest.add_output(data)
    manifest.add_output(data)
    sidecar = write_manifest(data, manifest)

    assert data.read_text(encoding="utf-8") == "n\n1\n2\n"
    payload = json.loads(sidecar.read_text(encoding="utf-8"))
    assert sidecar.name == "levels.manifest.json"
    assert payload["command"] == "spectrum"
    assert payload["outputs"] == [str(data)]
    assert payload["finished_at"] is not None
    assert not list(data.parent.glob("*.tmp"))
