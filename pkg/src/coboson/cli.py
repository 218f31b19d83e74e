"""
Command line interface for the coboson numerics toolkit.
"""

from __future__ import annotations

import logging
import math
import os
import re
import sys
from contextlib import contextmanager
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Iterator, List, NoReturn, Optional, Sequence

import click
import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from . import reports
from .clock import ClockParams, doppler_shift_thermal, doppler_sweep, packet_pair, thermal_momentum_sq
from .config import (
    ClockConfig,
    ConfigError,
    GpeConfig,
    RunConfig,
    ScatterConfig,
    SpeciesConfig,
    WilsonConfig,
    apply_overrides,
    get_settings,
    load_config,
    load_section,
)
from .constants import ATOMIC, SpeciesParams, convert, dump_constants, parse_quantity, species_preset
from .errors import DomainError, NumericError
from .gpe import GpeState, evolve, ground_state, observables
from .scattering import scan_geometry
from .spectrum import (
    QuantumNumbers,
    WilsonCoefficients,
    dispersion_table,
    hyperfine_splitting,
    level_table,
    tree_level,
    validate,
    wilson_preset,
)
from .util import (
    RunManifest,
    ensure_directory,
    manifest_path,
    parse_sweep,
    render_json,
    write_csv,
    write_json,
    write_manifest,
)

console = Console()
err_console = Console(stderr=True, soft_wrap=True)
app = typer.Typer(help="Composite-boson numerics: spectra, clocks, scattering potentials and GPE runs.")
clock_app = typer.Typer(help="Mass-defect clock tables.")
gpe_app = typer.Typer(help="Multi-mode Gross-Pitaevskii runs.")
figures_app = typer.Typer(help="Data tables behind the level, scattering and wave-packet figures.")
app.add_typer(clock_app, name="clock")
app.add_typer(gpe_app, name="gpe")
app.add_typer(figures_app, name="figures")
logger = logging.getLogger(__name__)

LOG_LEVELS = ["critical", "error", "warning", "info", "debug"]
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

NAMED_SWEEPS = {"deltar": "separations", "r": "separations", "separation": "separations", "theta": "angles"}


def _configure_logging(level_name: str) -> None:
    """Configure logging with optional environment override."""
    env_override = os.getenv("COBOSON_LOG_LEVEL")
    level_str = (env_override or level_name or "warning").upper()
    if level_str not in {lvl.upper() for lvl in LOG_LEVELS}:
        level_str = "INFO"
    logging.basicConfig(
        level=getattr(logging, level_str, logging.INFO),
        format=LOG_FORMAT,
    )
    logger.debug("Logging configured at %s", level_str)


def _fail(title: str, exc: BaseException, code: int) -> NoReturn:
    message = " ".join(str(exc).split())
    err_console.print(f"[bold red]{title}:[/] {escape(message)}", highlight=False)
    raise typer.Exit(code=code) from exc


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """Map library exceptions to a one-line message on stderr and an exit code."""
    try:
        yield
    except ConfigError as exc:
        _fail("Configuration error", exc, EXIT_USAGE)
    except DomainError as exc:
        _fail("Invalid input", exc, EXIT_USAGE)
    except NumericError as exc:
        _fail("Numeric failure", exc, EXIT_NUMERIC)
    except OSError as exc:
        _fail("I/O error", exc, EXIT_IO)


def _resolve_config_path(value: Optional[Path]) -> Optional[Path]:
    """Ensure config path exists and return absolute path."""
    if value is None:
        return None
    resolved = value.expanduser().resolve()
    if not resolved.exists():
        raise typer.BadParameter(f"No config file found at {resolved}")
    if not resolved.is_file():
        raise typer.BadParameter(f"Config path must be a file, got directory: {resolved}")
    return resolved


def _load_optional_config(path: Optional[Path]) -> Optional[RunConfig]:
    if path is None:
        return None
    logger.info("Loading configuration from %s", path)
    return load_config(path)


def _output_path(out: Optional[Path], default_name: str) -> Path:
    """--out as given, or `default_name` inside COBOSON_OUTPUT_DIR."""
    if out is not None:
        return out.expanduser()
    return get_settings().output_path() / default_name


def _resolve_species(value: Optional[str], config: Optional[RunConfig]) -> SpeciesParams:
    """Preset name, config file, the loaded run config, or hydrogen."""
    if value is None:
        return config.build_species() if config is not None else species_preset("hydrogen")
    candidate = Path(value).expanduser()
    if candidate.is_file():
        return load_section(candidate, SpeciesConfig, "species").build()
    return species_preset(value)


def _resolve_wilson(value: Optional[str], species: SpeciesParams, config: Optional[RunConfig]) -> WilsonCoefficients:
    if value is None:
        return config.wilson.build(species) if config is not None else tree_level(species)
    candidate = Path(value).expanduser()
    if candidate.is_file():
        return load_section(candidate, WilsonConfig, "wilson").build(species)
    return wilson_preset(value, species)


def _manifest(
    command: str,
    arguments: Dict[str, Any],
    config: Optional[RunConfig] = None,
    wilson: Optional[WilsonCoefficients] = None,
) -> RunManifest:
    normalized = {key: str(value) if isinstance(value, Path) else value for key, value in arguments.items()}
    return RunManifest(
        command=command,
        arguments=normalized,
        config_hash=config.hash if config is not None else None,
        coefficient_set=wilson.name if wilson is not None else None,
    )


def _finish(data_path: Path, manifest: RunManifest, extra: Sequence[Path] = ()) -> None:
    for path in (data_path, *extra):
        manifest.add_output(path)
    main = write_manifest(data_path, manifest)
    # Every extra data file carries its own copy of the run manifest.
    for path in extra:
        if manifest_path(path) != main:
            write_manifest(path, manifest)


def _print_summary(title: str, rows: Sequence[tuple[str, Any]]) -> None:
    table = Table(title=title)
    table.add_column("Key")
    table.add_column("Value", overflow="fold")
    for key, value in rows:
        table.add_row(key, value if isinstance(value, str) else _format_number(value))
    console.print(table)


def _format_number(value: Any) -> str:
    if isinstance(value, bool) or isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _clock_settings(config: Optional[RunConfig], updates: Dict[str, Any]) -> ClockConfig:
    base = config.clock if config is not None else ClockConfig()
    return apply_overrides(base, {key: value for key, value in updates.items() if value is not None})


def _build_clock(
    settings: ClockConfig,
    species: SpeciesParams,
    ground: Optional[str],
    excited: Optional[str],
) -> ClockParams:
    if (ground or excited) and settings.preset is not None:
        settings = apply_overrides(settings, {"preset": None})
    return settings.build(species, ATOMIC)


def _parse_named_sweep(text: str) -> Dict[str, str]:
    """Split "DeltaR=10:100:10,theta=0:1.5708:7" into scatter sweep fields."""
    result: Dict[str, str] = {}
    for part in re.split(r"[;,]\s*(?=[A-Za-z_]+\s*=)", text.strip()):
        name, sep, value = part.partition("=")
        field_name = NAMED_SWEEPS.get(name.strip().lower())
        if not sep or field_name is None:
            raise typer.BadParameter(f"Unknown sweep '{part}'; use DeltaR=... and theta=...")
        result[field_name] = value.strip()
    return result


@app.callback(invoke_without_command=True)
def _root_command(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        help="Show coboson version and exit.",
        is_flag=True,
    ),
    log_level: str = typer.Option(
        "warning",
        "--log-level",
        help="Logging level (critical, error, warning, info, debug).",
        show_default=True,
        case_sensitive=False,
    ),
) -> None:
    """
    Default command when no subcommand is selected.
    """
    _configure_logging(log_level)

    if version:
        console.print(f"[bold green]coboson[/] {__version__}")
        raise typer.Exit()

    if ctx.invoked_subcommand is None:
        console.print(
            "[bold yellow]coboson[/] is ready. Try [cyan]coboson spectrum --species hydrogen --nmax 2[/].",
        )


@app.command("constants")
def constants_command(
    dump: bool = typer.Option(False, "--dump", help="Print the constants table as JSON."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Also write the JSON table to this file."),
    c_scale: float = typer.Option(1.0, "--c-scale", help="Multiply the speed of light (c-scaling checks)."),
) -> None:
    """
    Show or dump the pinned constants table.
    """
    with _exit_on_error():
        table = ATOMIC if c_scale == 1.0 else ATOMIC.with_c_scale(c_scale)
        payload = dump_constants(table)
        if out is not None:
            target = write_json(out.expanduser(), payload)
            _finish(target, _manifest("constants", {"c_scale": c_scale}))
        if dump:
            typer.echo(render_json(payload), nl=False)
        elif out is None:
            _print_summary(
                "Constants",
                [(key, value) for key, value in payload.items() if isinstance(value, (str, int, float))],
            )


@app.command("config-hash")
def config_hash(
    config: Path = typer.Option(
        ...,
        "--config",
        "-c",
        help="Path to configuration TOML.",
        callback=_resolve_config_path,
    ),
) -> None:
    """
    Output the deterministic hash of a config file.
    """
    with _exit_on_error():
        run_config = load_config(config)
    console.print(f"[bold green]{run_config.hash}[/]")


@app.command()
def spectrum(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    wilson: Optional[str] = typer.Option(None, "--wilson", "-w", help="Wilson preset (tree, bare) or config file."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Run configuration TOML/JSON.", callback=_resolve_config_path
    ),
    n_max: Optional[int] = typer.Option(None, "--nmax", min=1, help="Largest principal quantum number."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Level table (.csv, or .json with metadata)."),
    momenta: Optional[str] = typer.Option(None, "--momenta", help="c.m. momentum sweep for the dispersion table."),
    dispersion_out: Optional[Path] = typer.Option(None, "--dispersion-out", help="Write the dispersion table here."),
    threads: int = typer.Option(1, "--threads", min=1, help="Worker threads for the level table."),
) -> None:
    """
    Tabulate E0, E1 and the mass defect of every state up to n_max.
    """
    with _exit_on_error():
        run_config = _load_optional_config(config)
        species_params = _resolve_species(species, run_config)
        coefficients = _resolve_wilson(wilson, species_params, run_config)
        settings = run_config.spectrum if run_config is not None else None
        n_max = n_max or (settings.n_max if settings is not None else 2)
        levels = level_table(species_params, coefficients, n_max, threads=threads)
        target = _output_path(out, "levels.csv")
        arguments = {"species": species_params.name, "wilson": coefficients.name, "n_max": n_max, "out": target}
        manifest = _manifest("spectrum", arguments, run_config, coefficients)

        if target.suffix.lower() == ".json":
            payload = {
                "metadata": {
                    "constants_version": manifest.constants_version,
                    "coefficient_set": coefficients.as_dict(),
                    "species": asdict(species_params),
                    "n_max": n_max,
                },
                "levels": reports.level_records(levels),
            }
            target = write_json(target, payload)
        else:
            target = write_csv(target, reports.LEVEL_COLUMNS, reports.level_rows(levels))

        extra: List[Path] = []
        if dispersion_out is not None:
            include_P4 = settings.include_P4 if settings is not None else True
            sweep = parse_sweep(momenta) if momenta is not None else (settings.momenta if settings else [0.0])
            samples = dispersion_table(species_params, coefficients, n_max, sweep, include_P4=include_P4)
            extra.append(write_csv(dispersion_out.expanduser(), reports.DISPERSION_COLUMNS, reports.dispersion_rows(samples)))
        splitting = hyperfine_splitting(species_params, coefficients)
        manifest.diagnostics = {"states": len(levels), "hyperfine_1S_hartree": splitting}
        _finish(target, manifest, extra)

    _print_summary(
        "Level Table Summary",
        [
            ("Species", species_params.name),
            ("Coefficient set", coefficients.name),
            ("States", len(levels)),
            ("1S hyperfine (MHz)", convert(splitting, "hartree", "MHz")),
            ("Output", str(target)),
        ],
    )


@app.command()
def oracle(
    beta: Optional[str] = typer.Option(None, "--beta", "-b", help="State 'n,l,S,j,mj'."),
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    wilson: Optional[str] = typer.Option(None, "--wilson", "-w", help="Wilson preset (tree, bare) or config file."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Run configuration TOML/JSON.", callback=_resolve_config_path
    ),
    n_max: Optional[int] = typer.Option(None, "--nmax", min=1, help="Compare every state up to n_max."),
    report: bool = typer.Option(False, "--report", help="Print the per-term breakdown as JSON."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file (.json for --beta, .csv for --nmax)."),
    threads: int = typer.Option(1, "--threads", min=1, help="Worker threads for --nmax sweeps."),
) -> None:
    """
    Evaluate first-order shifts by quadrature and compare with the closed form.
    """
    if beta is None and n_max is None:
        raise typer.BadParameter("Pass --beta n,l,S,j,mj or --nmax K.")
    with _exit_on_error():
        run_config = _load_optional_config(config)
        species_params = _resolve_species(species, run_config)
        coefficients = _resolve_wilson(wilson, species_params, run_config)

        if beta is not None:
            state = validate(QuantumNumbers.parse(beta))
            payload = reports.oracle_payload(species_params, coefficients, state)
            if out is not None:
                target = write_json(out.expanduser(), payload)
                _finish(target, _manifest("oracle", {"beta": beta, "out": target}, run_config, coefficients))
            if report or out is None:
                typer.echo(render_json(payload), nl=False)

        if n_max is not None:
            rows = reports.oracle_rows(species_params, coefficients, n_max, threads=threads)
            target = _output_path(out if beta is None else None, "oracle.csv")
            target = write_csv(target, reports.ORACLE_COLUMNS, rows)
            worst = max(row[-1] for row in rows)
            manifest = _manifest("oracle", {"n_max": n_max, "out": target}, run_config, coefficients)
            manifest.diagnostics = {"states": len(rows), "max_relative_difference": worst}
            _finish(target, manifest)
            _print_summary(
                "Oracle Comparison",
                [("States", len(rows)), ("Max relative difference", worst), ("Output", str(target))],
            )


@clock_app.command("doppler")
def clock_doppler(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Run configuration TOML/JSON.", callback=_resolve_config_path
    ),
    ground: Optional[str] = typer.Option(None, "--g", help="Ground state 'n,l,S,j,mj'."),
    excited: Optional[str] = typer.Option(None, "--e", help="Excited state 'n,l,S,j,mj'."),
    preset: Optional[str] = typer.Option(None, "--preset", help="Measured clock transition, e.g. strontium88."),
    vsweep: Optional[str] = typer.Option(None, "--vsweep", help="Velocities 'v0:v1:steps' (units allowed, e.g. '0:0.03 c:4')."),
    temperature: Optional[str] = typer.Option(None, "--temperature", help="k_B T for a thermal estimate, e.g. '1e-6 K'."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output (v, Omega_shifted, relative_shift)."),
) -> None:
    """
    Second-order Doppler shift of the clock frequency over a velocity sweep.
    """
    with _exit_on_error():
        run_config = _load_optional_config(config)
        species_params = _resolve_species(species, run_config)
        settings = _clock_settings(
            run_config,
            {
                "ground": ground,
                "excited": excited,
                "preset": preset,
                "velocities": vsweep,
                "temperature": temperature,
            },
        )
        clock = _build_clock(settings, species_params, ground, excited)
        samples = doppler_sweep(clock.Omega, settings.velocities)
        target = write_csv(_output_path(out, "doppler.csv"), reports.DOPPLER_COLUMNS, reports.doppler_rows(samples))
        manifest = _manifest("clock doppler", {"clock": clock.name, "out": target}, run_config)
        manifest.diagnostics = {
            "M_bar": clock.M_bar,
            "Omega": clock.Omega,
            "relative_frequency": clock.relative_frequency,
        }
        rows: List[tuple[str, Any]] = [
            ("Clock", clock.name),
            ("Mean mass", clock.M_bar),
            ("hbar Omega (hartree)", clock.Omega),
            ("Omega (Hz)", convert(clock.Omega, "hartree", "Hz")),
            ("hbar Omega / (M_bar c^2)", clock.relative_frequency),
        ]
        if settings.temperature is not None:
            P_sq = thermal_momentum_sq(clock.M_bar, settings.temperature)
            thermal = doppler_shift_thermal(clock.Omega, P_sq, clock.M_bar) / clock.Omega - 1.0
            manifest.diagnostics["thermal_relative_shift"] = thermal
            rows.append(("Thermal relative shift", thermal))
        _finish(target, manifest)
    rows.append(("Output", str(target)))
    _print_summary("Clock Summary", rows)


def _packet_table(
    command: str,
    species: Optional[str],
    config: Optional[Path],
    ground: Optional[str],
    excited: Optional[str],
    preset: Optional[str],
    t_sweep: Optional[str],
    x0: Optional[str],
    sigma0: Optional[str],
    P0: Optional[float],
    out: Optional[Path],
    default_name: str,
) -> None:
    with _exit_on_error():
        run_config = _load_optional_config(config)
        species_params = _resolve_species(species, run_config)
        settings = _clock_settings(
            run_config,
            {
                "ground": ground,
                "excited": excited,
                "preset": preset,
                "times": t_sweep,
                "x0": x0,
                "sigma0": sigma0,
                "P0": P0,
            },
        )
        clock = _build_clock(settings, species_params, ground, excited)
        samples = packet_pair(clock, settings.x0, settings.sigma0, settings.P0, settings.times)
        target = write_csv(_output_path(out, default_name), reports.PACKET_COLUMNS, reports.packet_rows(samples))
        manifest = _manifest(command, {"clock": clock.name, "out": target}, run_config)
        manifest.diagnostics = {"M_g": clock.M_g, "M_e": clock.M_e, "velocity_ratio_g_over_e": clock.M_e / clock.M_g}
        _finish(target, manifest)
    _print_summary(
        "Wave-Packet Summary",
        [
            ("Clock", clock.name),
            ("M_g", clock.M_g),
            ("M_e", clock.M_e),
            ("v_g / v_e", clock.M_e / clock.M_g),
            ("Output", str(target)),
        ],
    )


@clock_app.command("packet")
def clock_packet(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Run configuration TOML/JSON.", callback=_resolve_config_path
    ),
    ground: Optional[str] = typer.Option(None, "--g", help="Ground state 'n,l,S,j,mj'."),
    excited: Optional[str] = typer.Option(None, "--e", help="Excited state 'n,l,S,j,mj'."),
    preset: Optional[str] = typer.Option(None, "--preset", help="Measured clock transition, e.g. strontium88."),
    t_sweep: Optional[str] = typer.Option(None, "--t-sweep", help="Times 't0:t1:steps' (units allowed)."),
    x0: Optional[str] = typer.Option(None, "--x0", help="Initial center."),
    sigma0: Optional[str] = typer.Option(None, "--sigma0", help="Initial width."),
    P0: Optional[float] = typer.Option(None, "--P0", help="Common initial momentum (atomic units)."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output (t, center_g, width_g, center_e, width_e)."),
) -> None:
    """
    Free Gaussian packets of the ground and excited masses with a common momentum.
    """
    _packet_table("clock packet", species, config, ground, excited, preset, t_sweep, x0, sigma0, P0, out, "packet.csv")


@app.command()
def scatter(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    wilson: Optional[str] = typer.Option(None, "--wilson", "-w", help="Wilson preset (tree, bare) or config file."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Run configuration TOML/JSON.", callback=_resolve_config_path
    ),
    geometry: Optional[Path] = typer.Option(
        None, "--geometry", "-g", help="Geometry JSON/TOML (first/second coboson vectors).", callback=_resolve_config_path
    ),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="'DeltaR=v0:v1:n,theta=v0:v1:n'."),
    degrees: bool = typer.Option(False, "--degrees", help="Angles in the sweep are in degrees."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output."),
    threads: int = typer.Option(1, "--threads", min=1, help="Worker threads for the geometry scan."),
) -> None:
    """
    Scattering potential components over separations and angles.
    """
    updates: Dict[str, Any] = _parse_named_sweep(sweep) if sweep else {}
    if degrees:
        updates["angle_unit"] = "deg"
    with _exit_on_error():
        run_config = _load_optional_config(config)
        species_params = _resolve_species(species, run_config)
        coefficients = _resolve_wilson(wilson, species_params, run_config)
        if geometry is not None:
            settings = load_section(geometry, ScatterConfig, "scatter")
        else:
            settings = run_config.scatter if run_config is not None else ScatterConfig()
        settings = apply_overrides(settings, updates)
        rows = scan_geometry(
            species_params,
            coefficients,
            settings.first.build(),
            settings.second.build(),
            settings.separations,
            settings.angles_rad,
            threads=threads,
        )
        target = write_csv(_output_path(out, "scatter.csv"), reports.SCAN_COLUMNS, reports.scan_rows(rows))
        manifest = _manifest("scatter", {"geometry": geometry, "sweep": sweep, "out": target}, run_config, coefficients)
        manifest.diagnostics = {"points": len(rows)}
        _finish(target, manifest)
    _print_summary(
        "Scattering Scan",
        [("Species", species_params.name), ("Points", len(rows)), ("Output", str(target))],
    )


def _gpe_settings(config: RunConfig, updates: Dict[str, Any]) -> GpeConfig:
    if config.gpe is None:
        raise ConfigError("The problem file has no [gpe] table.")
    return apply_overrides(config.gpe, {key: value for key, value in updates.items() if value is not None})


def _snapshot_writer(directory: Path, problem, rows: List[List[Any]], written: List[Path]):
    columns = reports.field_columns(problem)
    observable_header = reports.observable_columns(problem)
    snapped: Dict[int, Any] = {}

    def snapshot(state: GpeState) -> None:
        if state.step_index in snapped:
            return
        path = directory / f"snapshot_{state.step_index:07d}.csv"
        written.append(write_csv(path, columns, reports.field_rows(problem, state)))
        obs = observables(state, problem)
        snapped[state.step_index] = obs
        rows.append(reports.observable_row(state.step_index, obs))

    return snapshot, observable_header, snapped


@gpe_app.command("run")
def gpe_run(
    problem_path: Path = typer.Option(
        ..., "--problem", "-p", help="Problem TOML/JSON with [species] and [gpe].", callback=_resolve_config_path
    ),
    tmax: Optional[str] = typer.Option(None, "--tmax", help="Total time (overrides the step count)."),
    dt: Optional[str] = typer.Option(None, "--dt", help="Time step."),
    snap_every: Optional[int] = typer.Option(None, "--snap-every", min=0, help="Snapshot interval in steps."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
) -> None:
    """
    Real-time evolution with per-snapshot field tables and a run manifest.
    """
    with _exit_on_error():
        run_config = load_config(problem_path)
        settings = _gpe_settings(run_config, {"dt": dt, "snap_every": snap_every})
        steps = settings.steps
        if tmax is not None:
            steps = max(1, round(parse_quantity(tmax, "time") / settings.dt))
        species_params = run_config.build_species()
        coefficients = run_config.build_wilson()
        problem = settings.build_problem(species_params, coefficients)
        state = settings.build_state()
        directory = ensure_directory(_output_path(out, "gpe"))

        rows: List[List[Any]] = []
        written: List[Path] = []
        snapshot, header, snapped = _snapshot_writer(directory, problem, rows, written)
        if settings.snap_every == 0:
            snapshot(state)
        final = evolve(problem, state, settings.dt, steps, settings.snap_every, snapshot)
        snapshot(final)
        observables_path = write_csv(directory / "observables.csv", header, rows)

        first, last = snapped[0], snapped[final.step_index]
        norm_drift, energy_drift = reports.conservation_drift(first, last, steps)
        manifest = _manifest(
            "gpe run",
            {"problem": problem_path, "dt": settings.dt, "steps": steps, "snap_every": settings.snap_every},
            run_config,
            coefficients,
        )
        manifest.diagnostics = {
            "grid": {"length": problem.grid.length, "points": problem.grid.points},
            "modes": problem.labels,
            "masses": problem.masses.tolist(),
            "reference_energy": float(problem.reference_energy),
            "include_P4": problem.include_P4,
            "bare_mass": float(problem.bare_mass),
            "final_time": final.t,
            "norm_drift_per_1000_steps": norm_drift,
            "energy_drift_per_1000_steps": energy_drift,
        }
        _finish(directory, manifest, [*written, observables_path])
    _print_summary(
        "GPE Run",
        [
            ("Modes", ", ".join(problem.labels)),
            ("Steps", steps),
            ("Final time", final.t),
            ("Norm drift / 1000 steps", norm_drift),
            ("Energy drift / 1000 steps", energy_drift),
            ("Output", str(directory)),
        ],
    )


@gpe_app.command("ground")
def gpe_ground(
    problem_path: Path = typer.Option(
        ..., "--problem", "-p", help="Problem TOML/JSON with [species] and [gpe].", callback=_resolve_config_path
    ),
    tol: Optional[float] = typer.Option(None, "--tol", help="Relative energy tolerance."),
    dtau: Optional[float] = typer.Option(None, "--dtau", help="Imaginary time step."),
    max_iter: Optional[int] = typer.Option(None, "--max-iter", min=1, help="Iteration cap."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
) -> None:
    """
    Imaginary-time relaxation to the lowest state at the configured mode weights.
    """
    with _exit_on_error():
        run_config = load_config(problem_path)
        settings = _gpe_settings(run_config, {"tol": tol, "dtau": dtau, "max_iter": max_iter})
        species_params = run_config.build_species()
        coefficients = run_config.build_wilson()
        problem = settings.build_problem(species_params, coefficients)
        result = ground_state(
            problem,
            settings.weights,
            settings.tol,
            dtau=settings.dtau,
            max_iter=settings.max_iter,
            initial=settings.build_state(),
        )
        directory = ensure_directory(_output_path(out, "gpe"))
        field_path = write_csv(
            directory / "ground.csv", reports.field_columns(problem), reports.field_rows(problem, result.state)
        )
        history_path = write_csv(
            directory / "relaxation.csv", ("iteration", "energy"), list(enumerate(result.energies))
        )
        obs = observables(result.state, problem)
        manifest = _manifest(
            "gpe ground",
            {"problem": problem_path, "tol": settings.tol, "dtau": settings.dtau, "max_iter": settings.max_iter},
            run_config,
            coefficients,
        )
        manifest.diagnostics = {
            "iterations": result.iterations,
            "energy": result.energy,
            "energy_absolute": result.energy_absolute,
            "chemical_potential": result.chemical_potential,
            "chemical_potential_absolute": result.chemical_potential_absolute,
            "norms": list(obs.norms),
            "widths": list(obs.widths),
        }
        _finish(field_path, manifest, [history_path])
    _print_summary(
        "GPE Ground State",
        [
            ("Iterations", result.iterations),
            ("Energy", result.energy),
            ("Chemical potential", result.chemical_potential),
            ("Output", str(field_path)),
        ],
    )


@figures_app.command("fig4")
def figure_levels(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    wilson: Optional[str] = typer.Option(None, "--wilson", "-w", help="Wilson preset (tree, bare) or config file."),
    n_max: int = typer.Option(3, "--nmax", min=1, help="Largest principal quantum number."),
    momenta: str = typer.Option("0:60:31", "--momenta", help="c.m. momentum sweep."),
    include_P4: bool = typer.Option(True, "--P4/--no-P4", help="Include the P^4 correction."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output."),
) -> None:
    """
    Level-resolved c.m. dispersion (energy minus the bare rest energy).
    """
    with _exit_on_error():
        species_params = _resolve_species(species, None)
        coefficients = _resolve_wilson(wilson, species_params, None)
        samples = dispersion_table(species_params, coefficients, n_max, parse_sweep(momenta), include_P4=include_P4)
        target = write_csv(_output_path(out, "fig4.csv"), reports.DISPERSION_COLUMNS, reports.dispersion_rows(samples))
        arguments = {"species": species_params.name, "n_max": n_max, "momenta": momenta, "include_P4": include_P4}
        _finish(target, _manifest("figures fig4", arguments, None, coefficients))
    _print_summary("Figure Data", [("Rows", len(samples)), ("Output", str(target))])


def _angular_figure(name: str, Z: int, a: float, separations: str, angles: str, out: Optional[Path]) -> None:
    with _exit_on_error():
        if Z < 1:
            raise DomainError(f"Z must be >= 1, got {Z}")
        rows = reports.angular_rows(Z, a, parse_sweep(separations, "length"), parse_sweep(angles))
        target = write_csv(_output_path(out, f"{name}.csv"), reports.ANGULAR_COLUMNS, rows)
        arguments = {"Z": Z, "a": a, "separations": separations, "angles": angles}
        _finish(target, _manifest(f"figures {name}", arguments))
    _print_summary(
        "Figure Data",
        [
            ("Z", Z),
            ("Sign change at theta", math.acos(1.0 / math.sqrt(3.0)) if Z == 1 else "none (monopole dominated)"),
            ("Rows", len(rows)),
            ("Output", str(target)),
        ],
    )


@figures_app.command("fig5a")
def figure_charged(
    Z: int = typer.Option(2, "--Z", help="Nuclear charge number."),
    a: float = typer.Option(1.0, "--a", help="Internal separation |r| = |r'|."),
    separations: str = typer.Option("2:20:37", "--separations", help="|DeltaR| sweep."),
    angles: str = typer.Option("0:3.141592653589793:61", "--angles", help="Angle sweep in radians."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output."),
) -> None:
    """
    Aligned-dipole potential of charged cobosons (monopole dominated).
    """
    _angular_figure("fig5a", Z, a, separations, angles, out)


@figures_app.command("fig5b")
def figure_neutral(
    Z: int = typer.Option(1, "--Z", help="Nuclear charge number."),
    a: float = typer.Option(1.0, "--a", help="Internal separation |r| = |r'|."),
    separations: str = typer.Option("2:20:37", "--separations", help="|DeltaR| sweep."),
    angles: str = typer.Option("0:3.141592653589793:61", "--angles", help="Angle sweep in radians."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output."),
) -> None:
    """
    Aligned-dipole potential of neutral cobosons; the sign flips at cos^2 theta = 1/3.
    """
    _angular_figure("fig5b", Z, a, separations, angles, out)


@figures_app.command("fig6")
def figure_packets(
    species: Optional[str] = typer.Option(None, "--species", "-s", help="Species preset or config file."),
    ground: Optional[str] = typer.Option("1,0,0,0,0", "--g", help="Ground state 'n,l,S,j,mj'."),
    excited: Optional[str] = typer.Option("2,1,0,1,0", "--e", help="Excited state 'n,l,S,j,mj'."),
    t_sweep: str = typer.Option("0:1e6:21", "--t-sweep", help="Times 't0:t1:steps'."),
    sigma0: str = typer.Option("10", "--sigma0", help="Initial width."),
    P0: float = typer.Option(10.0, "--P0", help="Common initial momentum."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output."),
) -> None:
    """
    Ground and excited wave packets with a common initial momentum.
    """
    _packet_table("figures fig6", species, None, ground, excited, None, t_sweep, None, sigma0, P0, out, "fig6.csv")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    0 on success, 2 for configuration, validation and usage errors, 3 for
    numeric failures and 1 for I/O errors.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = app(args=args, prog_name="coboson", standalone_mode=False)
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return exc.exit_code
    except click.Abort:
        err_console.print("[bold red]Aborted.[/]")
        return EXIT_IO
    return result if isinstance(result, int) else 0


def main() -> None:
    """
    Entry-point used by the console script defined in pyproject.toml.
    """
    raise SystemExit(run(sys.argv[1:]))
