import logging
import math

import numpy as np
import pytest

from coboson.clock import GaussianPacket, packet_evolve
from coboson.errors import ConvergenceError, DomainError
from coboson.gpe import (
    GpeMode,
    GpeProblem,
    GpeState,
    Grid1D,
    cfl_limit,
    check_cfl,
    constant_coupling,
    density_contact,
    evolve,
    gaussian_field,
    ground_state,
    initial_state,
    mode_from_state,
    observables,
    plane_wave_field,
    step,
    thomas_fermi_density,
)
from coboson.constants import ATOMIC
from coboson.spectrum import QuantumNumbers, energy0


def _harmonic_mode(grid: Grid1D, label: str = "trapped", mass: float = 1.0, omega: float = 1.0) -> GpeMode:
    return GpeMode(label=label, mass=mass, potential=0.5 * mass * omega**2 * grid.x**2)


def test_grid_layout() -> None:
    grid = Grid1D(length=10.0, points=8)

    assert grid.dx == pytest.approx(1.25)
    assert grid.x[0] == pytest.approx(-5.0)
    assert grid.x[4] == 0.0
    assert grid.k[1] == pytest.approx(2.0 * math.pi / 10.0)
    assert float(grid.integrate(np.ones(8))) == pytest.approx(10.0)
    with pytest.raises(DomainError):
        Grid1D(length=0.0, points=8)
    with pytest.raises(DomainError):
        Grid1D(length=1.0, points=1)


def test_initial_fields_are_normalized() -> None:
    grid = Grid1D(length=40.0, points=512)

    assert float(grid.integrate(np.abs(gaussian_field(grid, 1.0, 2.0, 0.5)) ** 2)) == pytest.approx(1.0)
    assert float(grid.integrate(np.abs(plane_wave_field(grid, 3)) ** 2)) == pytest.approx(1.0)
    state = initial_state(grid, [gaussian_field(grid), None])
    assert state.psi.shape == (2, 512)
    assert np.all(state.psi[1] == 0.0)
    with pytest.raises(DomainError):
        gaussian_field(grid, sigma=0.0)


def test_mode_from_state_uses_state_mass(positronium) -> None:
    from coboson.spectrum import tree_level

    mode = mode_from_state(positronium, tree_level(positronium), QuantumNumbers(1, 0, 0, 0, 0), include_E1=False)

    assert mode.mass == pytest.approx(2.0 + energy0(positronium, 1) / ATOMIC.c**2, rel=1e-15)
    assert mode.offset == pytest.approx(-0.25)
    assert mode.rest_energy == pytest.approx(2.0 * ATOMIC.c**2)
    assert mode.label == "1S(S=0,j=0,mj=0)"


def test_problem_validation() -> None:
    grid = Grid1D(length=10.0, points=16)
    modes = [GpeMode("a", 1.0), GpeMode("b", 1.0)]

    with pytest.raises(DomainError):
        GpeMode("bad", 0.0)
    with pytest.raises(DomainError):
        GpeProblem(grid=grid, modes=[])
    with pytest.raises(DomainError):
        GpeProblem(grid=grid, modes=modes, coupling=np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(DomainError):
        GpeProblem(grid=grid, modes=modes, contact=np.zeros((2, 2)))
    with pytest.raises(DomainError):
        GpeProblem(grid=grid, modes=[GpeMode("a", 1.0, potential=np.zeros(4))])

    hermitian = constant_coupling(2, {(0, 1): 0.5 + 0.5j})
    assert hermitian[1, 0] == pytest.approx(0.5 - 0.5j)
    with pytest.raises(DomainError):
        constant_coupling(2, {(0, 2): 1.0})


def test_exchange_asymmetric_contact_warns(caplog) -> None:
    grid = Grid1D(length=10.0, points=16)
    eta = np.zeros((2, 2, 2, 2), dtype=complex)
    eta[0, 1, 0, 0] = 1.0
    eta[0, 0, 0, 1] = 1.0

    with caplog.at_level(logging.WARNING):
        GpeProblem(grid=grid, modes=[GpeMode("a", 1.0), GpeMode("b", 1.0)], contact=eta)

    assert "exchange symmetric" in caplog.text


def test_reference_energy_defaults_to_lowest_mode() -> None:
    grid = Grid1D(length=10.0, points=16)
    problem = GpeProblem(
        grid=grid,
        modes=[GpeMode("g", 1.0, offset=-0.5, rest_energy=1e7), GpeMode("e", 1.0, offset=-0.125, rest_energy=1e7)],
    )

    assert problem.reference_energy == pytest.approx(1e7 - 0.5)
    assert problem.relative_offsets.tolist() == [0.0, 0.375]
    assert problem.bare_mass == 1.0


def test_cfl_limit_and_warning(caplog) -> None:
    grid = Grid1D(length=20.0, points=128)
    problem = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)])
    limit = cfl_limit(problem)

    assert limit == pytest.approx(2.0 * math.pi / (0.5 * (math.pi / grid.dx) ** 2))
    assert check_cfl(problem, 0.5 * limit)
    with caplog.at_level(logging.WARNING):
        assert not check_cfl(problem, 2.0 * limit)
    assert "exceeds" in caplog.text


def test_step_rejects_bad_inputs() -> None:
    grid = Grid1D(length=10.0, points=16)
    problem = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)])
    state = initial_state(grid, [gaussian_field(grid)])

    with pytest.raises(DomainError):
        step(problem, state, 0.0)
    with pytest.raises(DomainError):
        step(problem, GpeState(psi=np.zeros((2, 16))), 0.01)
    with pytest.raises(DomainError):
        evolve(problem, state, 0.01, -1)


def test_harmonic_ground_state() -> None:
    grid = Grid1D(length=20.0, points=256)
    problem = GpeProblem(grid=grid, modes=[_harmonic_mode(grid)])
    result = ground_state(problem, [1.0], 1e-12, dtau=1e-3)

    assert abs(result.energy - 0.5) < 1e-8
    assert result.chemical_potential == pytest.approx(0.5, abs=1e-6)
    assert result.energies[-1] <= result.energies[0]
    obs = observables(result.state, problem)
    assert obs.total_norm == pytest.approx(1.0, rel=1e-12)
    assert obs.widths[0] == pytest.approx(math.sqrt(0.5), rel=1e-4)
    assert abs(obs.centers[0]) < 1e-8


def test_ground_state_reports_absolute_energies() -> None:
    grid = Grid1D(length=20.0, points=128)
    mode = GpeMode("trapped", 1.0, offset=-0.25, potential=0.5 * grid.x**2, rest_energy=1e6)
    problem = GpeProblem(grid=grid, modes=[mode])
    result = ground_state(problem, [2.0], 1e-10, dtau=5e-3)

    assert result.energy == pytest.approx(1.0, abs=1e-4)
    assert result.energy_absolute == pytest.approx(1.0 + 2.0 * (1e6 - 0.25), rel=1e-12)
    assert result.chemical_potential_absolute == pytest.approx(0.5 + 1e6 - 0.25, rel=1e-12)


def test_ground_state_convergence_failure() -> None:
    grid = Grid1D(length=20.0, points=64)
    problem = GpeProblem(grid=grid, modes=[_harmonic_mode(grid)])

    with pytest.raises(ConvergenceError) as exc:
        ground_state(problem, [1.0], 1e-14, dtau=1e-3, max_iter=3)
    assert len(exc.value.history) == 3
    with pytest.raises(DomainError):
        ground_state(problem, [-1.0])


def test_thomas_fermi_limit() -> None:
    grid = Grid1D(length=40.0, points=512)
    problem = GpeProblem(grid=grid, modes=[_harmonic_mode(grid)], contact=density_contact([[1000.0]]))
    result = ground_state(problem, [1.0], 1e-10, dtau=5e-3)
    density, mu = thomas_fermi_density(problem)

    # 1D harmonic trap: N = 4 mu sqrt(2 mu) / (3 g).
    assert mu == pytest.approx((750.0 / math.sqrt(2.0)) ** (2.0 / 3.0), rel=1e-3)
    assert result.chemical_potential == pytest.approx(mu, rel=0.02)
    numeric = np.abs(result.state.psi[0]) ** 2
    assert float(grid.integrate(np.abs(numeric - density))) < 0.03


def test_thomas_fermi_needs_repulsion() -> None:
    grid = Grid1D(length=10.0, points=16)
    problem = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)])

    with pytest.raises(DomainError):
        thomas_fermi_density(problem)


def test_real_time_conserves_norm_and_energy() -> None:
    grid = Grid1D(length=20.0, points=256)
    problem = GpeProblem(grid=grid, modes=[_harmonic_mode(grid)], contact=density_contact([[1.0]]))
    state = initial_state(grid, [gaussian_field(grid, center=1.0, sigma=0.8)])
    first = observables(state, problem)
    final = evolve(problem, state, 5e-4, 1000)
    last = observables(final, problem)

    assert final.step_index == 1000
    assert final.t == pytest.approx(0.5)
    assert last.total_norm == pytest.approx(first.total_norm, abs=1e-10)
    assert abs(last.energy - first.energy) / abs(first.energy) < 1e-8
    # The center oscillates at the trap frequency.
    assert last.centers[0] == pytest.approx(math.cos(0.5), abs=1e-3)


def test_strang_splitting_is_second_order() -> None:
    grid = Grid1D(length=20.0, points=128)
    problem = GpeProblem(grid=grid, modes=[_harmonic_mode(grid)])
    state = initial_state(grid, [gaussian_field(grid, center=1.0, sigma=1.0, momentum=0.5)])

    def run(dt: float):
        return evolve(problem, state, dt, int(round(1.0 / dt))).psi[0]

    reference = run(0.02 / 16)
    coarse = float(np.sqrt(grid.integrate(np.abs(run(0.02) - reference) ** 2)))
    fine = float(np.sqrt(grid.integrate(np.abs(run(0.01) - reference) ** 2)))

    assert coarse > 1e-10
    assert 3.5 < coarse / fine < 4.5


def test_rabi_oscillation_matches_two_level_formula() -> None:
    grid = Grid1D(length=10.0, points=16)
    rabi, detuning = 1.0, 0.5
    problem = GpeProblem(
        grid=grid,
        modes=[GpeMode("g", 1.0, offset=-0.5 * detuning), GpeMode("e", 1.0, offset=0.5 * detuning)],
        coupling=constant_coupling(2, {(0, 1): 0.5 * rabi}),
    )
    state = initial_state(grid, [np.full(grid.points, 1.0 / math.sqrt(grid.length), dtype=complex), None])

    final = evolve(problem, state, 0.01, 300)
    obs = observables(final, problem)
    generalized = math.hypot(rabi, detuning)
    expected = (rabi / generalized) ** 2 * math.sin(0.5 * generalized * final.t) ** 2

    assert obs.populations[1] == pytest.approx(expected, abs=1e-10)
    assert sum(obs.populations) == pytest.approx(1.0, abs=1e-12)


def test_modes_with_different_masses_dephase(positronium) -> None:
    from coboson.spectrum import tree_level

    wilson = tree_level(positronium)
    grid = Grid1D(length=10.0 * math.pi, points=128)
    modes = [
        mode_from_state(positronium, wilson, QuantumNumbers(1, 0, 0, 0, 0), include_E1=False),
        mode_from_state(positronium, wilson, QuantumNumbers(2, 1, 0, 1, 0), include_E1=False),
    ]
    problem = GpeProblem(grid=grid, modes=modes)
    wave = plane_wave_field(grid, 10)
    state = initial_state(grid, [wave / math.sqrt(2.0), wave / math.sqrt(2.0)])

    final = evolve(problem, state, 0.01, 500)
    obs = observables(final, problem)
    k = grid.wavenumber(10)
    energies = problem.relative_offsets + k * k / (2.0 * problem.masses)
    expected = -(energies[1] - energies[0]) * final.t

    assert k == pytest.approx(2.0)
    assert obs.relative_phases[1] == pytest.approx(math.remainder(expected, 2.0 * math.pi), abs=1e-8)
    assert obs.norms[0] == pytest.approx(0.5, rel=1e-12)


def test_free_packet_matches_closed_form() -> None:
    grid = Grid1D(length=40.0, points=512)
    problem = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)])
    state = initial_state(grid, [gaussian_field(grid, center=-2.0, sigma=1.0, momentum=1.0)])

    snapshots = []
    evolve(problem, state, 5e-3, 400, snap_every=100, callback=snapshots.append)

    assert [snap.step_index for snap in snapshots] == [0, 100, 200, 300, 400]
    packet = GaussianPacket(mass=1.0, x0=-2.0, sigma0=1.0, P0=1.0)
    for snap in snapshots:
        obs = observables(snap, problem)
        center, width = packet_evolve(packet.at(snap.t))
        assert obs.centers[0] == pytest.approx(center, abs=1e-6)
        assert obs.widths[0] == pytest.approx(width, abs=1e-6)


def test_p4_term_lowers_high_momentum_energy() -> None:
    grid = Grid1D(length=10.0, points=64)
    plain = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)])
    corrected = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)], include_P4=True, c=10.0)
    k = grid.k

    assert np.all(corrected.kinetic()[0] <= plain.kinetic()[0])
    assert corrected.kinetic()[0] == pytest.approx(k**2 / 2.0 - k**4 / (8.0 * 100.0))


def test_plane_wave_phase_follows_modified_dispersion() -> None:
    grid = Grid1D(length=10.0 * math.pi, points=64)
    problem = GpeProblem(grid=grid, modes=[GpeMode("free", 1.0)], include_P4=True)
    wave = plane_wave_field(grid, 10)

    final = evolve(problem, initial_state(grid, [wave]), 0.01, 1000)
    k = grid.wavenumber(10)
    energy = k**2 / 2.0 - k**4 / (8.0 * ATOMIC.c**2)

    assert final.t == pytest.approx(10.0)
    assert np.max(np.abs(final.psi[0] - wave * np.exp(-1j * energy * final.t))) < 1e-10


def _clock_phase_rate(c: float) -> tuple[float, float, float]:
    """Relative phase rate of two plane-wave modes with mass defect, and the clock prediction."""
    M, E_g, E_e = 1.0, -0.5, -0.125
    grid = Grid1D(length=10.0 * math.pi, points=64)
    modes = [
        GpeMode("g", M + E_g / c**2, offset=E_g, rest_energy=M * c**2),
        GpeMode("e", M + E_e / c**2, offset=E_e, rest_energy=M * c**2),
    ]
    problem = GpeProblem(grid=grid, modes=modes, include_P4=True, c=c, bare_mass=M)
    wave = plane_wave_field(grid, 10)
    final = evolve(problem, initial_state(grid, [wave / math.sqrt(2.0), wave / math.sqrt(2.0)]), 0.01, 500)
    rate = -observables(final, problem).relative_phases[1] / final.t

    k = grid.wavenumber(10)
    Omega = E_e - E_g
    M_bar = M + (E_e + E_g) / (2.0 * c**2)
    predicted = Omega * (1.0 - k**2 / (2.0 * M_bar**2 * c**2))
    return rate, predicted, Omega * (k / (M_bar * c)) ** 4


def test_two_mode_phase_rate_matches_mean_mass_clock() -> None:
    rate, predicted, budget = _clock_phase_rate(10.0)
    rate_fine, predicted_fine, budget_fine = _clock_phase_rate(20.0)

    # The c^-2 time dilation is resolved; what remains is inside the c^-4 budget.
    assert abs(rate - 0.375) > 1e-3
    assert abs(rate - predicted) < budget
    assert abs(rate_fine - predicted_fine) < budget_fine
    assert abs(rate - predicted) / abs(rate_fine - predicted_fine) > 16.0
