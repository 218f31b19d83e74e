import math

import pytest

from coboson.constants import ATOMIC, convert, make_species
from coboson.errors import DomainError, QuantumNumberError
from coboson.spectrum import (
    QuantumNumbers,
    alpha_coefficients,
    bare,
    c_jl,
    clebsch_gordan,
    coefficient_vector,
    dispersion_table,
    energy0,
    energy1,
    enumerate_states,
    first_order_terms,
    hyperfine_splitting,
    level_table,
    state_mass,
    tree_level,
    validate,
    wilson_preset,
)


@pytest.mark.parametrize(
    "label, rule",
    [
        ("0,0,0,0,0", "n >= 1"),
        ("1,1,0,1,0", "0 <= ell <= n-1"),
        ("2,1,2,1,0", "S in {0, 1}"),
        ("2,1,0,0,0", "j = ell"),
        ("2,1,1,3,0", "j in {ell-1, ell, ell+1}"),
        ("1,0,1,0,0", "needs ell >= 1"),
        ("2,1,0,1,2", "|m_j| <= j"),
    ],
)
def test_validate_names_the_broken_rule(label: str, rule: str) -> None:
    with pytest.raises(QuantumNumberError) as exc:
        validate(QuantumNumbers.parse(label))

    assert rule in exc.value.rule


def test_parse_rejects_malformed_labels() -> None:
    with pytest.raises(DomainError):
        QuantumNumbers.parse("1,0,0")
    with pytest.raises(DomainError):
        QuantumNumbers.parse("1,0,a,0,0")


def test_enumerate_states_counts_and_order() -> None:
    states = list(enumerate_states(3))

    # Two spin-1/2 constituents: 4 n^2 states per shell.
    assert len(states) == 4 * (1 + 4 + 9)
    assert states == sorted(states)
    assert len(set(states)) == len(states)
    assert sum(1 for beta in states if beta.n == 2 and beta.ell == 1 and beta.S == 1) == 9
    with pytest.raises(DomainError):
        list(enumerate_states(0))


def _rows(ell: int):
    rows = [(ell, 0)]
    rows += [(1, 1)] if ell == 0 else [(ell + 1, 1), (ell, 1), (ell - 1, 1)]
    return rows


@pytest.mark.parametrize("ell", range(0, 11))
def test_coupling_table_rows_are_normalized(ell: int) -> None:
    for j, S in _rows(ell):
        for m_j in range(-j, j + 1):
            row = coefficient_vector(j, S, ell, m_j)
            assert abs(sum(value * value for value in row.values()) - 1.0) < 1e-12


@pytest.mark.parametrize("ell", range(1, 11))
def test_triplet_rows_are_orthogonal(ell: int) -> None:
    # The singlet row lives on the S = 0 spin state and is orthogonal to every triplet row.
    triplets = [j for j, S in _rows(ell) if S == 1]
    for m_j in range(-ell - 1, ell + 2):
        vectors = [coefficient_vector(j, 1, ell, m_j) for j in triplets if abs(m_j) <= j]
        for first in range(len(vectors)):
            for second in range(first + 1, len(vectors)):
                overlap = sum(vectors[first][m_S] * vectors[second][m_S] for m_S in (1, 0, -1))
                assert abs(overlap) < 1e-12


def test_coupling_table_matches_sympy_magnitudes() -> None:
    sympy_cg = pytest.importorskip("sympy.physics.quantum.cg")
    for ell in range(1, 4):
        for j in (ell - 1, ell, ell + 1):
            for m_j in range(-j, j + 1):
                for m_S in (-1, 0, 1):
                    if abs(m_j - m_S) > ell:
                        continue
                    expected = float(sympy_cg.CG(ell, m_j - m_S, 1, m_S, j, m_j).doit())
                    assert abs(clebsch_gordan(j, 1, m_S, ell, m_j)) == pytest.approx(abs(expected), abs=1e-12)


def test_coupling_table_rejects_empty_rows() -> None:
    with pytest.raises(DomainError):
        clebsch_gordan(0, 1, 0, 0, 0)
    with pytest.raises(DomainError):
        clebsch_gordan(1, 1, 2, 1, 0)


def test_energy0_hydrogen_ground_state(hydrogen) -> None:
    assert energy0(hydrogen, 1) == pytest.approx(-0.5 * hydrogen.m_r, rel=1e-15)
    assert energy0(hydrogen, 2) == pytest.approx(energy0(hydrogen, 1) / 4.0, rel=1e-15)
    with pytest.raises(DomainError):
        energy0(hydrogen, 0)


def test_tree_level_coefficients(hydrogen) -> None:
    tree = tree_level(hydrogen)

    assert tree.cF_e == pytest.approx(1.0 + 1.15965218128e-3)
    assert tree.cF_n == pytest.approx(2.79284734463)
    assert tree.d1_en == 0.0
    assert wilson_preset("bare", hydrogen).cF_n == 1.0
    with pytest.raises(DomainError):
        wilson_preset("two-loop", hydrogen)


def test_alpha_coefficients_for_bare_coefficients(positronium) -> None:
    alphas = alpha_coefficients(bare(), positronium)

    # Equal masses: alpha_D = (1 + 1)/(2 * 0.5 * 2) = 1.
    assert alphas.alpha_D == pytest.approx(1.0)
    assert alphas.alpha_ls == pytest.approx(0.0)
    assert alphas.alpha_ss == pytest.approx(8.0 / 3.0)


def test_c_jl_rejects_s_waves(hydrogen_tree, hydrogen) -> None:
    with pytest.raises(DomainError):
        c_jl(hydrogen_tree, hydrogen, 1, 0)


def test_hydrogen_ground_state_hyperfine_splitting(hydrogen, hydrogen_tree) -> None:
    splitting_mhz = convert(hyperfine_splitting(hydrogen, hydrogen_tree), "hartree", "MHz")

    assert 1415.0 < splitting_mhz < 1426.0


def test_energy1_is_independent_of_m_j(hydrogen, hydrogen_tree) -> None:
    energies = {energy1(hydrogen, hydrogen_tree, QuantumNumbers(2, 1, 1, 2, m)) for m in range(-2, 3)}

    assert max(energies) - min(energies) == 0.0


def test_first_order_terms_scale_as_c_to_minus_two(hydrogen, hydrogen_tree) -> None:
    beta = QuantumNumbers(2, 1, 1, 1, 0)
    base = energy1(hydrogen, hydrogen_tree, beta)
    scaled = energy1(hydrogen, hydrogen_tree, beta, ATOMIC.with_c_scale(10.0))

    # alpha = 1/c: the shift goes as m_r^2 c^2 alpha^4 = m_r^2 / c^2.
    assert scaled == pytest.approx(base / 100.0, rel=1e-12)


def test_as_printed_variant_differs_only_where_expected(hydrogen, hydrogen_tree) -> None:
    s_wave = QuantumNumbers(2, 0, 0, 0, 0)
    triplet_p = QuantumNumbers(2, 1, 1, 2, 0)

    closed = first_order_terms(hydrogen, hydrogen_tree, s_wave)
    printed = first_order_terms(hydrogen, hydrogen_tree, s_wave, as_printed=True)
    assert closed.orbit - printed.orbit == pytest.approx(2.0 / 16.0)
    assert closed.kinetic == printed.kinetic

    closed_p = first_order_terms(hydrogen, hydrogen_tree, triplet_p)
    printed_p = first_order_terms(hydrogen, hydrogen_tree, triplet_p, as_printed=True)
    assert closed_p.spin_structure == pytest.approx(-printed_p.spin_structure / 8.0)


def test_level_table_sorted_and_thread_independent(hydrogen, hydrogen_tree) -> None:
    sequential = level_table(hydrogen, hydrogen_tree, 3)
    threaded = level_table(hydrogen, hydrogen_tree, 3, threads=4)

    assert sequential == threaded
    keys = [level.sort_key for level in sequential]
    assert keys == sorted(keys)
    assert all(level.degeneracy == 2 * level.beta.j + 1 for level in sequential)


def test_mass_defect_is_binding_energy_over_c_squared(hydrogen) -> None:
    beta = QuantumNumbers(1, 0, 0, 0, 0)
    shift = state_mass(hydrogen, beta) - hydrogen.M

    assert shift == pytest.approx(-0.5 * hydrogen.m_r / ATOMIC.c**2, rel=1e-6)
    level = level_table(hydrogen, tree_level(hydrogen), 1)[0]
    assert level.rel_mass_shift == pytest.approx(level.E0 / (hydrogen.M * ATOMIC.c**2))


def test_dispersion_table_rows_per_level(hydrogen, hydrogen_tree) -> None:
    momenta = [0.0, 10.0, 20.0]
    samples = dispersion_table(hydrogen, hydrogen_tree, 2, momenta)

    levels = {(s.n, s.ell, s.S, s.j) for s in samples}
    assert len(levels) == 8
    assert len(samples) == 8 * len(momenta)
    ground = [s for s in samples if (s.n, s.ell, s.S, s.j) == (1, 0, 0, 0)]
    assert ground[0].energy_minus_rest == pytest.approx(
        energy0(hydrogen, 1) + energy1(hydrogen, hydrogen_tree, QuantumNumbers(1, 0, 0, 0, 0))
    )
    assert ground[1].energy_minus_rest > ground[0].energy_minus_rest


def test_heavier_nucleus_shrinks_reduced_mass_corrections() -> None:
    light = make_species(1.0, 10.0, 1)
    heavy = make_species(1.0, 1e6, 1)

    assert abs(energy0(light, 1)) < abs(energy0(heavy, 1))
    assert math.isclose(energy0(heavy, 1), -0.5, rel_tol=1e-5)


def test_hydrogen_ground_state_relativistic_shift_size(hydrogen, hydrogen_tree) -> None:
    ground = QuantumNumbers(1, 0, 0, 0, 0)
    ratio = abs(energy1(hydrogen, hydrogen_tree, ground) / energy0(hydrogen, 1))

    assert 3e-6 <= ratio <= 3e-5
