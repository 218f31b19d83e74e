import math

import numpy as np
import pytest

from coboson.errors import DomainError, QuantumNumberError
from coboson.spectrum import QuantumNumbers, energy1, enumerate_states
from coboson.wavefunctions import (
    C6_HYDROGEN_REFERENCE,
    RadialFunction,
    SpinorWavefunction,
    c6_sum_over_states,
    energy1_oracle,
    hypervirial_residual,
    kappa,
    overlap,
    probability_density_at_origin,
    radial_expectation,
    radial_quadrature,
    transition_dipole,
    zeeman_shift,
)


@pytest.mark.parametrize("k", [-2, -1, 1, 2])
def test_radial_closed_forms_match_quadrature(hydrogen, k: int) -> None:
    for n, ell in [(1, 0), (2, 0), (2, 1), (3, 2)]:
        assert radial_expectation(hydrogen, n, ell, k) == pytest.approx(
            radial_quadrature(hydrogen, n, ell, k), rel=1e-8
        )


def test_radial_expectation_domain(hydrogen) -> None:
    with pytest.raises(DomainError):
        radial_expectation(hydrogen, 2, 0, -3)
    with pytest.raises(DomainError):
        radial_expectation(hydrogen, 2, 1, -4)
    with pytest.raises(DomainError):
        radial_expectation(hydrogen, 2, 2, 1)


def test_hypervirial_identity(hydrogen) -> None:
    for n, ell in [(1, 0), (2, 1), (3, 0), (3, 2)]:
        assert abs(hypervirial_residual(hydrogen, n, ell)) < 1e-9


def test_density_at_origin(hydrogen) -> None:
    k = hydrogen.Z * hydrogen.m_r

    assert probability_density_at_origin(hydrogen, 1, 0) == pytest.approx(k**3 / math.pi, rel=1e-12)
    assert probability_density_at_origin(hydrogen, 2, 0) == pytest.approx(k**3 / (8.0 * math.pi), rel=1e-12)
    assert probability_density_at_origin(hydrogen, 2, 1) == 0.0


@pytest.mark.parametrize("label", ["1,0,1,1,1", "2,1,1,2,-1", "2,1,1,0,0", "3,2,1,1,1", "3,2,0,2,-2"])
def test_coupled_states_are_eigenstates(hydrogen, label: str) -> None:
    state = SpinorWavefunction(QuantumNumbers.parse(label), hydrogen)

    assert state.norm() == pytest.approx(1.0, abs=1e-14)
    for name, residual in state.eigen_residuals().items():
        assert residual < 1e-12, name


def test_spinor_rejects_invalid_labels(hydrogen) -> None:
    with pytest.raises(QuantumNumberError):
        SpinorWavefunction(QuantumNumbers(1, 0, 1, 0, 0), hydrogen)


def test_states_are_orthonormal(hydrogen) -> None:
    first = QuantumNumbers(2, 1, 1, 2, 0)
    second = QuantumNumbers(2, 1, 1, 1, 0)

    assert overlap(hydrogen, first, first) == pytest.approx(1.0, rel=1e-10)
    assert abs(overlap(hydrogen, first, second)) < 1e-12
    assert overlap(hydrogen, QuantumNumbers(1, 0, 0, 0, 0), QuantumNumbers(2, 1, 0, 1, 0)) == 0.0


def test_lyman_alpha_transition_dipole(hydrogen) -> None:
    ground = QuantumNumbers(1, 0, 0, 0, 0)
    dipole = transition_dipole(hydrogen, ground, QuantumNumbers(2, 1, 0, 1, 0))

    # <1s|z|2p0> = 128 sqrt(2)/243 Bohr radii, with the reduced Bohr radius 1/m_r.
    expected = 128.0 * math.sqrt(2.0) / 243.0 / hydrogen.m_r
    assert abs(dipole[2]) == pytest.approx(expected, rel=1e-8)
    assert np.allclose(dipole[:2], 0.0, atol=1e-14)
    assert np.all(transition_dipole(hydrogen, ground, QuantumNumbers(2, 0, 0, 0, 0)) == 0.0)


def test_c6_sum_is_a_growing_lower_bound(hydrogen) -> None:
    sums = [c6_sum_over_states(hydrogen, n_basis) for n_basis in range(2, 11)]

    assert sums[0] > 0.0
    assert all(later >= earlier for earlier, later in zip(sums, sums[1:]))
    assert sums[-1] < C6_HYDROGEN_REFERENCE
    with pytest.raises(DomainError):
        c6_sum_over_states(hydrogen, 1)


def test_zeeman_shift_of_stretched_triplet(hydrogen, hydrogen_tree) -> None:
    B = 1e-6
    stretched = zeeman_shift(hydrogen, hydrogen_tree, QuantumNumbers(1, 0, 1, 1, 1), B)
    expected = 0.5 * B * (hydrogen_tree.cF_e - hydrogen_tree.cF_n / hydrogen.m_n)

    assert stretched == pytest.approx(expected, rel=1e-10)
    assert zeeman_shift(hydrogen, hydrogen_tree, QuantumNumbers(1, 0, 0, 0, 0), B) == pytest.approx(0.0, abs=1e-20)


def test_kappa(hydrogen) -> None:
    from coboson.constants import ATOMIC

    assert kappa(hydrogen) == pytest.approx(1.0 / (hydrogen.m_r * hydrogen.M * ATOMIC.c**2))


@pytest.mark.parametrize("species_name", ["hydrogen", "positronium"])
def test_oracle_agrees_with_closed_form(species_name: str, request) -> None:
    from coboson.spectrum import tree_level

    species = request.getfixturevalue(species_name)
    wilson = tree_level(species)
    for beta in enumerate_states(4):
        report = energy1_oracle(species, wilson, beta)
        assert report.total == pytest.approx(energy1(species, wilson, beta), rel=1e-8, abs=1e-15), beta.label
        assert report.p4_direct == pytest.approx(report.p4_schrodinger, rel=1e-6)


def test_oracle_agrees_for_unequal_mass_corrections(positronium) -> None:
    from coboson.spectrum import tree_level

    wilson = tree_level(positronium).with_overrides(d1_en=0.1, d2_ne=-0.05)
    for label in ["1,0,1,1,0", "2,1,1,0,0", "3,2,1,3,2", "3,1,0,1,1"]:
        beta = QuantumNumbers.parse(label)
        report = energy1_oracle(positronium, wilson, beta)
        assert report.total == pytest.approx(energy1(positronium, wilson, beta), rel=1e-6, abs=1e-15), label


def test_oracle_terms_sum_to_total(hydrogen, hydrogen_tree) -> None:
    report = energy1_oracle(hydrogen, hydrogen_tree, QuantumNumbers(2, 1, 1, 2, 1))
    terms = report.terms()

    assert terms["total"] == pytest.approx(sum(value for key, value in terms.items() if key != "total"))
    assert terms["darwin"] == 0.0
    assert terms["contact"] == 0.0


@pytest.mark.parametrize("n, ell", [(1, 0), (2, 0), (3, 1), (4, 2)])
def test_radial_function_nodes_and_normalization(hydrogen, n: int, ell: int) -> None:
    radial = RadialFunction(n, ell, hydrogen)

    assert radial.nodes() == n - ell - 1
    assert radial_quadrature(hydrogen, n, ell, 0) == pytest.approx(1.0, rel=1e-10)


def test_radial_function_ground_state_closed_form(hydrogen) -> None:
    radial = RadialFunction(1, 0, hydrogen)
    k = hydrogen.Z * hydrogen.m_r

    assert radial.value_at_origin() == pytest.approx(2.0 * k**1.5, rel=1e-14)
    assert radial(1.0) == pytest.approx(2.0 * k**1.5 * math.exp(-k), rel=1e-14)
    assert radial.derivative(1.0) == pytest.approx(-k * radial(1.0), rel=1e-12)
    assert radial.derivative(1.0, order=2) == pytest.approx(k * k * radial(1.0), rel=1e-12)
    with pytest.raises(DomainError):
        radial.derivative(1.0, order=3)
    with pytest.raises(DomainError):
        RadialFunction(2, 2, hydrogen)
