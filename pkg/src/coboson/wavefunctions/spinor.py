"""
Coupled orbital-spin states on the explicit basis |ell m> (x) |m_n m_e>.

Basis index = (ell - m) * 4 + 2 * i_n + i_e with i = 0 for spin up and 1 for spin down;
the nucleus spin is the first tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import sph_harm_y

from ..constants import SpeciesParams
from ..spectrum import QuantumNumbers, clebsch_gordan, validate
from .radial import RadialFunction

_SPIN_X = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
_SPIN_Y = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
_SPIN_Z = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
_ID2 = np.eye(2, dtype=complex)

_SQRT_HALF = 1.0 / math.sqrt(2.0)
SPIN_STATES: Dict[Tuple[int, int], np.ndarray] = {
    (1, 1): np.array([1.0, 0.0, 0.0, 0.0], dtype=complex),
    (1, 0): np.array([0.0, _SQRT_HALF, _SQRT_HALF, 0.0], dtype=complex),
    (1, -1): np.array([0.0, 0.0, 0.0, 1.0], dtype=complex),
    (0, 0): np.array([0.0, _SQRT_HALF, -_SQRT_HALF, 0.0], dtype=complex),
}


def orbital_operators(ell: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Lx, Ly, Lz) on |ell m>, m = ell ... -ell."""
    ms = np.arange(ell, -ell - 1, -1, dtype=float)
    dim = 2 * ell + 1
    raising = np.zeros((dim, dim), dtype=complex)
    for col in range(1, dim):
        m = ms[col]
        raising[col - 1, col] = math.sqrt(ell * (ell + 1) - m * (m + 1))
    lowering = raising.conj().T
    lx = 0.5 * (raising + lowering)
    ly = -0.5j * (raising - lowering)
    lz = np.diag(ms).astype(complex)
    return lx, ly, lz


@dataclass(frozen=True)
class BasisOperators:
    """Exact dense operators on the 4(2 ell + 1) dimensional coupled basis."""
    ell: int
    L: Tuple[np.ndarray, np.ndarray, np.ndarray]
    s_n: Tuple[np.ndarray, np.ndarray, np.ndarray]
    s_e: Tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def dim(self) -> int:
        return 4 * (2 * self.ell + 1)

    @property
    def S(self) -> Tuple[np.ndarray, ...]:
        return tuple(a + b for a, b in zip(self.s_n, self.s_e))

    @property
    def J(self) -> Tuple[np.ndarray, ...]:
        return tuple(a + b for a, b in zip(self.L, self.S))

    def relative_spin(self, species: SpeciesParams) -> Tuple[np.ndarray, ...]:
        """s = (m_n s_e - m_e s_n)/M."""
        return tuple((species.m_n * e - species.m_e * n) / species.M for n, e in zip(self.s_n, self.s_e))

    @staticmethod
    def square(vector_op: Tuple[np.ndarray, ...]) -> np.ndarray:
        return sum(component @ component for component in vector_op)

    @staticmethod
    def dot(first: Tuple[np.ndarray, ...], second: Tuple[np.ndarray, ...]) -> np.ndarray:
        return sum(a @ b for a, b in zip(first, second))


@lru_cache(maxsize=32)
def basis_operators(ell: int) -> BasisOperators:
    orbital = orbital_operators(ell)
    eye_l = np.eye(2 * ell + 1, dtype=complex)
    eye_s = np.eye(4, dtype=complex)
    L = tuple(np.kron(op, eye_s) for op in orbital)
    s_n = tuple(np.kron(eye_l, np.kron(op, _ID2)) for op in (_SPIN_X, _SPIN_Y, _SPIN_Z))
    s_e = tuple(np.kron(eye_l, np.kron(_ID2, op)) for op in (_SPIN_X, _SPIN_Y, _SPIN_Z))
    return BasisOperators(ell=ell, L=L, s_n=s_n, s_e=s_e)


def sphere_grid(order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Gauss-Legendre (in cos theta) times uniform azimuth product grid.

    Exact for polynomials in the Cartesian components of r^ up to degree 2*order - 1.

    Returns:
        (theta, phi, weights) flattened over the grid.
    """
    nodes, gl_weights = leggauss(order)
    n_phi = 2 * order + 2
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    theta_grid, phi_grid = np.meshgrid(np.arccos(nodes), phi, indexing="ij")
    weights = np.outer(gl_weights, np.full(n_phi, 2.0 * math.pi / n_phi))
    return theta_grid.ravel(), phi_grid.ravel(), weights.ravel()


def unit_vector_components(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _harmonics(ell: int, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    return np.stack([sph_harm_y(ell, m, theta, phi) for m in range(ell, -ell - 1, -1)])


@lru_cache(maxsize=64)
def direction_matrices(ell: int, ell_prime: int) -> np.ndarray:
    """<ell m| r^_a |ell' m'> for a = x, y, z; shape (3, 2 ell + 1, 2 ell' + 1)."""
    theta, phi, weights = sphere_grid(max(ell, ell_prime) + 3)
    left = _harmonics(ell, theta, phi).conj()
    right = _harmonics(ell_prime, theta, phi)
    rhat = unit_vector_components(theta, phi)
    return np.einsum("mp,ap,np,p->amn", left, rhat, right, weights)


@lru_cache(maxsize=32)
def dyadic_matrices(ell: int) -> np.ndarray:
    """<ell m| r^_a r^_b |ell m'>; shape (3, 3, 2 ell + 1, 2 ell + 1)."""
    theta, phi, weights = sphere_grid(ell + 4)
    harmonics = _harmonics(ell, theta, phi)
    rhat = unit_vector_components(theta, phi)
    return np.einsum("mp,ap,bp,np,p->abmn", harmonics.conj(), rhat, rhat, harmonics, weights)


def tensor_operator(ell: int) -> np.ndarray:
    """S_ne = -s_n.s_e + 3 (s_n.r^)(s_e.r^) on the coupled basis of one ell."""
    dyadic = dyadic_matrices(ell)
    spin_n = [np.kron(op, _ID2) for op in (_SPIN_X, _SPIN_Y, _SPIN_Z)]
    spin_e = [np.kron(_ID2, op) for op in (_SPIN_X, _SPIN_Y, _SPIN_Z)]
    dim_l = 2 * ell + 1
    operator = np.zeros((4 * dim_l, 4 * dim_l), dtype=complex)
    for a in range(3):
        for b in range(3):
            operator += 3.0 * np.kron(dyadic[a, b], spin_n[a] @ spin_e[b])
    scalar = sum(n @ e for n, e in zip(spin_n, spin_e))
    operator -= np.kron(np.eye(dim_l, dtype=complex), scalar)
    return operator


class SpinorWavefunction:
    """
    Coupled state psi_beta = sum_{m_S} alpha_{j,S,m_S} psi_{n,ell,m_j-m_S} chi_{S,m_S}.

    `vector` holds the orbital-spin coefficients; the radial part is `radial`.
    """

    def __init__(self, beta: QuantumNumbers, species: SpeciesParams) -> None:
        validate(beta)
        self.beta = beta
        self.species = species
        self.radial = RadialFunction(beta.n, beta.ell, species)
        self.operators = basis_operators(beta.ell)
        self.vector = self._build_vector()

    def _build_vector(self) -> np.ndarray:
        ell, S, j, m_j = self.beta.ell, self.beta.S, self.beta.j, self.beta.m_j
        vector = np.zeros(self.operators.dim, dtype=complex)
        spin_projections = (0,) if S == 0 else (1, 0, -1)
        for m_S in spin_projections:
            m = m_j - m_S
            if abs(m) > ell:
                continue
            coefficient = clebsch_gordan(j, S, m_S, ell, m_j)
            if coefficient == 0.0:
                continue
            orbital = np.zeros(2 * ell + 1, dtype=complex)
            orbital[ell - m] = 1.0
            vector += coefficient * np.kron(orbital, SPIN_STATES[(S, m_S)])
        return vector

    def norm(self) -> float:
        return float(np.real(np.vdot(self.vector, self.vector)))

    def expectation(self, operator: np.ndarray) -> float:
        value = np.vdot(self.vector, operator @ self.vector)
        return float(np.real(value))

    def eigen_residual(self, operator: np.ndarray, eigenvalue: float) -> float:
        """|| (O - lambda) psi ||."""
        return float(np.linalg.norm(operator @ self.vector - eigenvalue * self.vector))

    def eigen_residuals(self) -> Dict[str, float]:
        """Residuals for ell^2, S^2, J^2 and J_z with the eigenvalues implied by beta."""
        ops = self.operators
        beta = self.beta
        return {
            "ell^2": self.eigen_residual(ops.square(ops.L), beta.ell * (beta.ell + 1)),
            "S^2": self.eigen_residual(ops.square(ops.S), beta.S * (beta.S + 1)),
            "J^2": self.eigen_residual(ops.square(ops.J), beta.j * (beta.j + 1)),
            "J_z": self.eigen_residual(ops.J[2], beta.m_j),
        }
