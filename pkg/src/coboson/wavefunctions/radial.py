"""
Hydrogenlike radial functions with exact polynomial derivatives, plus radial quadrature.

Everything is integrated in the dimensionless variable x = r / a_Z, with
a_Z = 1/(Z m_r), so integrands stay of order one for every species.
"""

from __future__ import annotations

import logging
import math
import warnings
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import genlaguerre

from ..constants import SpeciesParams
from ..errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

QUAD_EPSREL = 1e-12
QUAD_EPSABS = 1e-14
QUAD_LIMIT = 200
# Integrator error estimates above this (relative) fail the quadrature outright.
QUAD_FAIL_RELATIVE = 1e-9
RADIAL_EXTENT = 40.0


def quad_dimensionless(func: Callable[[float], float], upper: float, label: str) -> float:
    """
    Adaptive Gauss-Kronrod quadrature of `func` over [0, upper].

    Integration warnings are downgraded to log messages when the returned error
    estimate still meets QUAD_FAIL_RELATIVE.

    Raises:
        QuadratureError: If the error estimate is too large or the result is not finite.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, error = integrate.quad(func, 0.0, upper, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    if not (math.isfinite(value) and math.isfinite(error)):
        raise QuadratureError(label, value, error, "non-finite result")
    if error > QUAD_FAIL_RELATIVE * max(abs(value), 1.0):
        detail = "; ".join(str(item.message) for item in caught)
        raise QuadratureError(label, value, error, detail)
    if caught:
        logger.warning(
            "Quadrature for %s raised %d warning(s) but met tolerance (error=%.3e)", label, len(caught), error
        )
    return value


class RadialFunction:
    """
    Normalized radial function R_{n ell}(r) of a hydrogenlike species.

    In x = r/a_Z the function is u(x) = (2/n)^{3/2} N e^{-rho/2} q(rho) with
    rho = 2x/n and q(rho) = rho^ell L^{(2 ell + 1)}_{n - ell - 1}(rho), so that
    R(r) = a_Z^{-3/2} u(r/a_Z). q is kept as a polynomial, making derivatives exact.

    Attributes:
        n: Principal quantum number.
        ell: Orbital quantum number.
        k: Inverse reduced Bohr length Z m_r.
        a_Z: Reduced Bohr length 1/(Z m_r).
        r_max: Integration cutoff 40 n^2 a_Z.
    """

    def __init__(self, n: int, ell: int, species: SpeciesParams) -> None:
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise DomainError(f"n must be an integer >= 1, got {n!r}")
        if isinstance(ell, bool) or int(ell) != ell or not 0 <= ell <= n - 1:
            raise DomainError(f"ell must satisfy 0 <= ell <= n-1, got ell={ell!r} for n={n}")
        self.n = int(n)
        self.ell = int(ell)
        self.species = species
        self.k = species.Z * species.m_r
        self.a_Z = 1.0 / self.k
        self.x_max = RADIAL_EXTENT * self.n**2
        self.r_max = self.x_max * self.a_Z
        laguerre = np.poly1d(np.asarray(genlaguerre(self.n - self.ell - 1, 2 * self.ell + 1).coeffs, dtype=float))
        self._q = np.poly1d([1.0] + [0.0] * self.ell) * laguerre
        self._dq = self._q.deriv(1)
        self._d2q = self._q.deriv(2)
        self._norm = math.sqrt(
            math.factorial(self.n - self.ell - 1) / (2.0 * self.n * math.factorial(self.n + self.ell))
        )
        self._scale = 2.0 / self.n

    def __repr__(self) -> str:
        return f"RadialFunction(n={self.n}, ell={self.ell}, species={self.species.name!r})"

    def u(self, x: float | np.ndarray) -> float | np.ndarray:
        """Dimensionless radial function of x = r/a_Z."""
        rho = self._scale * np.asarray(x, dtype=float)
        return self._scale**1.5 * self._norm * np.exp(-rho / 2.0) * self._q(rho)

    def du(self, x: float | np.ndarray) -> float | np.ndarray:
        rho = self._scale * np.asarray(x, dtype=float)
        inner = self._dq(rho) - 0.5 * self._q(rho)
        return self._scale**2.5 * self._norm * np.exp(-rho / 2.0) * inner

    def d2u(self, x: float | np.ndarray) -> float | np.ndarray:
        rho = self._scale * np.asarray(x, dtype=float)
        inner = self._d2q(rho) - self._dq(rho) + 0.25 * self._q(rho)
        return self._scale**3.5 * self._norm * np.exp(-rho / 2.0) * inner

    def __call__(self, r: float | np.ndarray) -> float | np.ndarray:
        return self.k**1.5 * self.u(self.k * np.asarray(r, dtype=float))

    def derivative(self, r: float | np.ndarray, order: int = 1) -> float | np.ndarray:
        """First or second derivative dR/dr, d2R/dr2."""
        x = self.k * np.asarray(r, dtype=float)
        if order == 1:
            return self.k**2.5 * self.du(x)
        if order == 2:
            return self.k**3.5 * self.d2u(x)
        raise DomainError(f"Only first and second derivatives are available, got order={order}")

    def value_at_origin(self) -> float:
        return float(self(0.0))

    def nodes(self, samples: int = 20001) -> int:
        """Count sign changes of R on (0, r_max]."""
        r = np.linspace(0.0, self.r_max, samples)[1:]
        values = self(r)
        signs = np.sign(values[np.abs(values) > 0.0])
        return int(np.count_nonzero(signs[1:] != signs[:-1]))

    def integrate(self, func: Callable[[float], float], label: str) -> float:
        return quad_dimensionless(func, self.x_max, f"{label} (n={self.n}, l={self.ell})")


def _check_exponent(ell: int, k: int) -> None:
    if isinstance(k, bool) or int(k) != k:
        raise DomainError(f"Radial exponent must be an integer, got {k!r}")
    if k < -3:
        raise DomainError(f"<r^{k}> diverges for every state; exponents must be >= -3")
    if k == -3 and ell == 0:
        raise DomainError("<r^-3> diverges for ell = 0")


def radial_quadrature(species: SpeciesParams, n: int, ell: int, k: int) -> float:
    """
    <r^k> by adaptive quadrature.

    Raises:
        DomainError: For k < -3 or (k = -3, ell = 0).
    """
    _check_exponent(ell, k)
    radial = RadialFunction(n, ell, species)
    value = radial.integrate(lambda x: radial.u(x) ** 2 * x ** (k + 2), f"<r^{k}>")
    return value * radial.a_Z**k


def radial_expectation(species: SpeciesParams, n: int, ell: int, k: int) -> float:
    """
    <r^k> for the state (n, ell): closed form for k in {-3, -2, -1, 0, 1, 2}, quadrature otherwise.

    Raises:
        DomainError: For k < -3 or (k = -3, ell = 0).
    """
    RadialFunction(n, ell, species)
    _check_exponent(ell, k)
    kz = species.Z * species.m_r
    L = ell * (ell + 1)
    if k == 0:
        return 1.0
    if k == -1:
        return kz / n**2
    if k == -2:
        return kz**2 / (n**3 * (ell + 0.5))
    if k == -3:
        return kz**3 / (n**3 * ell * (ell + 0.5) * (ell + 1))
    if k == 1:
        return (3 * n**2 - L) / (2.0 * kz)
    if k == 2:
        return n**2 * (5 * n**2 + 1 - 3 * L) / (2.0 * kz**2)
    return radial_quadrature(species, n, ell, k)


def probability_density_at_origin(species: SpeciesParams, n: int, ell: int) -> float:
    """|psi(0)|^2 from the radial function value at r = 0 (zero unless ell = 0)."""
    if ell != 0:
        return 0.0
    return RadialFunction(n, ell, species).value_at_origin() ** 2 / (4.0 * math.pi)


def hypervirial_residual(species: SpeciesParams, n: int, ell: int) -> float:
    """<p^2/(2 m_r)> + <V> - E_n, all by quadrature except E_n."""
    radial = RadialFunction(n, ell, species)
    L = ell * (ell + 1)
    k = radial.k
    p_sq = k**2 * radial.integrate(lambda x: radial.du(x) ** 2 * x**2 + L * radial.u(x) ** 2, "<p^2>")
    potential = -species.Z * k * radial.integrate(lambda x: radial.u(x) ** 2 * x, "<V>")
    energy = -k**2 / (2.0 * species.m_r * n**2)
    return p_sq / (2.0 * species.m_r) + potential - energy
