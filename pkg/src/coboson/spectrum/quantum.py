"""
Internal-state labels and the angular-momentum coupling rules they must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..errors import DomainError, QuantumNumberError

_ORBITAL_LETTERS = "SPDFGHIKLMNOQRTUV"


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """
    Label beta = (n, ell, S, j, m_j) of one coupled internal state.

    Field order doubles as the natural sort order.
    """
    n: int
    ell: int
    S: int
    j: int
    m_j: int

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "QuantumNumbers":
        """
        Build a label from "n,l,S,j,mj" or a five-element sequence.

        Raises:
            DomainError: If the text does not hold five integers.
        """
        if isinstance(text, str):
            parts = [part.strip() for part in text.replace(";", ",").split(",") if part.strip()]
        else:
            parts = list(text)
        if len(parts) != 5:
            raise DomainError(f"Expected five quantum numbers 'n,l,S,j,mj', got {text!r}")
        try:
            values = [int(part) for part in parts]
        except (TypeError, ValueError) as exc:
            raise DomainError(f"Quantum numbers must be integers, got {text!r}") from exc
        return cls(*values)

    @property
    def level_key(self) -> tuple[int, int, int, int]:
        """(n, ell, S, j): the label without m_j."""
        return (self.n, self.ell, self.S, self.j)

    @property
    def label(self) -> str:
        letter = _ORBITAL_LETTERS[self.ell] if self.ell < len(_ORBITAL_LETTERS) else f"[l={self.ell}]"
        return f"{self.n}{letter}(S={self.S},j={self.j},mj={self.m_j})"

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.ell, self.S, self.j, self.m_j)


def _require_int(value: object, name: str, beta: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise QuantumNumberError(f"{name} must be an integer", beta)
    return value


def validate(beta: QuantumNumbers) -> QuantumNumbers:
    """
    Check the coupling rules for a state label.

    Returns:
        The label unchanged, so calls can be chained.

    Raises:
        QuantumNumberError: Naming the first rule the label breaks.
    """
    n = _require_int(beta.n, "n", beta)
    ell = _require_int(beta.ell, "ell", beta)
    S = _require_int(beta.S, "S", beta)
    j = _require_int(beta.j, "j", beta)
    m_j = _require_int(beta.m_j, "m_j", beta)
    if n < 1:
        raise QuantumNumberError("principal quantum number needs n >= 1", beta)
    if not 0 <= ell <= n - 1:
        raise QuantumNumberError("orbital quantum number needs 0 <= ell <= n-1", beta)
    if S not in (0, 1):
        raise QuantumNumberError("total spin needs S in {0, 1}", beta)
    if S == 0 and j != ell:
        raise QuantumNumberError("singlet states need j = ell", beta)
    if S == 1:
        if j not in (ell - 1, ell, ell + 1):
            raise QuantumNumberError("triplet states need j in {ell-1, ell, ell+1}", beta)
        if j == ell - 1 and ell < 1:
            raise QuantumNumberError("j = ell-1 needs ell >= 1", beta)
        if j == ell and ell < 1:
            raise QuantumNumberError("j = ell with S = 1 needs ell >= 1", beta)
    if abs(m_j) > j:
        raise QuantumNumberError("magnetic quantum number needs |m_j| <= j", beta)
    return beta


def allowed_j(ell: int, S: int) -> tuple[int, ...]:
    """Total angular momenta permitted for (ell, S), in ascending order."""
    if S == 0:
        return (ell,)
    if ell == 0:
        return (1,)
    return (ell - 1, ell, ell + 1)


def enumerate_states(n_max: int) -> Iterator[QuantumNumbers]:
    """
    Yield every valid label with n <= n_max in (n, ell, S, j, m_j) order.

    Raises:
        DomainError: If n_max < 1.
    """
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < 1:
        raise DomainError(f"n_max must be an integer >= 1, got {n_max!r}")
    for n in range(1, int(n_max) + 1):
        for ell in range(n):
            for S in (0, 1):
                for j in allowed_j(ell, S):
                    for m_j in range(-j, j + 1):
                        yield QuantumNumbers(n, ell, S, j, m_j)
