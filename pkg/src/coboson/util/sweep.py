"""
Parameter sweeps given as "start:stop:steps" or comma-separated lists.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from ..constants import parse_quantity
from ..errors import DomainError


def parse_sweep(value: str | float | int | Sequence[float | str], dimension: Optional[str] = None) -> List[float]:
    """
    Expand a sweep into atomic-unit values.

    Accepted forms: "v0:v1:steps" (inclusive linspace), "a, b, c", a single
    quantity, or a sequence of quantities. Every endpoint may carry a unit suffix
    ("0:0.03 c:31", "10:100 bohr:10").

    Raises:
        DomainError: If the range form is malformed or steps < 1.
    """
    if isinstance(value, (list, tuple)):
        return [parse_quantity(item, dimension) for item in value]
    if not isinstance(value, str):
        return [parse_quantity(value, dimension)]
    text = value.strip()
    if ":" in text:
        parts = [part.strip() for part in text.split(":")]
        if len(parts) != 3:
            raise DomainError(f"Sweep '{value}' must read 'start:stop:steps'")
        try:
            steps = int(parts[2])
        except ValueError as exc:
            raise DomainError(f"Sweep '{value}' has a non-integer step count") from exc
        if steps < 1:
            raise DomainError(f"Sweep '{value}' needs at least one step")
        start = parse_quantity(parts[0], dimension)
        stop = parse_quantity(parts[1], dimension)
        if steps == 1:
            return [start]
        return [float(item) for item in np.linspace(start, stop, steps)]
    return [parse_quantity(part, dimension) for part in text.split(",") if part.strip()]
