"""Probit dose-response model for toxic gas exposure.

A steady-state plume concentration C (ppm) held for t minutes yields the
dose C**n * t; the probit value Y = a + b*ln(dose) maps to a probability of
criticality through the standard normal CDF shifted by 5 (the continuous
function that printed probit tables discretise). Constants a, b, n are
substance-specific.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ErimapError


class NonPositiveDose(ErimapError):
    """Probit value is undefined for a non-positive dose."""


@dataclass(frozen=True)
class ProbitParams:
    a: float
    b: float
    n: float
    substance: str = ""

    def __post_init__(self) -> None:
        if self.b <= 0 or self.n <= 0:
            raise ValueError(f"probit constants require b > 0 and n > 0, got b={self.b}, n={self.n}")


# Chlorine constants (probit literature values).
CHLORINE = ProbitParams(a=-8.29, b=0.92, n=2, substance="chlorine")


@dataclass(frozen=True)
class Exposure:
    concentration_ppm: float
    duration_min: float

    def __post_init__(self) -> None:
        if self.concentration_ppm <= 0 or self.duration_min <= 0:
            raise ValueError("exposure requires concentration > 0 and duration > 0")


def dose(exposure: Exposure, n: float) -> float:
    """Integrated exposure C**n * t for a steady-state concentration."""
    return exposure.concentration_ppm**n * exposure.duration_min


def probit_value(dose_value: float, params: ProbitParams) -> float:
    if dose_value <= 0:
        raise NonPositiveDose(f"dose must be positive, got {dose_value!r}")
    return params.a + params.b * math.log(dose_value)


def probit_to_probability(y: float) -> float:
    """Standard normal CDF evaluated at Y - 5."""
    return 0.5 * (1.0 + math.erf((y - 5.0) / math.sqrt(2.0)))


def exposure_to_soft_evidence(exposure: Exposure, params: ProbitParams) -> tuple[float, float]:
    """Probability ratio (critical, not critical) for a binary dose node."""
    q = probit_to_probability(probit_value(dose(exposure, params.n), params))
    return (q, 1.0 - q)
