"""Exception types and small argument checks shared by the models."""
from __future__ import annotations

import math


class DomainError(ValueError):
    """An input lies outside the domain where a model is defined."""


class FeasibilityError(ValueError):
    """A base station does not fit the platform's payload allowance."""


class ConfigError(ValueError):
    """A scenario or ledger file failed to parse or validate.

    ``errors`` holds every violation found, not just the first one.
    """

    def __init__(self, errors: list[str] | str):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def check_nonnegative(name: str, value: float) -> float:
    value = check_finite(name, value)
    if value < 0:
        raise DomainError(f"{name} must be >= 0, got {value!r}")
    return value


def check_positive(name: str, value: float, allow_inf: bool = False) -> float:
    value = float(value)
    if math.isnan(value) or (math.isinf(value) and not allow_inf):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if value <= 0:
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value
