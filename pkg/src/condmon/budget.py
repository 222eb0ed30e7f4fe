"""Enumeration caps.

Every cap is multiplied by the float in ``CONDMON_BUDGET_SCALE`` (default 1)
when a :class:`Budget` is built through :func:`default_budget`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_SCALE = "CONDMON_BUDGET_SCALE"


@dataclass(frozen=True)
class Budget:
    factorization_cap: int = 100_000
    element_cap: int = 1_000_000  # group enumeration and box sizes
    atom_length_cap: int = 40  # |v| limit for exhaustive split search
    sequence_cap: int = 10_000  # |S| limit for zero-sum-free tests
    sequence_length: int = 12  # suite default for sequence windows
    dense_limit: int = 2000  # above this |Z(a)| the distance matrix is not materialised

    def scaled(self, factor: float) -> Budget:
        if factor <= 0:
            raise ValueError(f"budget scale must be positive, got {factor}")
        return replace(
            self,
            factorization_cap=max(1, int(self.factorization_cap * factor)),
            element_cap=max(1, int(self.element_cap * factor)),
            atom_length_cap=max(1, int(self.atom_length_cap * factor)),
            sequence_cap=max(1, int(self.sequence_cap * factor)),
            sequence_length=max(1, int(self.sequence_length * factor)),
        )


def env_scale() -> float:
    raw = os.environ.get(ENV_SCALE)
    if not raw:
        return 1.0
    try:
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_SCALE} must be a float, got {raw!r}") from exc


def default_budget(**overrides) -> Budget:
    return replace(Budget(), **overrides).scaled(env_scale())
