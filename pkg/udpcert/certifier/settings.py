# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import dataclasses

from dataclasses import dataclass


@dataclass(frozen=True)
class CertifierSettings:
    """
    Tolerances and budgets of the certifier, the defaults are the `certifier` section of the configuration.
    """

    gap_tol: float = 1e-8
    rank_tol: float = 1e-10
    span_tol: float = 1e-8
    kernel_tol: float = 1e-8
    restarts: int = 50
    box: float = 2.0
    newton_tol: float = 1e-12
    newton_max_iter: int = 100
    solution_tol: float = 1e-10
    consistency_tol: float = 1e-8
    dedup_tol: float = 1e-6
    trivial_tol: float = 1e-6
    grid_restarts: int = 20
    oracle_tol: float = 1e-10
    witness_restarts: int = 32
    witness_tol: float = 1e-10
    distinct_tol: float = 1e-6

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"The setting '{f.name}' must not be negative.")

    def replace(self, **kwargs):
        return dataclasses.replace(self, **kwargs)

    def to_dict(self):
        return dataclasses.asdict(self)
