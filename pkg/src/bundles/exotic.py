"""
Bundles « exotiques » utilisés par la classification :
- Mf : β -> f(Z(β)) pour une fonction en escalier f discontinue en c
- M  : θ -> (limite à gauche de Z en θ) / θ
"""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, model_validator

from src.funcspace.models import FunctionModelBase
from src.funcspace.operations import evaluate, left_limit
from src.utils.errors import DomainError


class StepFSpec(BaseModel):
    """f(t) = low pour t < c, high pour t >= c."""

    model_config = ConfigDict(frozen=True)

    c: float
    low: float
    high: float

    @model_validator(mode="after")
    def _check_discontinuous(self) -> "StepFSpec":
        if self.high == self.low:
            raise ValueError("high et low doivent différer (f discontinue en c)")
        return self

    def value(self, t: float) -> float:
        return self.low if t < self.c else self.high


def mf_bundle(F: FunctionModelBase, f: StepFSpec, beta: float) -> float:
    """Mf_β(Z) = f(Z(β)), β dans [0, T]."""
    T = F.domain_end
    if not 0.0 <= beta <= T:
        raise DomainError(f"β={beta} hors de [0, T={T}]")
    return float(f.value(evaluate(F, beta)))


def mlimit_bundle(F: FunctionModelBase, theta: float) -> float:
    """M_θ(Z) = Z(θ-)/θ ; égal à Z(θ)/θ aux points de continuité."""
    if not theta > 0.0:
        raise DomainError(f"θ doit être strictement positif (reçu {theta})")
    return left_limit(F, theta) / theta
