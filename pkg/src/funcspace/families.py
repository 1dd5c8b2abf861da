"""
Familles canoniques de fonctions (Z_n) et leurs limites déclarées.

- power_complement : Z_n = 1 - x^n, limite ponctuelle 1 sur [0,1[, 0 en 1
- constants        : Z_n = a + c / n^p (constante), limite la constante a
- figure1          : (0,S) -> (T/2,S/2) -> (3T/4,S/n), puis S/n sur [3T/4,T] ; n >= 3
- step_approach    : rampe de plus en plus raide vers un saut intérieur en x0
- user             : membres et limite fournis explicitement
"""
from __future__ import annotations

from typing import Annotated, ClassVar, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.funcspace.models import (
    Constant,
    FunctionModel,
    FunctionModelBase,
    PiecewiseLinear,
    PowerComplement,
    UpperStep,
)
from src.funcspace.operations import is_in_U
from src.utils.errors import DomainError


class _Family(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_index: ClassVar[int] = 1

    @property
    def family_id(self) -> str:
        return self.kind

    def member(self, n: int) -> FunctionModelBase:
        raise NotImplementedError

    def limit(self) -> FunctionModelBase:
        raise NotImplementedError


class PowerComplementSeq(_Family):
    kind: Literal["power_complement"] = "power_complement"

    def member(self, n: int) -> FunctionModelBase:
        return PowerComplement(n=n)

    def limit(self) -> FunctionModelBase:
        return UpperStep(T=1.0, x0=1.0, high=1.0, low=0.0)


class ConstantSeq(_Family):
    """Z_n = a + c / n^p sur [0, T]."""

    kind: Literal["constants"] = "constants"
    a: float = Field(default=0.0, ge=0)
    c: float = Field(default=1.0, gt=0)
    p: float = Field(default=1.0, gt=0)
    T: float = Field(default=1.0, gt=0)

    @property
    def family_id(self) -> str:
        return f"constants(a={self.a:g},c={self.c:g},p={self.p:g})"

    def member(self, n: int) -> FunctionModelBase:
        return Constant(a=self.a + self.c / n ** self.p, T=self.T)

    def limit(self) -> FunctionModelBase:
        return Constant(a=self.a, T=self.T)


class Figure1(_Family):
    kind: Literal["figure1"] = "figure1"
    S: float = Field(default=1.0, gt=0)
    T: float = Field(default=1.0, gt=0)
    min_index: ClassVar[int] = 3

    def member(self, n: int) -> FunctionModelBase:
        S, T = self.S, self.T
        return PiecewiseLinear(
            T=T,
            points=((0.0, S), (T / 2, S / 2), (3 * T / 4, S / n), (T, S / n)),
        )

    def limit(self) -> FunctionModelBase:
        S, T = self.S, self.T
        return PiecewiseLinear(
            T=T,
            points=((0.0, S), (T / 2, S / 2), (3 * T / 4, 0.0), (T, 0.0)),
        )


class StepApproach(_Family):
    """Membres continus (0,high) -> (x0·n/(n+1), high) -> (x0, low) -> (T, low) ; limite UpperStep."""

    kind: Literal["step_approach"] = "step_approach"
    T: float = Field(default=1.0, gt=0)
    x0: float = 0.5
    high: float = 1.0
    low: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _check_jump(self) -> "StepApproach":
        if not 0.0 < self.x0 < self.T:
            raise ValueError(f"x0={self.x0} doit être dans ]0, T[")
        if self.high <= self.low:
            raise ValueError("high doit être strictement supérieur à low")
        return self

    def member(self, n: int) -> FunctionModelBase:
        return PiecewiseLinear(
            T=self.T,
            points=(
                (0.0, self.high),
                (self.x0 * n / (n + 1), self.high),
                (self.x0, self.low),
                (self.T, self.low),
            ),
        )

    def limit(self) -> FunctionModelBase:
        return UpperStep(T=self.T, x0=self.x0, high=self.high, low=self.low)


class UserFamily(_Family):
    kind: Literal["user"] = "user"
    members: Tuple[Tuple[int, FunctionModel], ...]
    declared_limit: FunctionModel = Field(alias="limit")

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @model_validator(mode="after")
    def _check_members(self) -> "UserFamily":
        if not self.members:
            raise ValueError("une famille utilisateur doit avoir au moins un membre")
        indices = [n for n, _ in self.members]
        if any(b <= a for a, b in zip(indices, indices[1:])) or indices[0] < 1:
            raise ValueError("les indices des membres doivent être positifs et croissants")
        return self

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(n for n, _ in self.members)

    def member(self, n: int) -> FunctionModelBase:
        for index, model in self.members:
            if index == n:
                return model
        raise DomainError(f"indice n={n} absent de la famille utilisateur")

    def limit(self) -> FunctionModelBase:
        return self.declared_limit


FamilySpec = Annotated[
    Union[PowerComplementSeq, ConstantSeq, Figure1, StepApproach, UserFamily],
    Field(discriminator="kind"),
]


def family_member(spec: _Family, n: int) -> FunctionModelBase:
    """n-ième membre de la famille ; il appartient toujours à U."""
    if n < spec.min_index:
        raise DomainError(f"n={n} hors de la plage de la famille {spec.kind} (n >= {spec.min_index})")
    model = spec.member(n)
    membership = is_in_U(model)
    if not membership.ok:
        raise DomainError(f"membre n={n} hors de U : {membership.reason}")
    return model


def limit_of(spec: _Family) -> FunctionModelBase:
    return spec.limit()
