"""Spécifications des mesures (MeasureSpec) et des fonctions de comparaison PED (FSpec)."""
from __future__ import annotations

import math
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class _FSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    def value(self, x):
        raise NotImplementedError

    def linear_view(self, T: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """Points de cassure (xs, ys) sur [0, T] si f est linéaire par morceaux, sinon None."""
        return None

    def covers(self, T: float) -> bool:
        return True


class LinearF(_FSpec):
    """f(x) = θx (mesures h_θ)."""

    type: Literal["linear"] = "linear"
    theta: float = Field(gt=0)

    def value(self, x):
        return self.theta * np.asarray(x, dtype=float)

    def linear_view(self, T):
        xs = np.array([0.0, T])
        return xs, self.theta * xs


class PowerF(_FSpec):
    """f(x) = θx^p (indices de Kosmulski généralisés)."""

    type: Literal["power"] = "power"
    theta: float = Field(gt=0)
    p: float = Field(gt=0)

    def value(self, x):
        return self.theta * np.power(np.asarray(x, dtype=float), self.p)

    def linear_view(self, T):
        if self.p != 1.0:
            return None
        xs = np.array([0.0, T])
        return xs, self.theta * xs


class PiecewiseLinearIncreasing(_FSpec):
    type: Literal["piecewise_linear_increasing"] = "piecewise_linear_increasing"
    points: Tuple[Tuple[float, float], ...]

    @model_validator(mode="after")
    def _check_increasing(self) -> "PiecewiseLinearIncreasing":
        if len(self.points) < 2:
            raise ValueError("au moins deux points sont requis")
        if self.points[0][0] != 0.0:
            raise ValueError("le premier point doit être en x=0")
        for (xa, ya), (xb, yb) in zip(self.points, self.points[1:]):
            if xb <= xa or yb <= ya:
                raise ValueError("f doit être strictement croissante (x et y croissants)")
        return self

    def value(self, x):
        xs, ys = zip(*self.points)
        return np.interp(np.asarray(x, dtype=float), xs, ys)

    def covers(self, T: float) -> bool:
        return self.points[-1][0] >= T

    def linear_view(self, T):
        xs = np.array([p[0] for p in self.points if p[0] < T] + [T])
        return xs, self.value(xs)


FSpec = Annotated[
    Union[LinearF, PowerF, PiecewiseLinearIncreasing],
    Field(discriminator="type"),
]


class _Measure(BaseModel):
    model_config = ConfigDict(frozen=True)


class IMeasure(_Measure):
    kind: Literal["I"] = "I"
    theta: float = Field(ge=0)


class MuMeasure(_Measure):
    kind: Literal["mu"] = "mu"
    theta: float = Field(ge=0)


class PercentileMeasure(_Measure):
    kind: Literal["percentile"] = "percentile"
    theta: float = Field(ge=0)


class HMeasure(_Measure):
    kind: Literal["h"] = "h"
    theta: float = Field(gt=0)


class GMeasure(_Measure):
    kind: Literal["g"] = "g"
    theta: float = Field(gt=0)


class KosmulskiMeasure(_Measure):
    kind: Literal["kosmulski"] = "kosmulski"
    theta: float = Field(gt=0)
    p: float = Field(gt=0)


class PEDMeasure(_Measure):
    kind: Literal["ped"] = "ped"
    f: FSpec


class RMeasure(_Measure):
    kind: Literal["R"] = "R"
    theta: float = Field(gt=0)


class PolarMeasure(_Measure):
    kind: Literal["polar"] = "polar"
    phi: float = Field(gt=0, lt=math.pi / 2)


MeasureSpec = Annotated[
    Union[
        IMeasure,
        MuMeasure,
        PercentileMeasure,
        HMeasure,
        GMeasure,
        KosmulskiMeasure,
        PEDMeasure,
        RMeasure,
        PolarMeasure,
    ],
    Field(discriminator="kind"),
]
