"""
Modèles de fonctions rang-fréquence sur [0, T].

Chaque variante est un modèle pydantic figé, discriminé par le champ `type`
(le même que dans la spécification JSON des fonctions) :
- piecewise_linear : points (x, y) reliés linéairement, sauts vers le bas optionnels
- power_complement : x -> 1 - x^n sur [0, 1]
- constant         : x -> a sur [0, T]
- upper_step       : high sur [0, x0[, low sur [x0, T]

Convention aux sauts : la valeur stockée en x est la limite à droite,
la limite à gauche est conservée à part.
"""
from __future__ import annotations

from typing import Annotated, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator


class FunctionModelBase(BaseModel):
    """Interface commune : évaluation, limites à gauche, intégrale cumulée (vectorisées)."""

    model_config = ConfigDict(frozen=True)

    @property
    def domain_end(self) -> float:
        raise NotImplementedError

    @property
    def is_continuous(self) -> bool:
        return self.jump_points().size == 0

    def value(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def left_value(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def integral(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def abscissae(self) -> np.ndarray:
        """Abscisses remarquables : bornes, points de cassure, sauts."""
        raise NotImplementedError

    def jump_points(self) -> np.ndarray:
        return np.empty(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionModelBase):
            return NotImplemented
        return type(self) is type(other) and self.model_dump() == other.model_dump()


class Jump(BaseModel):
    """Saut vers le bas en x : limite à gauche `left`, valeur stockée `right`."""

    model_config = ConfigDict(frozen=True)

    x: float
    left: float = Field(ge=0)
    right: float = Field(ge=0)


class PiecewiseLinear(FunctionModelBase):
    type: Literal["piecewise_linear"] = "piecewise_linear"
    T: float = Field(gt=0)
    points: Tuple[Tuple[float, float], ...]
    jumps: Tuple[Jump, ...] = ()

    _xs: np.ndarray = PrivateAttr()
    _right: np.ndarray = PrivateAttr()
    _left: np.ndarray = PrivateAttr()
    _cum: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def _check_structure(self) -> "PiecewiseLinear":
        if len(self.points) < 2:
            raise ValueError("au moins deux points sont requis (x=0 et x=T)")
        xs = [p[0] for p in self.points]
        if xs[0] != 0.0 or xs[-1] != self.T:
            raise ValueError(f"le premier point doit être en 0 et le dernier en T={self.T}")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("les abscisses des points doivent être strictement croissantes")
        if any(p[1] < 0 for p in self.points):
            raise ValueError("les valeurs doivent être positives ou nulles")
        for jump in self.jumps:
            if not 0.0 < jump.x < self.T:
                raise ValueError(f"saut en x={jump.x} hors de ]0, T[")
            if jump.left < jump.right:
                raise ValueError(f"saut en x={jump.x} vers le haut (left < right)")
            if jump.x in xs:
                y = self.points[xs.index(jump.x)][1]
                if y != jump.right:
                    raise ValueError(f"saut en x={jump.x} : right={jump.right} diffère du point y={y}")
        if len({j.x for j in self.jumps}) != len(self.jumps):
            raise ValueError("deux sauts à la même abscisse")
        return self

    def model_post_init(self, __context) -> None:
        table = {float(x): (float(y), float(y)) for x, y in self.points}
        for jump in self.jumps:
            table[float(jump.x)] = (float(jump.left), float(jump.right))
        xs = np.array(sorted(table))
        self._xs = xs
        self._left = np.array([table[x][0] for x in xs])
        self._right = np.array([table[x][1] for x in xs])
        areas = 0.5 * (self._right[:-1] + self._left[1:]) * np.diff(xs)
        self._cum = np.concatenate(([0.0], np.cumsum(areas)))

    @property
    def domain_end(self) -> float:
        return float(self.T)

    @property
    def xs(self) -> np.ndarray:
        return self._xs

    @property
    def right_values(self) -> np.ndarray:
        return self._right

    @property
    def left_values(self) -> np.ndarray:
        return self._left

    def _segment(self, x: np.ndarray, side: str) -> np.ndarray:
        i = np.searchsorted(self._xs, x, side=side) - 1
        return np.clip(i, 0, self._xs.size - 2)

    def _on_segment(self, i: np.ndarray, x: np.ndarray) -> np.ndarray:
        x0 = self._xs[i]
        dx = self._xs[i + 1] - x0
        y0 = self._right[i]
        return y0 + (self._left[i + 1] - y0) * (x - x0) / dx

    def value(self, x):
        return self._on_segment(self._segment(x, "right"), x)

    def left_value(self, x):
        return self._on_segment(self._segment(x, "left"), x)

    def integral(self, x):
        i = self._segment(x, "right")
        return self._cum[i] + 0.5 * (self._right[i] + self._on_segment(i, x)) * (x - self._xs[i])

    def abscissae(self) -> np.ndarray:
        return self._xs

    def jump_points(self) -> np.ndarray:
        return self._xs[self._left != self._right]


class PowerComplement(FunctionModelBase):
    type: Literal["power_complement"] = "power_complement"
    n: int = Field(ge=1)

    @property
    def domain_end(self) -> float:
        return 1.0

    def value(self, x):
        return 1.0 - np.power(x, self.n)

    left_value = value

    def integral(self, x):
        return x - np.power(x, self.n + 1) / (self.n + 1)

    def abscissae(self) -> np.ndarray:
        return np.array([0.0, 1.0])


class Constant(FunctionModelBase):
    type: Literal["constant"] = "constant"
    a: float = Field(ge=0)
    T: float = Field(gt=0)

    @property
    def domain_end(self) -> float:
        return float(self.T)

    def value(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.a)

    left_value = value

    def integral(self, x):
        return self.a * np.asarray(x, dtype=float)

    def abscissae(self) -> np.ndarray:
        return np.array([0.0, self.T])


class UpperStep(FunctionModelBase):
    """`high` sur [0, x0[, `low` sur [x0, T] ; x0 = T est permis (saut à l'extrémité)."""

    type: Literal["upper_step"] = "upper_step"
    T: float = Field(gt=0)
    x0: float
    high: float
    low: float = Field(ge=0)

    @model_validator(mode="after")
    def _check_step(self) -> "UpperStep":
        if not 0.0 < self.x0 <= self.T:
            raise ValueError(f"x0={self.x0} doit être dans ]0, T]")
        if self.high <= self.low:
            raise ValueError("high doit être strictement supérieur à low")
        return self

    @property
    def domain_end(self) -> float:
        return float(self.T)

    def value(self, x):
        return np.where(np.asarray(x) < self.x0, self.high, self.low).astype(float)

    def left_value(self, x):
        return np.where(np.asarray(x) <= self.x0, self.high, self.low).astype(float)

    def integral(self, x):
        x = np.asarray(x, dtype=float)
        return self.high * np.minimum(x, self.x0) + self.low * np.maximum(x - self.x0, 0.0)

    def abscissae(self) -> np.ndarray:
        return np.unique([0.0, self.x0, self.T])

    def jump_points(self) -> np.ndarray:
        return np.array([self.x0])


FunctionModel = Annotated[
    Union[PiecewiseLinear, PowerComplement, Constant, UpperStep],
    Field(discriminator="type"),
]


class GridSpec(BaseModel):
    """Grille d'évaluation {start, stop, count, spacing}."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    count: int = Field(ge=2)
    spacing: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def _check_bounds(self) -> "GridSpec":
        if self.stop <= self.start:
            raise ValueError("stop doit être strictement supérieur à start")
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("une grille log exige start > 0")
        return self

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)
