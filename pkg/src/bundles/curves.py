"""Courbes de bundles θ -> m_θ(Z) sur une grille, avec masque d'admissibilité et θ₀."""
from __future__ import annotations

import math
from typing import List, Literal, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.bundles.exotic import StepFSpec, mf_bundle, mlimit_bundle
from src.funcspace.models import FunctionModelBase, GridSpec
from src.funcspace.operations import cumulative, evaluate
from src.measures.impact import (
    Method,
    g_theta,
    h_theta,
    i_theta,
    kosmulski,
    mu_theta,
    percentile,
    polar,
    r_theta,
)
from src.utils.errors import DomainError, NotAdmissible

BundleKind = Literal["I", "mu", "P", "h", "g", "kosmulski", "R", "polar", "mf", "m"]

# Paramètre strictement positif (θ, ou φ pour polar)
POSITIVE_KINDS = frozenset({"h", "g", "kosmulski", "R", "polar", "m"})
# θ au-delà de T : hors domaine, donc valeur absente
BOUNDED_KINDS = frozenset({"I", "mu", "P", "mf", "m"})
CONTINUITY_KINDS = frozenset({"h", "g", "kosmulski", "R", "polar"})


class BundleSpec(BaseModel):
    """Un bundle : sa nature, l'exposant p (kosmulski) ou la fonction en escalier f (mf)."""

    model_config = ConfigDict(frozen=True)

    kind: BundleKind
    p: Optional[float] = Field(default=None, gt=0)
    step: Optional[StepFSpec] = None

    @model_validator(mode="after")
    def _check_parameters(self) -> "BundleSpec":
        if self.kind == "kosmulski" and self.p is None:
            raise ValueError("le bundle kosmulski exige p")
        if self.kind == "mf" and self.step is None:
            raise ValueError("le bundle mf exige une fonction en escalier (step)")
        return self

    @property
    def label(self) -> str:
        if self.kind == "kosmulski":
            return f"kosmulski(p={self.p:g})"
        return self.kind


class BundleCurve(BaseModel):
    measure: str
    thetas: List[float]
    values: List[Optional[float]]
    theta0: float

    @property
    def admissible(self) -> List[bool]:
        return [v is not None for v in self.values]

    def to_records(self) -> List[dict]:
        return [
            {"theta": t, "value": v, "admissible": v is not None}
            for t, v in zip(self.thetas, self.values)
        ]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "theta": self.thetas,
                "value": [np.nan if v is None else v for v in self.values],
                "admissible": self.admissible,
            }
        )


def _as_spec(bundle: Union[BundleSpec, str]) -> BundleSpec:
    if isinstance(bundle, BundleSpec):
        return bundle
    return BundleSpec(kind=bundle)


def theta_grid(start: float, stop: float, count: int, spacing: str = "log") -> np.ndarray:
    """Grille de θ, logarithmique par défaut pour résoudre le voisinage de θ₀."""
    return GridSpec(start=start, stop=stop, count=count, spacing=spacing).points()


def theta0(F: FunctionModelBase, bundle: Union[BundleSpec, str]) -> float:
    """
    Infimum des θ admissibles.

    h, R : Z(T)/T ; g : Y(T)/T² ; kosmulski : Z(T)/T^p ; polar : arctan du θ₀ de h
    (la grille de polar est en angle). Les autres bundles n'ont pas de borne : 0.
    """
    spec = _as_spec(bundle)
    T = F.domain_end
    if spec.kind in ("h", "R"):
        return evaluate(F, T) / T
    if spec.kind == "g":
        return cumulative(F, T) / (T * T)
    if spec.kind == "kosmulski":
        return evaluate(F, T) / T ** spec.p
    if spec.kind == "polar":
        return math.atan(evaluate(F, T) / T)
    return 0.0


def measure_at(
    F: FunctionModelBase,
    bundle: Union[BundleSpec, str],
    theta: float,
    method: Method = "auto",
) -> float:
    """Valeur du bundle en un seul θ (erreurs levées, comme les mesures)."""
    spec = _as_spec(bundle)
    kind = spec.kind
    if kind == "I":
        return i_theta(F, theta)
    if kind == "mu":
        return mu_theta(F, theta)
    if kind == "P":
        return percentile(F, theta)
    if kind == "h":
        return h_theta(F, theta, method=method)
    if kind == "g":
        return g_theta(F, theta, method=method)
    if kind == "kosmulski":
        return kosmulski(F, theta, spec.p, method=method)
    if kind == "R":
        return r_theta(F, theta, method=method)
    if kind == "polar":
        return polar(F, theta, method=method)
    if kind == "mf":
        return mf_bundle(F, spec.step, theta)
    return mlimit_bundle(F, theta)


def _check_grid(spec: BundleSpec, grid: np.ndarray) -> None:
    if grid.size == 0:
        raise DomainError("grille de θ vide")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("la grille de θ doit être strictement croissante")
    if spec.kind in POSITIVE_KINDS and grid[0] <= 0.0:
        raise DomainError(f"le bundle {spec.kind} exige θ > 0")
    if grid[0] < 0.0:
        raise DomainError("θ doit être positif ou nul")
    if spec.kind == "polar" and grid[-1] >= math.pi / 2:
        raise DomainError("la grille de φ doit rester dans ]0, π/2[")


def bundle_curve(
    F: FunctionModelBase,
    bundle: Union[BundleSpec, str],
    grid: Union[Sequence[float], np.ndarray, GridSpec],
    method: Method = "auto",
) -> BundleCurve:
    """Évalue le bundle sur la grille ; θ non admissible (ou au-delà de T) -> valeur absente."""
    spec = _as_spec(bundle)
    thetas = grid.points() if isinstance(grid, GridSpec) else np.asarray(grid, dtype=float)
    _check_grid(spec, thetas)
    T = F.domain_end

    values: List[Optional[float]] = []
    for theta in thetas.tolist():
        if spec.kind in BOUNDED_KINDS and theta > T:
            values.append(None)
            continue
        try:
            values.append(measure_at(F, spec, theta, method=method))
        except NotAdmissible:
            values.append(None)
    return BundleCurve(
        measure=spec.label,
        thetas=thetas.tolist(),
        values=values,
        theta0=theta0(F, spec),
    )
