"""
Rapports de convergence et règle de verdict.

Un verdict est une indication numérique, pas une preuve : il résume les matrices
d'erreurs |m(Zn) - m(Z)| sur une grille finie et une liste finie de n.
"""
from __future__ import annotations

from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from src.config import EPS_UNIFORM

# Marge sur la décroissance des dernières erreurs sup
_MONOTONE_SLACK = 1e-12


class Verdict(str, Enum):
    UNIFORM = "UniformEvidence"
    POINTWISE_ONLY = "PointwiseOnlyEvidence"
    NO_CONVERGENCE = "NoConvergenceEvidence"


class ConvergenceReport(BaseModel):
    """
    Erreurs d'une famille (ou de ses bundles) contre sa limite.

    Attributes:
        family_id: identifiant de la famille
        kind: nature du bundle, ou "function" pour la convergence des fonctions
        n_list: indices n croissants
        grid: grille des θ (ou des x pour kind="function")
        per_theta_errors: erreurs par n puis par point de grille ; None hors admissibilité conjointe
        sup_errors: sup par n sur la grille conjointement admissible et les sondes
        probe_thetas: θ de sonde ajoutés pour chaque n
        verdict: indication de convergence uniforme / ponctuelle / absente
        rate: pente log-log des erreurs sup en fonction de n
    """

    family_id: str
    kind: str
    n_list: List[int]
    grid: List[float]
    per_theta_errors: List[List[Optional[float]]]
    sup_errors: List[Optional[float]]
    probe_thetas: List[List[float]] = Field(default_factory=list)
    verdict: Verdict
    eps_u: float = EPS_UNIFORM
    notes: List[str] = Field(default_factory=list)
    rate: Optional[float] = None

    def fixed_errors_at_last(self) -> List[float]:
        if not self.per_theta_errors:
            return []
        return [e for e in self.per_theta_errors[-1] if e is not None]

    def to_long_frame(self, scenario: str = "") -> pd.DataFrame:
        """Format long (scenario, n, theta, error) ; les sondes ne figurent pas dans la grille."""
        rows = [
            {"scenario": scenario, "n": n, "theta": theta, "error": error}
            for n, errors in zip(self.n_list, self.per_theta_errors)
            for theta, error in zip(self.grid, errors)
            if error is not None
        ]
        return pd.DataFrame(rows, columns=["scenario", "n", "theta", "error"])


def decide_verdict(
    per_theta_errors: Sequence[Sequence[Optional[float]]],
    sup_errors: Sequence[Optional[float]],
    eps_u: float = EPS_UNIFORM,
) -> Verdict:
    """
    Uniforme : sup au plus grand n < ε et sup non croissant sur les trois derniers n.
    Ponctuelle seulement : toutes les erreurs à θ fixé au plus grand n < ε, mais sup >= 10ε.
    Sinon : pas d'indication de convergence.
    """
    if not sup_errors or sup_errors[-1] is None:
        return Verdict.NO_CONVERGENCE
    tail = [s for s in sup_errors[-3:] if s is not None]
    last = sup_errors[-1]
    nonincreasing = all(b <= a + _MONOTONE_SLACK for a, b in zip(tail, tail[1:]))
    if last < eps_u and nonincreasing:
        return Verdict.UNIFORM

    fixed = [e for e in per_theta_errors[-1] if e is not None] if per_theta_errors else []
    if fixed and max(fixed) < eps_u and last >= 10.0 * eps_u:
        return Verdict.POINTWISE_ONLY
    return Verdict.NO_CONVERGENCE


def observed_rate(n_list: Sequence[int], sup_errors: Sequence[Optional[float]]) -> Optional[float]:
    """Pente de log(sup) contre log(n) par moindres carrés ; None sans deux erreurs positives."""
    pairs = [(n, s) for n, s in zip(n_list, sup_errors) if s is not None and s > 0.0]
    if len(pairs) < 2:
        return None
    ns, errors = zip(*pairs)
    slope, _ = np.polyfit(np.log(ns), np.log(errors), 1)
    return float(slope)
