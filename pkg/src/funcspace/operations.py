"""Opérations sur les modèles : évaluation, limites, intégrale, distance uniforme, appartenance à U."""
from __future__ import annotations

from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from src.config import DEFAULT_GRID_COUNT, JUMP_PROBE
from src.funcspace.models import (
    Constant,
    FunctionModelBase,
    GridSpec,
    PiecewiseLinear,
)
from src.utils.errors import ContinuityRequired, DomainError

# Tolérance relative sur les bornes du domaine (grilles calculées en flottants)
_DOMAIN_SLACK = 1e-12

GridLike = Union[GridSpec, Sequence[float], np.ndarray, None]


class Membership(NamedTuple):
    ok: bool
    reason: str
    at: Optional[float] = None
    condition: Optional[str] = None  # "positivity", "continuity" ou "monotonicity"


def _checked(F: FunctionModelBase, x, open_left: bool = False) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    T = F.domain_end
    slack = _DOMAIN_SLACK * T
    if np.any(np.isnan(arr)) or np.any(arr < -slack) or np.any(arr > T + slack):
        raise DomainError(f"x={x} hors du domaine [0, {T}]")
    if open_left and np.any(arr <= 0.0):
        raise DomainError("la limite à gauche n'est pas définie en x=0")
    return np.clip(arr, 0.0, T)


def _out(values: np.ndarray, x):
    if np.ndim(x) == 0:
        return float(values)
    return np.asarray(values, dtype=float)


def evaluate(F: FunctionModelBase, x):
    """Z(x), valeur stockée (limite à droite) aux points de saut."""
    arr = _checked(F, x)
    return _out(F.value(arr), x)


def left_limit(F: FunctionModelBase, x):
    """lim_{s -> x-} Z(s), pour x dans ]0, T]."""
    arr = _checked(F, x, open_left=True)
    return _out(F.left_value(arr), x)


def cumulative(F: FunctionModelBase, x):
    """Y(x) = intégrale de 0 à x de Z, forme close par variante."""
    arr = _checked(F, x)
    return _out(F.integral(arr), x)


def as_piecewise_linear(F: FunctionModelBase) -> Optional[PiecewiseLinear]:
    """Vue exacte par points de cassure, si elle existe (linéaire par morceaux ou constante)."""
    if isinstance(F, PiecewiseLinear):
        return F
    if isinstance(F, Constant):
        return PiecewiseLinear(T=F.T, points=((0.0, F.a), (F.T, F.a)))
    return None


def is_zero_function(F: FunctionModelBase) -> bool:
    # décroissante et positive : Z(0) = 0 force Z = 0
    return float(F.value(np.float64(0.0))) == 0.0


def is_in_U(F: FunctionModelBase) -> Membership:
    """Continue, décroissante (au sens large) et positive sur [0, T] ?"""
    xs = np.asarray(F.abscissae(), dtype=float)
    jumps = set(np.asarray(F.jump_points(), dtype=float).tolist())
    if isinstance(F, PiecewiseLinear):
        right, left = F.right_values, F.left_values
        for k in range(xs.size):
            if right[k] < 0:
                return Membership(False, f"valeur négative en x={xs[k]}", float(xs[k]), "positivity")
            if xs[k] in jumps:
                return Membership(False, f"discontinue en x={xs[k]}", float(xs[k]), "continuity")
            if k + 1 < xs.size and left[k + 1] > right[k]:
                return Membership(
                    False, f"croissante sur [{xs[k]}, {xs[k + 1]}]", float(xs[k]), "monotonicity"
                )
        return Membership(True, "continue, décroissante, positive")
    if jumps:
        x = min(jumps)
        return Membership(False, f"discontinue en x={x}", float(x), "continuity")
    return Membership(True, "continue, décroissante, positive")


def require_continuous(F: FunctionModelBase) -> None:
    jumps = F.jump_points()
    if jumps.size:
        raise ContinuityRequired(
            f"mesure définie pour les fonctions continues ; saut en x={float(jumps[0])}",
            at=float(jumps[0]),
        )


def require_decreasing(F: FunctionModelBase) -> None:
    membership = is_in_U(F)
    if not membership.ok and membership.condition != "continuity":
        raise DomainError(f"fonction hors de U : {membership.reason}")


def _grid_points(grid: GridLike, T: float) -> np.ndarray:
    if grid is None:
        return np.linspace(0.0, T, DEFAULT_GRID_COUNT)
    if isinstance(grid, GridSpec):
        return grid.points()
    return np.asarray(grid, dtype=float)


def sup_distance(F: FunctionModelBase, G: FunctionModelBase, grid: GridLike = None) -> float:
    """
    sup |F - G| sur [0, T].

    Exact si les deux modèles sont linéaires par morceaux (F - G est linéaire entre
    les cassures fusionnées, on compare limites à droite et à gauche). Sinon estimation
    sur la grille, enrichie des cassures, des sauts +/- JUMP_PROBE et des limites à gauche.
    """
    T = F.domain_end
    if abs(T - G.domain_end) > _DOMAIN_SLACK * max(T, G.domain_end):
        raise DomainError(f"domaines différents : T={T} et T={G.domain_end}")

    pf, pg = as_piecewise_linear(F), as_piecewise_linear(G)
    if pf is not None and pg is not None:
        xs = np.union1d(pf.abscissae(), pg.abscissae())
        gaps = np.abs(pf.value(xs) - pg.value(xs))
        gaps_left = np.abs(pf.left_value(xs[1:]) - pg.left_value(xs[1:]))
        return float(max(gaps.max(), gaps_left.max()))

    jumps = np.concatenate((F.jump_points(), G.jump_points()))
    xs = np.concatenate((
        _grid_points(grid, T),
        F.abscissae(),
        G.abscissae(),
        jumps - JUMP_PROBE,
        jumps + JUMP_PROBE,
        [0.0, T],
    ))
    xs = np.unique(xs[(xs >= 0.0) & (xs <= T)])
    gaps = np.abs(F.value(xs) - G.value(xs))
    positive = xs[xs > 0.0]
    gaps_left = np.abs(F.left_value(positive) - G.left_value(positive))
    return float(max(gaps.max(), gaps_left.max() if positive.size else 0.0))


def from_citations(counts: Sequence[float], tail: str = "hold") -> PiecewiseLinear:
    """
    Modèle continu de données de citations : (i-1, c_i) pour i = 1..N, fermé par
    (N, c_N) si tail='hold' ou (N, 0) si tail='zero'. Les comptes sont triés par ordre décroissant.
    """
    values = np.asarray(list(counts), dtype=float)
    if values.size == 0:
        raise DomainError("liste de citations vide")
    if np.any(values < 0) or np.any(np.isnan(values)):
        raise DomainError("les nombres de citations doivent être positifs")
    if tail not in ("hold", "zero"):
        raise DomainError(f"tail inconnu : {tail!r} (hold ou zero)")
    ranked = np.sort(values)[::-1]
    n = ranked.size
    points = [(float(i), float(c)) for i, c in enumerate(ranked)]
    points.append((float(n), float(ranked[-1]) if tail == "hold" else 0.0))
    return PiecewiseLinear(T=float(n), points=tuple(points))
