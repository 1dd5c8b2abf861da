"""Générateurs aléatoires partagés par les tests (graines fixées par les appelants)."""
from typing import Optional

import numpy as np

from src.funcspace.models import PiecewiseLinear


def random_decreasing_pl(
    rng: np.random.Generator,
    max_points: int = 8,
    z0_max: float = 10.0,
    floor: float = 0.0,
    T: Optional[float] = None,
    on_grid: int = 0,
) -> PiecewiseLinear:
    """
    Fonction continue, décroissante, positive, linéaire par morceaux.

    Args:
        floor: valeur minimale des ordonnées
        on_grid: si > 0, les abscisses sont des multiples de T/on_grid
    """
    T = float(rng.uniform(0.5, 5.0)) if T is None else T
    k = int(rng.integers(2, max_points + 1))
    if on_grid:
        interior = rng.choice(np.arange(1, on_grid), size=k - 2, replace=False) * (T / on_grid)
    else:
        interior = rng.uniform(0.0, T, size=k - 2)
    xs = np.unique(np.concatenate(([0.0], interior, [T])))
    z0 = float(rng.uniform(max(1.0, floor), z0_max))
    ys = np.sort(rng.uniform(floor, z0, size=xs.size))[::-1]
    ys[0] = z0
    return PiecewiseLinear(T=T, points=tuple((float(x), float(y)) for x, y in zip(xs, ys)))


def scaled(F: PiecewiseLinear, c: float) -> PiecewiseLinear:
    """c·F, même domaine."""
    return PiecewiseLinear(T=F.T, points=tuple((x, c * y) for x, y in F.points))


def shifted(F: PiecewiseLinear, c: float) -> PiecewiseLinear:
    """F + c, même domaine."""
    return PiecewiseLinear(T=F.T, points=tuple((x, y + c) for x, y in F.points))
