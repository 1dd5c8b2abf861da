"""
Solveurs de racines pour les mesures définies par un point de croisement.

- bisect_decreasing : bissection encadrée, arrêt sur le résidu relatif et la largeur de l'intervalle
- linear_crossing   : racine exacte d'un résidu linéaire par morceaux
- g_quadratic_root  : racine exacte de Y(x) = θx² quand Z est linéaire par morceaux
"""
from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from src.config import MAX_ITER


def bisect_decreasing(
    residual: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = MAX_ITER,
    xtol: Optional[float] = None,
) -> float:
    """
    Racine de `residual` sur [lo, hi] avec residual(lo) > 0 >= residual(hi).

    Seul le signe est utilisé pour réduire l'intervalle : la fonction n'a pas besoin
    d'être monotone, seulement d'avoir une unique racine dans l'intervalle.
    L'arrêt exige |résidu| <= tol et une largeur d'intervalle <= xtol (par défaut
    quelques ulps de hi).
    """
    if residual(hi) >= 0.0:
        return hi
    if residual(lo) <= 0.0:
        return lo
    if xtol is None:
        xtol = 4.0 * np.finfo(float).eps * max(1.0, abs(hi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r = residual(mid)
        if r == 0.0 or (abs(r) <= tol and hi - lo <= xtol):
            return mid
        if r > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def linear_crossing(xs: np.ndarray, r: np.ndarray) -> float:
    """
    Plus grande racine d'un résidu linéaire entre les abscisses xs, avec r[0] >= 0.

    Si r s'annule sur tout un intervalle, la borne droite de cet intervalle est retenue.
    """
    positive = np.flatnonzero(r > 0.0)
    if positive.size == 0:
        k = -1
    else:
        k = int(positive[-1])
        if k == xs.size - 1:
            return float(xs[-1])
    j = k + 1
    if r[j] == 0.0:
        while j + 1 < xs.size and r[j + 1] == 0.0:
            j += 1
        return float(xs[j])
    if k < 0:
        return float(xs[0])
    r0, r1 = float(r[k]), float(r[k + 1])
    return float(xs[k] + r0 * (xs[k + 1] - xs[k]) / (r0 - r1))


def g_quadratic_root(xs: np.ndarray, ys: np.ndarray, cum: np.ndarray, theta: float) -> float:
    """
    Plus grande racine positive de G(x) = Y(x) - θx², Y intégrale d'un Z continu
    linéaire par morceaux (valeurs ys aux abscisses xs, intégrales cum).

    G est strictement concave et nulle en 0 : la racine positive est sur le segment
    qui suit le dernier point de cassure où G > 0.
    """
    G = cum - theta * xs ** 2
    positive = np.flatnonzero(G[1:] > 0.0) + 1
    k = int(positive[-1]) if positive.size else 0
    if k == xs.size - 1:
        return float(xs[-1])
    x0 = float(xs[k])
    dx = float(xs[k + 1] - x0)
    slope = float(ys[k + 1] - ys[k]) / dx
    A = 0.5 * slope - theta
    B = float(ys[k]) - 2.0 * theta * x0
    C = float(G[k])
    if k == 0:
        u = -B / A
    else:
        root_disc = math.sqrt(B * B - 4.0 * A * C)
        if B > 0.0:
            u = (-B - root_disc) / (2.0 * A)
        else:
            u = 2.0 * C / (root_disc - B)
    return x0 + min(max(u, 0.0), dx)
