"""Convergence des familles (Z_n) vers leur limite : fonctions brutes et courbes de bundles."""
from __future__ import annotations

import math
from typing import List, Optional, Sequence, Union

import numpy as np

from src.bundles.curves import (
    CONTINUITY_KINDS,
    BundleSpec,
    bundle_curve,
    measure_at,
    theta0,
    theta_grid,
)
from src.config import (
    DEFAULT_GRID_COUNT,
    DEFAULT_THETA_COUNT,
    DEFAULT_THETA_MAX,
    DEFAULT_THETA_MIN,
    EPS_UNIFORM,
    N_LIST,
    PROBE_DELTA,
)
from src.convergence.reports import ConvergenceReport, Verdict, decide_verdict, observed_rate
from src.funcspace.families import UserFamily, _Family, family_member, limit_of
from src.funcspace.models import GridSpec
from src.funcspace.operations import evaluate, sup_distance
from src.measures.impact import Method
from src.utils.errors import DomainError, NotAdmissible

# Bundles dont la non-uniformité se cache près de la frontière d'admissibilité θ₀(Z_n)
PROBED_KINDS = frozenset({"h", "g", "R", "kosmulski", "polar"})

GridArg = Union[GridSpec, Sequence[float], np.ndarray, None]


def default_n_list(spec: _Family, n_list: Optional[Sequence[int]] = None) -> List[int]:
    if n_list is not None:
        return [int(n) for n in n_list]
    if isinstance(spec, UserFamily):
        return list(spec.indices)
    return [n for n in N_LIST if n >= spec.min_index]


def _as_bundle(bundle: Union[BundleSpec, str]) -> BundleSpec:
    return bundle if isinstance(bundle, BundleSpec) else BundleSpec(kind=bundle)


def _points(grid: GridArg, default: np.ndarray) -> np.ndarray:
    if grid is None:
        return default
    if isinstance(grid, GridSpec):
        return grid.points()
    return np.asarray(grid, dtype=float)


def function_convergence(
    spec: _Family,
    x_grid: GridArg = None,
    n_list: Optional[Sequence[int]] = None,
    eps_u: float = EPS_UNIFORM,
) -> ConvergenceReport:
    """Erreurs |Z_n(x) - Z(x)| sur la grille et sup_x |Z_n - Z| pour chaque n."""
    limit = limit_of(spec)
    T = limit.domain_end
    xs = _points(x_grid, np.linspace(0.0, T, DEFAULT_GRID_COUNT))
    ns = default_n_list(spec, n_list)

    per_x: List[List[Optional[float]]] = []
    sups: List[Optional[float]] = []
    for n in ns:
        member = family_member(spec, n)
        if member.domain_end != T:
            raise DomainError(f"membre n={n} sur [0, {member.domain_end}], limite sur [0, {T}]")
        gaps = np.abs(evaluate(member, xs) - evaluate(limit, xs))
        per_x.append(gaps.tolist())
        sups.append(sup_distance(member, limit, xs))

    return ConvergenceReport(
        family_id=spec.family_id,
        kind="function",
        n_list=ns,
        grid=xs.tolist(),
        per_theta_errors=per_x,
        sup_errors=sups,
        probe_thetas=[[] for _ in ns],
        verdict=decide_verdict(per_x, sups, eps_u),
        eps_u=eps_u,
        rate=observed_rate(ns, sups),
    )


def _probe_thetas(member, limit, bundle: BundleSpec) -> List[float]:
    """θ de sonde pour un membre : juste au-dessus de θ₀(Z_n), ou l'échelle ||Z_n - Z|| pour M."""
    if bundle.kind == "m":
        scale = sup_distance(member, limit)
        return [scale] if 0.0 < scale <= member.domain_end else []
    if bundle.kind not in PROBED_KINDS:
        return []
    t0 = theta0(member, bundle)
    if t0 <= 0.0:
        return []
    if bundle.kind == "polar":
        return [math.atan(math.tan(t0) * (1.0 + PROBE_DELTA))]
    return [t0 * (1.0 + PROBE_DELTA)]


def _joint_error(member, limit, bundle: BundleSpec, theta: float, method: Method) -> Optional[float]:
    try:
        return abs(measure_at(member, bundle, theta, method) - measure_at(limit, bundle, theta, method))
    except (NotAdmissible, DomainError):
        return None


def measure_convergence(
    spec: _Family,
    bundle: Union[BundleSpec, str],
    grid: GridArg = None,
    n_list: Optional[Sequence[int]] = None,
    boundary_probes: Optional[bool] = None,
    eps_u: float = EPS_UNIFORM,
    method: Method = "auto",
) -> ConvergenceReport:
    """
    Erreurs |m_θ(Z_n) - m_θ(Z)| aux θ conjointement admissibles de la grille.

    Avec boundary_probes (défaut pour h, g, R, kosmulski, polar), chaque n ajoute un θ
    de sonde au sup ; les sondes n'entrent pas dans les erreurs à θ fixé.
    """
    bundle = _as_bundle(bundle)
    thetas = _points(grid, theta_grid(DEFAULT_THETA_MIN, DEFAULT_THETA_MAX, DEFAULT_THETA_COUNT))
    ns = default_n_list(spec, n_list)
    if boundary_probes is None:
        boundary_probes = bundle.kind in PROBED_KINDS
    limit = limit_of(spec)
    notes: List[str] = []

    if bundle.kind in CONTINUITY_KINDS and not limit.is_continuous:
        jump = float(limit.jump_points()[0])
        notes.append(f"{bundle.label} non évaluable : la limite est discontinue en x={jump}")
        return ConvergenceReport(
            family_id=spec.family_id,
            kind=bundle.label,
            n_list=ns,
            grid=thetas.tolist(),
            per_theta_errors=[[None] * thetas.size for _ in ns],
            sup_errors=[None for _ in ns],
            probe_thetas=[[] for _ in ns],
            verdict=Verdict.NO_CONVERGENCE,
            eps_u=eps_u,
            notes=notes,
        )

    limit_values = bundle_curve(limit, bundle, thetas, method=method).values
    per_theta: List[List[Optional[float]]] = []
    sups: List[Optional[float]] = []
    probes_used: List[List[float]] = []
    for n in ns:
        member = family_member(spec, n)
        values = bundle_curve(member, bundle, thetas, method=method).values
        errors = [
            None if a is None or b is None else abs(a - b)
            for a, b in zip(values, limit_values)
        ]
        present = [e for e in errors if e is not None]
        used: List[float] = []
        if boundary_probes:
            for theta in _probe_thetas(member, limit, bundle):
                error = _joint_error(member, limit, bundle, theta, method)
                if error is not None:
                    used.append(theta)
                    present.append(error)
        per_theta.append(errors)
        probes_used.append(used)
        sups.append(max(present) if present else None)

    if all(s is None for s in sups):
        notes.append("aucun θ conjointement admissible sur la grille")

    return ConvergenceReport(
        family_id=spec.family_id,
        kind=bundle.label,
        n_list=ns,
        grid=thetas.tolist(),
        per_theta_errors=per_theta,
        sup_errors=sups,
        probe_thetas=probes_used,
        verdict=decide_verdict(per_theta, sups, eps_u),
        eps_u=eps_u,
        notes=notes,
        rate=observed_rate(ns, sups),
    )
