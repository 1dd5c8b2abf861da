"""
Mesures d'impact à paramètre fixé : I_θ, μ_θ, P_θ, h_θ, g_θ, PED, Kosmulski h_θ^(p), R_θ, ρ_Z(φ).

Les croisements sont résolus exactement (algèbre par segment) quand la fonction est
linéaire par morceaux, par bissection encadrée sinon (method="bisection" force la bissection).
"""
from __future__ import annotations

import math
from typing import Literal

import numpy as np

from src.config import ADMISSIBILITY_ATOL, BISECTION_RTOL
from src.funcspace.models import FunctionModelBase
from src.funcspace.operations import (
    as_piecewise_linear,
    cumulative,
    evaluate,
    is_zero_function,
    require_continuous,
    require_decreasing,
)
from src.measures.solvers import bisect_decreasing, g_quadratic_root, linear_crossing
from src.measures.specs import (
    GMeasure,
    HMeasure,
    IMeasure,
    KosmulskiMeasure,
    LinearF,
    MuMeasure,
    PEDMeasure,
    PercentileMeasure,
    PolarMeasure,
    PowerF,
    RMeasure,
    _FSpec,
    _Measure,
)
from src.utils.errors import DomainError, NotAdmissible

Method = Literal["auto", "bisection"]


def _check_theta_in_domain(F: FunctionModelBase, theta: float) -> None:
    T = F.domain_end
    if not 0.0 <= theta <= T:
        raise DomainError(f"θ={theta} hors de [0, T={T}]")


def _check_theta_positive(theta: float) -> None:
    if not theta > 0.0:
        raise DomainError(f"θ doit être strictement positif (reçu {theta})")


def _prepare_crossing(F: FunctionModelBase) -> None:
    require_continuous(F)
    require_decreasing(F)


def _tolerance(F: FunctionModelBase) -> float:
    return BISECTION_RTOL * (1.0 + evaluate(F, 0.0))


def _admissibility_slack(F: FunctionModelBase) -> float:
    return ADMISSIBILITY_ATOL * (1.0 + evaluate(F, 0.0))


# ---- Mesures intégrales et percentiles ------------------------------------


def i_theta(F: FunctionModelBase, theta: float) -> float:
    """I_θ(Z) = intégrale de 0 à θ de Z."""
    _check_theta_in_domain(F, theta)
    return cumulative(F, theta)


def mu_theta(F: FunctionModelBase, theta: float) -> float:
    """μ_θ(Z) = I_θ(Z)/θ, et μ_0(Z) = Z(0)."""
    _check_theta_in_domain(F, theta)
    if theta == 0.0:
        return evaluate(F, 0.0)
    return cumulative(F, theta) / theta


def percentile(F: FunctionModelBase, theta: float) -> float:
    """P_θ(Z) = Z(θ)."""
    _check_theta_in_domain(F, theta)
    return evaluate(F, theta)


# ---- Mesures PED ----------------------------------------------------------


def ped_measure(F: FunctionModelBase, f: _FSpec, method: Method = "auto") -> float:
    """Unique x de [0, T] tel que Z(x) = f(x), pour f continue strictement croissante."""
    _prepare_crossing(F)
    T = F.domain_end
    if not f.covers(T):
        raise DomainError(f"f n'est pas définie sur tout [0, T={T}]")
    slack = _admissibility_slack(F)
    z0, zT = evaluate(F, 0.0), evaluate(F, T)
    f0, fT = float(f.value(0.0)), float(f.value(T))
    if z0 < f0 - slack:
        raise NotAdmissible(f"Z(0)={z0} < f(0)={f0} : pas de croisement dans [0, T]")
    if zT - fT > slack:
        raise NotAdmissible(f"Z(T)={zT} > f(T)={fT} : pas de croisement dans [0, T]")
    if z0 <= f0:
        return 0.0

    pl = as_piecewise_linear(F)
    view = f.linear_view(T)
    if method == "auto" and pl is not None and view is not None:
        xs = np.union1d(pl.xs, view[0])
        r = pl.value(xs) - np.interp(xs, view[0], view[1])
        return linear_crossing(xs, r)

    def residual(x: float) -> float:
        return float(F.value(np.float64(x))) - float(f.value(x))

    return bisect_decreasing(residual, 0.0, T, _tolerance(F))


def h_theta(F: FunctionModelBase, theta: float, method: Method = "auto") -> float:
    """h_θ(Z) : l'unique x avec Z(x) = θx ; admissible si Z(T) <= θT."""
    _check_theta_positive(theta)
    _prepare_crossing(F)
    T = F.domain_end
    zT = evaluate(F, T)
    if zT - theta * T > _admissibility_slack(F):
        theta0 = zT / T
        raise NotAdmissible(
            f"h_θ non admissible pour θ={theta} : Z(T)={zT} > θT (θ0={theta0})",
            theta=theta,
            theta0=theta0,
        )
    return ped_measure(F, LinearF(theta=theta), method=method)


def kosmulski(F: FunctionModelBase, theta: float, p: float, method: Method = "auto") -> float:
    """h_θ^(p)(Z) : mesure PED avec f(x) = θx^p."""
    _check_theta_positive(theta)
    if not p > 0.0:
        raise DomainError(f"p doit être strictement positif (reçu {p})")
    _prepare_crossing(F)
    T = F.domain_end
    zT = evaluate(F, T)
    if zT - theta * T ** p > _admissibility_slack(F):
        theta0 = zT / T ** p
        raise NotAdmissible(
            f"h_θ^(p) non admissible pour θ={theta}, p={p} (θ0={theta0})",
            theta=theta,
            theta0=theta0,
        )
    return ped_measure(F, PowerF(theta=theta, p=p), method=method)


def g_theta(F: FunctionModelBase, theta: float, method: Method = "auto") -> float:
    """g_θ(Z) : le plus grand x de [0, T] avec Y(x) = θx² ; admissible si Y(T) <= θT²."""
    _check_theta_positive(theta)
    _prepare_crossing(F)
    T = F.domain_end
    YT = cumulative(F, T)
    if YT - theta * T * T > _admissibility_slack(F) * T:
        theta0 = YT / (T * T)
        raise NotAdmissible(
            f"g_θ non admissible pour θ={theta} : Y(T)={YT} > θT² (θ0={theta0})",
            theta=theta,
            theta0=theta0,
        )
    if is_zero_function(F):
        return 0.0

    pl = as_piecewise_linear(F)
    if method == "auto" and pl is not None:
        return g_quadratic_root(pl.xs, pl.right_values, pl.integral(pl.xs), theta)

    def G(x: float) -> float:
        return float(F.integral(np.float64(x))) - theta * x * x

    lo = T
    for _ in range(200):
        lo *= 0.5
        if G(lo) > 0.0:
            break
    return bisect_decreasing(G, lo, T, _tolerance(F))


def r_theta(F: FunctionModelBase, theta: float, method: Method = "auto") -> float:
    """R_θ(Z) = racine de l'intégrale de Z jusqu'à h_θ(Z)."""
    h = h_theta(F, theta, method=method)
    return math.sqrt(cumulative(F, h))


def polar(F: FunctionModelBase, phi: float, method: Method = "auto") -> float:
    """ρ_Z(φ) = h_θ(Z)·sqrt(1 + θ²) avec θ = tan φ, φ dans ]0, π/2[."""
    if not 0.0 < phi < math.pi / 2:
        raise DomainError(f"φ={phi} hors de ]0, π/2[")
    theta = math.tan(phi)
    return h_theta(F, theta, method=method) * math.sqrt(1.0 + theta * theta)


# ---- Bornes de stabilité --------------------------------------------------


def g_error_bound(Fn: FunctionModelBase, F: FunctionModelBase, theta: float) -> float:
    """|g_θ(Zn) - g_θ(Z)| <= |Yn(x) - Y(x)| / (θx), x = g_θ(Z)."""
    x = g_theta(F, theta)
    if x == 0.0:
        return math.inf
    return abs(cumulative(Fn, x) - cumulative(F, x)) / (theta * x)


def h_error_bound(Fn: FunctionModelBase, F: FunctionModelBase, theta: float) -> float:
    """|h_θ(Zn) - h_θ(Z)| <= |Z(x) - Zn(x)| / θ, x = h_θ(Z)."""
    x = h_theta(F, theta)
    return abs(evaluate(F, x) - evaluate(Fn, x)) / theta


def ped_error_bound(Fn: FunctionModelBase, F: FunctionModelBase, f: _FSpec) -> float:
    """|f(y) - f(yn)| <= |Z(y) - Zn(y)|, y = m(Z), yn = m(Zn)."""
    y = ped_measure(F, f)
    return abs(evaluate(F, y) - evaluate(Fn, y))


# ---- Aiguillage -----------------------------------------------------------


def compute_measure(F: FunctionModelBase, spec: _Measure, method: Method = "auto") -> float:
    """Évalue la mesure décrite par `spec` sur F."""
    if isinstance(spec, IMeasure):
        return i_theta(F, spec.theta)
    if isinstance(spec, MuMeasure):
        return mu_theta(F, spec.theta)
    if isinstance(spec, PercentileMeasure):
        return percentile(F, spec.theta)
    if isinstance(spec, HMeasure):
        return h_theta(F, spec.theta, method=method)
    if isinstance(spec, GMeasure):
        return g_theta(F, spec.theta, method=method)
    if isinstance(spec, KosmulskiMeasure):
        return kosmulski(F, spec.theta, spec.p, method=method)
    if isinstance(spec, PEDMeasure):
        return ped_measure(F, spec.f, method=method)
    if isinstance(spec, RMeasure):
        return r_theta(F, spec.theta, method=method)
    if isinstance(spec, PolarMeasure):
        return polar(F, spec.phi, method=method)
    raise DomainError(f"mesure inconnue : {spec!r}")
