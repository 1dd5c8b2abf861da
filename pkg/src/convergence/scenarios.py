"""
Suite de scénarios canoniques : chaque scénario construit une famille, mesure les erreurs
et compare le comportement observé au comportement attendu.

Paramètres fixes : S = T = 1, n dans N_LIST (N_LIST_HEAVY pour les mesures résolues par bissection).
"""
from __future__ import annotations

import math
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field
from tqdm import tqdm

from src.bundles.curves import BundleSpec, measure_at, theta0
from src.bundles.exotic import StepFSpec, mf_bundle, mlimit_bundle
from src.config import EPS_UNIFORM, N_LIST, N_LIST_HEAVY
from src.convergence.reports import ConvergenceReport, Verdict
from src.convergence.runner import function_convergence, measure_convergence
from src.funcspace.families import (
    ConstantSeq,
    Figure1,
    PowerComplementSeq,
    StepApproach,
    family_member,
    limit_of,
)
from src.measures.impact import (
    g_error_bound,
    g_theta,
    h_theta,
    i_theta,
    kosmulski,
    ped_error_bound,
    percentile,
)
from src.measures.specs import LinearF, PowerF

# Marge numérique sur les bornes de stabilité et les formes closes
_BOUND_SLACK = 1e-9
_CLOSED_FORM_TOL = 1e-12


class ScenarioResult(BaseModel):
    scenario_id: str
    title: str
    expected: str
    observed: Dict[str, Any] = Field(default_factory=dict)
    passed: bool
    reproduces_expected: bool = True
    reports: List[ConvergenceReport] = Field(default_factory=list)
    error: Optional[str] = None


def _log_grid(start: float, stop: float, count: int) -> np.ndarray:
    return np.geomspace(start, stop, count)


def _last_fixed_below(report: ConvergenceReport, eps: float = EPS_UNIFORM) -> bool:
    fixed = report.fixed_errors_at_last()
    return bool(fixed) and max(fixed) < eps


def _nonincreasing(values: List[float]) -> bool:
    return all(b <= a + 1e-15 for a, b in zip(values, values[1:]))


def scenario_s1() -> ScenarioResult:
    spec = PowerComplementSeq()
    target = i_theta(limit_of(spec), 1.0)
    gaps = [abs(i_theta(family_member(spec, n), 1.0) - target) for n in N_LIST]
    exact = all(abs(gap - 1.0 / (n + 1)) <= _CLOSED_FORM_TOL for gap, n in zip(gaps, N_LIST))
    report = measure_convergence(spec, "I", np.linspace(0.0, 1.0, 101), N_LIST)
    return ScenarioResult(
        scenario_id="S1",
        title="Intégrale de 1 - x^n vers l'intégrale de la limite discontinue",
        expected="|I_1(Z_n) - I_1(Z)| = 1/(n+1) -> 0",
        observed={"n": list(N_LIST), "gaps": gaps, "closed_form_match": exact, "I_verdict": report.verdict.value},
        passed=exact and _nonincreasing(gaps) and report.verdict == Verdict.UNIFORM,
        reports=[report],
    )


def scenario_s2() -> ScenarioResult:
    spec = Figure1()
    report = function_convergence(spec)
    exact = all(abs(s - 1.0 / n) <= _CLOSED_FORM_TOL for s, n in zip(report.sup_errors, report.n_list))
    return ScenarioResult(
        scenario_id="S2",
        title="Fonctions décroissantes, limite continue : convergence uniforme",
        expected="sup_x |Z_n - Z| = S/n -> 0",
        observed={"n": report.n_list, "sup_errors": report.sup_errors, "verdict": report.verdict.value},
        passed=exact and report.verdict == Verdict.UNIFORM,
        reports=[report],
    )


def scenario_s3() -> ScenarioResult:
    spec = Figure1()
    grid = _log_grid(0.5, 10.0, 25)
    report = measure_convergence(spec, "g", grid, N_LIST, boundary_probes=False)
    limit = limit_of(spec)
    violations = 0
    for n, errors in zip(report.n_list, report.per_theta_errors):
        member = family_member(spec, n)
        for theta, error in zip(grid, errors):
            if error is not None and error > g_error_bound(member, limit, theta) + _BOUND_SLACK:
                violations += 1
    return ScenarioResult(
        scenario_id="S3",
        title="g_θ ponctuellement convergent, borne de stabilité respectée",
        expected="g_θ(Z_n) -> g_θ(Z) à θ fixé ; |g_θ(Z_n) - g_θ(Z)| <= |Y_n(x) - Y(x)|/(θx)",
        observed={"max_error_last_n": max(report.fixed_errors_at_last()), "bound_violations": violations},
        passed=_last_fixed_below(report) and violations == 0,
        reports=[report],
    )


def scenario_s4() -> ScenarioResult:
    spec = Figure1()
    limit = limit_of(spec)
    h_report = measure_convergence(spec, "h", _log_grid(0.2, 10.0, 25), N_LIST, boundary_probes=False)
    k_report = measure_convergence(
        spec,
        BundleSpec(kind="kosmulski", p=2.0),
        _log_grid(0.5, 10.0, 15),
        N_LIST_HEAVY,
        boundary_probes=False,
    )
    p_report = measure_convergence(spec, "polar", [math.pi / 4], N_LIST, boundary_probes=False)

    violations = 0
    for n in N_LIST_HEAVY:
        member = family_member(spec, n)
        for theta in (0.5, 1.0, 2.0):
            gap_h = theta * abs(h_theta(member, theta) - h_theta(limit, theta))
            if gap_h > ped_error_bound(member, limit, LinearF(theta=theta)) + _BOUND_SLACK:
                violations += 1
            f = PowerF(theta=theta, p=2.0)
            gap_k = abs(float(f.value(kosmulski(member, theta, 2.0))) - float(f.value(kosmulski(limit, theta, 2.0))))
            if gap_k > ped_error_bound(member, limit, f) + _BOUND_SLACK:
                violations += 1

    reports = [h_report, k_report, p_report]
    return ScenarioResult(
        scenario_id="S4",
        title="Mesures PED (h, Kosmulski p=2, polaire φ=π/4) ponctuellement convergentes",
        expected="m(Z_n) -> m(Z) à paramètre fixé ; |f(y) - f(y_n)| <= |Z(y) - Z_n(y)|",
        observed={
            "max_error_last_n": {r.kind: max(r.fixed_errors_at_last()) for r in reports},
            "bound_violations": violations,
        },
        passed=all(_last_fixed_below(r) for r in reports) and violations == 0,
        reports=reports,
    )


def scenario_s5() -> ScenarioResult:
    spec = Figure1()
    limit = limit_of(spec)
    at_quarter = [abs(percentile(family_member(spec, n), 0.25) - percentile(limit, 0.25)) for n in N_LIST]
    report = measure_convergence(spec, "P", np.linspace(0.0, 1.0, 101), N_LIST)
    return ScenarioResult(
        scenario_id="S5",
        title="Percentiles",
        expected="P_0.25(Z_n) = P_0.25(Z) pour tout n ; P_θ(Z_n) -> P_θ(Z) uniformément",
        observed={"errors_at_0.25": at_quarter, "verdict": report.verdict.value},
        passed=all(e == 0.0 for e in at_quarter) and report.verdict == Verdict.UNIFORM,
        reports=[report],
    )


def scenario_s6() -> ScenarioResult:
    report = measure_convergence(Figure1(), "R", _log_grid(0.05, 10.0, 30), N_LIST, boundary_probes=False)
    return ScenarioResult(
        scenario_id="S6",
        title="R_θ ponctuellement convergent",
        expected="R_θ(Z_n) -> R_θ(Z) à θ fixé",
        observed={"max_error_last_n": max(report.fixed_errors_at_last())},
        passed=_last_fixed_below(report),
        reports=[report],
    )


def scenario_s7() -> ScenarioResult:
    spec = Figure1()
    unit = np.linspace(0.0, 1.0, 101)
    reports = [
        measure_convergence(spec, "I", unit, N_LIST),
        measure_convergence(spec, "mu", unit, N_LIST),
        measure_convergence(spec, "g", _log_grid(0.5, 10.0, 25), N_LIST),
    ]
    mu_sup = reports[1].sup_errors[-1]
    return ScenarioResult(
        scenario_id="S7",
        title="I, μ et g uniformément convergents (limite non nulle)",
        expected="sup_θ |m_θ(Z_n) - m_θ(Z)| -> 0",
        observed={
            "verdicts": {r.kind: r.verdict.value for r in reports},
            "mu_sup_last_n": mu_sup,
        },
        passed=all(r.verdict == Verdict.UNIFORM for r in reports) and mu_sup < EPS_UNIFORM,
        reports=reports,
    )


def scenario_s8() -> ScenarioResult:
    to_zero = ConstantSeq(a=0.0, c=1.0, p=1.0)
    grid = _log_grid(0.2, 10.0, 25)
    g_report = measure_convergence(to_zero, "g", grid, N_LIST, boundary_probes=True)
    h_report = measure_convergence(to_zero, "h", grid, N_LIST, boundary_probes=True)
    to_one = ConstantSeq(a=1.0, c=1.0, p=1.0)
    control = measure_convergence(to_one, "g", grid, N_LIST, boundary_probes=True)

    closed_form = all(
        abs(g_theta(family_member(to_zero, n), 1.0) - 1.0 / n) <= _CLOSED_FORM_TOL
        and abs(h_theta(family_member(to_zero, n), 1.0) - 1.0 / n) <= _CLOSED_FORM_TOL
        for n in N_LIST
    )
    return ScenarioResult(
        scenario_id="S8",
        title="Constantes a_n = 1/n vers la fonction nulle",
        expected="g_θ(Z_n) = h_θ(Z_n) = a_n/θ ; convergence ponctuelle non uniforme si Z = 0, uniforme si Z = 1",
        observed={
            "g_verdict": g_report.verdict.value,
            "h_verdict": h_report.verdict.value,
            "g_verdict_limit_one": control.verdict.value,
            "closed_form_match": closed_form,
        },
        passed=(
            closed_form
            and g_report.verdict == Verdict.POINTWISE_ONLY
            and h_report.verdict == Verdict.POINTWISE_ONLY
            and control.verdict == Verdict.UNIFORM
        ),
        reports=[g_report, h_report, control],
    )


def scenario_s9() -> ScenarioResult:
    spec = Figure1()
    report = measure_convergence(spec, "h", _log_grid(0.05, 10.0, 30), N_LIST, boundary_probes=True)
    formula = all(
        abs(h_theta(family_member(spec, n), 1.2 / n) - 1.0 / 1.2) <= _CLOSED_FORM_TOL for n in N_LIST
    )
    sups = report.sup_errors
    return ScenarioResult(
        scenario_id="S9",
        title="h_θ non uniforme près de θ₀(Z_n) = S/(nT)",
        expected="h_θ(Z_n) = S/(nθ) pour θ < 4S/(3nT) ; erreurs à θ fixé -> 0 mais sup >= 0.2",
        observed={"sup_errors": sups, "verdict": report.verdict.value, "formula_match": formula},
        passed=(
            formula
            and all(s is not None and s >= 0.2 for s in sups)
            and report.verdict == Verdict.POINTWISE_ONLY
        ),
        reports=[report],
    )


def r_squared_gap_lower_bound(n: int, m: int, theta: float, S: float = 1.0, T: float = 1.0) -> float:
    """
    (S/n)(S/(nθ) - 3T/4) - (S/m)(S/(mθ) - 3T/4) : minorant de R_θ²(Z_n) - R_θ²(Z_m),
    valable pour θ conjointement admissible dans [S/(nT), 4S/(3mT)[ (n >= 4).
    """
    return (S / n) * (S / (n * theta) - 0.75 * T) - (S / m) * (S / (m * theta) - 0.75 * T)


def admissible_gap_window(n: int, m: int, count: int = 7, S: float = 1.0, T: float = 1.0) -> np.ndarray:
    """θ conjointement admissibles pour R sur Z_n et Z_m où le minorant s'applique ; vide si n <= 3."""
    spec = Figure1(S=S, T=T)
    start = max(theta0(family_member(spec, n), "R"), theta0(family_member(spec, m), "R"))
    stop = 4.0 * S / (3.0 * m * T)
    if start >= stop:
        return np.empty(0)
    return np.linspace(start, stop, count, endpoint=False)


def scenario_s10() -> ScenarioResult:
    spec = Figure1()
    violations = 0
    window_sups: List[float] = []
    ns = [n for n in N_LIST if n >= 4]
    for n in ns:
        m = n + 1
        window = admissible_gap_window(n, m)
        Zn, Zm = family_member(spec, n), family_member(spec, m)
        for theta in window:
            gap = measure_at(Zn, "R", theta) ** 2 - measure_at(Zm, "R", theta) ** 2
            if gap < r_squared_gap_lower_bound(n, m, theta) - _BOUND_SLACK:
                violations += 1
        dense = admissible_gap_window(n, m, count=200)
        window_sups.append(max(abs(r_squared_gap_lower_bound(n, m, t)) for t in dense))

    fixed_theta = [abs(r_squared_gap_lower_bound(n, n + 1, 0.5)) for n in N_LIST]
    measured = measure_convergence(spec, "R", _log_grid(0.05, 10.0, 30), N_LIST, boundary_probes=True)
    window_vanishes = _nonincreasing(window_sups) and window_sups[-1] < EPS_UNIFORM
    return ScenarioResult(
        scenario_id="S10",
        title="R_θ : écart de Cauchy sur Figure1 aux θ admissibles",
        expected="R non uniforme : l'écart ne s'annule pas uniformément sur les θ admissibles",
        observed={
            "n": ns,
            "bound_violations": violations,
            "fixed_theta_gaps": fixed_theta,
            "admissible_window_sup_gaps": window_sups,
            "measured_R_sup_errors": measured.sup_errors,
            "measured_R_verdict": measured.verdict.value,
        },
        passed=(
            violations == 0
            and _nonincreasing(fixed_theta)
            and fixed_theta[-1] < EPS_UNIFORM
        ),
        reproduces_expected=not (window_vanishes and measured.verdict == Verdict.UNIFORM),
        reports=[measured],
    )


def scenario_s11() -> ScenarioResult:
    spec = PowerComplementSeq()
    step = StepFSpec(c=1.0, low=0.0, high=1.0)
    # 1 - 0.5^n n'est plus distinguable de 1 en double précision au-delà de n = 53
    ns = (3, 10, 50)
    values = [mf_bundle(family_member(spec, n), step, 0.5) for n in ns]
    limit_value = mf_bundle(limit_of(spec), step, 0.5)
    raw = function_convergence(spec)
    mf_report = measure_convergence(spec, BundleSpec(kind="mf", step=step), [0.5], ns)
    return ScenarioResult(
        scenario_id="S11",
        title="Mf en β = 0.5 avec f indicatrice discontinue en 1",
        expected="Mf(Z_n) = 0 pour tout n, Mf(Z) = 1 : Mf ne préserve pas la convergence ponctuelle",
        observed={"n": list(ns), "values": values, "limit_value": limit_value, "raw_verdict": raw.verdict.value},
        passed=all(v == 0.0 for v in values) and limit_value == 1.0 and raw.verdict == Verdict.POINTWISE_ONLY,
        reports=[raw, mf_report],
    )


def scenario_s12() -> ScenarioResult:
    constants = ConstantSeq(a=1.0, c=1.0, p=1.0)
    report = measure_convergence(constants, "m", _log_grid(0.2, 1.0, 20), N_LIST, boundary_probes=True)
    closed_form = all(
        abs(mlimit_bundle(family_member(constants, n), 0.5) - (1.0 + 1.0 / n) / 0.5) <= _CLOSED_FORM_TOL
        for n in N_LIST
    )
    approach = StepApproach(T=1.0, x0=0.5, high=1.0, low=0.0)
    jump_errors = [
        abs(mlimit_bundle(family_member(approach, n), 0.5) - mlimit_bundle(limit_of(approach), 0.5))
        for n in N_LIST
    ]
    return ScenarioResult(
        scenario_id="S12",
        title="M_θ = Z(θ-)/θ : ponctuel non uniforme, et pas de convergence vers une limite à saut",
        expected="M_θ(Z_n) = a_n/θ -> a/θ non uniformément ; erreur 2 en θ = 0.5 pour la famille à saut",
        observed={
            "verdict": report.verdict.value,
            "closed_form_match": closed_form,
            "step_errors_at_0.5": jump_errors,
        },
        passed=(
            closed_form
            and report.verdict == Verdict.POINTWISE_ONLY
            and all(abs(e - 2.0) <= _CLOSED_FORM_TOL for e in jump_errors)
        ),
        reports=[report],
    )


SCENARIOS: Dict[str, Callable[[], ScenarioResult]] = {
    "S1": scenario_s1,
    "S2": scenario_s2,
    "S3": scenario_s3,
    "S4": scenario_s4,
    "S5": scenario_s5,
    "S6": scenario_s6,
    "S7": scenario_s7,
    "S8": scenario_s8,
    "S9": scenario_s9,
    "S10": scenario_s10,
    "S11": scenario_s11,
    "S12": scenario_s12,
}


def run_scenarios(verbose: bool = True) -> List[ScenarioResult]:
    """Exécute tous les scénarios ; un scénario en erreur est rapporté en échec, jamais levé."""
    results: List[ScenarioResult] = []
    for scenario_id, scenario in tqdm(SCENARIOS.items(), desc="Scénarios", disable=not verbose):
        try:
            results.append(scenario())
        except Exception as e:
            results.append(
                ScenarioResult(
                    scenario_id=scenario_id,
                    title=scenario.__name__,
                    expected="exécution sans erreur",
                    passed=False,
                    error=f"{type(e).__name__}: {e}",
                )
            )
    return results
