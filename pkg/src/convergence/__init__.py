"""Harnais de convergence : rapports, scénarios canoniques, classification PC / PC* / UC."""
from src.convergence.reports import ConvergenceReport, Verdict, decide_verdict, observed_rate
from src.convergence.runner import default_n_list, function_convergence, measure_convergence
from src.convergence.scenarios import SCENARIOS, ScenarioResult, run_scenarios
from src.convergence.classification import (
    ClassificationRow,
    classification_frame,
    classify,
    format_table,
)
