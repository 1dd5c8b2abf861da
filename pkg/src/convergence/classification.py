"""
Classification des bundles dans PC, PC* et UC, confrontée aux scénarios.

PC  : préserve la convergence ponctuelle (limite quelconque)
PC* : préserve la convergence ponctuelle vers une limite continue
UC  : préserve la convergence uniforme
"""
from __future__ import annotations

from typing import Dict, List, Tuple

import pandas as pd
from pydantic import BaseModel

from src.convergence.scenarios import ScenarioResult

# (bundle, PC, PC*, UC, scénarios apportant l'indication numérique)
STATED_MEMBERSHIP: Tuple[Tuple[str, bool, bool, bool, Tuple[str, ...]], ...] = (
    ("I", True, True, True, ("S1", "S7")),
    ("mu", True, True, True, ("S7",)),
    ("P", True, True, True, ("S5",)),
    ("h", True, True, False, ("S4", "S8", "S9")),
    ("g", True, True, False, ("S3", "S7", "S8")),
    ("h^(p)", True, True, False, ("S4",)),
    ("R", True, True, False, ("S6", "S10")),
    ("PED", True, True, False, ("S4",)),
    ("Mf", False, True, True, ("S11",)),
    ("M", False, True, False, ("S12",)),
)


class ClassificationRow(BaseModel):
    bundle: str
    pc: bool
    pc_star: bool
    uc: bool
    evidence: List[str]
    discrepancy: bool


def classify(results: List[ScenarioResult]) -> List[ClassificationRow]:
    """
    Une ligne par bundle ; discrepancy si un scénario de preuve a échoué, manque,
    ou si ses mesures ne reproduisent pas le comportement annoncé.
    """
    consistent: Dict[str, bool] = {r.scenario_id: r.passed and r.reproduces_expected for r in results}
    return [
        ClassificationRow(
            bundle=bundle,
            pc=pc,
            pc_star=pc_star,
            uc=uc,
            evidence=list(evidence),
            discrepancy=not all(consistent.get(s, False) for s in evidence),
        )
        for bundle, pc, pc_star, uc, evidence in STATED_MEMBERSHIP
    ]


def _mark(flag: bool) -> str:
    return "x" if flag else "-"


def classification_frame(rows: List[ClassificationRow]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "bundle": [r.bundle for r in rows],
            "PC": [_mark(r.pc) for r in rows],
            "PC*": [_mark(r.pc_star) for r in rows],
            "UC": [_mark(r.uc) for r in rows],
            "evidence": [",".join(r.evidence) for r in rows],
            "status": ["DISCREPANCY" if r.discrepancy else "ok" for r in rows],
        }
    )


def format_table(rows: List[ClassificationRow]) -> str:
    """Tableau à largeur fixe."""
    return classification_frame(rows).to_string(index=False)
