from pathlib import Path
from typing import Any, List, Tuple
import json
import os
import tempfile

import pandas as pd

from src.utils.errors import SpecParseError


def read_citations_csv(path: Path) -> Tuple[List[int], bool]:
    """
    Lit un CSV d'une colonne d'entiers positifs (en-tête optionnel).

    Returns:
        (comptes dans l'ordre du fichier, True si déjà triés par ordre décroissant)
    """
    path = Path(path)
    if not path.is_file():
        raise SpecParseError(f"fichier introuvable : {path}")
    try:
        frame = pd.read_csv(path, header=None, skip_blank_lines=True)
    except pd.errors.EmptyDataError as e:
        raise SpecParseError(f"CSV vide : {path}") from e
    if frame.shape[1] != 1:
        raise SpecParseError(f"une seule colonne attendue, {frame.shape[1]} trouvées dans {path}")

    column = frame.iloc[:, 0]
    numeric = pd.to_numeric(column, errors="coerce")
    # En-tête optionnel : seule la première ligne peut être non numérique
    if pd.isna(numeric.iloc[0]):
        numeric = numeric.iloc[1:]
    if numeric.empty:
        raise SpecParseError(f"aucun nombre de citations dans {path}")
    if numeric.isna().any():
        bad = column[numeric.index[numeric.isna()]].iloc[0]
        raise SpecParseError(f"valeur non numérique dans {path} : {bad!r}")
    if (numeric < 0).any() or (numeric != numeric.round()).any():
        raise SpecParseError(f"les nombres de citations doivent être des entiers positifs ({path})")

    counts = [int(v) for v in numeric.tolist()]
    already_sorted = all(a >= b for a, b in zip(counts, counts[1:]))
    return counts, already_sorted


def _atomic_write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


def save_json(obj: Any, path: Path) -> Path:
    """JSON UTF-8, flottants à la précision aller-retour la plus courte (repr)."""
    return _atomic_write_text(path, json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def save_frame_csv(frame: pd.DataFrame, path: Path) -> Path:
    """CSV UTF-8 ; les valeurs absentes (NaN) deviennent des cellules vides."""
    return _atomic_write_text(path, frame.to_csv(index=False, na_rep=""))


def save_function_spec(model, path: Path) -> Path:
    """Écrit la spécification JSON d'un modèle de fonction."""
    return save_json(model.model_dump(mode="json"), path)
