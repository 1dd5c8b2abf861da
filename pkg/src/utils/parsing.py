"""
Parsing des entrées utilisateur.

Objectif : à partir de texte brut (argument CLI ou fichier), obtenir :
- une règle de suite constante a_n = a + c/n^p ("1/n", "2+1/n", "0.5/n^2", ...)
- un modèle de fonction (spécification JSON discriminée par "type")
- une famille de fonctions (spécification JSON discriminée par "kind")
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import TypeAdapter, ValidationError

from src.funcspace.families import ConstantSeq, FamilySpec
from src.funcspace.models import FunctionModel, FunctionModelBase
from src.measures.specs import FSpec
from src.utils.errors import SpecParseError

# --- Règles de suites constantes ----------------------------------------------

_NUMBER = r"\d+(?:\.\d*)?(?:[eE][-+]?\d+)?"
CONSTANT_RULE_PATTERN = re.compile(
    rf"^(?:(?P<a>{_NUMBER})\s*\+\s*)?(?P<c>{_NUMBER})?\s*/\s*n(?:\s*(?:\^|\*\*)\s*(?P<p>{_NUMBER}))?$"
)


def parse_constant_rule(rule: str, T: float = 1.0) -> ConstantSeq:
    """
    Lit une règle a_n = a + c/n^p.

    Exemples : "1/n" -> a=0, c=1, p=1 ; "2+1/n" -> a=2 ; "3/n^2" -> c=3, p=2.
    """
    compact = rule.strip().replace(" ", "")
    match = CONSTANT_RULE_PATTERN.match(compact)
    if not match:
        raise SpecParseError(f"règle de suite non reconnue : {rule!r} (forme attendue a + c/n^p)")
    a = float(match.group("a") or 0.0)
    c = float(match.group("c") or 1.0)
    p = float(match.group("p") or 1.0)
    try:
        return ConstantSeq(a=a, c=c, p=p, T=T)
    except ValidationError as e:
        raise SpecParseError(f"règle de suite invalide {rule!r} : {e}") from e


# --- Spécifications JSON ---------------------------------------------------------

_FUNCTION_ADAPTER = TypeAdapter(FunctionModel)
_FAMILY_ADAPTER = TypeAdapter(FamilySpec)
_FSPEC_ADAPTER = TypeAdapter(FSpec)


def load_json_argument(value: Union[str, Path]) -> Any:
    """Argument JSON : chemin d'un fichier existant, sinon texte JSON inline."""
    text = str(value).strip()
    if not text.startswith(("{", "[")):
        path = Path(text)
        if not path.is_file():
            raise SpecParseError(f"fichier introuvable : {path}")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"JSON invalide (ligne {e.lineno}, colonne {e.colno}) : {e.msg}") from e


def _validate(adapter: TypeAdapter, data: Any, what: str):
    try:
        return adapter.validate_python(data)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise SpecParseError(f"{what} invalide : {details}") from e


def parse_function_spec(data: Union[str, Path, Dict[str, Any]]) -> FunctionModelBase:
    """Spécification de fonction (dict, JSON inline ou chemin) -> modèle."""
    if not isinstance(data, dict):
        data = load_json_argument(data)
    return _validate(_FUNCTION_ADAPTER, data, "spécification de fonction")


def parse_family_spec(data: Union[str, Path, Dict[str, Any]]):
    """Spécification de famille (UserFamily : {"kind": "user", "members": [[n, f], ...], "limit": f})."""
    if not isinstance(data, dict):
        data = load_json_argument(data)
    return _validate(_FAMILY_ADAPTER, data, "spécification de famille")


def parse_fspec(data: Union[str, Path, Dict[str, Any]]):
    """Fonction de comparaison PED (linear, power, piecewise_linear_increasing)."""
    if not isinstance(data, dict):
        data = load_json_argument(data)
    return _validate(_FSPEC_ADAPTER, data, "fonction de comparaison f")
