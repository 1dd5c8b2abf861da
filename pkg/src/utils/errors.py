"""Exceptions du projet (domaine, admissibilité, continuité, parsing)."""
from typing import Optional


class ImpactError(ValueError):
    """Erreur de base du projet."""


class DomainError(ImpactError):
    """Argument hors du domaine de définition (x hors de [0,T], θ <= 0, ...)."""


class NotAdmissible(ImpactError):
    """L'équation définissant la mesure n'a pas de solution pour ce θ."""

    def __init__(self, message: str, theta: Optional[float] = None, theta0: Optional[float] = None):
        super().__init__(message)
        self.theta = theta
        self.theta0 = theta0


class ContinuityRequired(ImpactError):
    """La mesure exige une fonction continue et le modèle a un saut."""

    def __init__(self, message: str, at: Optional[float] = None):
        super().__init__(message)
        self.at = at


class SpecParseError(ImpactError):
    """Spécification JSON/CSV mal formée."""
