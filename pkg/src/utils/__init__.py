"""Fonctions utilitaires pour le projet."""
