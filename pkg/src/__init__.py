"""Initialisation du package source."""
