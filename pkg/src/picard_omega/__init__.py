"""Picard omega-categories, strict omega-categories and descent for chain complexes."""
