"""Scenario analyses over experiment outputs."""

from src.services.scenario.error_regularity import error_regularity, load_metrics

__all__ = ["error_regularity", "load_metrics"]
