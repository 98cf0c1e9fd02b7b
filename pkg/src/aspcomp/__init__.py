"""Completion formulas, tightness, stable models, and reverse completion
for regular answer-set programs."""

__version__ = "1.0.0"
