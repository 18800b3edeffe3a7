"""Quantitative recurrence and information-content indicators for low-complexity interval dynamics."""

__version__ = "0.1.0"
