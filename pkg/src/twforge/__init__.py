"""Desk-scale tools for clean graph classes: obstructions, treewidth,
connectifiers, strong blocks, planted star forests and connectifications."""

from .graph import Graph
from .budget import Budget, BudgetExhausted, ExtractionFailed

__all__ = ["Graph", "Budget", "BudgetExhausted", "ExtractionFailed"]
__version__ = "0.1.0"
