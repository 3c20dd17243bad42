"""Synthesis, reverse engineering and scrambling of reversible circuits."""
from .circuit import (Control, LineAnnotation, ReversibleCircuit, ToffoliGate, apply_gate,
                      quantum_cost, simulate, simulate_inverse, validate)
from .function import BooleanFunction, from_expression_terms, pattern_stats

__all__ = [
    "BooleanFunction", "Control", "LineAnnotation", "ReversibleCircuit", "ToffoliGate",
    "apply_gate", "from_expression_terms", "pattern_stats", "quantum_cost", "simulate",
    "simulate_inverse", "validate",
]
