"""Shared hypothesis strategies."""
from __future__ import annotations

from hypothesis import strategies as st

from revsec.circuit import Control, ReversibleCircuit, ToffoliGate
from revsec.function import BooleanFunction


@st.composite
def gates(draw, width: int, max_controls: int | None = None) -> ToffoliGate:
    target = draw(st.integers(0, width - 1))
    others = [i for i in range(width) if i != target]
    cap = len(others) if max_controls is None else min(max_controls, len(others))
    lines = draw(st.lists(st.sampled_from(others), unique=True, max_size=cap)) if others else []
    pols = draw(st.lists(st.booleans(), min_size=len(lines), max_size=len(lines)))
    return ToffoliGate(tuple(Control(l, p) for l, p in zip(lines, pols)), target)


@st.composite
def circuits(draw, min_width: int = 1, max_width: int = 6, max_gates: int = 12) -> ReversibleCircuit:
    width = draw(st.integers(min_width, max_width))
    gs = draw(st.lists(gates(width), max_size=max_gates))
    return ReversibleCircuit(width, tuple(gs))


@st.composite
def functions(draw, min_inputs: int = 1, max_inputs: int = 5, max_outputs: int = 3) -> BooleanFunction:
    ni = draw(st.integers(min_inputs, max_inputs))
    no = draw(st.integers(1, max_outputs))
    rows = draw(st.lists(st.integers(0, (1 << no) - 1), min_size=1 << ni, max_size=1 << ni))
    return BooleanFunction(ni, no, tuple(rows))
