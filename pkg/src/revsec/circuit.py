"""Reversible circuits built from multiple-controlled Toffoli gates.

Bitvectors are plain ``int`` values: bit ``i`` holds circuit line ``i``.
A three-line state written ``x3 x2 x1 = 001`` is therefore the integer 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True, order=True)
class Control:
    line: int
    positive: bool = True

    def __str__(self) -> str:
        return f"{'' if self.positive else '-'}{self.line}"


def pos(line: int) -> Control:
    return Control(line, True)


def neg(line: int) -> Control:
    return Control(line, False)


@dataclass(frozen=True)
class ToffoliGate:
    """TOF(C, t): flip ``target`` when every control is satisfied.

    Controls are kept sorted so that structurally equal gates compare equal.
    Construction does not reject malformed gates; see :func:`gate_problems`.
    """

    controls: tuple[Control, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(sorted(self.controls)))

    @property
    def control_lines(self) -> tuple[int, ...]:
        return tuple(c.line for c in self.controls)

    @property
    def masks(self) -> tuple[int, int, int]:
        """(care mask, required value, target bit) for bit-parallel evaluation."""
        care = 0
        value = 0
        for c in self.controls:
            care |= 1 << c.line
            if c.positive:
                value |= 1 << c.line
        return care, value, 1 << self.target

    def __str__(self) -> str:
        ctl = ", ".join(str(c) for c in self.controls)
        return f"TOF({{{ctl}}}, {self.target})"


def tof(controls: Iterable[Control | int], target: int) -> ToffoliGate:
    """Convenience constructor; bare ints are positive controls."""
    cs = tuple(c if isinstance(c, Control) else Control(c) for c in controls)
    return ToffoliGate(cs, target)


@dataclass(frozen=True)
class LineAnnotation:
    """Role of one line at the circuit's input and output side.

    ``constant`` set means the input is ancillary; otherwise ``input_name``
    names a primary input.  ``output_name`` of ``None`` marks garbage.
    """

    input_name: str | None = None
    constant: int | None = None
    output_name: str | None = None

    @property
    def is_ancilla(self) -> bool:
        return self.constant is not None

    @property
    def is_garbage(self) -> bool:
        return self.output_name is None

    @classmethod
    def primary(cls, name: str, output_name: str | None = None) -> "LineAnnotation":
        return cls(input_name=name, output_name=output_name)

    @classmethod
    def ancilla(cls, value: int, output_name: str | None = None) -> "LineAnnotation":
        return cls(constant=value, output_name=output_name)


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class ReversibleCircuit:
    width: int
    gates: tuple[ToffoliGate, ...] = ()
    annotations: tuple[LineAnnotation, ...] | None = None
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.annotations is not None:
            object.__setattr__(self, "annotations", tuple(self.annotations))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.width)))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates: Iterable[ToffoliGate]) -> "ReversibleCircuit":
        return ReversibleCircuit(self.width, tuple(gates), self.annotations, self.names)

    def with_annotations(self, annotations: Sequence[LineAnnotation] | None) -> "ReversibleCircuit":
        return ReversibleCircuit(self.width, self.gates, annotations, self.names)

    @property
    def ancilla_lines(self) -> list[int]:
        if self.annotations is None:
            return []
        return [i for i, a in enumerate(self.annotations) if a.is_ancilla]

    @property
    def garbage_lines(self) -> list[int]:
        if self.annotations is None:
            return []
        return [i for i, a in enumerate(self.annotations) if a.is_garbage]

    @property
    def primary_output_lines(self) -> list[int]:
        if self.annotations is None:
            return []
        return [i for i, a in enumerate(self.annotations) if not a.is_garbage]

    @property
    def primary_input_lines(self) -> list[int]:
        if self.annotations is None:
            return []
        return [i for i, a in enumerate(self.annotations) if not a.is_ancilla]


def gate_problems(gate: ToffoliGate, width: int) -> list[str]:
    problems = []
    if not 0 <= gate.target < width:
        problems.append(f"target {gate.target} outside [0, {width})")
    seen: set[int] = set()
    for c in gate.controls:
        if not 0 <= c.line < width:
            problems.append(f"control line {c.line} outside [0, {width})")
        if c.line in seen:
            problems.append(f"line {c.line} appears twice among controls")
        seen.add(c.line)
    if gate.target in seen:
        problems.append(f"target {gate.target} is also a control")
    return problems


def validate(circuit: ReversibleCircuit) -> list[tuple[int | None, str]]:
    """Return one ``(gate index or None, reason)`` pair per violated invariant."""
    diags: list[tuple[int | None, str]] = []
    if circuit.width < 1:
        diags.append((None, f"width must be >= 1, got {circuit.width}"))
    for i, g in enumerate(circuit.gates):
        for p in gate_problems(g, circuit.width):
            diags.append((i, p))
    if len(circuit.names) != circuit.width:
        diags.append((None, f"{len(circuit.names)} line names for width {circuit.width}"))
    ann = circuit.annotations
    if ann is not None:
        if len(ann) != circuit.width:
            diags.append((None, f"{len(ann)} annotations for width {circuit.width}"))
        for line, a in enumerate(ann):
            if a.constant is not None and a.constant not in (0, 1):
                diags.append((None, f"line {line}: ancilla value {a.constant!r} is not a bit"))
            if a.constant is not None and a.input_name is not None:
                diags.append((None, f"line {line}: both ancillary and primary input"))
        if ann and all(a.is_garbage for a in ann):
            diags.append((None, "every output is garbage"))
    return diags


def _check_state(state: int, width: int) -> None:
    if state < 0 or state >> width:
        raise CircuitError(f"state {state:#b} does not fit in {width} lines")


def apply_gate(state: int, gate: ToffoliGate, width: int) -> int:
    _check_state(state, width)
    problems = gate_problems(gate, width)
    if problems:
        raise CircuitError(f"invalid gate {gate}: {'; '.join(problems)}")
    care, value, bit = gate.masks
    if state & care == value:
        return state ^ bit
    return state


def _compiled(circuit: ReversibleCircuit) -> list[tuple[int, int, int]]:
    diags = [d for d in validate(circuit) if d[0] is not None]
    if diags:
        idx, reason = diags[0]
        raise CircuitError(f"gate {idx}: {reason}")
    return [g.masks for g in circuit.gates]


def simulate(circuit: ReversibleCircuit, state: int) -> int:
    _check_state(state, circuit.width)
    for care, value, bit in _compiled(circuit):
        if state & care == value:
            state ^= bit
    return state


def simulate_inverse(circuit: ReversibleCircuit, state: int) -> int:
    _check_state(state, circuit.width)
    for care, value, bit in reversed(_compiled(circuit)):
        if state & care == value:
            state ^= bit
    return state


def simulate_all(circuit: ReversibleCircuit, states: np.ndarray | None = None) -> np.ndarray:
    """Simulate many input words at once; defaults to all ``2**width`` inputs."""
    if states is None:
        if circuit.width > 24:
            raise CircuitError(f"refusing exhaustive simulation of {circuit.width} lines")
        states = np.arange(1 << circuit.width, dtype=np.int64)
    else:
        states = np.array(states, dtype=np.int64, copy=True)
    for care, value, bit in _compiled(circuit):
        hit = (states & care) == value
        states[hit] ^= bit
    return states


def gate_cost(gate: ToffoliGate) -> int:
    c = len(gate.controls)
    if c < 2:
        return 1
    cost = (1 << (c + 1)) - 3
    if not any(ctl.positive for ctl in gate.controls):
        cost += 2
    return cost


def quantum_cost(circuit: ReversibleCircuit) -> int:
    return sum(gate_cost(g) for g in circuit.gates)


def three_gate_circuit() -> ReversibleCircuit:
    """Three-gate circuit over lines x1, x2, x3 (indices 0, 1, 2)."""
    return ReversibleCircuit(
        3,
        (
            tof([pos(0)], 2),
            tof([pos(2), neg(1)], 0),
            tof([pos(0)], 1),
        ),
    )


def random_circuit(width: int, num_gates: int, seed: int | random.Random = 0,
                   max_controls: int | None = None, annotated: bool = False) -> ReversibleCircuit:
    """Seeded random cascade, optionally with a random but consistent line annotation."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    cap = width - 1 if max_controls is None else min(max_controls, width - 1)
    gates = []
    for _ in range(num_gates):
        target = rng.randrange(width)
        others = [i for i in range(width) if i != target]
        ctl = rng.sample(others, rng.randint(0, cap))
        gates.append(ToffoliGate(tuple(Control(c, rng.random() < 0.5) for c in ctl), target))
    ann = None
    if annotated:
        ann = []
        for i in range(width):
            const = rng.choice((None, None, 0, 1))
            garbage = rng.random() < 0.3
            ann.append(LineAnnotation(f"a{i}" if const is None else None, const,
                                      None if garbage else f"b{i}"))
        if all(a.is_garbage for a in ann):
            ann[0] = LineAnnotation(ann[0].input_name, ann[0].constant, "b0")
        ann = tuple(ann)
    return ReversibleCircuit(width, tuple(gates), ann)
