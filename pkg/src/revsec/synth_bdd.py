"""Structural synthesis: one catalog template per BDD node, visited depth-first."""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .bdd import Bdd, ShapeKind, build, classify_node
from .circuit import LineAnnotation, ReversibleCircuit, ToffoliGate
from .function import BooleanFunction
from .templates import Template, TemplateCatalog, catalog_default, instantiate, match

COMPLEMENTABLE = (ShapeKind.LOW_ZERO, ShapeKind.LOW_ONE)


@dataclass(frozen=True)
class NodeRecord:
    """Ground truth for one emitted sub-circuit; ``stop`` is exclusive."""

    node: int
    template: str
    start: int
    stop: int
    result_line: int
    complemented: bool = False


@dataclass(frozen=True)
class SynthesisRecord:
    width: int
    num_gates: int
    annotations: tuple[LineAnnotation, ...]
    nodes: tuple[NodeRecord, ...]
    output_lines: tuple[int, ...]
    order: tuple[int, ...]
    complement_mode: bool = False
    seed: int = 0

    @property
    def ancilla_values(self) -> dict[int, int]:
        return {i: a.constant for i, a in enumerate(self.annotations) if a.constant is not None}

    @property
    def spans(self) -> list[tuple[int, int]]:
        return [(n.start, n.stop) for n in self.nodes if n.stop > n.start]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["annotations"] = [asdict(a) for a in self.annotations]
        d["nodes"] = [asdict(n) for n in self.nodes]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SynthesisRecord":
        return cls(
            width=d["width"],
            num_gates=d["num_gates"],
            annotations=tuple(LineAnnotation(**a) for a in d["annotations"]),
            nodes=tuple(NodeRecord(**n) for n in d["nodes"]),
            output_lines=tuple(d["output_lines"]),
            order=tuple(d["order"]),
            complement_mode=d.get("complement_mode", False),
            seed=d.get("seed", 0),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SynthesisRecord":
        return cls.from_dict(json.loads(text))


@dataclass
class _State:
    names: list[str]
    annotations: list[LineAnnotation]
    gates: list[ToffoliGate] = field(default_factory=list)
    records: list[NodeRecord] = field(default_factory=list)
    complemented: set[int] = field(default_factory=set)

    def new_line(self, init: int) -> int:
        k = len(self.annotations)
        name = f"a{k + 1}"
        while name in self.names:
            name = "_" + name
        self.names.append(name)
        self.annotations.append(LineAnnotation.ancilla(init))
        return k

    def emit(self, node: int, template: Template, binding: dict[str, int], complemented: bool = False) -> None:
        start = len(self.gates)
        self.gates.extend(instantiate(template, binding, self.complemented))
        self.records.append(NodeRecord(node, template.id, start, len(self.gates),
                                       binding[template.result_role], complemented))


def synthesize_bdd(function: BooleanFunction, order: Sequence[int] | None = None,
                   complement_mode: bool = False, seed: int = 0,
                   catalog: TemplateCatalog | None = None) -> tuple[ReversibleCircuit, SynthesisRecord]:
    """Map every BDD node to a reversible sub-circuit.

    Lines ``0 .. n-1`` carry the function inputs and are never targeted; one
    ancilla per non-trivial node is appended in creation order.  With
    ``complement_mode``, non-root LOW_ZERO/LOW_ONE nodes pick their init-0 or
    init-1 sibling by coin flip and consuming controls swap polarity.
    """
    bdd = build(function, order)
    catalog = catalog or catalog_default(complement_mode)
    rng = random.Random(seed)
    n = function.num_inputs
    st = _State(list(function.input_names), [LineAnnotation.primary(nm) for nm in function.input_names])
    parents = bdd.parents()
    roots = set(bdd.roots)
    value_line: dict[int, int] = {}

    def visit(ref: int) -> None:
        if ref < 2 or ref in value_line:
            return
        nd = bdd.node(ref)
        visit(nd.low)
        visit(nd.high)
        shape = classify_node(bdd, ref, parents)
        candidates = catalog.for_shape(shape.kind)
        template = candidates[0]
        flipped = False
        if len(candidates) > 1 and shape.kind in COMPLEMENTABLE and ref not in roots:
            template = candidates[rng.random() < 0.5]
            flipped = template.ancilla_init == 1
        if shape.kind is ShapeKind.VARIABLE:
            value_line[ref] = nd.var
            st.records.append(NodeRecord(ref, template.id, len(st.gates), len(st.gates), nd.var))
            return
        binding = {"x": nd.var}
        if nd.low >= 2:
            binding["l"] = value_line[nd.low]
        if nd.high >= 2:
            binding["h"] = value_line[nd.high]
        binding["r"] = st.new_line(template.ancilla_init)
        st.emit(ref, template, binding, flipped)
        if flipped:
            st.complemented.add(binding["r"])
        value_line[ref] = binding["r"]

    for root in bdd.roots:
        visit(root)

    copy = catalog.get("COPY")
    controls_used = {c.line for g in st.gates for c in g.controls}
    # a root line that is read later, or claimed by two outputs, cannot itself be an output
    claims = Counter(value_line[r] for r in bdd.roots if r >= 2)
    output_lines: list[int] = []
    for j, root in enumerate(bdd.roots):
        if root < 2:
            line = st.new_line(root)
        else:
            line = value_line[root]
            if claims[line] > 1 or line in controls_used:
                src = line
                line = st.new_line(0)
                st.emit(root, copy, {"v": src, "r": line})
                controls_used.add(src)
        output_lines.append(line)
        st.annotations[line] = LineAnnotation(st.annotations[line].input_name,
                                              st.annotations[line].constant,
                                              function.output_names[j])

    circuit = ReversibleCircuit(len(st.annotations), tuple(st.gates), tuple(st.annotations), tuple(st.names))
    record = SynthesisRecord(
        width=circuit.width,
        num_gates=len(circuit.gates),
        annotations=circuit.annotations,
        nodes=tuple(st.records),
        output_lines=tuple(output_lines),
        order=bdd.order,
        complement_mode=complement_mode,
        seed=seed,
    )
    return circuit, record


def restrict(circuit: ReversibleCircuit, output_lines: Sequence[int], num_inputs: int) -> BooleanFunction:
    """Read back the realised function: inputs on lines ``0..num_inputs-1``, ancillas at their constants."""
    from .circuit import simulate_all
    import numpy as np

    anc = sum(a.constant << i for i, a in enumerate(circuit.annotations) if a.constant)
    words = np.arange(1 << num_inputs, dtype=np.int64) | anc
    outs = simulate_all(circuit, words)
    rows = np.zeros(len(outs), dtype=np.int64)
    for k, line in enumerate(output_lines):
        rows |= ((outs >> line) & 1) << k
    return BooleanFunction(num_inputs, len(output_lines), tuple(int(r) for r in rows))


def structural_violations(circuit: ReversibleCircuit, record: SynthesisRecord, num_inputs: int) -> list[str]:
    """Check the two properties BDD-synthesised circuits are known for."""
    out = []
    for i, g in enumerate(circuit.gates):
        if g.target < num_inputs:
            out.append(f"gate {i} targets primary input line {g.target}")
    for line in record.output_lines:
        last = max((i for i, g in enumerate(circuit.gates) if g.target == line), default=-1)
        for i in range(last + 1, len(circuit.gates)):
            if line in circuit.gates[i].control_lines:
                out.append(f"primary output line {line} controls gate {i} after its last definition")
    return out


def replay_record(circuit: ReversibleCircuit, record: SynthesisRecord,
                  catalog: TemplateCatalog | None = None) -> list[str]:
    """Re-match every recorded span against the catalog; returns mismatch descriptions."""
    catalog = catalog or catalog_default(record.complement_mode)
    inputs = {i for i, a in enumerate(record.annotations) if not a.is_ancilla}
    problems = []
    covered: list[int] = []
    for nr in record.nodes:
        t = catalog.get(nr.template)
        if nr.stop == nr.start:
            if t.gates:
                problems.append(f"node {nr.node}: empty span for {t.id}")
            continue
        covered.extend(range(nr.start, nr.stop))
        fits = [c.id for c in catalog if len(c.gates) == nr.stop - nr.start
                and match(c, circuit.gates, nr.start, inputs, catalog.complement_mode) is not None]
        expected = sorted(x.id for x in catalog.group(t))
        if sorted(fits) != expected:
            problems.append(f"node {nr.node}: span {nr.start}:{nr.stop} matches {fits}, recorded {t.id}")
    if covered != list(range(len(circuit.gates))):
        problems.append("recorded spans do not tile the gate list in order")
    return problems
