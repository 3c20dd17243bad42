"""Embedding-count security metric and the two reverse-engineering attacks."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod

from .circuit import ReversibleCircuit, simulate_all
from .synth_bdd import SynthesisRecord
from .templates import TemplateCatalog, catalog_default, match

UNMATCHED = "UNMATCHED"


class DegenerateCircuit(ValueError):
    """Every output of the circuit leaks as garbage; nothing is left to count."""


def embeddings_per_output(k: int) -> int:
    """Ways to read one output whose ``k`` novel inputs may each be primary, ancilla=0 or ancilla=1."""
    return sum(comb(k, j) * 2 ** j for j in range(k + 1))


@dataclass(frozen=True)
class EmbeddingCount:
    """``value`` is the product of ``output_factor`` and ``factors`` (exact integers)."""

    output_factor: int
    factors: tuple[int, ...] = ()

    @property
    def value(self) -> int:
        return self.output_factor * prod(self.factors)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SupportProfile:
    lines: tuple[int, ...]
    supports: tuple[frozenset[int], ...]
    k_list: tuple[int, ...]
    m_list: tuple[int, ...]

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*self.supports) if self.supports else frozenset()


def passthrough_lines(circuit: ReversibleCircuit) -> set[int]:
    targets = {g.target for g in circuit.gates}
    return set(range(circuit.width)) - targets


def output_cone(circuit: ReversibleCircuit, line: int) -> set[int]:
    """Input lines structurally able to influence output ``line``."""
    if not 0 <= line < circuit.width:
        raise ValueError(f"line {line} outside [0, {circuit.width})")
    cone = {line}
    for g in reversed(circuit.gates):
        if g.target in cone:
            cone.update(g.control_lines)
    return cone


def semantic_cone(circuit: ReversibleCircuit, line: int) -> set[int]:
    """Inputs whose flip changes output ``line`` for some assignment (exhaustive)."""
    outs = simulate_all(circuit)
    col = (outs >> line) & 1
    size = 1 << circuit.width
    import numpy as np

    idx = np.arange(size)
    return {i for i in range(circuit.width) if np.any(col != col[idx ^ (1 << i)])}


def support_profile(circuit: ReversibleCircuit, lines: list[int]) -> SupportProfile:
    supports, ks, ms = [], [], []
    seen: set[int] = set()
    for line in lines:
        cone = frozenset(output_cone(circuit, line))
        supports.append(cone)
        ms.append(len(cone))
        ks.append(len(cone - seen))
        seen |= cone
    return SupportProfile(tuple(lines), tuple(supports), tuple(ks), tuple(ms))


@dataclass(frozen=True)
class BlackBoxResult:
    embeddings: EmbeddingCount
    profile: SupportProfile
    leaked_garbage: frozenset[int]
    pct_garbage_leaked: float


def _pct_leaked(circuit: ReversibleCircuit, leaked: set[int]) -> float:
    """Share of the true garbage outputs that leak; falls back to all lines when unannotated."""
    if circuit.annotations is not None:
        garbage = set(circuit.garbage_lines)
        return 100.0 * len(leaked & garbage) / len(garbage) if garbage else 0.0
    return 100.0 * len(leaked) / circuit.width


def count_embeddings_blackbox(circuit: ReversibleCircuit) -> BlackBoxResult:
    """(2^r - 1) * prod e(k_i) over the r outputs that are not plain wires."""
    leaked = passthrough_lines(circuit)
    remaining = [i for i in range(circuit.width) if i not in leaked]
    if not remaining:
        raise DegenerateCircuit("all outputs are passthrough lines")
    profile = support_profile(circuit, remaining)
    count = EmbeddingCount((1 << len(remaining)) - 1, tuple(embeddings_per_output(k) for k in profile.k_list))
    return BlackBoxResult(count, profile, frozenset(leaked), _pct_leaked(circuit, leaked))


def embeddings_closed_form(r: int, union_support: int) -> int:
    return ((1 << r) - 1) * 3 ** union_support


@dataclass(frozen=True)
class Partition:
    start: int
    stop: int
    template: str
    result_line: int | None = None


@dataclass(frozen=True)
class AttackReport:
    width: int
    num_gates: int
    leaked_garbage: frozenset[int]
    pct_garbage_leaked: float
    candidate_ancillas: frozenset[int]
    recovered_ancillas: dict[int, int]
    unresolved_ancillas: dict[int, int]
    definite_primary_outputs: frozenset[int]
    potential_primary_outputs: frozenset[int]
    partitions: tuple[Partition, ...]
    embeddings: EmbeddingCount
    degenerate: bool = False

    @property
    def candidate_outputs(self) -> frozenset[int]:
        return self.definite_primary_outputs | self.potential_primary_outputs

    @property
    def pct_ancilla_recovered(self) -> float:
        n = len(self.candidate_ancillas)
        return 100.0 * len(self.recovered_ancillas) / n if n else 100.0

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "num_gates": self.num_gates,
            "leaked_garbage": sorted(self.leaked_garbage),
            "pct_garbage_leaked": self.pct_garbage_leaked,
            "candidate_ancillas": sorted(self.candidate_ancillas),
            "recovered_ancillas": {str(k): v for k, v in sorted(self.recovered_ancillas.items())},
            "unresolved_ancillas": {str(k): v for k, v in sorted(self.unresolved_ancillas.items())},
            "definite_primary_outputs": sorted(self.definite_primary_outputs),
            "potential_primary_outputs": sorted(self.potential_primary_outputs),
            "partitions": [[p.start, p.stop, p.template] for p in self.partitions],
            "embeddings": str(self.embeddings.value),
            "degenerate": self.degenerate,
        }


def partition_gates(circuit: ReversibleCircuit, catalog: TemplateCatalog,
                    primary_inputs: set[int]) -> list[Partition]:
    """Greedy leftmost-longest tiling; ties go to the earlier catalog entry."""
    gates = circuit.gates
    parts: list[Partition] = []
    i = 0
    while i < len(gates):
        best = None
        for t in catalog:
            if best is not None and len(t.gates) <= best[0]:
                continue
            b = match(t, gates, i, primary_inputs, catalog.complement_mode)
            if b is not None:
                best = (len(t.gates), t, b)
        if best is None:
            if parts and parts[-1].template == UNMATCHED and parts[-1].stop == i:
                parts[-1] = Partition(parts[-1].start, i + 1, UNMATCHED)
            else:
                parts.append(Partition(i, i + 1, UNMATCHED))
            i += 1
        else:
            k, t, b = best
            parts.append(Partition(i, i + k, t.id, b["r"]))
            i += k
    return parts


def attack_bdd(circuit: ReversibleCircuit, catalog: TemplateCatalog | None = None) -> AttackReport:
    """Attack assuming Shannon-node BDD synthesis with the given catalog.

    Annotations on ``circuit`` are ignored: the attacker only sees gates.
    """
    catalog = catalog or catalog_default()
    gates = circuit.gates
    leaked = passthrough_lines(circuit)
    candidates = frozenset(range(circuit.width)) - leaked
    pct = _pct_leaked(circuit, leaked)
    if not candidates:
        return AttackReport(circuit.width, 0, frozenset(leaked), pct, frozenset(), {}, {},
                            frozenset(), frozenset(), (), EmbeddingCount(0), degenerate=True)

    # a line is a definite output when nothing reads it after its last write
    last_write = {}
    for i, g in enumerate(gates):
        last_write[g.target] = i
    read_after = set()
    for line, w in last_write.items():
        if any(line in g.control_lines for g in gates[w + 1:]):
            read_after.add(line)
    definite = frozenset(line for line in candidates if line not in read_after)
    potential = candidates - definite

    parts = partition_gates(circuit, catalog, set(leaked))
    recovered: dict[int, int] = {}
    unresolved: dict[int, int] = {}
    decided: set[int] = set()
    for p in parts:
        if p.template == UNMATCHED:
            for line in sorted({g.target for g in gates[p.start:p.stop]} - decided):
                unresolved[line] = 2
                decided.add(line)
            continue
        line = p.result_line
        if line in decided:
            continue
        decided.add(line)
        t = catalog.get(p.template)
        group = catalog.group(t)
        if len(group) == 1:
            recovered[line] = t.ancilla_init
        else:
            unresolved[line] = len(group)

    emb = EmbeddingCount(1 << len(potential), tuple(unresolved[k] for k in sorted(unresolved)))
    return AttackReport(
        width=circuit.width,
        num_gates=len(gates),
        leaked_garbage=frozenset(leaked),
        pct_garbage_leaked=pct,
        candidate_ancillas=candidates,
        recovered_ancillas=recovered,
        unresolved_ancillas=unresolved,
        definite_primary_outputs=definite,
        potential_primary_outputs=frozenset(potential),
        partitions=tuple(parts),
        embeddings=emb,
    )


@dataclass(frozen=True)
class Scorecard:
    true_ancillas: int
    correct: int
    wrong: int
    unresolved: int
    pct_ancilla_recovered: float
    outputs_covered: bool
    partition_agreement: float
    missed_outputs: tuple[int, ...] = field(default=())


def score_attack(report: AttackReport, record: SynthesisRecord) -> Scorecard:
    if report.width != record.width or report.num_gates != record.num_gates:
        raise ValueError(
            f"report ({report.width} lines, {report.num_gates} gates) and record "
            f"({record.width} lines, {record.num_gates} gates) describe different circuits")
    truth = record.ancilla_values
    correct = sum(1 for line, v in truth.items() if report.recovered_ancillas.get(line) == v)
    wrong = sum(1 for line, v in truth.items()
                if line in report.recovered_ancillas and report.recovered_ancillas[line] != v)
    unresolved = sum(1 for line in truth if line in report.unresolved_ancillas)
    pct = 100.0 * correct / len(truth) if truth else 100.0
    missed = tuple(line for line in record.output_lines if line not in report.candidate_outputs)
    want = set(record.spans)
    got = {(p.start, p.stop) for p in report.partitions}
    agreement = len(want & got) / len(want) if want else 1.0
    return Scorecard(len(truth), correct, wrong, unresolved, pct, not missed, agreement, missed)
