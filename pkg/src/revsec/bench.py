"""Scrambling sweep over a directory of PLA files."""
from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Literal, Sequence

from .analyze import DegenerateCircuit, attack_bdd, count_embeddings_blackbox, score_attack
from .circuit import LineAnnotation, ReversibleCircuit, quantum_cost
from .embed import embed, scramble_inputs, scramble_outputs, scrambled_order
from .formats import FormatError, pla_parse
from .function import BooleanFunction
from .synth_bdd import SynthesisRecord, synthesize_bdd
from .synth_func import synthesize_permutation
from .templates import catalog_default

log = logging.getLogger(__name__)

DEFAULT_SCHEDULE = (0.0, 0.1, 0.2, 0.5, 1.0)


@dataclass(frozen=True)
class BenchRow:
    benchmark: str
    mode: str
    scramble: str
    ratio: float
    extra: int
    n: int
    garbage: int
    ancilla: int
    quantum_cost: int
    pct_garbage_leaked: float
    embed_blackbox: str
    pct_ancilla_recovered: float
    embed_with_info: str


@dataclass(frozen=True)
class BenchOptions:
    mode: Literal["bdd", "func"] = "bdd"
    scramble: Literal["inputs", "outputs"] = "inputs"
    schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    seed: int = 0
    complement_mode: bool = False
    max_inputs: int = 16


@dataclass
class BenchResult:
    rows: list[BenchRow]
    skipped: list[tuple[str, str]]


def extra_count(ratio: float, n: int) -> int:
    """round-half-up(ratio * n), at least 1 whenever ratio > 0."""
    if ratio <= 0:
        return 0
    k = int((Decimal(str(ratio)) * n).quantize(Decimal(1), rounding=ROUND_HALF_UP))
    return max(1, k)


def with_hidden_roles(circuit: ReversibleCircuit, record: SynthesisRecord | None,
                      hidden_inputs: dict[int, int], hidden_outputs: Sequence[int]):
    """Re-annotate scrambled lines with their true roles (hidden ancilla constants, hidden garbage)."""
    ann = list(circuit.annotations)
    for line, v in hidden_inputs.items():
        ann[line] = LineAnnotation(None, v, ann[line].output_name)
    for line in hidden_outputs:
        ann[line] = LineAnnotation(ann[line].input_name, ann[line].constant, None)
    circuit = circuit.with_annotations(ann)
    if record is not None:
        outs = tuple(x for x in record.output_lines if x not in set(hidden_outputs))
        record = replace(record, annotations=circuit.annotations, output_lines=outs)
    return circuit, record


def _scrambled(f: BooleanFunction, opts: BenchOptions, extra: int, seed: int):
    if extra == 0:
        return f, {}, []
    if opts.scramble == "inputs":
        f2, consts = scramble_inputs(f, extra, seed)
        return f2, {f.num_inputs + k: v for k, v in enumerate(consts)}, []
    f2, idx = scramble_outputs(f, extra, seed)
    return f2, {}, list(idx)


def bench_function(name: str, f: BooleanFunction, opts: BenchOptions) -> tuple[list[BenchRow], list[tuple[str, str]]]:
    rows, skipped = [], []
    base = f.num_inputs
    for ratio in opts.schedule:
        extra = extra_count(ratio, base)
        if opts.scramble == "inputs" and f.num_inputs + extra > opts.max_inputs:
            skipped.append((f"{name}@{ratio}", f"{f.num_inputs + extra} inputs exceeds max_inputs"))
            continue
        f2, hidden_in, hidden_out_idx = _scrambled(f, opts, extra, opts.seed)
        if opts.mode == "bdd":
            order = scrambled_order(f.num_inputs, len(hidden_in))
            circuit, record = synthesize_bdd(f2, order=order, complement_mode=opts.complement_mode, seed=opts.seed)
            hidden_out = [record.output_lines[j] for j in hidden_out_idx]
            circuit, record = with_hidden_roles(circuit, record, hidden_in, hidden_out)
        else:
            spec = embed(f2, ancilla_value=0, seed=opts.seed)
            circuit = synthesize_permutation(spec.permutation, spec.width)
            hidden_in_lines = dict(hidden_in)
            circuit = circuit.with_annotations(spec.annotations)
            circuit, record = with_hidden_roles(circuit, None, hidden_in_lines, hidden_out_idx)
        try:
            bb = count_embeddings_blackbox(circuit)
        except DegenerateCircuit as exc:
            skipped.append((f"{name}@{ratio}", str(exc)))
            continue
        if opts.mode == "bdd":
            report = attack_bdd(circuit, catalog_default(opts.complement_mode))
            card = score_attack(report, record)
            pct_rec, with_info = card.pct_ancilla_recovered, report.embeddings.value
        else:
            # knowing a functional flow does not narrow anything down
            pct_rec, with_info = 0.0, bb.embeddings.value
        rows.append(BenchRow(
            benchmark=name, mode=opts.mode, scramble=opts.scramble, ratio=ratio, extra=extra,
            n=circuit.width, garbage=len(circuit.garbage_lines), ancilla=len(circuit.ancilla_lines),
            quantum_cost=quantum_cost(circuit), pct_garbage_leaked=round(bb.pct_garbage_leaked, 1),
            embed_blackbox=str(bb.embeddings.value), pct_ancilla_recovered=round(pct_rec, 1),
            embed_with_info=str(with_info),
        ))
    return rows, skipped


def _bench_file(path: str, opts: BenchOptions):
    try:
        f = pla_parse(Path(path).read_text())
    except (OSError, FormatError, ValueError) as exc:
        return [], [(Path(path).name, f"unreadable: {exc}")]
    return bench_function(Path(path).stem, f, opts)


def run_bench(directory: str | Path, opts: BenchOptions = BenchOptions(), jobs: int = 1) -> BenchResult:
    files = sorted(str(p) for p in Path(directory).glob("*.pla"))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_bench_file, files, [opts] * len(files)))
    else:
        results = [_bench_file(p, opts) for p in files]
    rows, skipped = [], []
    for r, s in results:
        rows += r
        skipped += s
    for what, why in skipped:
        log.warning("skipped %s: %s", what, why)
    return BenchResult(rows, skipped)


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(BenchRow)])
    for r in rows:
        w.writerow([getattr(r, f.name) for f in fields(BenchRow)])
    return buf.getvalue()


def rows_to_json(rows: Sequence[BenchRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
