"""Command-line entry point: ``revsec <subcommand> ...``.

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import analyze, bench, circuit as circ, embed as emb, formats, synth_bdd, synth_func
from .templates import catalog_default

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InvariantViolation(RuntimeError):
    pass


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _records(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records if len(records) != 1 else records[0], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()


def _parse_word(text: str, width: int) -> int:
    """Bit strings are written most-significant line first (x_n ... x_1); plain integers also work."""
    if text.startswith(("0x", "0b")) or not set(text) <= {"0", "1"} or len(text) != width:
        return int(text, 0)
    return int(text, 2)


def cmd_sim(a) -> int:
    c = formats.real_parse(_read(a.circuit))
    word = _parse_word(a.input, c.width)
    out = circ.simulate_inverse(c, word) if a.inverse else circ.simulate(c, word)
    back = circ.simulate(c, out) if a.inverse else circ.simulate_inverse(c, out)
    if back != word:
        raise InvariantViolation("simulation did not round-trip")
    _emit(format(out, f"0{c.width}b") + "\n", a.output)
    return EXIT_OK


def cmd_cost(a) -> int:
    c = formats.real_parse(_read(a.circuit))
    _emit(_records([{"gates": len(c.gates), "lines": c.width, "quantum_cost": circ.quantum_cost(c)}], a.format), a.output)
    return EXIT_OK


def _check_synthesis(c, rec, f) -> None:
    if synth_bdd.restrict(c, rec.output_lines, f.num_inputs).rows != f.rows:
        raise InvariantViolation("synthesised circuit does not realise the input function")
    problems = synth_bdd.structural_violations(c, rec, f.num_inputs)
    if problems:
        raise InvariantViolation("; ".join(problems))


def cmd_synth_bdd(a) -> int:
    f = formats.pla_parse(_read(a.pla))
    order = [int(x) for x in a.order.split(",")] if a.order else None
    c, rec = synth_bdd.synthesize_bdd(f, order=order, complement_mode=a.complement_mode, seed=a.seed)
    _check_synthesis(c, rec, f)
    _emit(formats.real_write(c), a.output)
    if a.record:
        Path(a.record).write_text(rec.to_json())
    return EXIT_OK


def cmd_embed(a) -> int:
    f = formats.pla_parse(_read(a.pla))
    value = a.ancilla_value if a.ancilla_value == "seeded" else int(a.ancilla_value)
    spec = emb.embed(f, ancilla_value=value, dont_care_policy=a.policy, seed=a.seed)
    if not spec.is_bijection() or spec.restrict().rows != f.rows:
        raise InvariantViolation("embedding is not a faithful bijection")
    doc = {
        "width": spec.width,
        "num_inputs": spec.num_inputs,
        "num_outputs": spec.num_outputs,
        "ancillas": spec.num_ancillas,
        "garbage": spec.num_garbage,
        "ancilla_values": list(spec.ancilla_values),
        "permutation": list(spec.permutation),
    }
    _emit(json.dumps(doc, indent=2) + "\n", a.output)
    return EXIT_OK


def cmd_synth_func(a) -> int:
    text = _read(a.source)
    if a.source.endswith(".json"):
        doc = json.loads(text)
        perm = synth_func.Permutation(doc["width"], tuple(doc["permutation"]))
        ann = None
    else:
        spec = emb.embed(formats.pla_parse(text), seed=a.seed)
        perm = synth_func.Permutation(spec.width, spec.permutation)
        ann = spec.annotations
    c = synth_func.synthesize_permutation(perm)
    if synth_func.circuit_to_permutation(c) != perm:
        raise InvariantViolation("functional synthesis does not realise the permutation")
    _emit(formats.real_write(c.with_annotations(ann)), a.output)
    return EXIT_OK


def cmd_analyze(a) -> int:
    c = formats.real_parse(_read(a.circuit))
    res = analyze.count_embeddings_blackbox(c)
    doc = {
        "lines": c.width,
        "leaked_garbage": " ".join(c.names[i] for i in sorted(res.leaked_garbage)),
        "pct_garbage_leaked": round(res.pct_garbage_leaked, 1),
        "k_list": " ".join(map(str, res.profile.k_list)),
        "embeddings": str(res.embeddings.value),
    }
    _emit(_records([doc], a.format), a.output)
    return EXIT_OK


def cmd_attack(a) -> int:
    c = formats.real_parse(_read(a.circuit))
    report = analyze.attack_bdd(c, catalog_default(a.complement_mode))
    doc = report.to_dict()
    if a.ground_truth:
        rec = synth_bdd.SynthesisRecord.from_json(_read(a.ground_truth))
        card = analyze.score_attack(report, rec)
        doc["score"] = {
            "pct_ancilla_recovered": card.pct_ancilla_recovered,
            "wrong": card.wrong,
            "unresolved": card.unresolved,
            "outputs_covered": card.outputs_covered,
            "partition_agreement": card.partition_agreement,
        }
    if a.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", a.output)
    else:
        flat = {k: (" ".join(map(str, v)) if isinstance(v, list) else v)
                for k, v in doc.items() if k not in ("partitions", "recovered_ancillas", "unresolved_ancillas", "score")}
        flat["recovered"] = len(report.recovered_ancillas)
        flat["unresolved"] = len(report.unresolved_ancillas)
        flat.update({f"score_{k}": v for k, v in doc.get("score", {}).items()})
        _emit(_records([flat], "csv"), a.output)
    return EXIT_OK


def cmd_scramble(a) -> int:
    f = formats.pla_parse(_read(a.pla))
    if bool(a.inputs) == bool(a.outputs):
        raise ValueError("give exactly one of --inputs or --outputs")
    if a.inputs:
        f2, consts = emb.scramble_inputs(f, a.inputs, a.seed)
        hidden = {"hidden_ancillas": {f2.input_names[f.num_inputs + k]: v for k, v in enumerate(consts)}}
    else:
        f2, idx = emb.scramble_outputs(f, a.outputs, a.seed)
        hidden = {"hidden_garbage": [f2.output_names[j] for j in idx]}
    _emit(formats.pla_write(f2), a.output)
    if a.hidden:
        Path(a.hidden).write_text(json.dumps(hidden, indent=2) + "\n")
    return EXIT_OK


def cmd_bench(a) -> int:
    schedule = tuple(float(x) for x in a.schedule.split(","))
    opts = bench.BenchOptions(mode=a.mode, scramble=a.scramble, schedule=schedule, seed=a.seed,
                              complement_mode=a.complement_mode, max_inputs=a.max_inputs)
    result = bench.run_bench(a.directory, opts, jobs=a.jobs)
    text = bench.rows_to_json(result.rows) if a.format == "json" else bench.rows_to_csv(result.rows)
    _emit(text, a.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="revsec", description="Reversible-circuit synthesis and reverse-engineering toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sim", parents=[common], help="simulate a .real circuit on one input word")
    s.add_argument("circuit")
    s.add_argument("input", help="bit string x_n..x_1, or an integer")
    s.add_argument("--inverse", action="store_true", help="run the circuit backwards")
    s.set_defaults(func=cmd_sim)

    s = sub.add_parser("cost", parents=[common], help="gate count and quantum cost")
    s.add_argument("circuit")
    s.set_defaults(func=cmd_cost)

    s = sub.add_parser("synth-bdd", parents=[common], help="BDD-based synthesis of a PLA function")
    s.add_argument("pla")
    s.add_argument("--order", help="comma-separated variable order (0-based)")
    s.add_argument("--complement-mode", action="store_true")
    s.add_argument("--record", help="write the synthesis ground truth (JSON) here")
    s.set_defaults(func=cmd_synth_bdd)

    s = sub.add_parser("embed", parents=[common], help="embed a PLA function into a permutation")
    s.add_argument("pla")
    s.add_argument("--ancilla-value", choices=("0", "1", "seeded"), default="0")
    s.add_argument("--policy", choices=("first-free", "random"), default="first-free")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("synth-func", parents=[common], help="functional synthesis from a PLA or embed JSON")
    s.add_argument("source")
    s.set_defaults(func=cmd_synth_func)

    s = sub.add_parser("analyze", parents=[common], help="black-box embedding count of a .real circuit")
    s.add_argument("circuit")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("attack", parents=[common], help="synthesis-aware attack on a BDD-synthesised circuit")
    s.add_argument("circuit")
    s.add_argument("--complement-mode", action="store_true", help="attack with the complement-mode catalog")
    s.add_argument("--ground-truth", help="synthesis record JSON to score against")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("scramble", parents=[common], help="add hidden ancillary inputs or garbage outputs")
    s.add_argument("pla")
    s.add_argument("--inputs", type=int, default=0)
    s.add_argument("--outputs", type=int, default=0)
    s.add_argument("--hidden", help="write the hidden roles (JSON) here")
    s.set_defaults(func=cmd_scramble)

    s = sub.add_parser("bench", parents=[common], help="scrambling sweep over a directory of PLA files")
    s.add_argument("directory")
    s.add_argument("--mode", choices=("bdd", "func"), default="bdd")
    s.add_argument("--scramble", choices=("inputs", "outputs"), default="inputs")
    s.add_argument("--schedule", default="0,0.1,0.2,0.5,1.0")
    s.add_argument("--complement-mode", action="store_true")
    s.add_argument("--max-inputs", type=int, default=16)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
