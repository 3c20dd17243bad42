"""`.real` netlists and PLA truth tables.

`.real` dialect::

    .version 1.0
    .numvars 3
    .variables x1 x2 x3
    .inputs x1 x2 x3          # names of primary inputs, one token per line
    .outputs x1 x2 x3
    .constants 0--            # optional; per line '0'/'1' = ancilla, '-' = primary
    .garbage --1              # optional; per line '1' = garbage, '-' = primary
    .begin
    t2 x1 x3                  # t<k>: k names, the last one is the target
    t3 x3 -x2 x1              # a leading '-' marks a negative control
    .end

Without `.constants` and `.garbage` the circuit carries no annotations.
"""
from __future__ import annotations

import re
from typing import Iterable

from .circuit import Control, LineAnnotation, ReversibleCircuit, ToffoliGate
from .function import BooleanFunction


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


_REAL_DIRECTIVES = {".version", ".numvars", ".variables", ".inputs", ".outputs",
                    ".constants", ".garbage", ".begin", ".end"}
_GATE = re.compile(r"t(\d+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def real_parse(text: str) -> ReversibleCircuit:
    fields: dict[str, list[str]] = {}
    gates: list[ToffoliGate] = []
    in_body = False
    ended = False
    begin_line = None
    index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if ended:
            raise FormatError("content after .end", lineno)
        if in_body:
            if head == ".end":
                ended = True
                continue
            if head.startswith("."):
                raise FormatError(f"directive {head} inside gate block", lineno)
            m = _GATE.match(head)
            if not m:
                raise FormatError(f"gate token {head!r} is not t<k>", lineno)
            k = int(m.group(1))
            names = toks[1:]
            if k < 1 or len(names) != k:
                raise FormatError(f"{head} expects {k} names, got {len(names)}", lineno)
            controls = []
            for nm in names[:-1]:
                positive = not nm.startswith("-")
                nm = nm.lstrip("-")
                if nm not in index:
                    raise FormatError(f"unknown variable {nm!r}", lineno)
                controls.append(Control(index[nm], positive))
            tgt = names[-1]
            if tgt not in index:
                raise FormatError(f"unknown target variable {tgt!r}", lineno)
            gates.append(ToffoliGate(tuple(controls), index[tgt]))
            continue
        if head not in _REAL_DIRECTIVES:
            raise FormatError(f"unknown directive {head!r}", lineno)
        if head == ".end":
            raise FormatError(".end before .begin", lineno)
        if head == ".begin":
            if ".numvars" not in fields or ".variables" not in fields:
                raise FormatError(".begin before .numvars/.variables", lineno)
            in_body = True
            begin_line = lineno
            continue
        fields[head] = toks[1:]
        if head == ".variables":
            index = {nm: i for i, nm in enumerate(toks[1:])}
            if len(index) != len(toks) - 1:
                raise FormatError("duplicate variable name", lineno)
    if not in_body:
        raise FormatError("missing .begin")
    if not ended:
        raise FormatError(f"missing .end for the gate block opened at line {begin_line}", begin_line)

    try:
        n = int(fields[".numvars"][0])
    except (IndexError, ValueError):
        raise FormatError("bad .numvars") from None
    variables = fields[".variables"]
    if len(variables) != n:
        raise FormatError(f".variables lists {len(variables)} names for .numvars {n}")
    inputs = fields.get(".inputs", variables)
    outputs = fields.get(".outputs", variables)
    for key, vals in ((".inputs", inputs), (".outputs", outputs)):
        if len(vals) != n:
            raise FormatError(f"{key} has {len(vals)} entries for .numvars {n}")
    annotations = None
    if ".constants" in fields or ".garbage" in fields:
        consts = "".join(fields.get(".constants", ["-" * n]))
        garbage = "".join(fields.get(".garbage", ["-" * n]))
        if len(consts) != n or len(garbage) != n:
            raise FormatError(f".constants/.garbage must have {n} characters")
        annotations = []
        for i in range(n):
            c, g = consts[i], garbage[i]
            if c not in "01-" or g not in "1-":
                raise FormatError(f"bad role character at position {i}")
            annotations.append(LineAnnotation(
                input_name=None if c != "-" else inputs[i],
                constant=None if c == "-" else int(c),
                output_name=None if g == "1" else outputs[i],
            ))
        annotations = tuple(annotations)
    return ReversibleCircuit(n, tuple(gates), annotations, tuple(variables))


def real_write(circuit: ReversibleCircuit) -> str:
    names = circuit.names
    out = [".version 1.0", f".numvars {circuit.width}", ".variables " + " ".join(names)]
    ann = circuit.annotations
    if ann is None:
        out.append(".inputs " + " ".join(names))
        out.append(".outputs " + " ".join(names))
    else:
        out.append(".inputs " + " ".join(a.input_name or names[i] for i, a in enumerate(ann)))
        out.append(".outputs " + " ".join(a.output_name or names[i] for i, a in enumerate(ann)))
        out.append(".constants " + "".join("-" if a.constant is None else str(a.constant) for a in ann))
        out.append(".garbage " + "".join("1" if a.is_garbage else "-" for a in ann))
    out.append(".begin")
    for g in circuit.gates:
        toks = [("" if c.positive else "-") + names[c.line] for c in g.controls]
        toks.append(names[g.target])
        out.append(f"t{len(toks)} " + " ".join(toks))
    out.append(".end")
    return "\n".join(out) + "\n"


_PLA_KNOWN = {".i", ".o", ".p", ".ilb", ".ob", ".type", ".e", ".end"}


def pla_parse(text: str) -> BooleanFunction:
    """Dense truth table from a PLA listing.

    Unlisted minterms map to 0.  An output '1' sets the bit; '0', '~' and '-'
    leave it.  Listing the same input cube twice with different outputs is an
    error, as is any 1/0 overlap under ``.type fr``.
    """
    ni = no = None
    ilb = ob = None
    pla_type = "f"
    cubes: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head.startswith("."):
            if head not in _PLA_KNOWN:
                raise FormatError(f"unknown PLA directive {head!r}", lineno)
            if head == ".i":
                ni = int(toks[1])
            elif head == ".o":
                no = int(toks[1])
            elif head == ".ilb":
                ilb = tuple(toks[1:])
            elif head == ".ob":
                ob = tuple(toks[1:])
            elif head == ".type":
                pla_type = toks[1]
            elif head in (".e", ".end"):
                break
            continue
        if ni is None or no is None:
            raise FormatError("cube before .i/.o", lineno)
        if len(toks) == 1 and ni + no == len(toks[0]):
            toks = [toks[0][:ni], toks[0][ni:]]
        if len(toks) != 2:
            raise FormatError(f"expected '<inputs> <outputs>', got {line!r}", lineno)
        cin, cout = toks
        if len(cin) != ni or set(cin) - set("01-"):
            raise FormatError(f"input cube {cin!r} does not match .i {ni}", lineno)
        if len(cout) != no or set(cout) - set("01-~"):
            raise FormatError(f"output part {cout!r} does not match .o {no}", lineno)
        cubes.append((cin, cout, lineno))
    if ni is None or no is None:
        raise FormatError("missing .i or .o")

    seen: dict[str, str] = {}
    for cin, cout, lineno in cubes:
        if cin in seen and seen[cin] != cout:
            raise FormatError(f"cube {cin} listed with outputs {seen[cin]} and {cout}", lineno)
        seen[cin] = cout

    on = [0] * (1 << ni)
    off = [0] * (1 << ni)
    for cin, cout, lineno in cubes:
        set_mask = sum(1 << j for j, ch in enumerate(cout) if ch == "1")
        off_mask = sum(1 << j for j, ch in enumerate(cout) if ch == "0")
        for a in _expand(cin):
            on[a] |= set_mask
            off[a] |= off_mask
    if pla_type == "fr":
        for a in range(1 << ni):
            if on[a] & off[a]:
                raise FormatError(f"minterm {a} is both on and off for outputs {on[a] & off[a]:b}")
    kw = {}
    if ilb:
        kw["input_names"] = ilb
    if ob:
        kw["output_names"] = ob
    return BooleanFunction(ni, no, tuple(on), **kw)


def _expand(cube: str) -> Iterable[int]:
    """Minterms of a cube; character ``i`` is input ``i``."""
    base = sum(1 << i for i, ch in enumerate(cube) if ch == "1")
    free = [i for i, ch in enumerate(cube) if ch == "-"]
    for k in range(1 << len(free)):
        a = base
        for b, i in enumerate(free):
            if (k >> b) & 1:
                a |= 1 << i
        yield a


def pla_write(function: BooleanFunction) -> str:
    """One cube per minterm with a nonzero output row."""
    ni, no = function.num_inputs, function.num_outputs
    lines = [f".i {ni}", f".o {no}", ".ilb " + " ".join(function.input_names),
             ".ob " + " ".join(function.output_names)]
    body = []
    for a, row in enumerate(function.rows):
        if row:
            cin = "".join(str((a >> i) & 1) for i in range(ni))
            cout = "".join(str((row >> j) & 1) for j in range(no))
            body.append(f"{cin} {cout}")
    lines.append(f".p {len(body)}")
    lines += body
    lines.append(".e")
    return "\n".join(lines) + "\n"
