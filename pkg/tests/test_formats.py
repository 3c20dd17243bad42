from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revsec.circuit import ReversibleCircuit, three_gate_circuit, random_circuit, simulate
from revsec.formats import FormatError, pla_parse, pla_write, real_parse, real_write
from revsec.function import BooleanFunction, full_adder

from strategies import functions

THREE_GATE = """\
# three-gate example
.version 1.0
.numvars 3
.variables x1 x2 x3
.inputs x1 x2 x3
.outputs x1 x2 x3
.begin
t2 x1 x3
t3 x3 -x2 x1
t2 x1 x2
.end
"""


def test_three_gate_parses_and_simulates():
    c = real_parse(THREE_GATE)
    assert c.gates == three_gate_circuit().gates
    assert simulate(c, 0b001) == 0b100
    assert c.annotations is None


def test_constants_directive():
    text = THREE_GATE.replace(".begin", ".constants 0--\n.garbage ---\n.begin")
    c = real_parse(text)
    assert c.annotations[0].constant == 0
    assert c.annotations[1].constant is None and c.annotations[1].input_name == "x2"


@pytest.mark.parametrize("text,needle", [
    (THREE_GATE.replace(".end\n", ""), "line 7"),
    (THREE_GATE.replace(".version", ".bogus"), "unknown directive"),
    (THREE_GATE.replace("t2 x1 x3", "t3 x1 x3"), "expects 3"),
    (THREE_GATE.replace("t2 x1 x3", "t2 x1 x9"), "unknown"),
    (THREE_GATE.replace("t2 x1 x3", "tof x1 x3"), "t<k>"),
])
def test_parse_errors(text, needle):
    with pytest.raises(FormatError, match=needle):
        real_parse(text)


def test_empty_width_one():
    c = ReversibleCircuit(1, ())
    text = real_write(c)
    assert text.endswith(".begin\n.end\n")
    assert real_parse(text) == c


def test_negative_control_round_trip():
    text = real_write(three_gate_circuit())
    assert "t3 -x2 x3 x1" in text
    assert real_parse(text).gates[1] == three_gate_circuit().gates[1]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(0, 30), st.integers(0, 10 ** 6), st.booleans())
def test_round_trip(width, n, seed, annotated):
    c = random_circuit(width, n, seed, annotated=annotated)
    text = real_write(c)
    assert real_parse(text) == c
    assert real_write(real_parse(text)) == text


def test_pla_and():
    f = pla_parse(".i 2\n.o 1\n11 1\n.e\n")
    assert f.rows == (0, 0, 0, 1)


def test_pla_dont_care_expansion():
    f = pla_parse(".i 2\n.o 1\n1- 1\n.e\n")
    # character 0 is input 0, so "1-" covers assignments 0b01 and 0b11
    assert f.rows == (0, 1, 0, 1)


def test_pla_full_adder_cubes():
    body = "\n".join(f"{a}{b}{c} {(a + b + c) // 2}{(a + b + c) % 2}"
                     for a in (0, 1) for b in (0, 1) for c in (0, 1))
    f = pla_parse(f".i 3\n.o 2\n.ilb cin x y\n.ob cout sum\n.p 8\n{body}\n.e\n")
    assert f.rows == full_adder().rows
    assert f.input_names == ("cin", "x", "y")


@pytest.mark.parametrize("text", [
    ".i 2\n.o 1\n111 1\n.e\n",
    ".i 2\n.o 1\n11 11\n.e\n",
    ".i 2\n.o 1\n11 1\n11 0\n.e\n",
    ".i 2\n.o 1\n.type fr\n1- 1\n11 0\n.e\n",
    ".i 2\n.o 1\n.foo\n.e\n",
    "11 1\n",
])
def test_pla_errors(text):
    with pytest.raises(FormatError):
        pla_parse(text)


@settings(max_examples=60, deadline=None)
@given(functions())
def test_pla_round_trip(f):
    assert pla_parse(pla_write(f)) == f
