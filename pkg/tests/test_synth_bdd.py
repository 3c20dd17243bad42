from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revsec.circuit import Control, ToffoliGate, simulate
from revsec.function import BooleanFunction, four_term_function, full_adder
from revsec.synth_bdd import (SynthesisRecord, replay_record, restrict, structural_violations,
                              synthesize_bdd)

from strategies import functions


def check(f, c, rec):
    assert restrict(c, rec.output_lines, f.num_inputs).rows == f.rows
    assert structural_violations(c, rec, f.num_inputs) == []


def test_and2():
    f = BooleanFunction(2, 1, (0, 0, 0, 1))
    c, rec = synthesize_bdd(f)
    assert c.width == 3
    assert c.gates == (ToffoliGate((Control(0), Control(1)), 2),)
    assert rec.output_lines == (2,)
    assert c.annotations[2].constant == 0


def test_projection_is_passthrough():
    f = BooleanFunction(1, 1, (0, 1))
    c, rec = synthesize_bdd(f)
    assert c.gates == ()
    assert rec.output_lines == (0,)


def test_four_term():
    f = four_term_function()
    c, rec = synthesize_bdd(f)
    check(f, c, rec)
    assert c.width == 10
    assert len(c.gates) == 9
    assert all(g.target >= 4 for g in c.gates)
    assert replay_record(c, rec) == []
    # by hand: ancillas at their constants, inputs x1..x4 on lines 0..3
    anc = sum(v << line for line, v in rec.ancilla_values.items())
    for a in range(16):
        assert (simulate(c, a | anc) >> rec.output_lines[0]) & 1 == f.evaluate(a)


def test_constant_outputs_get_constant_lines():
    f = BooleanFunction(2, 2, (0b10,) * 4)
    c, rec = synthesize_bdd(f)
    check(f, c, rec)
    assert [c.annotations[l].constant for l in rec.output_lines] == [0, 1]


def test_shared_outputs_are_each_copied():
    f = BooleanFunction(2, 2, (0, 0, 0, 3))
    c, rec = synthesize_bdd(f)
    check(f, c, rec)
    assert len(set(rec.output_lines)) == 2


@settings(max_examples=60, deadline=None)
@given(functions(max_inputs=6), st.booleans(), st.integers(0, 50))
def test_synthesis_is_correct(f, cm, seed):
    c, rec = synthesize_bdd(f, complement_mode=cm, seed=seed)
    check(f, c, rec)
    assert replay_record(c, rec) == []


def test_complement_mode_only_flips_non_roots():
    f = four_term_function()
    flips = []
    for seed in range(8):
        c, rec = synthesize_bdd(f, complement_mode=True, seed=seed)
        check(f, c, rec)
        flips.append(any(n.complemented for n in rec.nodes))
        root_line = rec.output_lines[0]
        assert c.annotations[root_line].constant == 0
    assert any(flips) and not all(flips)


def test_seeded_determinism():
    f = full_adder()
    assert synthesize_bdd(f, complement_mode=True, seed=4) == synthesize_bdd(f, complement_mode=True, seed=4)


def test_record_json_round_trip():
    c, rec = synthesize_bdd(four_term_function(), complement_mode=True, seed=1)
    assert SynthesisRecord.from_json(rec.to_json()) == rec


def test_custom_order():
    f = full_adder()
    c, rec = synthesize_bdd(f, order=(2, 1, 0))
    check(f, c, rec)
    assert rec.order == (2, 1, 0)


def test_tampered_record_detected():
    c, rec = synthesize_bdd(four_term_function())
    bad = c.with_gates(c.gates[:-1] + (ToffoliGate((), c.gates[-1].target),))
    assert replay_record(bad, rec)
