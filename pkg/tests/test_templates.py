from __future__ import annotations

import dataclasses

from revsec.bdd import ShapeKind
from revsec.circuit import LineAnnotation, ReversibleCircuit, simulate
from revsec.templates import (CHILD_ROLES, TemplateCatalog, catalog_default, instantiate, match,
                              validate_catalog)


def run(template, values):
    """Simulate a template's gates on concrete role values with an independent small simulator."""
    roles = sorted(set(values) | {"r"})
    line = {role: i for i, role in enumerate(roles)}
    state = sum(values.get(role, 0) << line[role] for role in roles)
    state |= (template.ancilla_init or 0) << line["r"]
    c = ReversibleCircuit(len(roles), tuple(instantiate(template, line)))
    return (simulate(c, state) >> line["r"]) & 1


def test_default_catalogs_validate():
    assert validate_catalog(catalog_default()) == []
    assert validate_catalog(catalog_default(True)) == []


def test_general_selects_high():
    t = catalog_default().get("GENERAL")
    assert run(t, {"x": 1, "l": 0, "h": 1}) == 1
    assert run(t, {"x": 0, "l": 0, "h": 1}) == 0


def test_low_zero_and_its_complement_sibling():
    cat = catalog_default(True)
    assert run(cat.get("LOW_ZERO"), {"x": 1, "h": 1}) == 1
    assert run(cat.get("LOW_ZERO_C"), {"x": 1, "h": 1}) == 0


def test_every_template_matches_its_formula():
    for cm in (False, True):
        for t in catalog_default(cm):
            if not t.gates:
                continue
            roles = list(t.roles)
            for a in range(1 << len(roles)):
                vals = {r: (a >> i) & 1 for i, r in enumerate(roles)}
                assert run(t, vals) == t.semantics(vals), (t.id, vals)


def test_ambiguity_groups_only_in_complement_mode():
    assert catalog_default().ambiguity_groups() == {}
    groups = catalog_default(True).ambiguity_groups()
    assert len(groups) >= 1
    for members in groups.values():
        assert len({m.pattern_key() for m in members}) == 1
        assert sorted(m.ancilla_init for m in members) == [0, 1]


def test_every_shape_has_a_template():
    cat = catalog_default()
    for kind in ShapeKind:
        assert any(t.shape is kind for t in cat)


def test_fault_injection_names_template_and_assignment():
    cat = catalog_default()
    broken = dataclasses.replace(cat.get("GENERAL"), semantics=lambda v: v["x"])
    diags = validate_catalog(TemplateCatalog(tuple(broken if t.id == "GENERAL" else t for t in cat), False))
    assert diags
    assert all(d.startswith("GENERAL") for d in diags)
    assert any("x=0" in d for d in diags)


def test_duplicate_pattern_without_group_is_flagged():
    cat = catalog_default()
    twin = dataclasses.replace(cat.get("LOW_ZERO"), id="LOW_ZERO_TWIN", ancilla_init=1,
                               semantics=lambda v: 1 - (v["x"] & v["h"]))
    diags = validate_catalog(TemplateCatalog(cat.templates + (twin,), False))
    assert any("ambiguity group" in d for d in diags)


def test_match_instantiate_round_trip():
    cat = catalog_default()
    for t in cat:
        if not t.gates:
            continue
        binding = {r: i for i, r in enumerate(t.roles)}
        binding["r"] = len(binding)
        gates = instantiate(t, binding)
        got = match(t, gates, 0)
        assert got is not None and got["r"] == binding["r"]


def test_select_role_restricted_to_primary_inputs():
    t = catalog_default().get("LOW_ZERO")
    gates = instantiate(t, {"x": 0, "h": 1, "r": 2})
    assert match(t, gates, 0, primary_inputs={0}) is not None
    assert match(t, gates, 0, primary_inputs={1}) is not None  # x and h are interchangeable positive controls
    assert match(t, gates, 0, primary_inputs={5}) is None


def test_flexible_matching_accepts_flipped_child():
    cat = catalog_default(True)
    t = cat.get("GENERAL")
    gates = instantiate(t, {"x": 0, "l": 1, "h": 2, "r": 3}, complemented={2})
    assert match(t, gates, 0, primary_inputs={0}) is None
    assert match(t, gates, 0, primary_inputs={0}, flexible=True) is not None


def test_child_roles():
    assert CHILD_ROLES == {"l", "h", "v"}
