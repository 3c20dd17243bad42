"""Node-shape -> gate-pattern catalog for Shannon-node synthesis.

A template's gate pattern is written over symbolic roles:

* ``x`` the select variable (always a primary-input line),
* ``l`` / ``h`` the lines carrying the low / high co-factor,
* ``v`` a value being buffered onto a fresh line,
* ``r`` the result line, initialised to ``ancilla_init``.

The same catalog drives synthesis (instantiation) and the synthesis-aware
attack (matching), so both sides agree on what each pattern means.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Collection, Mapping, Sequence

from .bdd import ShapeKind
from .circuit import Control, ToffoliGate

CHILD_ROLES = frozenset({"l", "h", "v"})


@dataclass(frozen=True)
class PatternGate:
    controls: tuple[tuple[str, bool], ...]
    target: str = "r"


@dataclass(frozen=True)
class Template:
    id: str
    shape: ShapeKind
    gates: tuple[PatternGate, ...]
    ancilla_init: int | None
    semantics: Callable[[Mapping[str, int]], int] = field(compare=False, repr=False)
    formula: str = ""
    ambiguity_group: str | None = None
    result_role: str = "r"

    @property
    def roles(self) -> tuple[str, ...]:
        """Input roles (everything except the result line), in first-use order."""
        seen: list[str] = []
        for g in self.gates:
            for role, _ in g.controls:
                if role not in seen:
                    seen.append(role)
        if self.result_role != "r" and self.result_role not in seen:
            seen.append(self.result_role)
        return tuple(seen)

    def pattern_key(self) -> tuple:
        return tuple((tuple(sorted(g.controls)), g.target) for g in self.gates)


@dataclass(frozen=True)
class TemplateCatalog:
    templates: tuple[Template, ...]
    complement_mode: bool = False

    def __iter__(self):
        return iter(self.templates)

    def __len__(self) -> int:
        return len(self.templates)

    def get(self, template_id: str) -> Template:
        for t in self.templates:
            if t.id == template_id:
                return t
        raise KeyError(template_id)

    def for_shape(self, kind: ShapeKind) -> list[Template]:
        return [t for t in self.templates if t.shape == kind and t.id != "COPY"]

    def group(self, template: Template) -> list[Template]:
        if template.ambiguity_group is None:
            return [template]
        return [t for t in self.templates if t.ambiguity_group == template.ambiguity_group]

    def ambiguity_groups(self) -> dict[str, list[Template]]:
        out: dict[str, list[Template]] = {}
        for t in self.templates:
            if t.ambiguity_group is not None:
                out.setdefault(t.ambiguity_group, []).append(t)
        return out


def _pg(*controls: tuple[str, bool]) -> PatternGate:
    return PatternGate(tuple(controls))


P, N = True, False


def catalog_default(complement_mode: bool = False) -> TemplateCatalog:
    low_zero_group = "LOW_ZERO" if complement_mode else None
    low_one_group = "LOW_ONE" if complement_mode else None
    general = (_pg(("x", P), ("h", P)), _pg(("x", N), ("l", P)))
    high_one = (_pg(("x", P)), _pg(("x", N), ("l", P)))
    low_one = (_pg(("x", N)), _pg(("x", P), ("h", P)))
    high_zero = (_pg(("x", N), ("l", P)),)
    low_zero = (_pg(("x", P), ("h", P)),)

    ts = [
        Template("GENERAL", ShapeKind.GENERAL, general, 0,
                 lambda v: (v["x"] & v["h"]) | (1 - v["x"]) & v["l"], "x*h + ~x*l"),
        Template("HIGH_ONE", ShapeKind.HIGH_ONE, high_one, 0,
                 lambda v: v["x"] | v["l"], "x + ~x*l"),
        Template("LOW_ONE", ShapeKind.LOW_ONE, low_one, 0,
                 lambda v: (1 - v["x"]) | v["h"], "~x + x*h", low_one_group),
    ]
    if complement_mode:
        ts.append(Template("LOW_ONE_C", ShapeKind.LOW_ONE, low_one, 1,
                           lambda v: v["x"] & (1 - v["h"]), "~(~x + x*h)", low_one_group))
    ts += [
        Template("HIGH_ZERO", ShapeKind.HIGH_ZERO, high_zero, 0,
                 lambda v: (1 - v["x"]) & v["l"], "~x*l"),
        Template("LOW_ZERO", ShapeKind.LOW_ZERO, low_zero, 0,
                 lambda v: v["x"] & v["h"], "x*h", low_zero_group),
    ]
    if complement_mode:
        ts.append(Template("LOW_ZERO_C", ShapeKind.LOW_ZERO, low_zero, 1,
                           lambda v: 1 - (v["x"] & v["h"]), "~(x*h)", low_zero_group))
    ts += [
        Template("NEGATED_VARIABLE", ShapeKind.NEGATED_VARIABLE, (_pg(("x", N)),), 0,
                 lambda v: 1 - v["x"], "~x"),
        Template("COPY", ShapeKind.VARIABLE, (_pg(("v", P)),), 0,
                 lambda v: v["v"], "v"),
        Template("VARIABLE", ShapeKind.VARIABLE, (), None,
                 lambda v: v["x"], "x", result_role="x"),
    ]
    return TemplateCatalog(tuple(ts), complement_mode)


def _run(template: Template, values: dict[str, int], flipped: Collection[str]) -> int:
    """Simulate a pattern on role values; roles in ``flipped`` have their control polarity inverted."""
    if template.ancilla_init is None:
        return values[template.result_role]
    r = template.ancilla_init
    for g in template.gates:
        fire = all(values[role] == (1 if (positive != (role in flipped)) else 0) for role, positive in g.controls)
        if fire:
            r ^= 1
    return r


def validate_catalog(catalog: TemplateCatalog) -> list[str]:
    diags: list[str] = []
    for t in catalog:
        roles = t.roles
        if len(roles) > 3:
            diags.append(f"{t.id}: {len(roles)} free roles, at most 3 allowed")
            continue
        for g in t.gates:
            if g.target != "r":
                diags.append(f"{t.id}: gate targets role {g.target!r}, expected 'r'")
            names = [role for role, _ in g.controls]
            if "r" in names or len(set(names)) != len(names):
                diags.append(f"{t.id}: malformed control list {g.controls}")
        if (t.ancilla_init is None) != (not t.gates):
            diags.append(f"{t.id}: ancilla_init must be None exactly when there are no gates")
        # in complement mode a child line may hold the complemented co-factor with its
        # consuming controls inverted; the result must not change
        flexible = [role for role in roles if role in CHILD_ROLES] if catalog.complement_mode else []
        for bits in itertools.product((0, 1), repeat=len(roles)):
            cof = dict(zip(roles, bits))
            want = t.semantics(cof)
            for k in range(len(flexible) + 1):
                for flipped in itertools.combinations(flexible, k):
                    line_vals = {role: b ^ (role in flipped) for role, b in cof.items()}
                    got = _run(t, line_vals, flipped)
                    if got != want:
                        assign = " ".join(f"{role}={b}" for role, b in cof.items())
                        note = f" (complemented {','.join(flipped)})" if flipped else ""
                        diags.append(f"{t.id}: at {assign}{note} pattern gives {got}, semantics says {want}")
    # identical patterns must be declared as one ambiguity group with distinct inits
    by_pattern: dict[tuple, list[Template]] = {}
    for t in catalog:
        if t.gates:
            by_pattern.setdefault(t.pattern_key(), []).append(t)
    for ts in by_pattern.values():
        if len(ts) > 1:
            groups = {t.ambiguity_group for t in ts}
            if None in groups or len(groups) != 1:
                diags.append(f"templates {[t.id for t in ts]} share a gate pattern without a common ambiguity group")
    for name, ts in catalog.ambiguity_groups().items():
        keys = {t.pattern_key() for t in ts}
        inits = [t.ancilla_init for t in ts]
        if len(keys) != 1:
            diags.append(f"ambiguity group {name}: members have different gate patterns")
        if len(set(inits)) != len(inits):
            diags.append(f"ambiguity group {name}: ancilla inits are not distinct")
        if len(ts) < 2:
            diags.append(f"ambiguity group {name}: only one member")
    covered = {t.shape for t in catalog}
    for kind in ShapeKind:
        if kind not in covered:
            diags.append(f"no template for shape {kind.value}")
    return diags


def instantiate(template: Template, binding: Mapping[str, int],
                complemented: Collection[int] = ()) -> list[ToffoliGate]:
    """Concrete gates; controls on lines in ``complemented`` get their polarity inverted."""
    out = []
    for g in template.gates:
        ctl = []
        for role, positive in g.controls:
            line = binding[role]
            ctl.append(Control(line, positive != (line in complemented)))
        out.append(ToffoliGate(tuple(ctl), binding[g.target]))
    return out


def match(template: Template, gates: Sequence[ToffoliGate], start: int,
          primary_inputs: Collection[int] | None = None,
          flexible: bool = False) -> dict[str, int] | None:
    """Bind the template's roles to the gates at ``start``; ``None`` if they do not fit.

    ``primary_inputs`` restricts the select role ``x`` to those lines.  With
    ``flexible``, controls on child roles bound outside ``primary_inputs`` may
    carry either polarity.
    """
    k = len(template.gates)
    if k == 0 or start + k > len(gates):
        return None
    span = gates[start:start + k]
    binding: dict[str, int] = {"r": span[0].target}

    def extend(idx: int, binding: dict[str, int]) -> dict[str, int] | None:
        if idx == k:
            return binding
        pg, g = template.gates[idx], span[idx]
        if g.target != binding["r"] or len(g.controls) != len(pg.controls):
            return None
        for perm in itertools.permutations(g.controls):
            b = dict(binding)
            ok = True
            for (role, positive), c in zip(pg.controls, perm):
                if role in b and b[role] != c.line:
                    ok = False
                    break
                if role not in b:
                    if c.line in b.values():
                        ok = False
                        break
                    if role == "x" and primary_inputs is not None and c.line not in primary_inputs:
                        ok = False
                        break
                    b[role] = c.line
                if c.positive != positive:
                    loose = (flexible and role in CHILD_ROLES
                             and primary_inputs is not None and c.line not in primary_inputs)
                    if not loose:
                        ok = False
                        break
            if ok:
                res = extend(idx + 1, b)
                if res is not None:
                    return res
        return None

    return extend(0, binding)
