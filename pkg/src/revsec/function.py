"""Completely specified multi-output Boolean functions stored as dense truth tables.

Input assignment ``a`` sets input ``i`` to bit ``i`` of ``a``; each row is an
integer whose bit ``j`` is output ``j``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

MAX_INPUTS = 20


class FunctionError(ValueError):
    pass


@dataclass(frozen=True)
class BooleanFunction:
    num_inputs: int
    num_outputs: int
    rows: tuple[int, ...]
    input_names: tuple[str, ...] = field(default=())
    output_names: tuple[str, ...] = field(default=())
    allow_large: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        n, m = self.num_inputs, self.num_outputs
        if n < 0 or m < 1:
            raise FunctionError(f"need num_inputs >= 0 and num_outputs >= 1, got {n}, {m}")
        if n > MAX_INPUTS and not self.allow_large:
            raise FunctionError(f"{n} inputs exceeds the cap of {MAX_INPUTS} (pass allow_large=True)")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if len(self.rows) != 1 << n:
            raise FunctionError(f"expected {1 << n} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> m:
                raise FunctionError(f"row value {r} does not fit in {m} outputs")
        ins = tuple(self.input_names) or tuple(f"x{i + 1}" for i in range(n))
        outs = tuple(self.output_names) or tuple(f"y{j + 1}" for j in range(m))
        if len(ins) != n or len(set(ins)) != n:
            raise FunctionError(f"input names {ins} are not {n} unique names")
        if len(outs) != m or len(set(outs)) != m:
            raise FunctionError(f"output names {outs} are not {m} unique names")
        if set(ins) & set(outs):
            raise FunctionError("input and output names overlap")
        object.__setattr__(self, "input_names", ins)
        object.__setattr__(self, "output_names", outs)

    @classmethod
    def from_callable(cls, num_inputs: int, num_outputs: int, fn: Callable[[int], int], **kw) -> "BooleanFunction":
        return cls(num_inputs, num_outputs, tuple(fn(a) for a in range(1 << num_inputs)), **kw)

    def evaluate(self, assignment: int) -> int:
        if assignment < 0 or assignment >> self.num_inputs:
            raise FunctionError(f"assignment {assignment} does not fit in {self.num_inputs} inputs")
        return self.rows[assignment]

    def output_column(self, j: int) -> tuple[int, ...]:
        return tuple((r >> j) & 1 for r in self.rows)

    def project(self, outputs: Sequence[int]) -> "BooleanFunction":
        rows = tuple(sum(((r >> j) & 1) << k for k, j in enumerate(outputs)) for r in self.rows)
        return BooleanFunction(
            self.num_inputs, len(outputs), rows, self.input_names,
            tuple(self.output_names[j] for j in outputs), allow_large=self.allow_large,
        )

    def support(self, j: int) -> set[int]:
        """Inputs output ``j`` semantically depends on."""
        col = self.output_column(j)
        return {i for i in range(self.num_inputs)
                if any(col[a] != col[a ^ (1 << i)] for a in range(1 << self.num_inputs))}


def bits(word: str) -> int:
    """Read a bit string written in declaration order: ``bits("011")`` sets inputs 2 and 3."""
    return sum(int(b) << i for i, b in enumerate(word))


@dataclass(frozen=True)
class OutputPatternStats:
    max_multiplicity: int
    histogram: Mapping[int, int]


def pattern_stats(function: BooleanFunction) -> OutputPatternStats:
    hist = Counter(function.rows)
    return OutputPatternStats(max(hist.values()), dict(hist))


Term = Mapping[int, int]


def from_expression_terms(num_vars: int, terms: Iterable[Term], name: str = "f") -> BooleanFunction:
    """Sum of products: each term maps variable index -> required bit."""
    terms = [dict(t) for t in terms]
    for t in terms:
        for v, b in t.items():
            if not 0 <= v < num_vars:
                raise FunctionError(f"variable index {v} out of range for {num_vars} variables")
            if b not in (0, 1):
                raise FunctionError(f"polarity {b!r} is not a bit")
    compiled = []
    for t in terms:
        care = sum(1 << v for v in t)
        want = sum(b << v for v, b in t.items())
        compiled.append((care, want))
    rows = tuple(int(any(a & care == want for care, want in compiled)) for a in range(1 << num_vars))
    return BooleanFunction(num_vars, 1, rows, output_names=(name,))


def full_adder() -> BooleanFunction:
    """Inputs (c_in, x, y); outputs (c_out, sum)."""

    def row(a: int) -> int:
        total = (a & 1) + ((a >> 1) & 1) + ((a >> 2) & 1)
        return (total >> 1) | ((total & 1) << 1)

    return BooleanFunction.from_callable(3, 2, row, input_names=("cin", "x", "y"), output_names=("cout", "sum"))


FOUR_TERMS: tuple[dict[int, int], ...] = (
    {0: 0, 1: 0, 2: 0, 3: 1},
    {0: 0, 1: 1, 2: 1, 3: 0},
    {0: 1, 1: 0, 2: 1, 3: 0},
    {0: 1, 1: 1, 2: 0, 3: 1},
)


def four_term_function() -> BooleanFunction:
    """Four-term running example over x1..x4."""
    return from_expression_terms(4, FOUR_TERMS)


def is_degenerate_column(col: Sequence[int], num_inputs: int) -> bool:
    """Constant columns and bare projections ``x_i``."""
    if len(set(col)) == 1:
        return True
    return any(all(col[a] == (a >> i) & 1 for a in range(1 << num_inputs)) for i in range(num_inputs))


def random_function(num_inputs: int, num_outputs: int = 1, seed: int | random.Random = 0,
                    nondegenerate: bool = False) -> BooleanFunction:
    """Uniform random truth table; ``nondegenerate`` redraws constant or projection outputs."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    size = 1 << num_inputs
    columns = []
    for _ in range(num_outputs):
        while True:
            col = [rng.getrandbits(1) for _ in range(size)]
            if not nondegenerate or not is_degenerate_column(col, num_inputs):
                break
        columns.append(col)
    rows = tuple(sum(col[a] << j for j, col in enumerate(columns)) for a in range(size))
    return BooleanFunction(num_inputs, num_outputs, rows)


def seeded_suite(count: int = 200, seed: int = 2024, min_inputs: int = 3, max_inputs: int = 6,
                 max_outputs: int = 3) -> list[BooleanFunction]:
    """Reproducible batch of non-degenerate random functions for sweeps and tests."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        ni = rng.randint(min_inputs, max_inputs)
        no = rng.randint(1, max_outputs)
        out.append(random_function(ni, no, rng, nondegenerate=True))
    return out
