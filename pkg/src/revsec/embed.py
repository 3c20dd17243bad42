"""Embedding non-reversible functions into permutations, and input/output scrambling."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from .circuit import LineAnnotation
from .function import BooleanFunction, is_degenerate_column, pattern_stats


class EmbedError(ValueError):
    pass


@dataclass(frozen=True)
class ReversibleSpec:
    """A bijection on ``width`` bits plus the line roles that recover the source function.

    Primary inputs occupy lines ``0..num_inputs-1`` with ancillas above them;
    primary outputs occupy lines ``0..num_outputs-1`` with garbage above them.
    """

    width: int
    permutation: tuple[int, ...]
    annotations: tuple[LineAnnotation, ...]
    num_inputs: int
    num_outputs: int

    @property
    def ancilla_values(self) -> tuple[int, ...]:
        return tuple(a.constant for a in self.annotations[self.num_inputs:])

    @property
    def num_ancillas(self) -> int:
        return self.width - self.num_inputs

    @property
    def num_garbage(self) -> int:
        return self.width - self.num_outputs

    def is_bijection(self) -> bool:
        return sorted(self.permutation) == list(range(1 << self.width))

    def restrict(self) -> BooleanFunction:
        anc = sum(v << (self.num_inputs + k) for k, v in enumerate(self.ancilla_values))
        mask = (1 << self.num_outputs) - 1
        rows = tuple(self.permutation[a | anc] & mask for a in range(1 << self.num_inputs))
        return BooleanFunction(self.num_inputs, self.num_outputs, rows)


def min_garbage(function: BooleanFunction) -> int:
    m = pattern_stats(function).max_multiplicity
    return (m - 1).bit_length()


def embed(function: BooleanFunction, ancilla_value: int | Literal["seeded"] = 0,
          dont_care_policy: Literal["first-free", "random"] = "first-free",
          seed: int = 0) -> ReversibleSpec:
    ni, no = function.num_inputs, function.num_outputs
    g = min_garbage(function)
    width = max(ni, no + g)
    n_anc = width - ni
    rng = random.Random(seed)
    if ancilla_value == "seeded":
        consts = [rng.getrandbits(1) for _ in range(n_anc)]
    elif ancilla_value in (0, 1):
        consts = [ancilla_value] * n_anc
    else:
        raise EmbedError(f"ancilla_value must be 0, 1 or 'seeded', got {ancilla_value!r}")
    if dont_care_policy not in ("first-free", "random"):
        raise EmbedError(f"unknown dont_care_policy {dont_care_policy!r}")

    size = 1 << width
    garbage_slots = 1 << (width - no)
    anc_word = sum(v << (ni + k) for k, v in enumerate(consts))
    perm = [-1] * size
    used = bytearray(size)
    next_garbage = [0] * (1 << no)
    for a in range(1 << ni):
        y = function.rows[a]
        if dont_care_policy == "first-free":
            gv = next_garbage[y]
            next_garbage[y] += 1
        else:
            free = [k for k in range(garbage_slots) if not used[y | (k << no)]]
            gv = rng.choice(free)
        if gv >= garbage_slots:
            raise EmbedError("ran out of garbage codewords")  # unreachable: m <= 2**g
        word = y | (gv << no)
        perm[a | anc_word] = word
        used[word] = 1
    free_words = [w for w in range(size) if not used[w]]
    if dont_care_policy == "random":
        rng.shuffle(free_words)
    it = iter(free_words)
    for x in range(size):
        if perm[x] < 0:
            perm[x] = next(it)

    ann = [LineAnnotation(input_name=function.input_names[i] if i < ni else None,
                          constant=consts[i - ni] if i >= ni else None,
                          output_name=function.output_names[i] if i < no else None)
           for i in range(width)]
    return ReversibleSpec(width, tuple(perm), tuple(ann), ni, no)


def _extra_names(existing: tuple[str, ...], prefix: str, count: int) -> tuple[str, ...]:
    out = []
    k = 1
    while len(out) < count:
        name = f"{prefix}{k}"
        if name not in existing:
            out.append(name)
        k += 1
    return tuple(out)


def scramble_inputs(function: BooleanFunction, count: int, seed: int = 0) -> tuple[BooleanFunction, tuple[int, ...]]:
    """Append ``count`` hidden ancillary inputs.

    Returns ``(f', constants)`` with ``f'(x, e=constants) == f(x)``.  Extras
    are layered one at a time: while ``e_t`` differs from its constant, every
    output is XORed with the parity of a seeded non-empty subset of ``x``.
    Each extra input therefore lies in every output's support, and the first
    ``k`` extras of a larger draw coincide with a draw of ``k`` (same seed).
    """
    if count < 1:
        raise EmbedError("scramble_inputs needs count >= 1")
    ni, no = function.num_inputs, function.num_outputs
    if ni == 0:
        raise EmbedError("cannot scramble a function without inputs")
    rng = random.Random(seed)
    consts, layers = [], []
    for _ in range(count):
        consts.append(rng.getrandbits(1))
        subsets = []
        for _ in range(no):
            s = 0
            while s == 0:
                s = rng.getrandbits(ni)
            subsets.append(s)
        layers.append(subsets)
    xmask = (1 << ni) - 1

    def row(a: int) -> int:
        x = a & xmask
        y = function.rows[x]
        for t, subsets in enumerate(layers):
            if (a >> (ni + t)) & 1 != consts[t]:
                for j, s in enumerate(subsets):
                    y ^= (bin(x & s).count("1") & 1) << j
        return y

    names = function.input_names + _extra_names(function.input_names + function.output_names, "e", count)
    f2 = BooleanFunction.from_callable(ni + count, no, row, input_names=names,
                                       output_names=function.output_names)
    return f2, tuple(consts)


def scrambled_order(num_inputs: int, extra: int) -> tuple[int, ...]:
    """Variable order with the newest extra input on top and the originals below.

    With this order the BDD for ``k`` extras is a cofactor of the one for
    ``k + 1``, so every size measure grows with each added input.
    """
    return tuple(range(num_inputs + extra - 1, num_inputs - 1, -1)) + tuple(range(num_inputs))


def scramble_outputs(function: BooleanFunction, count: int, seed: int = 0) -> tuple[BooleanFunction, tuple[int, ...]]:
    """Append ``count`` hidden garbage outputs.

    Each extra column is a seeded random function of the inputs that is not
    constant, not a bare input, and differs from every other column.  Returns
    ``(f', garbage_output_indices)``.
    """
    if count < 1:
        raise EmbedError("scramble_outputs needs count >= 1")
    ni, no = function.num_inputs, function.num_outputs
    if ni < 2:
        raise EmbedError("need at least two inputs to draw non-trivial garbage outputs")
    rng = random.Random(seed)
    cols = [function.output_column(j) for j in range(no)]
    size = 1 << ni
    for _ in range(count):
        for _attempt in range(10_000):
            col = tuple(rng.getrandbits(1) for _ in range(size))
            if not is_degenerate_column(col, ni) and col not in cols:
                break
        else:
            raise EmbedError(f"could not draw {count} distinct garbage columns over {ni} inputs")
        cols.append(col)
    rows = tuple(sum(c[a] << j for j, c in enumerate(cols)) for a in range(size))
    names = function.output_names + _extra_names(function.input_names + function.output_names, "g", count)
    f2 = BooleanFunction(ni, no + count, rows, function.input_names, names)
    return f2, tuple(range(no, no + count))
