"""Transformation-based synthesis of a permutation into a Toffoli cascade.

Stands in for a decision-diagram back end: the circuit only has to realise
the permutation produced by the embedding step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import Control, ReversibleCircuit, ToffoliGate, simulate_all

MAX_WIDTH = 20


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    width: int
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != 1 << self.width:
            raise PermutationError(f"expected {1 << self.width} entries, got {len(self.image)}")
        if sorted(self.image) != list(range(1 << self.width)):
            raise PermutationError("image is not a bijection")

    @classmethod
    def identity(cls, width: int) -> "Permutation":
        return cls(width, tuple(range(1 << width)))


def _apply(values: np.ndarray, gate: ToffoliGate) -> None:
    care, value, bit = gate.masks
    values[(values & care) == value] ^= bit


def _bits(word: int, width: int) -> list[int]:
    return [b for b in range(width) if (word >> b) & 1]


def synthesize_permutation(perm: Permutation | Sequence[int], width: int | None = None,
                           on_row: Callable[[int, np.ndarray], None] | None = None,
                           names: Sequence[str] = ()) -> ReversibleCircuit:
    """Output-side transformation-based synthesis.

    Rows are fixed in ascending order.  For row ``i`` with current image ``y``:
    first set the bits ``i`` has and ``y`` lacks (controls: the 1-bits of
    ``y``), then clear the bits ``y`` has and ``i`` lacks (controls: the
    1-bits of ``i``).  Either kind of gate only touches words that contain
    ``y`` or ``i`` bitwise, so rows already fixed stay fixed.  ``on_row(i, f)``
    sees the partially transformed table after row ``i`` is done.
    """
    if not isinstance(perm, Permutation):
        if width is None:
            width = max(1, (len(perm) - 1).bit_length())
        perm = Permutation(width, tuple(perm))
    n = perm.width
    f = np.array(perm.image, dtype=np.int64)
    applied: list[ToffoliGate] = []
    for i in range(1 << n):
        y = int(f[i])
        if y != i:
            for b in range(n):
                if (i >> b) & 1 and not (y >> b) & 1:
                    g = ToffoliGate(tuple(Control(c) for c in _bits(y, n)), b)
                    _apply(f, g)
                    applied.append(g)
                    y = int(f[i])
            for b in range(n):
                if (y >> b) & 1 and not (i >> b) & 1:
                    g = ToffoliGate(tuple(Control(c) for c in _bits(i, n)), b)
                    _apply(f, g)
                    applied.append(g)
                    y = int(f[i])
        if on_row is not None:
            on_row(i, f)
    # perm followed by applied == identity, so perm is applied reversed
    return ReversibleCircuit(n, tuple(reversed(applied)), names=tuple(names))


def circuit_to_permutation(circuit: ReversibleCircuit) -> Permutation:
    if circuit.width > MAX_WIDTH:
        raise PermutationError(f"width {circuit.width} exceeds the cap of {MAX_WIDTH}")
    return Permutation(circuit.width, tuple(int(v) for v in simulate_all(circuit)))
