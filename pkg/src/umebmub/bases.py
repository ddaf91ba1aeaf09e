"""The UMEB family of C^2 (x) C^d, its completion to a full basis, and F.

For ``d >= 3``, ``n in {0, 1}`` and ``j in {0, ..., d-2}``::

    phi[n, j]   = (|0>|j'> + (-1)^n |1>|(j (+) 1)'>) / sqrt(2),   (+) mod d-1
    phi[n, d-1] = (|0> + (-1)^n |1>) |(d-1)'> / sqrt(2)

The first family is the UMEB; the two product states complete it.

Labels are ordered with ``n`` varying fastest: (0,0), (1,0), (0,1), (1,1), ...
This is also the column order of ``build_F``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import BipartiteState
from .errors import InvalidDimensionError, ShapeError

MIN_D = 3


@dataclass(frozen=True)
class BasisSet:
    d: int
    labels: tuple[tuple[int, int], ...]
    states: tuple[BipartiteState, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.states):
            raise ShapeError(f"{len(self.labels)} labels for {len(self.states)} states")
        if any(s.d != self.d for s in self.states):
            raise ShapeError(f"basis for d={self.d} contains a state of another dimension")

    def __len__(self):
        return len(self.states)

    def matrix(self) -> np.ndarray:
        """States as the columns of a 2d x n matrix."""
        return np.column_stack([s.amplitudes for s in self.states])

    def index_of(self, label) -> int:
        return self.labels.index(tuple(label))

    def state(self, n: int, m: int) -> BipartiteState:
        return self.states[self.index_of((n, m))]

    @property
    def is_full(self) -> bool:
        return len(self.states) == 2 * self.d


def _check_d(d) -> int:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise InvalidDimensionError(f"d must be an integer, got {d!r}")
    if d < MIN_D:
        raise InvalidDimensionError(f"the construction requires d >= {MIN_D} (d - 1 >= 2), got d = {d}")
    return int(d)


def shift(j: int, d: int) -> int:
    """Second-factor index paired with |1> in phi[., j]: j (+) 1 mod d-1, and d-1 fixed."""
    return j if j == d - 1 else (j + 1) % (d - 1)


def umeb_state(n: int, j: int, d: int) -> BipartiteState:
    v = np.zeros(2 * d, dtype=np.complex128)
    for a in (0, 1):
        v[a * d + (j + a) % (d - 1)] += (-1) ** (n * a)
    return BipartiteState(d, v / math.sqrt(2))


def product_state(n: int, d: int) -> BipartiteState:
    v = np.zeros(2 * d, dtype=np.complex128)
    v[d - 1] = 1.0
    v[2 * d - 1] = (-1) ** n
    return BipartiteState(d, v / math.sqrt(2))


def build_umeb(d: int) -> BasisSet:
    d = _check_d(d)
    labels = tuple((n, j) for j in range(d - 1) for n in (0, 1))
    return BasisSet(d, labels, tuple(umeb_state(n, j, d) for n, j in labels))


def complete_basis(d: int) -> BasisSet:
    d = _check_d(d)
    umeb = build_umeb(d)
    tail = ((0, d - 1), (1, d - 1))
    return BasisSet(
        d,
        umeb.labels + tail,
        umeb.states + tuple(product_state(n, d) for n, _ in tail),
    )


def build_F(d: int) -> np.ndarray:
    """2d x 2d unitary whose k-th column is the k-th state of ``complete_basis(d)``."""
    return complete_basis(d).matrix()
