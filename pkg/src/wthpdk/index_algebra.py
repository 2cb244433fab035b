"""The 10-component index space A = mu, [mu nu] and the matrix units on it.

Canonical order: vectors v1..v4 in slots 1..4, then bivectors
[12],[13],[14],[23],[24],[34] in slots 5..10.  A reversed bivector [nu mu]
refers to the canonical slot of [mu nu] with sign -1; a diagonal pair [mu mu]
is identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exact import ONE, Mat10

SPACETIME = (1, 2, 3, 4)
BIVECTOR_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class Vector:
    mu: int

    def __post_init__(self):
        if self.mu not in SPACETIME:
            raise ValueError(f"spacetime index must be in 1..4, got {self.mu}")


@dataclass(frozen=True)
class Bivector:
    mu: int
    nu: int

    def __post_init__(self):
        if self.mu not in SPACETIME or self.nu not in SPACETIME:
            raise ValueError(f"spacetime indices must be in 1..4, got {self.mu},{self.nu}")

    @property
    def degenerate(self) -> bool:
        return self.mu == self.nu


TensorIndex = Union[Vector, Bivector]

CANONICAL_INDICES: tuple[TensorIndex, ...] = (
    tuple(Vector(m) for m in SPACETIME) + tuple(Bivector(a, b) for a, b in BIVECTOR_PAIRS)
)

_BIVECTOR_SLOT = {pair: 5 + k for k, pair in enumerate(BIVECTOR_PAIRS)}


def pair_sign(mu: int, nu: int) -> int:
    """+1 for mu < nu, -1 for mu > nu, 0 (the zero flag) for mu == nu."""
    if mu < nu:
        return 1
    if mu > nu:
        return -1
    return 0


def canonical_position(idx: TensorIndex) -> tuple[int, int]:
    """1-based slot and antisymmetry sign of a tensor index."""
    if isinstance(idx, Vector):
        return idx.mu, 1
    if idx.degenerate:
        raise ValueError(f"[{idx.mu}{idx.nu}] is identically zero and has no slot")
    sign = pair_sign(idx.mu, idx.nu)
    pair = (min(idx.mu, idx.nu), max(idx.mu, idx.nu))
    return _BIVECTOR_SLOT[pair], sign


def epsilon_basis(row: TensorIndex, col: TensorIndex) -> Mat10:
    """Matrix unit eps^{row,col}, signed by the antisymmetry of each index."""
    i, si = canonical_position(row)
    j, sj = canonical_position(col)
    m = Mat10.zeros()
    m.a[i - 1, j - 1] = ONE * (si * sj)
    return m


def epsilon_term(row: TensorIndex, col: TensorIndex) -> Mat10:
    """Like epsilon_basis, but a degenerate bivector gives the zero matrix.

    Used inside index sums where the diagonal [mu mu] terms must drop out.
    """
    for idx in (row, col):
        if isinstance(idx, Bivector) and idx.degenerate:
            return Mat10.zeros()
    return epsilon_basis(row, col)


def vec(mu: int) -> Vector:
    return Vector(mu)


def biv(mu: int, nu: int) -> Bivector:
    return Bivector(mu, nu)


def index_label(idx: TensorIndex) -> str:
    if isinstance(idx, Vector):
        return f"v{idx.mu}"
    return f"[{idx.mu}{idx.nu}]"
