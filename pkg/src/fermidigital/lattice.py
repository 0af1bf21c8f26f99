"""Spinless Fermi-Hubbard models on open chains and square lattices.

Sites are labelled row-major, ``site(r, c) = (r - 1) * cols + c`` with 1-based
rows and columns.  With this labelling every nearest and next-nearest
neighbour pair lies within two adjacent rows, so its Jordan-Wigner string
spans at most ``cols + 2`` qubits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError
from .fermion import FermionOperator, annihilate, create, jordan_wigner, number
from .pauli import PauliSum

__all__ = [
    "Lattice",
    "HubbardParams",
    "HamiltonianTerm",
    "FermionHamiltonian",
    "GROUP_ORDER",
    "neighbor_lists",
    "build_chain",
    "build_square",
]

Pair = tuple[int, int]

# Default Trotter grouping: all NN hopping, NN interactions, NNN hopping, NNN interactions.
GROUP_ORDER = ("nn_hopping", "nn_interaction", "nnn_hopping", "nnn_interaction")


@dataclass(frozen=True)
class Lattice:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ParameterError(f"lattice shape must be positive, got {self.rows}x{self.cols}")

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    def site(self, r: int, c: int) -> int:
        return (r - 1) * self.cols + c

    def coords(self, label: int) -> tuple[int, int]:
        return (label - 1) // self.cols + 1, (label - 1) % self.cols + 1

    def row(self, label: int) -> int:
        return (label - 1) // self.cols + 1


def neighbor_lists(lat: Lattice) -> tuple[list[Pair], list[Pair]]:
    """Sorted nearest and next-nearest (diagonal) neighbour pairs with ``i < j``."""
    nn, nnn = set(), set()
    for r in range(1, lat.rows + 1):
        for c in range(1, lat.cols + 1):
            s = lat.site(r, c)
            if c < lat.cols:
                nn.add((s, lat.site(r, c + 1)))
            if r < lat.rows:
                nn.add((s, lat.site(r + 1, c)))
                if c < lat.cols:
                    nnn.add((s, lat.site(r + 1, c + 1)))
                if c > 1:
                    nnn.add((s, lat.site(r + 1, c - 1)))
    return sorted(nn), sorted(nnn)


@dataclass(frozen=True)
class HubbardParams:
    """Couplings of the square-lattice model.

    ``h``/``U`` act on nearest neighbours and ``h_nnn``/``U_nnn`` on the
    diagonal next-nearest neighbours.
    """

    h: float
    U: float
    h_nnn: float = 0.0
    U_nnn: float = 0.0

    def __post_init__(self):
        for name in ("h", "U", "h_nnn", "U_nnn"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")


@dataclass(frozen=True)
class HamiltonianTerm:
    """One bond contribution; ``group`` is one of :data:`GROUP_ORDER`."""

    group: str
    pair: Pair
    operator: FermionOperator = field(compare=False)


@dataclass(frozen=True)
class FermionHamiltonian:
    """Hopping and density-density bonds on ``n_sites`` fermionic modes."""

    n_sites: int
    terms: tuple[HamiltonianTerm, ...]
    lattice: Lattice | None = None

    def operator(self) -> FermionOperator:
        out = FermionOperator()
        for t in self.terms:
            out = out + t.operator
        return out

    def pairs(self, group: str) -> list[Pair]:
        return [t.pair for t in self.terms if t.group == group]

    def is_empty(self) -> bool:
        return not self.terms

    def to_pauli(self, group_order: tuple[str, ...] = GROUP_ORDER) -> PauliSum:
        """Jordan-Wigner image whose term order follows ``group_order``.

        Within a group bonds are visited in ascending ``(i, j)``.  The merged
        sum keeps first-insertion order, which becomes the default Trotter
        order.
        """
        out = PauliSum.zero(self.n_sites)
        for g in group_order:
            for t in sorted((t for t in self.terms if t.group == g), key=lambda t: t.pair):
                out = out + jordan_wigner(t.operator, self.n_sites)
        return out


def _hopping(i: int, j: int, amp: float) -> FermionOperator:
    return -amp * (create(i) * annihilate(j) + create(j) * annihilate(i))


def _centered(i: int) -> FermionOperator:
    return number(i) - 0.5


def build_chain(length: int, h: float, U: float) -> FermionHamiltonian:
    """Open chain ``-h sum (b_m^dag b_{m+1} + h.c.) + U sum n_m n_{m+1}``.

    The interaction is the plain density product (not shifted by 1/2).
    """
    if length < 1:
        raise ParameterError(f"chain length must be >= 1, got {length}")
    terms = []
    for m in range(1, length):
        terms.append(HamiltonianTerm("nn_hopping", (m, m + 1), _hopping(m, m + 1, h)))
    for m in range(1, length):
        terms.append(HamiltonianTerm("nn_interaction", (m, m + 1), U * (number(m) * number(m + 1))))
    return FermionHamiltonian(length, tuple(terms), Lattice(1, length))


def build_square(rows: int, cols: int, params: HubbardParams) -> FermionHamiltonian:
    """Open ``rows x cols`` lattice with NN and diagonal NNN bonds.

    Interactions take the particle-hole symmetric form
    ``U (n_i - 1/2)(n_j - 1/2)``.
    """
    if rows < 1 or cols < 1:
        raise ParameterError(f"lattice shape must be positive, got {rows}x{cols}")
    lat = Lattice(rows, cols)
    nn, nnn = neighbor_lists(lat)
    terms = []
    for i, j in nn:
        terms.append(HamiltonianTerm("nn_hopping", (i, j), _hopping(i, j, params.h)))
        terms.append(HamiltonianTerm("nn_interaction", (i, j), params.U * (_centered(i) * _centered(j))))
    for i, j in nnn:
        terms.append(HamiltonianTerm("nnn_hopping", (i, j), _hopping(i, j, params.h_nnn)))
        terms.append(
            HamiltonianTerm("nnn_interaction", (i, j), params.U_nnn * (_centered(i) * _centered(j)))
        )
    return FermionHamiltonian(lat.n_sites, tuple(terms), lat)
