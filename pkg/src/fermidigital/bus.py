"""Row-pair resonator architecture, resonator assignment and layer scheduling.

Qubits sit on a ``rows x cols`` grid with row-major labels.  Resonator ``r``
(``r = 1 .. rows-1``) couples every qubit of rows ``r`` and ``r + 1``, so any
nearest or next-nearest bond -- whose Jordan-Wigner string spans at most two
adjacent rows -- fits inside one resonator.

Scheduling is greedy list scheduling: each gate goes to the earliest layer
after the last layer touching any of its qubits, subject to one gate per
resonator per layer.  Layers are written one per line, gates separated by
``"; "`` and annotated ``@r<k>`` or ``@local``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .compiler import compile_hopping_bus, compile_term
from .errors import ParameterError, SupportError, UnschedulableError
from .gates import Circuit, Gate
from .lattice import Lattice, neighbor_lists
from .pauli import PauliString

__all__ = [
    "ArchitectureModel",
    "build_architecture",
    "assign_resonator",
    "Schedule",
    "ScheduledGate",
    "schedule",
    "GateCost",
    "ResourceCount",
    "count_resources",
]


@dataclass(frozen=True)
class ArchitectureModel:
    """Qubit grid with one resonator per adjacent row pair."""

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ParameterError(f"architecture shape must be positive, got {self.rows}x{self.cols}")

    @property
    def n_qubits(self) -> int:
        return self.rows * self.cols

    @property
    def n_resonators(self) -> int:
        return self.rows - 1

    def row(self, qubit: int) -> int:
        if not 1 <= qubit <= self.n_qubits:
            raise SupportError(f"qubit {qubit} outside 1..{self.n_qubits}")
        return (qubit - 1) // self.cols + 1

    def qubits(self, resonator: int) -> tuple[int, ...]:
        """Qubits coupled to ``resonator`` (rows ``r`` and ``r + 1``)."""
        if not 1 <= resonator <= self.n_resonators:
            raise ParameterError(f"resonator {resonator} outside 1..{self.n_resonators}")
        first = (resonator - 1) * self.cols + 1
        return tuple(range(first, first + 2 * self.cols))

    @property
    def resonators(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.qubits(r) for r in range(1, self.rows))

    def resonators_of(self, qubit: int) -> tuple[int, ...]:
        r = self.row(qubit)
        return tuple(k for k in (r - 1, r) if 1 <= k <= self.n_resonators)


def build_architecture(rows: int, cols: int) -> ArchitectureModel:
    """Architecture for a ``rows x cols`` lattice: ``rows - 1`` resonators of ``2 cols`` qubits."""
    return ArchitectureModel(int(rows), int(cols))


def assign_resonator(g: Gate, arch: ArchitectureModel) -> int | None:
    """Resonator executing ``g``, or ``None`` for gates that need no bus.

    Single-qubit gates never need one.  Multi-qubit gates go to the lowest
    resonator containing their whole support, so a support inside row
    ``r >= 2`` (covered by resonators ``r - 1`` and ``r``) goes to ``r - 1``.  Without resonators (one row)
    gates on at most two qubits run as local pairwise gates.

    Raises:
        UnschedulableError: The support spans rows no resonator couples.
    """
    for q in g.qubits:
        arch.row(q)  # range check
    if len(g.qubits) == 1:
        return None
    rows = sorted({arch.row(q) for q in g.qubits})
    if arch.n_resonators == 0:
        if len(g.qubits) <= 2:
            return None
        raise UnschedulableError(
            f"{g.kind} on qubits {g.qubits} needs a resonator but the architecture has none",
            g.qubits,
        )
    if rows[-1] - rows[0] > 1:
        raise UnschedulableError(
            f"{g.kind} on qubits {g.qubits} spans non-adjacent rows {rows[0]} and {rows[-1]}",
            g.qubits,
        )
    if len(rows) == 2:
        return rows[0]
    # one row is covered by resonators r-1 and r; ties go to the lower id
    return max(rows[0] - 1, 1)


@dataclass(frozen=True)
class ScheduledGate:
    gate: Gate
    resonator: int | None
    index: int  # position in the input circuit

    def to_text(self) -> str:
        tag = "local" if self.resonator is None else f"r{self.resonator}"
        return f"{self.gate.to_text()} @{tag}"


@dataclass(frozen=True)
class Schedule:
    """Layers of mutually parallel gates; ``depth`` is the layer count."""

    layers: tuple[tuple[ScheduledGate, ...], ...]
    n_qubits: int
    global_phase: complex = 1 + 0j
    gate_count: int = field(default=0)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def to_circuit(self) -> Circuit:
        """Replay the layers in order (within a layer, in input order)."""
        gates = tuple(sg.gate for layer in self.layers for sg in layer)
        return Circuit(self.n_qubits, gates, self.global_phase)

    def to_text(self) -> str:
        return "\n".join("; ".join(sg.to_text() for sg in layer) for layer in self.layers)


def schedule(c: Circuit, arch: ArchitectureModel, forbid_local_parallel: bool = False) -> Schedule:
    """Greedy earliest-layer schedule of ``c`` on ``arch``.

    Args:
        c: Circuit to schedule; its qubits must lie on the architecture.
        arch: Resonator layout.
        forbid_local_parallel: Treat single-qubit gates as occupying the
            (lowest) resonator of their qubit, so at most one of them per
            resonator runs in a layer.

    Raises:
        UnschedulableError: Some gate cannot be assigned to a resonator.
    """
    if c.n_qubits > arch.n_qubits:
        raise SupportError(f"circuit on {c.n_qubits} qubits exceeds the {arch.n_qubits}-qubit architecture")
    qubit_free: dict[int, int] = {}      # first layer a qubit is available in
    busy: list[set[int]] = []            # resonators used per layer
    layers: list[list[ScheduledGate]] = []
    for idx, g in enumerate(c.gates):
        res = assign_resonator(g, arch)
        slot = res
        if slot is None and forbid_local_parallel and len(g.qubits) == 1 and arch.n_resonators:
            slot = arch.resonators_of(g.qubits[0])[0]
        layer = max((qubit_free.get(q, 0) for q in g.qubits), default=0)
        while slot is not None and layer < len(busy) and slot in busy[layer]:
            layer += 1
        while layer >= len(layers):
            layers.append([])
            busy.append(set())
        layers[layer].append(ScheduledGate(g, res, idx))
        if slot is not None:
            busy[layer].add(slot)
        for q in g.qubits:
            qubit_free[q] = layer + 1
    return Schedule(tuple(tuple(layer) for layer in layers), c.n_qubits, c.global_phase, len(c))


@dataclass(frozen=True)
class GateCost:
    collective: int
    single: int
    two_qubit: int = 0

    @property
    def total(self) -> int:
        return self.collective + self.single + self.two_qubit


@dataclass(frozen=True)
class ResourceCount:
    """Term counts and per-term gate costs on the bus backend."""

    n_sites: int
    nn_terms: int
    nnn_terms: int
    hopping_cost: GateCost
    interaction_cost: GateCost

    def as_tuple(self) -> tuple[int, int, GateCost, GateCost]:
        return (self.nn_terms, self.nnn_terms, self.hopping_cost, self.interaction_cost)

    def to_text(self) -> str:
        return "\n".join([
            f"sites: {self.n_sites}",
            f"nn_terms: {self.nn_terms}",
            f"nnn_terms: {self.nnn_terms}",
            f"hopping_collective_gates: {self.hopping_cost.collective}",
            f"hopping_single_qubit_rotations: {self.hopping_cost.single}",
            f"interaction_gates: {self.interaction_cost.total}",
        ])


def _cost(c: Circuit) -> GateCost:
    return GateCost(
        collective=c.count_where(lambda g: g.is_collective),
        single=c.count_where(lambda g: g.is_single),
        two_qubit=c.count_where(lambda g: g.kind == "CZ"),
    )


def count_resources(rows: int, cols: int | None = None) -> ResourceCount:
    """Term counts of the nearest/next-nearest lattice and per-term bus costs.

    ``count_resources(4, 4)`` or ``count_resources(N)`` for a square lattice
    of ``N`` sites.  The per-term costs are measured by compiling a
    representative long-range hop and a density interaction, not assumed.
    """
    if cols is None:
        side = math.isqrt(int(rows))
        if side * side != rows:
            raise ParameterError(f"{rows} sites do not form a square lattice; pass rows and cols")
        rows = cols = side
    lat = Lattice(int(rows), int(cols))
    nn, nnn = neighbor_lists(lat)
    hop = compile_hopping_bus(1, 3, 0.1, 3)
    inter = compile_term(PauliString("ZZ"), 0.1, "bus", 2)
    return ResourceCount(lat.n_sites, len(nn), len(nnn), _cost(hop), _cost(inter))

