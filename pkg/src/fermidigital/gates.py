"""Native gates, circuits and the dense application kernels.

Gate kinds and their unitaries (``sigma`` in the occupation basis of
:mod:`fermidigital.pauli`):

=========  ======================================================
``RX``      ``exp(-i angle/2 X)`` (likewise ``RY``, ``RZ``)
``XPI``     ``RX(pi)``, an X pi pulse (``YPI`` likewise)
``CZ``      controlled phase, ``e^{i angle}`` on ``|11>`` of its pair
``USZ2``    ``exp(-i angle sum_{a<b in S} Z_a Z_b)``, default ``pi/4``
``UY``      ``exp(+i angle Y)`` on one qubit (``UX`` likewise)
=========  ======================================================

``CZ``, ``RZ`` and ``USZ2`` are diagonal; every other gate acts on a single
qubit, so the kernels only need a 2x2 contraction and a phase multiply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ParameterError, SupportError
from .pauli import MAX_DENSE_QUBITS, SINGLE_QUBIT

__all__ = ["Gate", "Circuit", "apply_gate_array", "gate_kinds"]

_SINGLE = {"RX", "RY", "RZ", "XPI", "YPI", "UX", "UY"}
_DIAGONAL = {"RZ", "CZ", "USZ2"}
_PARAMETRIC = {"RX", "RY", "RZ", "CZ", "USZ2", "UX", "UY"}
gate_kinds = tuple(sorted(_SINGLE | _DIAGONAL))

QUARTER = math.pi / 4


@dataclass(frozen=True)
class Gate:
    """A native gate on 1-based qubits.

    ``role`` is bookkeeping only: ``"basis"`` for frame changes,
    ``"phase"`` for rotations carrying the simulated angle, ``"pulse"`` for
    pi pulses inside CZ sandwiches.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    role: str = field(default="", compare=False)

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if kind not in _SINGLE | _DIAGONAL:
            raise ParameterError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits) or not self.qubits:
            raise SupportError(f"{kind} needs distinct qubits, got {self.qubits}")
        if kind in _SINGLE and len(self.qubits) != 1:
            raise SupportError(f"{kind} acts on one qubit, got {self.qubits}")
        if kind == "CZ" and len(self.qubits) != 2:
            raise SupportError(f"CZ acts on two qubits, got {self.qubits}")
        if kind == "USZ2" and self.angle is None:
            object.__setattr__(self, "angle", QUARTER)
        if kind in _PARAMETRIC and self.angle is None:
            raise ParameterError(f"{kind} needs an angle")
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))

    @property
    def is_single(self) -> bool:
        return self.kind in _SINGLE

    @property
    def is_diagonal(self) -> bool:
        return self.kind in _DIAGONAL

    @property
    def is_collective(self) -> bool:
        return self.kind == "USZ2"

    def matrix2(self) -> np.ndarray:
        """2x2 unitary of a single-qubit gate."""
        k = self.kind
        if k in ("XPI", "YPI"):
            return _rotation(k[0], math.pi)
        if k in ("RX", "RY", "RZ"):
            return _rotation(k[1], self.angle)
        if k in ("UX", "UY"):
            return _rotation(k[1], -2.0 * self.angle)
        raise ParameterError(f"{k} is not a single-qubit gate")

    def diagonal(self, bits: Sequence[np.ndarray]) -> np.ndarray:
        """Diagonal phases given the bit arrays of the gate's qubits."""
        k = self.kind
        if k == "RZ":
            z = 2 * bits[0] - 1
            return np.exp(-0.5j * self.angle * z)
        if k == "CZ":
            return np.where(bits[0] & bits[1], np.exp(1j * self.angle), 1.0 + 0j)
        if k == "USZ2":
            s = sum(2 * b - 1 for b in bits)
            pairs = (s * s - len(bits)) // 2
            return np.exp(-1j * self.angle * pairs)
        raise ParameterError(f"{k} is not diagonal")

    def dagger(self) -> Gate:
        if self.kind in ("XPI", "YPI"):
            return Gate("R" + self.kind[0], self.qubits, -math.pi, self.role)
        return Gate(self.kind, self.qubits, -self.angle, self.role)

    def to_text(self) -> str:
        qs = " ".join(f"q{q}" for q in self.qubits)
        if self.kind == "USZ2" and self.angle == QUARTER:
            return f"USZ2 {qs}"
        if self.angle is None:
            return f"{self.kind} {qs}"
        return f"{self.kind}({self.angle!r}) {qs}"

    @classmethod
    def from_text(cls, line: str) -> Gate:
        head, *qs = line.split()
        angle = None
        if "(" in head:
            head, _, rest = head.partition("(")
            angle = float(rest.rstrip(")"))
        return cls(head, tuple(int(q.lstrip("q")) for q in qs), angle)

    def __str__(self) -> str:
        return self.to_text()


def _rotation(axis: str, theta: float) -> np.ndarray:
    return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * SINGLE_QUBIT[axis]


@lru_cache(maxsize=64)
def _bit(n_qubits: int, qubit: int) -> np.ndarray:
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    out = (idx >> (qubit - 1)) & 1
    out.setflags(write=False)
    return out


def apply_gate_array(psi: np.ndarray, gate: Gate, n_qubits: int) -> np.ndarray:
    """Apply ``gate`` to amplitudes of shape ``(2**N,)`` or ``(2**N, batch)``.

    Returns a new array; the input is not modified.
    """
    if max(gate.qubits) > n_qubits or min(gate.qubits) < 1:
        raise SupportError(f"{gate} outside qubits 1..{n_qubits}")
    if gate.is_diagonal:
        phases = gate.diagonal([_bit(n_qubits, q) for q in gate.qubits])
        return psi * (phases if psi.ndim == 1 else phases[:, None])
    q = gate.qubits[0]
    m = gate.matrix2()
    batch = psi.shape[1:]
    view = psi.reshape((1 << (n_qubits - q), 2, 1 << (q - 1)) + batch)
    out = np.einsum("ab,xby...->xay...", m, view)
    return out.reshape(psi.shape)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence (first gate applied first) with a global phase.

    The realized operator is ``global_phase * G_last ... G_first``.
    """

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    global_phase: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) > self.n_qubits:
                raise SupportError(f"{g} outside qubits 1..{self.n_qubits}")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        n = max(self.n_qubits, other.n_qubits)
        return Circuit(n, self.gates + other.gates, self.global_phase * other.global_phase)

    def then(self, gates: Iterable[Gate], phase: complex = 1) -> Circuit:
        return Circuit(self.n_qubits, self.gates + tuple(gates), self.global_phase * phase)

    def with_qubits(self, n_qubits: int) -> Circuit:
        return Circuit(n_qubits, self.gates, self.global_phase)

    def repeat(self, times: int) -> Circuit:
        return Circuit(self.n_qubits, self.gates * times, self.global_phase**times)

    def dagger(self) -> Circuit:
        return Circuit(
            self.n_qubits,
            tuple(g.dagger() for g in reversed(self.gates)),
            self.global_phase.conjugate(),
        )

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.gates:
            out[g.kind] = out.get(g.kind, 0) + 1
        return out

    def count_where(self, pred) -> int:
        return sum(1 for g in self.gates if pred(g))

    def apply(self, psi: np.ndarray) -> np.ndarray:
        for g in self.gates:
            psi = apply_gate_array(psi, g, self.n_qubits)
        return self.global_phase * psi

    def unitary(self) -> np.ndarray:
        if self.n_qubits > MAX_DENSE_QUBITS:
            raise CapacityError(f"dense circuit unitary limited to {MAX_DENSE_QUBITS} qubits")
        return self.apply(np.eye(1 << self.n_qubits, dtype=complex))

    def to_text(self) -> str:
        return "\n".join(g.to_text() for g in self.gates)

    @classmethod
    def from_text(cls, text: str, n_qubits: int | None = None) -> Circuit:
        gates = [Gate.from_text(line) for line in text.splitlines() if line.strip()]
        n = n_qubits or max((max(g.qubits) for g in gates), default=1)
        return cls(n, tuple(gates))
