"""Dense statevector simulation, exact propagation and observables.

Amplitude index ``b`` stores the occupation pattern with qubit ``k`` in bit
``k - 1`` (1 = occupied).  Kets in text are written site 1 leftmost by
default; ``ket_order="site1-right"`` mirrors them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, ParameterError, SupportError, ValidationError
from .fermion import FermionOperator, jordan_wigner
from .gates import Circuit, Gate, apply_gate_array
from .krylov import krylov_expm_multiply
from .pauli import MAX_DENSE_QUBITS, PauliSum

__all__ = [
    "StateVector",
    "apply_gate",
    "run_circuit",
    "evolve_exact",
    "ExactPropagator",
    "fidelity",
    "observables",
    "ket_to_index",
    "index_to_ket",
    "KET_ORDERS",
    "populations",
]

KET_ORDERS = ("site1-left", "site1-right")
NORM_TOL = 1e-12


def _check_order(order: str) -> None:
    if order not in KET_ORDERS:
        raise ParameterError(f"ket order must be one of {KET_ORDERS}, got {order!r}")


def ket_to_index(ket: str, order: str = "site1-left") -> int:
    """Amplitude index of an occupation ket such as ``"011"``."""
    _check_order(order)
    ket = ket.strip().strip("|>⟩")
    if not ket or set(ket) - {"0", "1"}:
        raise ParameterError(f"ket must be a string of 0/1, got {ket!r}")
    bits = ket if order == "site1-left" else ket[::-1]
    return sum(1 << k for k, c in enumerate(bits) if c == "1")


def index_to_ket(index: int, n_qubits: int, order: str = "site1-left") -> str:
    _check_order(order)
    bits = "".join("1" if index >> k & 1 else "0" for k in range(n_qubits))
    return bits if order == "site1-left" else bits[::-1]


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitudes over ``2**n_qubits`` occupation states."""

    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n_qubits,):
            raise DimensionError(f"expected {1 << self.n_qubits} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-9:
            raise ValidationError(f"state is not normalized (norm {norm})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def vacuum(cls, n_qubits: int) -> StateVector:
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[0] = 1
        return cls(amps, n_qubits)

    @classmethod
    def from_kets(cls, kets: Mapping[str, complex] | Sequence[str], order: str = "site1-left",
                  normalize: bool = True) -> StateVector:
        """Superposition of occupation kets, e.g. ``["011", "101"]`` for equal weights."""
        if not isinstance(kets, Mapping):
            kets = {k: 1.0 for k in kets}
        lengths = {len(k.strip("|>⟩")) for k in kets}
        if len(lengths) != 1:
            raise ParameterError("all kets must have the same length")
        n = lengths.pop()
        amps = np.zeros(1 << n, dtype=complex)
        for k, a in kets.items():
            amps[ket_to_index(k, order)] += a
        if normalize:
            amps /= np.linalg.norm(amps)
        return cls(amps, n)

    @classmethod
    def from_fermion(cls, op: FermionOperator, n_qubits: int) -> StateVector:
        """``op |0>`` normalized, e.g. ``create(2)`` for ``b_2^dag |0>``."""
        amps = jordan_wigner(op, n_qubits).apply(StateVector.vacuum(n_qubits).amplitudes)
        norm = np.linalg.norm(amps)
        if norm < 1e-14:
            raise ValidationError("operator annihilates the vacuum")
        return cls(amps / norm, n_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_csv(self, order: str = "site1-left", amplitudes: bool = False) -> str:
        """``ket,probability`` lines sorted by ket (or ``ket,re,im`` with ``amplitudes``)."""
        rows = []
        for idx, a in enumerate(self.amplitudes):
            ket = index_to_ket(idx, self.n_qubits, order)
            if amplitudes:
                rows.append(f"{ket},{a.real:.15g},{a.imag:.15g}")
            else:
                rows.append(f"{ket},{abs(a) ** 2:.15g}")
        return "\n".join(sorted(rows)) + "\n"


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    if max(g.qubits) > s.n_qubits:
        raise SupportError(f"{g} outside qubits 1..{s.n_qubits}")
    return StateVector(apply_gate_array(s.amplitudes, g, s.n_qubits), s.n_qubits)


def run_circuit(circuit: Circuit, s: StateVector, repeats: int = 1) -> StateVector:
    """Apply ``circuit`` ``repeats`` times, picking dense powering when cheaper."""
    if circuit.n_qubits != s.n_qubits:
        raise DimensionError(f"circuit on {circuit.n_qubits} qubits, state on {s.n_qubits}")
    psi = s.amplitudes
    if repeats > 1 and s.n_qubits <= 6:
        u = circuit.unitary()
        psi = np.linalg.matrix_power(u, repeats) @ psi
    else:
        for _ in range(repeats):
            psi = circuit.apply(psi)
    return StateVector(psi, s.n_qubits)


class ExactPropagator:
    """Reusable ``exp(-i H t)`` for one Hamiltonian.

    ``method="auto"`` diagonalizes densely up to 12 qubits and switches to the
    Lanczos propagator above.
    """

    def __init__(self, H: PauliSum, method: str = "auto", tol: float = 1e-10):
        if not H.is_hermitian():
            raise ValidationError("exact evolution needs a Hermitian PauliSum")
        if method == "auto":
            method = "dense" if H.n_qubits <= MAX_DENSE_QUBITS else "krylov"
        if method not in ("dense", "krylov"):
            raise ParameterError(f"unknown method {method!r}")
        self.H = H
        self.method = method
        self.tol = tol
        self.n_qubits = H.n_qubits
        if method == "dense":
            self._evals, self._evecs = np.linalg.eigh(H.real().to_matrix())
        else:
            self._sparse = H.real().to_sparse()

    def evolve(self, s: StateVector, t: float) -> StateVector:
        if s.n_qubits != self.n_qubits:
            raise DimensionError(f"H on {self.n_qubits} qubits, state on {s.n_qubits}")
        if self.method == "dense":
            c = self._evecs.conj().T @ s.amplitudes
            psi = self._evecs @ (np.exp(-1j * self._evals * t) * c)
        else:
            psi = krylov_expm_multiply(self._sparse.dot, s.amplitudes, t, tol=self.tol)
        return StateVector(psi, s.n_qubits)

    def unitary(self, t: float) -> np.ndarray:
        if self.method != "dense":
            raise ParameterError("dense unitary requires method='dense'")
        return (self._evecs * np.exp(-1j * self._evals * t)) @ self._evecs.conj().T


def evolve_exact(H: PauliSum, s: StateVector, t: float, method: str = "auto") -> StateVector:
    """``exp(-i H t)|s>`` (dense eigendecomposition up to 12 qubits, Krylov above)."""
    return ExactPropagator(H, method).evolve(s, t)


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|**2``, clipped into ``[0, 1]``."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"states on {a.n_qubits} and {b.n_qubits} qubits")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def observables(s: StateVector, order: str = "site1-left") -> tuple[dict[str, float], np.ndarray]:
    """Basis probabilities keyed by ket, and per-site populations ``<n_i>``.

    ``populations[i - 1]`` is the occupation of site ``i``.
    """
    probs = s.probabilities()
    kets = {index_to_ket(i, s.n_qubits, order): float(p) for i, p in enumerate(probs)}
    idx = np.arange(probs.shape[0])
    pops = np.array([probs[(idx >> k) & 1 == 1].sum() for k in range(s.n_qubits)])
    return dict(sorted(kets.items())), pops


def populations(s: StateVector, sites: Iterable[int] | None = None) -> np.ndarray:
    pops = observables(s)[1]
    if sites is None:
        return pops
    return np.array([pops[i - 1] for i in sites])
