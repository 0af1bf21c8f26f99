"""First-order Trotter plans and the commutator error bound.

A plan lists the per-step exponentials ``exp(-i angle_k P_k)`` in time order
(the first entry is applied first).  One step therefore realizes
``exp(-i a_M P_M) ... exp(-i a_1 P_1)``; repeating it ``steps`` times gives the
digital evolution.  Identity terms never become gates and are folded into
:attr:`TrotterPlan.global_phase`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import ParameterError, ValidationError
from .pauli import PauliString, PauliSum, commutator, one_norm

__all__ = [
    "TrotterPlan",
    "trotterize",
    "trotter_error_bound",
    "ordered_terms",
    "commutator_sum",
    "CHAIN3_ORDER",
]

# Time order of the 3-site chain step that reproduces the rearranged product
# used by the pairwise compiler (labels written qubit 3 leftmost).
CHAIN3_ORDER = ("ZII", "ZZI", "IIZ", "IZI", "IZZ", "YYI", "IYY", "XXI", "IXX")

Ordering = Union[None, str, Sequence[Union[str, PauliString]], Callable[[PauliString], object]]


@dataclass(frozen=True)
class TrotterPlan:
    """Per-step exponentials of a first-order product formula.

    Attributes:
        terms: ``(string, angle)`` pairs in time order; each stands for
            ``exp(-i angle string)`` with ``angle = coefficient * time / steps``.
        steps: Number of Trotter steps ``l``.
        time: Total simulated time ``t``.
        identity_coefficient: Coefficient ``c_I`` of the dropped identity term.
    """

    terms: tuple[tuple[PauliString, float], ...]
    steps: int
    time: float
    n_qubits: int
    identity_coefficient: float = 0.0

    @property
    def global_phase(self) -> complex:
        """``exp(-i c_I t)`` accumulated over the whole plan."""
        return complex(np.exp(-1j * self.identity_coefficient * self.time))

    @property
    def step_phase(self) -> complex:
        return complex(np.exp(-1j * self.identity_coefficient * self.time / self.steps))

    def full_sequence(self) -> list[tuple[PauliString, float]]:
        return list(self.terms) * self.steps

    def step_unitary(self) -> np.ndarray:
        """Dense product of one step (without the identity phase)."""
        dim = 1 << self.n_qubits
        u = np.eye(dim, dtype=complex)
        for s, a in self.terms:
            u = _pauli_exp_apply(s, a, u)
        return u

    def unitary(self) -> np.ndarray:
        return self.global_phase * np.linalg.matrix_power(self.step_unitary(), self.steps)

    def apply(self, psi: np.ndarray, include_phase: bool = True) -> np.ndarray:
        """Run the whole plan on an amplitude vector without building matrices."""
        psi = np.asarray(psi, dtype=complex)
        for _ in range(self.steps):
            for s, a in self.terms:
                psi = _pauli_exp_apply(s, a, psi)
        return self.global_phase * psi if include_phase else psi

    def to_text(self) -> str:
        """One ``exp(-i <angle> * <pauli-text>)`` line per exponential of one step."""
        return "\n".join(f"exp(-i {a:.12g} * {s.label()})" for s, a in self.terms)


def _pauli_exp_apply(s: PauliString, angle: float, psi: np.ndarray) -> np.ndarray:
    # exp(-i a P) = cos a - i sin a P for P^2 = I
    return math.cos(angle) * psi - 1j * math.sin(angle) * PauliSum.from_string(s).apply(psi)


def ordered_terms(H: PauliSum, ordering: Ordering = None) -> list[tuple[complex, PauliString]]:
    """Non-identity terms of ``H`` in the order selected by ``ordering``.

    ``None`` or ``"insertion"`` keeps the sum's insertion order,
    ``"lexicographic"`` sorts by label, ``"chain3"`` selects the fixed 3-qubit
    chain order, a sequence lists labels (qubit N leftmost) explicitly and a
    callable is used as a sort key on the strings.
    """
    terms = [(c, s) for c, s in H if not s.is_identity()]
    if ordering is None or ordering == "insertion":
        return terms
    if ordering == "lexicographic":
        return sorted(terms, key=lambda cs: cs[1].label())
    if ordering == "chain3":
        if H.n_qubits != 3:
            raise ParameterError("the chain3 ordering is defined for 3 qubits only")
        ordering = CHAIN3_ORDER
    if callable(ordering):
        return sorted(terms, key=lambda cs: ordering(cs[1]))
    by_label = {s.label(): (c, s) for c, s in terms}
    out = []
    for item in ordering:
        label = item.label() if isinstance(item, PauliString) else item
        if label in by_label:
            out.append(by_label.pop(label))
    if by_label:
        raise ParameterError(f"ordering misses terms {sorted(by_label)}")
    return out


def _validate(H: PauliSum, steps: int) -> None:
    if steps < 1:
        raise ParameterError(f"Trotter steps must be >= 1, got {steps}")
    if not H.is_hermitian():
        raise ValidationError("Trotterization needs a Hermitian PauliSum")


def trotterize(H: PauliSum, t: float, steps: int, ordering: Ordering = None) -> TrotterPlan:
    """First-order plan ``(e^{-iH_1 t/l} ... e^{-iH_M t/l})^l``."""
    _validate(H, steps)
    dt = t / steps
    terms = tuple((s, c.real * dt) for c, s in ordered_terms(H, ordering))
    return TrotterPlan(terms, steps, t, H.n_qubits, H.identity_coefficient.real)


def commutator_sum(H: PauliSum, ordering: Ordering = None) -> PauliSum:
    """``sum_{i<j} [H_i, H_j]`` over the ordered single-string terms."""
    terms = [PauliSum.from_string(s, c) for c, s in ordered_terms(H, ordering)]
    total = PauliSum.zero(H.n_qubits)
    for a in range(len(terms)):
        for b in range(a + 1, len(terms)):
            total = total + commutator(terms[a], terms[b])
    return total


def trotter_error_bound(H: PauliSum, t: float, steps: int, ordering: Ordering = None) -> float:
    """``||sum_{i<j} [H_i, H_j]||_1 * t**2 / (2 l)``; zero iff the commutator sum vanishes."""
    _validate(H, steps)
    return one_norm(commutator_sum(H, ordering)) * t * t / (2 * steps)
