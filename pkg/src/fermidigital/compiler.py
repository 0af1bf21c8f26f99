"""Lowering of Pauli exponentials onto the two native gate sets.

* ``pairwise``: CZ_phi plus pi pulses and single-qubit rotations.  Only 1- and
  2-local strings are supported.
* ``bus``: resonator-mediated collective ``USZ2`` gates.  A string
  exponential ``exp(i phi P)`` of weight ``k`` is built from two collective
  gates around one rotation on the first qubit of the support.

Every circuit carries the global phase that makes it equal to its target
exactly, so tests can compare unitaries with or without quotienting it.

Sandwich convention: the gates are emitted in the order ``USZ2``, rotation,
``USZ2^dag``, and the rotation is ``U_a(phi') = exp(+i phi' sigma_a)`` with
``a = y`` for odd ``k`` and ``a = x`` for even ``k``.  Under this convention
``phi' = +phi`` for ``k = 0, 1 (mod 4)`` and ``phi' = -phi`` for
``k = 2, 3 (mod 4)``.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

from .errors import CompilationError, ParameterError, SupportError
from .fermion import hopping_string
from .gates import QUARTER, Circuit, Gate
from .pauli import PauliString
from .trotter import TrotterPlan

__all__ = [
    "compile_zz",
    "compile_chain_step",
    "compile_multiqubit",
    "compile_hopping_bus",
    "compile_term",
    "compile_plan",
    "digital_circuit",
    "merge_rotations",
    "sandwich_sign",
    "frame_rotation",
    "BACKENDS",
]

BACKENDS = ("pairwise", "bus")
HALF_PI = math.pi / 2
_ROTATIONS = ("RX", "RY", "RZ")


def sandwich_sign(k: int) -> int:
    """Sign of ``phi'`` relative to ``phi`` for a weight-``k`` string."""
    if k < 1:
        raise ParameterError("string weight must be >= 1")
    return 1 if k % 4 in (0, 1) else -1


def _levi(a: str, b: str, c: str) -> int:
    return 1 if (a + b + c) in ("XYZ", "YZX", "ZXY") else -1


def frame_rotation(qubit: int, source: str, target: str) -> Gate | None:
    """Quarter-turn gate ``R`` with ``R source R^dag = target`` (``None`` if equal).

    Uses ``R_a(pi/2) s_b R_a(pi/2)^dag = eps_abc s_c``, so ``Z -> X`` is
    ``RY(pi/2)``, ``Z -> Y`` is ``RX(-pi/2)`` and ``Y -> X`` is ``RZ(-pi/2)``.
    """
    if source == target:
        return None
    axis = ({"X", "Y", "Z"} - {source, target}).pop()
    angle = HALF_PI * _levi(axis, source, target)
    return Gate("R" + axis, (qubit,), angle, role="basis")


def _framed(frames: Sequence[Gate], body: Circuit) -> Circuit:
    pre = [g.dagger() for g in frames]
    return Circuit(body.n_qubits, tuple(pre) + body.gates + tuple(frames), body.global_phase)


def compile_zz(phi: float, qubits: tuple[int, int], pulse_basis: str = "X",
               n_qubits: int | None = None) -> Circuit:
    """Two CZ_phi gates and pi pulses.

    ``pulse_basis="X"`` realizes ``exp(-i phi/2 ZZ)``; ``"Y"`` swaps the middle
    pulses for Y pulses and realizes ``exp(-i (pi + phi)/2 ZZ)``.
    """
    a, b = qubits
    if a == b:
        raise SupportError(f"compile_zz needs distinct qubits, got {qubits}")
    n = n_qubits or max(a, b)
    basis = pulse_basis.upper()
    if basis not in ("X", "Y"):
        raise ParameterError(f"pulse basis must be X or Y, got {pulse_basis!r}")
    mid = "XPI" if basis == "X" else "YPI"
    gates = (
        Gate("XPI", (a,), role="pulse"),
        Gate("CZ", (a, b), phi),
        Gate(mid, (a,), role="pulse"),
        Gate(mid, (b,), role="pulse"),
        Gate("CZ", (a, b), phi),
        Gate("XPI", (b,), role="pulse"),
    )
    # the sequence equals diag(1, e^{i phi}, e^{i phi}, 1) (X) or with -e^{i phi} (Y)
    realized = phi / 2 if basis == "X" else (math.pi + phi) / 2
    return Circuit(n, gates, cmath.exp(-1j * realized))


def _zz_frame(phi: float, qubits: tuple[int, int], letters: tuple[str, str], n: int,
              pulse_basis: str = "X") -> Circuit:
    """``exp(-i phi/2 L_a L_b)`` by conjugating :func:`compile_zz`."""
    frames = [g for g in (frame_rotation(q, "Z", c) for q, c in zip(qubits, letters)) if g]
    return _framed(frames, compile_zz(phi, qubits, pulse_basis, n))


def merge_rotations(circuit: Circuit, tol: float = 1e-14) -> Circuit:
    """Fuse consecutive same-axis rotations on a qubit, ``R(a) R(b) = R(a + b)``.

    Pi pulses and multi-qubit gates act as barriers.  Rotations whose merged
    angle vanishes are dropped.
    """
    out: list[Gate | None] = []
    last: dict[int, list[int]] = {}
    for g in circuit.gates:
        if g.kind in _ROTATIONS:
            q = g.qubits[0]
            stack = last.setdefault(q, [])
            if stack and out[stack[-1]] is not None and out[stack[-1]].kind == g.kind:
                prev = out[stack[-1]]
                angle = prev.angle + g.angle
                if abs(angle) < tol:
                    out[stack[-1]] = None
                    stack.pop()
                else:
                    out[stack[-1]] = Gate(g.kind, (q,), angle, prev.role)
                continue
        out.append(g)
        for q in g.qubits:
            last.setdefault(q, []).append(len(out) - 1)
    return Circuit(circuit.n_qubits, tuple(g for g in out if g is not None), circuit.global_phase)


def compile_chain_step(h: float, U: float, t: float, n: int, three_site: bool = True) -> Circuit:
    """One Trotter step of the small open chain on the pairwise backend.

    The three-site step realizes, with ``tau = t/n`` and the qubit-3-leftmost
    labels of :data:`fermidigital.trotter.CHAIN3_ORDER`, the product
    ``XX_12 XX_23 YY_12 YY_23 ZZ_12 Z_2 Z_1 ZZ_23 Z_3`` of exponentials
    (rightmost applied first), with the ``ZZ`` blocks as CZ_phi sandwiches and
    cancelling frame rotations merged away.  ``three_site=False`` gives the
    analogous two-site step.
    """
    if n < 1:
        raise ParameterError(f"Trotter steps must be >= 1, got {n}")
    tau = t / n
    hop = h * tau            # A = exp(-i h/2 ZZ tau) = compile_zz(h tau)
    inter = U * tau / 2      # B = exp(-i U/4 ZZ tau) = compile_zz(U tau / 2)
    if three_site:
        nq = 3
        diag = [
            Gate("RZ", (3,), U * tau / 2, role="phase"),
            *compile_zz(inter, (3, 2), n_qubits=nq).gates,
            Gate("RZ", (1,), U * tau / 2, role="phase"),
            Gate("RZ", (2,), U * tau, role="phase"),
            *compile_zz(inter, (2, 1), n_qubits=nq).gates,
        ]
        bonds = [(3, 2), (2, 1)]
    else:
        nq = 2
        diag = [
            Gate("RZ", (2,), U * tau / 2, role="phase"),
            Gate("RZ", (1,), U * tau / 2, role="phase"),
            *compile_zz(inter, (2, 1), n_qubits=nq).gates,
        ]
        bonds = [(2, 1)]
    circ = Circuit(nq, tuple(diag), compile_zz(inter, (1, 2)).global_phase ** len(bonds))
    for letter in ("Y", "X"):
        for bond in bonds:
            circ = circ + _zz_frame(hop, bond, (letter, letter), nq)
    return merge_rotations(circ)


def compile_multiqubit(P: PauliString, phi: float, n_qubits: int | None = None) -> Circuit:
    """Realize ``exp(i phi P)`` with collective gates.

    Frame rotations map ``P`` onto ``Y Z ... Z`` over its support (``Y`` on the
    lowest qubit); the core is ``USZ2, U_a(phi'), USZ2^dag`` on that support.
    A weight-1 string becomes one rotation; the identity is a global phase.
    """
    n = n_qubits or P.n_qubits
    if P.phase not in (1, -1):
        raise ParameterError("compile_multiqubit needs a Hermitian string (phase +-1)")
    phi = phi * P.phase.real
    support = P.support
    if not support:
        return Circuit(n, (), cmath.exp(1j * phi))
    if len(support) == 1:
        q = support[0]
        c = P.letter(q)
        if c == "Z":
            g = Gate("RZ", (q,), -2 * phi, role="phase")
        else:
            g = Gate("U" + c, (q,), phi, role="phase")
        return Circuit(n, (g,))
    k = len(support)
    first = support[0]
    frames = [
        g for g in (
            frame_rotation(q, "Y" if q == first else "Z", P.letter(q)) for q in support
        ) if g
    ]
    axis = "UY" if k % 2 else "UX"
    core = Circuit(n, (
        Gate("USZ2", support, QUARTER),
        Gate(axis, (first,), sandwich_sign(k) * phi, role="phase"),
        Gate("USZ2", support, -QUARTER),
    ))
    return _framed(frames, core)


def compile_hopping_bus(i: int, j: int, phi: float, n_qubits: int) -> Circuit:
    """Realize ``exp(-i phi (b_i^dag b_j + b_j^dag b_i))`` on the bus backend.

    The hopping string splits into commuting ``X Z..Z X`` and ``Y Z..Z Y``
    halves, each compiled with :func:`compile_multiqubit` (four collective
    gates in total).  Neighbouring labels ``j = i + 1`` use two CZ_phi
    sandwiches instead.
    """
    hop = hopping_string(i, j, n_qubits)  # validates i < j <= N
    circ = Circuit(n_qubits)
    for coef, s in hop:
        # exp(-i phi coef P) with coef = -1/2
        if j == i + 1:
            circ = circ + _zz_frame(2 * phi * coef.real, (i, j), (s.letter(i), s.letter(j)), n_qubits)
        else:
            circ = circ + compile_multiqubit(s, -phi * coef.real, n_qubits)
    return circ


def compile_term(P: PauliString, angle: float, backend: str, n_qubits: int | None = None) -> Circuit:
    """Realize ``exp(-i angle P)`` on ``backend``."""
    n = n_qubits or P.n_qubits
    if backend not in BACKENDS:
        raise ParameterError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if P.phase not in (1, -1):
        raise ParameterError("term strings must be Hermitian")
    support = P.support
    if len(support) <= 1:
        return compile_multiqubit(P, -angle, n)
    angle = angle * P.phase.real
    letters = tuple(P.letter(q) for q in support)
    if backend == "pairwise":
        if len(support) > 2:
            raise CompilationError(
                f"pairwise backend supports 1- and 2-local strings only, got {P.label()}"
            )
        return _zz_frame(2 * angle, support, letters, n)
    if len(support) == 2 and letters == ("Z", "Z"):
        return Circuit(n, (Gate("USZ2", support, angle, role="phase"),))
    if len(support) == 2 and support[1] == support[0] + 1:
        return _zz_frame(2 * angle, support, letters, n)
    return compile_multiqubit(PauliString(P.letters), -angle, n)


def compile_plan(plan: TrotterPlan, backend: str) -> Circuit:
    """One Trotter step of ``plan`` as a native circuit (identity phase included once per step)."""
    circ = Circuit(plan.n_qubits)
    for s, a in plan.terms:
        circ = circ + compile_term(s, a, backend, plan.n_qubits)
    return merge_rotations(Circuit(circ.n_qubits, circ.gates, circ.global_phase * plan.step_phase))


def digital_circuit(plan: TrotterPlan, backend: str) -> Circuit:
    """The full ``steps``-fold circuit of ``plan``."""
    return compile_plan(plan, backend).repeat(plan.steps)


def count_roles(circuit: Circuit, roles: Iterable[str]) -> int:
    roles = set(roles)
    return circuit.count_where(lambda g: g.role in roles)
