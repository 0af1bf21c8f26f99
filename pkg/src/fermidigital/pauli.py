"""Pauli strings and weighted Pauli sums.

Letters are stored per qubit with ``letters[k - 1]`` acting on qubit ``k``.
The text form prints qubit ``N`` leftmost, so ``"XZI"`` parsed from text puts
``I`` on qubit 1 and ``X`` on qubit 3.

Dense and sparse realizations use the occupation basis of the statevector
engine: qubit ``k`` is bit ``k - 1`` of the amplitude index and bit value 1
is the eigenvalue ``+1`` of ``Z``.  In that basis

    X = [[0, 1], [1, 0]],   Y = [[0, i], [-i, 0]],   Z = diag(-1, +1)

which is the usual Pauli representation after relabelling ``|0> <-> |1>``,
so every algebraic identity (``XY = iZ`` etc.) is unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np
import scipy.sparse as sp

from .errors import CapacityError, DimensionError, ParameterError

__all__ = [
    "PauliString",
    "PauliSum",
    "multiply",
    "commutator",
    "one_norm",
    "to_matrix",
    "PRUNE_TOL",
    "MAX_DENSE_QUBITS",
]

PRUNE_TOL = 1e-12
MAX_DENSE_QUBITS = 12

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)
_PHASE_TEXT = {1 + 0j: "+1", -1 + 0j: "-1", 1j: "+i", -1j: "-i"}
_TEXT_PHASE = {"+1": 1 + 0j, "1": 1 + 0j, "+": 1 + 0j, "-1": -1 + 0j, "-": -1 + 0j,
               "+i": 1j, "i": 1j, "-i": -1j}

# (a, b) -> (phase, letter) with a * b = phase * letter
_PRODUCT = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, 1j], [-1j, 0]], dtype=complex),
    "Z": np.array([[-1, 0], [0, 1]], dtype=complex),
}


def _normalize_phase(phase: complex) -> complex:
    phase = complex(phase)
    for p in _PHASES:
        if abs(phase - p) < 1e-12:
            return p
    raise ParameterError(f"Pauli phase must be one of +1, -1, +i, -i, got {phase}")


@dataclass(frozen=True)
class PauliString:
    """A tensor product of Pauli letters with a phase in {+1, -1, +i, -i}.

    Attributes:
        letters: One letter from ``IXYZ`` per qubit, qubit 1 first.
        phase: Overall fourth root of unity.
    """

    letters: str
    phase: complex = 1 + 0j

    def __post_init__(self):
        if not self.letters or any(c not in "IXYZ" for c in self.letters):
            raise ParameterError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase", _normalize_phase(self.phase))

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls("I" * n_qubits)

    @classmethod
    def from_sites(cls, ops: Mapping[int, str], n_qubits: int, phase: complex = 1) -> PauliString:
        """Build a string from a ``{qubit: letter}`` map with 1-based qubits."""
        letters = ["I"] * n_qubits
        for q, c in ops.items():
            if not 1 <= q <= n_qubits:
                raise DimensionError(f"qubit {q} outside 1..{n_qubits}")
            letters[q - 1] = c
        return cls("".join(letters), phase)

    @classmethod
    def from_text(cls, text: str) -> PauliString:
        """Parse ``"-iXZZ"`` style text (qubit N leftmost)."""
        text = text.strip().replace(" ", "")
        body = text.lstrip("+-i1")
        prefix = text[: len(text) - len(body)]
        phase = _TEXT_PHASE.get(prefix, None) if prefix else 1 + 0j
        if phase is None:
            raise ParameterError(f"bad phase prefix {prefix!r} in {text!r}")
        return cls(body[::-1], phase)

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    def letter(self, qubit: int) -> str:
        return self.letters[qubit - 1]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k + 1 for k, c in enumerate(self.letters) if c != "I")

    @property
    def weight(self) -> int:
        return len(self.letters) - self.letters.count("I")

    def is_identity(self) -> bool:
        return self.weight == 0

    def with_phase(self, phase: complex) -> PauliString:
        return PauliString(self.letters, phase)

    def label(self) -> str:
        """Letters only, qubit N leftmost."""
        return self.letters[::-1]

    def to_text(self) -> str:
        prefix = "" if self.phase == 1 else _PHASE_TEXT[self.phase]
        return prefix + self.label()

    def __str__(self) -> str:
        return self.to_text()

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def commutes_with(self, other: PauliString) -> bool:
        _check_dims(self.n_qubits, other.n_qubits)
        clashes = sum(
            1 for a, b in zip(self.letters, other.letters) if a != "I" and b != "I" and a != b
        )
        return clashes % 2 == 0

    def masks(self) -> tuple[int, int, int]:
        """Return ``(x_mask, z_mask, n_y)`` for the bit-level action.

        The operator equals ``phase * i**n_y * X^x_mask Z^z_mask`` since
        ``Y = iXZ``.
        """
        x = z = ny = 0
        for k, c in enumerate(self.letters):
            bit = 1 << k
            if c == "X":
                x |= bit
            elif c == "Z":
                z |= bit
            elif c == "Y":
                x |= bit
                z |= bit
                ny += 1
        return x, z, ny

    def to_matrix(self) -> np.ndarray:
        return PauliSum.from_string(self).to_matrix()


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"qubit-count mismatch: {a} vs {b}")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product ``a * b`` with the accumulated phase."""
    _check_dims(a.n_qubits, b.n_qubits)
    phase = a.phase * b.phase
    out = []
    for x, y in zip(a.letters, b.letters):
        p, c = _PRODUCT[(x, y)]
        phase *= p
        out.append(c)
    return PauliString("".join(out), phase)


class PauliSum:
    """An immutable weighted sum of Pauli strings.

    Terms are keyed by their letter sequence; phases of input strings are
    absorbed into the coefficients. Iteration follows first-insertion order,
    which the Trotterizer uses as its default term order. Equality ignores
    that order.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, terms: Iterable[tuple[complex, PauliString]] = (), n_qubits: int | None = None,
                 tol: float = PRUNE_TOL):
        acc: dict[str, complex] = {}
        n = n_qubits
        for coef, s in terms:
            if n is None:
                n = s.n_qubits
            _check_dims(n, s.n_qubits)
            acc[s.letters] = acc.get(s.letters, 0j) + complex(coef) * s.phase
        if n is None:
            raise DimensionError("empty PauliSum needs an explicit n_qubits")
        self._n = n
        self._terms = {k: v for k, v in acc.items() if abs(v) >= tol}

    @classmethod
    def from_string(cls, s: PauliString, coef: complex = 1.0) -> PauliSum:
        return cls([(coef, s)])

    @classmethod
    def from_dict(cls, terms: Mapping[str, complex], n_qubits: int | None = None) -> PauliSum:
        """Build from ``{label: coef}`` with labels written qubit N leftmost."""
        return cls(((c, PauliString(label[::-1])) for label, c in terms.items()), n_qubits)

    @classmethod
    def zero(cls, n_qubits: int) -> PauliSum:
        return cls((), n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coef: complex = 1.0) -> PauliSum:
        return cls([(coef, PauliString.identity(n_qubits))])

    @property
    def n_qubits(self) -> int:
        return self._n

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        for k, v in self._terms.items():
            yield v, PauliString(k)

    def terms(self) -> list[tuple[complex, PauliString]]:
        return list(self)

    def coefficient(self, s: PauliString | str) -> complex:
        """Coefficient of a string (given as object or qubit-N-leftmost label)."""
        if isinstance(s, str):
            return self._terms.get(s[::-1], 0j)
        return self._terms.get(s.letters, 0j) / s.phase

    def as_dict(self) -> dict[str, complex]:
        """``{label: coef}`` with labels written qubit N leftmost."""
        return {k[::-1]: v for k, v in self._terms.items()}

    def is_empty(self) -> bool:
        return not self._terms

    @property
    def identity_coefficient(self) -> complex:
        return self._terms.get("I" * self._n, 0j)

    def without_identity(self) -> PauliSum:
        return PauliSum(((c, s) for c, s in self if not s.is_identity()), self._n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def isclose(self, other: PauliSum, atol: float = 1e-12) -> bool:
        _check_dims(self._n, other._n)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0) - other._terms.get(k, 0)) <= atol for k in keys)

    def __add__(self, other: PauliSum) -> PauliSum:
        if not isinstance(other, PauliSum):
            return NotImplemented
        _check_dims(self._n, other._n)
        return PauliSum([*self, *other], self._n)

    def __sub__(self, other: PauliSum) -> PauliSum:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self + (-1) * other

    def __neg__(self) -> PauliSum:
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            _check_dims(self._n, other._n)
            out = []
            for ca, sa in self:
                for cb, sb in other:
                    out.append((ca * cb, multiply(sa, sb)))
            return PauliSum(out, self._n)
        if isinstance(other, PauliString):
            return self * PauliSum.from_string(other)
        if isinstance(other, (int, float, complex, np.number)):
            return PauliSum(((other * c, s) for c, s in self), self._n)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self * other
        if isinstance(other, PauliString):
            return PauliSum.from_string(other) * self
        return NotImplemented

    def dagger(self) -> PauliSum:
        return PauliSum(((c.conjugate(), s) for c, s in self), self._n)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def real(self) -> PauliSum:
        """Drop imaginary parts of the coefficients."""
        return PauliSum(((c.real, s) for c, s in self), self._n)

    def to_matrix(self, n_qubits: int | None = None) -> np.ndarray:
        return to_matrix(self, self._n if n_qubits is None else n_qubits)

    def to_sparse(self) -> sp.csr_matrix:
        """Sparse CSR realization, usable beyond the dense size guard."""
        dim = 1 << self._n
        idx = np.arange(dim, dtype=np.int64)
        rows, cols, vals = [], [], []
        for coef, s in self:
            x, z, ny = s.masks()
            sign = 1 - 2 * (np.bitwise_count(z & ~idx).astype(np.int64) & 1)
            rows.append(idx ^ x)
            cols.append(idx)
            vals.append(coef * (1j ** ny) * sign)
        if not rows:
            return sp.csr_matrix((dim, dim), dtype=complex)
        m = sp.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim, dim),
        )
        return m.tocsr()

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-free action on amplitudes of shape ``(2**N,)`` or ``(2**N, batch)``."""
        vec = np.asarray(vec, dtype=complex)
        idx = np.arange(vec.shape[0], dtype=np.int64)
        out = np.zeros_like(vec)
        for coef, s in self:
            x, z, ny = s.masks()
            sign = 1 - 2 * (np.bitwise_count(z & ~idx).astype(np.int64) & 1)
            # out[b ^ x] += c * sign(b) * v[b]  <=>  out[b] += c * sign(b ^ x) * v[b ^ x]
            perm = idx ^ x
            factor = (coef * (1j ** ny)) * sign[perm]
            out += (factor if vec.ndim == 1 else factor[:, None]) * vec[perm]
        return out

    def to_text(self) -> str:
        """One ``"<coef> * <label>"`` line per term."""
        return "\n".join(f"{_fmt_coef(c)} * {s.label()}" for c, s in self)

    @classmethod
    def from_text(cls, text: str) -> PauliSum:
        terms = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            coef, _, label = line.partition("*")
            terms.append((complex(coef.strip().replace("i", "j")), PauliString.from_text(label)))
        return cls(terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({_fmt_coef(c)})*{s.label()}" for c, s in self) or "0"
        return f"PauliSum[{self._n}]({body})"


def _fmt_coef(c: complex) -> str:
    if abs(c.imag) < 1e-15:
        return f"{c.real:.12g}"
    if abs(c.real) < 1e-15:
        return f"{c.imag:.12g}i"
    return f"({c.real:.12g}{c.imag:+.12g}i)"


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """``ab - ba`` as a merged sum; only anticommuting string pairs contribute."""
    _check_dims(a.n_qubits, b.n_qubits)
    out = []
    for ca, sa in a:
        for cb, sb in b:
            if not sa.commutes_with(sb):
                out.append((2 * ca * cb, multiply(sa, sb)))
    return PauliSum(out, a.n_qubits)


def one_norm(a: PauliSum) -> float:
    return float(sum(abs(c) for c, _ in a))


def to_matrix(a: PauliSum | PauliString, n_qubits: int | None = None) -> np.ndarray:
    """Dense ``2**N x 2**N`` matrix; raises :class:`CapacityError` above 12 qubits."""
    if isinstance(a, PauliString):
        a = PauliSum.from_string(a)
    n = a.n_qubits if n_qubits is None else n_qubits
    _check_dims(n, a.n_qubits)
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense realization limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    return a.to_sparse().toarray()


def pauli_exp_matrix(s: PauliString, angle: float) -> np.ndarray:
    """Dense ``exp(-i * angle * s)`` using ``s**2 = phase**2 * I``."""
    m = s.to_matrix()
    if s.phase in (1, -1):
        return math.cos(angle) * np.eye(m.shape[0]) - 1j * math.sin(angle) * m
    raise ParameterError("exponential of an anti-Hermitian string is not unitary")
