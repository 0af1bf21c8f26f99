"""Fermionic ladder operators and the Jordan-Wigner mapping.

Sites are labelled ``1..N`` and site ``k`` maps to qubit ``k``.  An occupied
site is the ``Z = +1`` eigenstate, so

    b_k^dag -> Z_1 ... Z_{k-1} sigma^+_k,   sigma^+ = (X + iY) / 2,
    n_k     -> (I + Z_k) / 2.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, SiteIndexError
from .pauli import PauliString, PauliSum

__all__ = [
    "FermionOperator",
    "create",
    "annihilate",
    "number",
    "jordan_wigner",
    "hopping_string",
    "number_operator",
    "ladder_image",
]

Ladder = tuple[int, bool]
Product = tuple[Ladder, ...]

_TOKEN = re.compile(r"^c(\d+)(\^?)$")


class FermionOperator:
    """Real-weighted sum of products of ladder operators.

    Each product is an ordered tuple of ``(site, dagger)`` pairs, read left to
    right as operator multiplication.  Identical products are merged; no
    normal ordering is attempted, so equal operators written in different
    orders stay distinct terms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[float, Sequence[Ladder]]] = ()):
        acc: dict[Product, float] = {}
        for coef, prod in terms:
            prod = tuple((int(s), bool(d)) for s, d in prod)
            for s, _ in prod:
                if s < 1:
                    raise SiteIndexError(f"site labels start at 1, got {s}")
            acc[prod] = acc.get(prod, 0.0) + float(coef)
        self._terms = {p: c for p, c in acc.items() if c != 0.0}

    @classmethod
    def identity(cls, coef: float = 1.0) -> FermionOperator:
        return cls([(coef, ())])

    def __iter__(self) -> Iterator[tuple[float, Product]]:
        for p, c in self._terms.items():
            yield c, p

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> list[tuple[float, Product]]:
        return list(self)

    @property
    def max_site(self) -> int:
        return max((s for _, p in self for s, _ in p), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FermionOperator):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: FermionOperator) -> FermionOperator:
        if isinstance(other, (int, float)):
            other = FermionOperator.identity(other)
        if not isinstance(other, FermionOperator):
            return NotImplemented
        return FermionOperator([*self, *other])

    __radd__ = __add__

    def __sub__(self, other: FermionOperator) -> FermionOperator:
        return self + (-1.0) * other

    def __neg__(self) -> FermionOperator:
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, FermionOperator):
            return FermionOperator(
                (ca * cb, pa + pb) for ca, pa in self for cb, pb in other
            )
        if isinstance(other, (int, float)):
            return FermionOperator((other * c, p) for c, p in self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def dagger(self) -> FermionOperator:
        return FermionOperator(
            (c, tuple((s, not d) for s, d in reversed(p))) for c, p in self
        )

    def to_text(self) -> str:
        """One ``"-1.0 * c3^ c2"`` line per term (``^`` marks a creator)."""
        lines = []
        for c, p in self:
            toks = " ".join(f"c{s}{'^' if d else ''}" for s, d in p)
            lines.append(f"{c!r} * {toks}" if toks else f"{c!r}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str | Sequence[str]) -> FermionOperator:
        """Parse terms such as ``"-1.0 * c3^ c2"``; one term per line or list item.

        A term without ``*`` is either a bare coefficient (``"0.5"``) or a bare
        product with coefficient 1 (``"c2^"``).
        """
        lines = text.splitlines() if isinstance(text, str) else list(text)
        terms = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            coef_txt, star, ops_txt = line.partition("*")
            if not star:
                coef_txt, ops_txt = ("1", line) if line.startswith("c") else (line, "")
            try:
                coef = float(coef_txt)
            except ValueError:
                raise ParameterError(f"bad coefficient in fermion term {line!r}") from None
            prod = []
            for tok in ops_txt.split():
                m = _TOKEN.match(tok)
                if m is None:
                    raise ParameterError(f"bad ladder token {tok!r} in {line!r}")
                prod.append((int(m.group(1)), m.group(2) == "^"))
            terms.append((coef, prod))
        return cls(terms)

    def __repr__(self) -> str:
        return "FermionOperator(" + "; ".join(self.to_text().splitlines()) + ")"


def create(site: int) -> FermionOperator:
    return FermionOperator([(1.0, [(site, True)])])


def annihilate(site: int) -> FermionOperator:
    return FermionOperator([(1.0, [(site, False)])])


def number(site: int) -> FermionOperator:
    return FermionOperator([(1.0, [(site, True), (site, False)])])


def _check_site(site: int, n_qubits: int) -> None:
    if not 1 <= site <= n_qubits:
        raise SiteIndexError(f"site {site} outside 1..{n_qubits}")


@lru_cache(maxsize=None)
def ladder_image(site: int, dagger: bool, n_qubits: int) -> PauliSum:
    """Jordan-Wigner image of ``b_site^dag`` (``dagger=True``) or ``b_site``."""
    _check_site(site, n_qubits)
    string = {q: "Z" for q in range(1, site)}
    x = PauliString.from_sites({**string, site: "X"}, n_qubits)
    y = PauliString.from_sites({**string, site: "Y"}, n_qubits)
    sign = 1j if dagger else -1j
    return PauliSum([(0.5, x), (0.5 * sign, y)], n_qubits)


def jordan_wigner(f: FermionOperator, n_qubits: int) -> PauliSum:
    """Map a fermionic operator to a merged Pauli sum on ``n_qubits`` qubits."""
    out = PauliSum.zero(n_qubits)
    for coef, prod in f:
        term = PauliSum.identity(n_qubits, coef)
        for site, dag in prod:
            term = term * ladder_image(site, dag, n_qubits)
        out = out + term
    return out


def hopping_string(i: int, j: int, n_qubits: int) -> PauliSum:
    """Spin form of ``b_i^dag b_j + b_j^dag b_i`` for ``i < j``.

    Equals ``-(X_i Z...Z X_j + Y_i Z...Z Y_j) / 2`` with ``Z`` on every qubit
    strictly between ``i`` and ``j``.
    """
    if i >= j:
        raise SiteIndexError(f"hopping_string needs i < j, got ({i}, {j})")
    _check_site(i, n_qubits)
    _check_site(j, n_qubits)
    inner = {q: "Z" for q in range(i + 1, j)}
    xx = PauliString.from_sites({i: "X", **inner, j: "X"}, n_qubits)
    yy = PauliString.from_sites({i: "Y", **inner, j: "Y"}, n_qubits)
    return PauliSum([(-0.5, xx), (-0.5, yy)], n_qubits)


def number_operator(i: int, n_qubits: int) -> PauliSum:
    """``n_i = (I + Z_i) / 2``."""
    _check_site(i, n_qubits)
    return PauliSum(
        [(0.5, PauliString.identity(n_qubits)), (0.5, PauliString.from_sites({i: "Z"}, n_qubits))],
        n_qubits,
    )
