"""Lanczos propagation of ``exp(-i H t) psi`` for Hermitian ``H``.

Used for registers too large for dense diagonalization.  Time is advanced in
substeps; each substep builds an ``m``-dimensional Krylov basis, propagates in
the tridiagonal projection and accepts the step when the standard a-posteriori
estimate ``beta_m |e_m^T exp(-i T tau) e_1|`` stays below the local tolerance.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.linalg as sla

__all__ = ["krylov_expm_multiply"]


def _lanczos(matvec: Callable[[np.ndarray], np.ndarray], v: np.ndarray, m: int):
    n = v.shape[0]
    V = np.zeros((m + 1, n), dtype=complex)
    alpha = np.zeros(m)
    beta = np.zeros(m)
    V[0] = v
    k = m
    for j in range(m):
        w = matvec(V[j])
        alpha[j] = np.vdot(V[j], w).real
        w = w - alpha[j] * V[j] - (beta[j - 1] * V[j - 1] if j else 0)
        # full reorthogonalization keeps the small basis numerically orthonormal
        w -= V[: j + 1].T @ (V[: j + 1].conj() @ w)
        beta[j] = np.linalg.norm(w)
        if beta[j] < 1e-13:
            k = j + 1
            break
        V[j + 1] = w / beta[j]
    return V[:k], alpha[:k], beta[:k], k < m or beta[k - 1] < 1e-13


def krylov_expm_multiply(
    matvec: Callable[[np.ndarray], np.ndarray],
    psi: np.ndarray,
    t: float,
    tol: float = 1e-10,
    m: int = 30,
    max_substeps: int = 100000,
) -> np.ndarray:
    """Return ``exp(-i H t) psi`` given ``matvec(x) = H x``.

    Args:
        matvec: Action of a Hermitian operator.
        psi: Initial amplitudes.
        t: Propagation time (any sign).
        tol: Target local error per unit time.
        m: Krylov dimension per substep.
        max_substeps: Safety cap on the number of substeps.
    """
    psi = np.asarray(psi, dtype=complex)
    if t == 0:
        return psi.copy()
    sign = 1.0 if t > 0 else -1.0
    remaining = abs(t)
    norm = np.linalg.norm(psi)
    if norm == 0:
        return psi.copy()
    out = psi / norm
    tau = remaining
    for _ in range(max_substeps):
        if remaining <= 0:
            break
        V, a, b, invariant = _lanczos(matvec, out, m)
        k = len(a)
        evals, evecs = sla.eigh_tridiagonal(a, b[: k - 1])
        tau = min(tau, remaining)
        while True:
            coeffs = evecs @ (np.exp(-1j * sign * evals * tau) * evecs[0].conj())
            err = 0.0 if invariant else b[k - 1] * abs(coeffs[-1])
            if err <= tol * tau / abs(t) or tau < 1e-12 * abs(t):
                break
            tau *= 0.5
        out = V.T @ coeffs
        out /= np.linalg.norm(out)
        remaining -= tau
        if err < 0.1 * tol * tau / abs(t):
            tau *= 2.0
    else:
        raise RuntimeError("Krylov propagation did not finish within max_substeps")
    return norm * out
