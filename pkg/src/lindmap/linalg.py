"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Everything here
works on square matrices of modest size (the largest used by the package is
9x9), so clarity wins over performance.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonHermitianInput

HERM_TOL = 1e-9
EIG_TOL = 1e-10
PSD_TOL = 1e-9
MAX_DIM = 128

JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def default_psd_tol() -> float:
    """PSD tolerance, overridable through the ``LINDMAP_TOL`` environment variable."""
    value = os.environ.get("LINDMAP_TOL")
    return float(value) if value else PSD_TOL


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues with optional orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])


def as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"dimension {m.shape[0]} exceeds the cap of {MAX_DIM}")
    return m


def hermiticity_error(m) -> float:
    m = as_square(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    return hermiticity_error(m) <= tol


def _checked_hermitian(m) -> np.ndarray:
    m = as_square(m)
    err = hermiticity_error(m)
    if err > HERM_TOL:
        raise NonHermitianInput(f"matrix is not Hermitian (max deviation {err:.3e})")
    return (m + m.conj().T) / 2


def jacobi_eigh(m, off_tol: float = JACOBI_OFF_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each pivot (p, q) is handled by a diagonal phase that makes ``a[p, q]``
    real, followed by a real plane rotation that annihilates it.  Sweeps
    continue until the off-diagonal Frobenius mass drops below
    ``off_tol * max(1, ||A||_F)``.

    :return: (eigenvalues ascending, eigenvectors as columns)
    :raises NoConvergence: if ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = _checked_hermitian(m).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    for _ in range(max_sweeps):
        if off(a) < off_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U acts on columns p, q: U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u_pp, u_pq = c, s
                u_qp, u_qq = -s * np.conj(phase), c * np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u_pp + col_q * u_qp
                a[:, q] = col_p * u_pq + col_q * u_qq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
                a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * u_pp + vq * u_qp
                v[:, q] = vp * u_pq + vq * u_qq
    else:
        if off(a) >= off_tol * scale:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eig_hermitian(m, vectors: bool = True, method: str = "lapack") -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    :param method: ``"lapack"`` (numpy ``eigh``) or ``"jacobi"`` (the pure
        python cyclic Jacobi solver above).
    :raises NonHermitianInput: if ``m`` deviates from its adjoint by more than HERM_TOL.
    """
    if method == "jacobi":
        w, v = jacobi_eigh(m)
        return Spectrum(w, v if vectors else None)
    h = _checked_hermitian(m)
    if vectors:
        w, v = np.linalg.eigh(h)
        return Spectrum(w, v)
    return Spectrum(np.linalg.eigvalsh(h))


def eigvalsh(m) -> np.ndarray:
    return eig_hermitian(m, vectors=False).eigenvalues


def min_eigenvalue(m) -> float:
    return float(eigvalsh(m)[0])


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(m))))


def is_psd(m, tol: Optional[float] = None) -> bool:
    tol = default_psd_tol() if tol is None else tol
    return min_eigenvalue(m) >= -tol


def kron(*ops) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, as_square(op))
    return out


def partial_transpose(m, dims: Sequence[int], party: int) -> np.ndarray:
    """Transpose the tensor factor ``party`` of an operator on ``prod(dims)``."""
    m = as_square(m)
    dims = list(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionMismatch(f"dims {dims} do not multiply to {m.shape[0]}")
    if not 0 <= party < len(dims):
        raise DimensionMismatch(f"party {party} out of range for {len(dims)} subsystems")
    n = len(dims)
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, party, n + party)
    return t.reshape(m.shape)


def partial_trace(m, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``."""
    m = as_square(m)
    dims = list(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionMismatch(f"dims {dims} do not multiply to {m.shape[0]}")
    n = len(dims)
    keep = sorted(keep)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for k in range(n):
        if k not in keep:
            cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    t = np.einsum("".join(rows) + "".join(cols) + "->" + out, m.reshape(dims + dims))
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)
