"""Linear maps on d x d matrices as transfer matrices.

We use the column-stacking convention throughout::

    vec([[a, b],
         [c, d]]) = (a, c, b, d)

so that ``vec(A X B) = (B.T kron A) vec(X)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch
from .linalg import as_square, default_psd_tol, eigvalsh, is_psd, _checked_hermitian


def vec(x) -> np.ndarray:
    return np.asarray(x, dtype=complex).reshape(-1, order="F")


def unvec(v, d: Optional[int] = None) -> np.ndarray:
    v = np.asarray(v)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    return v.reshape(d, d, order="F")


@dataclass(frozen=True, eq=False)
class SuperOp:
    """A linear map on M_d stored as a d^2 x d^2 transfer matrix."""

    dim: int
    transfer: np.ndarray

    def __post_init__(self):
        t = np.array(self.transfer, dtype=complex)
        if t.shape != (self.dim ** 2, self.dim ** 2):
            raise DimensionMismatch(
                f"transfer matrix of shape {t.shape} does not fit dimension {self.dim}")
        t.setflags(write=False)
        object.__setattr__(self, "transfer", t)

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def __add__(self, other: "SuperOp") -> "SuperOp":
        _same_dim(self, other)
        return SuperOp(self.dim, self.transfer + other.transfer)

    def __sub__(self, other: "SuperOp") -> "SuperOp":
        _same_dim(self, other)
        return SuperOp(self.dim, self.transfer - other.transfer)

    def __mul__(self, scalar) -> "SuperOp":
        return SuperOp(self.dim, scalar * self.transfer)

    __rmul__ = __mul__

    def compose(self, other: "SuperOp") -> "SuperOp":
        """``self after other``."""
        _same_dim(self, other)
        return SuperOp(self.dim, self.transfer @ other.transfer)

    def max_abs_diff(self, other: "SuperOp") -> float:
        _same_dim(self, other)
        return float(np.max(np.abs(self.transfer - other.transfer)))


def _same_dim(a: SuperOp, b: SuperOp):
    if a.dim != b.dim:
        raise DimensionMismatch(f"maps act on M_{a.dim} and M_{b.dim}")


@dataclass(frozen=True, eq=False)
class DissipatorTerm:
    """``gamma * (J X J^dag - 1/2 {J J^dag, X})``."""

    gamma: float
    jump: np.ndarray

    def __post_init__(self):
        j = as_square(self.jump).copy()
        j.setflags(write=False)
        object.__setattr__(self, "jump", j)

    @property
    def dim(self) -> int:
        return self.jump.shape[0]


def identity_map(d: int) -> SuperOp:
    return SuperOp(d, np.eye(d * d))


def transposition(d: int) -> SuperOp:
    return superop_from_action(lambda x: x.T, d)


def superop_from_action(action: Callable[[np.ndarray], np.ndarray], d: int) -> SuperOp:
    """Tabulate a linear ``action`` on the matrix units of M_d."""
    t = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            t[:, i + j * d] = vec(action(e))
    return SuperOp(d, t)


def dissipator(term: DissipatorTerm) -> SuperOp:
    """Transfer matrix of ``X -> gamma (J X J^dag - 1/2 {J J^dag, X})``."""
    j = term.jump
    d = term.dim
    eye = np.eye(d)
    jj = j @ j.conj().T
    t = np.kron(j.conj(), j) - 0.5 * np.kron(eye, jj) - 0.5 * np.kron(jj.T, eye)
    return SuperOp(d, term.gamma * t)


def compose_affine(identity_weight: float, terms: Iterable[DissipatorTerm],
                   dim: Optional[int] = None) -> SuperOp:
    """``identity_weight * id + sum_i dissipator(term_i)``.

    ``dim`` is needed only when ``terms`` is empty.
    """
    terms = list(terms)
    dims = {t.dim for t in terms}
    if dim is not None:
        dims.add(dim)
    if len(dims) != 1:
        raise DimensionMismatch(f"jump operators of mixed or unknown dimension: {sorted(dims)}")
    (d,) = dims
    total = identity_weight * np.eye(d * d, dtype=complex)
    for t in terms:
        total = total + dissipator(t).transfer
    return SuperOp(d, total)


def apply(s: SuperOp, x) -> np.ndarray:
    x = as_square(x)
    if x.shape[0] != s.dim:
        raise DimensionMismatch(f"map acts on M_{s.dim}, got a {x.shape[0]}x{x.shape[0]} matrix")
    return unvec(s.transfer @ vec(x), s.dim)


def apply_batch(s: SuperOp, xs: np.ndarray) -> np.ndarray:
    """Apply ``s`` to a stack of matrices of shape (n, d, d)."""
    d = s.dim
    flat = np.swapaxes(xs, 1, 2).reshape(len(xs), d * d)
    out = flat @ s.transfer.T
    return np.swapaxes(out.reshape(len(xs), d, d), 1, 2)


def apply_on_party(s: SuperOp, x, dims: Sequence[int], party: int) -> np.ndarray:
    """Apply ``s`` to the tensor factor ``party`` of an operator on ``prod(dims)``,
    leaving the other factors untouched."""
    x = as_square(x)
    dims = list(dims)
    if int(np.prod(dims)) != x.shape[0]:
        raise DimensionMismatch(f"dims {dims} do not multiply to {x.shape[0]}")
    if dims[party] != s.dim:
        raise DimensionMismatch(f"party {party} has dimension {dims[party]}, map acts on M_{s.dim}")
    n = len(dims)
    d = s.dim
    # transfer[(i + j d), (k + l d)] -> kernel[i, j, k, l]: out[i, j] = sum kernel[i, j, k, l] x[k, l]
    kernel = s.transfer.reshape(d, d, d, d, order="F")
    t = np.moveaxis(x.reshape(dims + dims), [party, n + party], [0, 1])
    out = np.tensordot(kernel, t, axes=([2, 3], [0, 1]))
    out = np.moveaxis(out, [0, 1], [party, n + party])
    return out.reshape(x.shape)


def choi(s: SuperOp) -> np.ndarray:
    """``(id kron S)`` applied to the normalized maximally entangled projector."""
    d = s.dim
    c = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            c += np.kron(e, apply(s, e))
    return c / d


def choi_spectrum(s: SuperOp) -> np.ndarray:
    return eigvalsh(choi(s))


def is_completely_positive(s: SuperOp, tol: Optional[float] = None) -> bool:
    return is_psd(choi(s), tol)


def is_hermiticity_preserving(s: SuperOp, tol: float = 1e-12, trials: int = 8, seed: int = 0) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.normal(size=(s.dim, s.dim)) + 1j * rng.normal(size=(s.dim, s.dim))
        if np.max(np.abs(apply(s, x.conj().T) - apply(s, x).conj().T)) > tol:
            return False
    return True


def _pure_projectors(psi: np.ndarray) -> np.ndarray:
    return psi[:, :, None] * psi[:, None, :].conj()


def _min_output(s: SuperOp, psi: np.ndarray) -> np.ndarray:
    out = apply_batch(s, _pure_projectors(psi))
    out = (out + np.conj(np.swapaxes(out, 1, 2))) / 2
    return np.linalg.eigvalsh(out)[:, 0]


def _coordinate_descent(f, x0: np.ndarray, step: float = 0.1, min_step: float = 1e-9,
                        max_iter: int = 2000):
    x = x0.copy()
    fx = f(x)
    it = 0
    while step > min_step and it < max_iter:
        improved = False
        for k in range(len(x)):
            for sign in (1.0, -1.0):
                y = x.copy()
                y[k] += sign * step
                fy = f(y)
                if fy < fx:
                    x, fx = y, fy
                    improved = True
                    break
            it += 1
        if not improved:
            step /= 2
    return x, fx


def min_output_eigenvalue_over_pure(s: SuperOp, samples: int = 20000, refine: bool = True,
                                    seed: int = 0) -> float:
    """Smallest eigenvalue of ``s(|psi><psi|)`` over Haar-sampled pure states.

    This is a falsifier: a negative result proves the map is not positive,
    a non-negative one is only numerical evidence of positivity.  With
    ``refine`` the best sample is polished by coordinate descent on the real
    and imaginary parts of the state vector.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    d = s.dim
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=(samples, d)) + 1j * rng.normal(size=(samples, d))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    mins = _min_output(s, psi)
    best = int(np.argmin(mins))
    value = float(mins[best])
    if not refine:
        return value

    def objective(x):
        v = x[:d] + 1j * x[d:]
        n = np.linalg.norm(v)
        if n < 1e-12:
            return np.inf
        return float(_min_output(s, (v / n)[None, :])[0])

    x0 = np.concatenate([psi[best].real, psi[best].imag])
    _, refined = _coordinate_descent(objective, x0)
    return min(value, refined)


def is_positive_scan(s: SuperOp, tol: Optional[float] = None, samples: int = 20000,
                     seed: int = 0) -> bool:
    tol = default_psd_tol() if tol is None else tol
    return min_output_eigenvalue_over_pure(s, samples=samples, seed=seed) >= -tol


def principal_minors(m) -> dict:
    """Determinants of all nonempty principal submatrices, keyed by index tuple."""
    h = _checked_hermitian(m)
    n = h.shape[0]
    out = {}
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            out[idx] = float(np.linalg.det(h[np.ix_(idx, idx)]).real)
    return out


def principal_minors_positive(m, tol: Optional[float] = None) -> bool:
    """Sylvester-type test: every principal minor is >= -tol."""
    tol = default_psd_tol() if tol is None else tol
    return min(principal_minors(m).values()) >= -tol
