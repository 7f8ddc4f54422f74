"""Reference states and seeded random state samplers.

All randomness goes through ``numpy.random.Generator(PCG64(seed))``
(:data:`PRNG_ALGORITHM`), so a seed pins every sample bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidPartition, NotNormalized, ParameterOutOfRange
from .linalg import HERM_TOL, as_square, hermiticity_error, min_eigenvalue, partial_trace

PRNG_ALGORITHM = "PCG64"
TRACE_TOL = 1e-12
STATE_PSD_TOL = 1e-9

QUBITS3 = (2, 2, 2)
PARTITIONS = ("A|BC", "B|AC", "C|AB")


class InvalidState(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix together with its subsystem dimensions.

    ``biseparable`` is a provenance flag set by the biseparable sampler
    (and preserved by :func:`mix`); it is never inferred from the matrix.
    """

    matrix: np.ndarray
    dims: Tuple[int, ...]
    biseparable: bool = False

    def __post_init__(self):
        m = as_square(self.matrix).copy()
        dims = tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != m.shape[0]:
            raise InvalidState(f"dims {dims} do not match dimension {m.shape[0]}")
        err = hermiticity_error(m)
        if err > HERM_TOL:
            raise InvalidState(f"not Hermitian (deviation {err:.3e})")
        if abs(np.trace(m) - 1) > TRACE_TOL:
            raise InvalidState(f"trace is {np.trace(m).real:.15g}, expected 1")
        if min_eigenvalue(m) < -STATE_PSD_TOL:
            raise InvalidState("not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def as_matrix(state) -> np.ndarray:
    """Underlying array of a :class:`DensityMatrix`, or the argument itself."""
    if isinstance(state, DensityMatrix):
        return state.matrix
    return as_square(state)


def pure(psi, dims: Optional[Sequence[int]] = None) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > 1e-10:
        raise NotNormalized(f"state vector has norm {norm:.15g}")
    if dims is None:
        dims = (psi.size,)
    return DensityMatrix(np.outer(psi, psi.conj()), tuple(dims))


def basis_state(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


def w_vector() -> np.ndarray:
    return (basis_state("001") + basis_state("010") + basis_state("100")) / np.sqrt(3)


def ghz_vector() -> np.ndarray:
    return (basis_state("000") + basis_state("111")) / np.sqrt(2)


def w_state() -> DensityMatrix:
    return pure(w_vector(), QUBITS3)


def ghz_state() -> DensityMatrix:
    return pure(ghz_vector(), QUBITS3)


def maximally_mixed(dims: Sequence[int] = QUBITS3) -> DensityMatrix:
    d = int(np.prod(dims))
    return DensityMatrix(np.eye(d) / d, tuple(dims), biseparable=len(dims) == 3)


def noisy_mix(rho: DensityMatrix, p: float) -> DensityMatrix:
    """``p rho + (1 - p) I/d``."""
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"mixing weight p={p} outside [0, 1]")
    return DensityMatrix(p * rho.matrix + (1 - p) * np.eye(rho.dim) / rho.dim, rho.dims)


def noisy_w(p: float) -> DensityMatrix:
    return noisy_mix(w_state(), p)


def schmidt_state(c1: float, c2: float) -> DensityMatrix:
    """Two-qubit ``c1 |00> + c2 |11>``."""
    if abs(c1 * c1 + c2 * c2 - 1) > 1e-10:
        raise NotNormalized(f"c1^2 + c2^2 = {c1 * c1 + c2 * c2:.15g}")
    return pure(c1 * basis_state("00") + c2 * basis_state("11"), (2, 2))


def mix(states: Sequence[DensityMatrix], weights: Sequence[float]) -> DensityMatrix:
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ParameterOutOfRange("mixture weights must be a probability vector")
    dims = states[0].dims
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(m, dims, biseparable=all(s.biseparable for s in states))


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def rng_from_seed(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _gaussian_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_pure(d: int, seed=None, dims: Optional[Sequence[int]] = None) -> DensityMatrix:
    """Haar-random pure state on C^d."""
    rng = rng_from_seed(seed)
    return pure(_gaussian_vector(rng, d), dims or (d,))


def random_mixed_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Induced (Hilbert-Schmidt) measure: trace out a d-dim ancilla of a random pure state."""
    psi = _gaussian_vector(rng, d * d)
    return partial_trace(np.outer(psi, psi.conj()), [d, d], keep=[0])


def _embed_bipartition(single: np.ndarray, pair: np.ndarray, partition: str) -> np.ndarray:
    """Place ``single (x) pair`` into A, B, C order for the given bipartition."""
    m = np.kron(single, pair).reshape([2] * 6)
    # axis order of m is (X, Y, Z, X', Y', Z') with X the single party
    order = {"A|BC": (0, 1, 2), "B|AC": (1, 0, 2), "C|AB": (1, 2, 0)}[partition]
    # order[k] = position of party k (A, B, C) in the (X, Y, Z) product
    perm = list(order) + [3 + o for o in order]
    return np.transpose(m, perm).reshape(8, 8)


def random_biseparable(partition: str = "mixture", seed=None, pure_factors: bool = False,
                       components: int = 3) -> DensityMatrix:
    """Random three-qubit state that is biseparable by construction.

    :param partition: one of ``"A|BC"``, ``"B|AC"``, ``"C|AB"`` for a product
        ``rho_X (x) rho_YZ`` across that cut, or ``"mixture"`` for a
        Dirichlet-weighted mixture of ``components`` such products with
        uniformly chosen cuts.
    :param pure_factors: draw both factors as pure states, which are the
        extreme points and therefore the hardest cases for a witness.
    """
    rng = rng_from_seed(seed)
    if partition == "mixture":
        weights = rng.dirichlet(np.ones(components))
        parts = [PARTITIONS[k] for k in rng.integers(0, 3, size=components)]
        m = sum(w * _product_across(p, rng, pure_factors) for w, p in zip(weights, parts))
    elif partition in PARTITIONS:
        m = _product_across(partition, rng, pure_factors)
    else:
        raise InvalidPartition(f"unknown partition {partition!r}; use {PARTITIONS} or 'mixture'")
    return DensityMatrix(m, QUBITS3, biseparable=True)


def _product_across(partition: str, rng: np.random.Generator, pure_factors: bool) -> np.ndarray:
    if pure_factors:
        a = _gaussian_vector(rng, 2)
        b = _gaussian_vector(rng, 4)
        single, pair = np.outer(a, a.conj()), np.outer(b, b.conj())
    else:
        single = random_mixed_matrix(2, rng)
        pair = random_mixed_matrix(4, rng)
    return _embed_bipartition(single, pair, partition)


def biseparable_samples(n: int, seed=0, pure_fraction: float = 0.5):
    """``n`` biseparable states cycling through every cut and mixtures.

    Roughly ``pure_fraction`` of the single-cut samples use pure factors.
    """
    rng = rng_from_seed(seed)
    kinds = PARTITIONS + ("mixture",)
    out = []
    for k in range(n):
        kind = kinds[k % len(kinds)]
        pure_factors = kind != "mixture" and rng.random() < pure_fraction
        out.append(random_biseparable(kind, rng, pure_factors=pure_factors))
    return out
