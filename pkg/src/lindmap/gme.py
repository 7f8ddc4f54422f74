"""Three-qubit lifting of qubit maps: GME detection, witness and the GME negativity.

The lift of a qubit map ``L`` is

    rho -> (L x id x id + id x L x id + id x id x L)(rho) + c tr(rho) I_8.

An optional single-qubit unitary ``r`` post-composes the base map on the
factor it acts on, i.e. each term uses ``r L(.) r^dag`` in place of ``L``.
Conjugating the whole output by ``r x r x r`` instead would leave every
spectrum unchanged and could never alter a verdict.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, NoSignChange, ParameterOutOfRange
from .families import PAULI, lambda_gamma
from .linalg import as_square, default_psd_tol, eigvalsh, trace_norm
from .states import QUBITS3, as_matrix, w_state
from .superop import SuperOp, apply_on_party, superop_from_action, transposition

DETECTION_C = 1.0
"""Trace-term constant of the lifted transposition; safe for every |gamma| <= 1/2."""

SIGMA_X = PAULI[1]
NGME_CLAMP = 1e-12


def default_c(gamma: float) -> float:
    """Smallest trace-term constant keeping the lift non-negative on biseparable states.

    This is ``2|gamma|``.  With it the W state is flagged at every
    ``gamma != 0``; the detection window ``sqrt(3)/4 < |gamma| <= 1/2`` is
    obtained with the fixed constant :data:`DETECTION_C` instead.
    """
    return 2.0 * abs(gamma)


@dataclass(frozen=True, eq=False)
class LiftedMap:
    base: SuperOp
    c: float
    rotation: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.base.dim != 2:
            raise DimensionMismatch(f"lifting needs a qubit map, got one on M_{self.base.dim}")
        if self.rotation is not None:
            r = as_square(self.rotation)
            if r.shape != (2, 2):
                raise DimensionMismatch("rotation must be a single-qubit unitary")

    @property
    def local_map(self) -> SuperOp:
        """The map applied on each party: the base, followed by the rotation if any."""
        if self.rotation is None:
            return self.base
        r = np.asarray(self.rotation, dtype=complex)
        return superop_from_action(lambda x: r @ self.base(x) @ r.conj().T, 2)

    def __call__(self, rho) -> np.ndarray:
        m = as_matrix(rho)
        if m.shape != (8, 8):
            raise DimensionMismatch(f"expected a three-qubit operator, got shape {m.shape}")
        local = self.local_map
        out = sum(apply_on_party(local, m, QUBITS3, k) for k in range(3))
        return out + self.c * np.trace(m) * np.eye(8)


def lift(base: SuperOp, c: float, rotation: Optional[np.ndarray] = None) -> LiftedMap:
    return LiftedMap(base, c, rotation)


def lifted_lambda(gamma: float, c: Optional[float] = None, rotated: bool = False) -> LiftedMap:
    c = DETECTION_C if c is None else c
    return lift(lambda_gamma(gamma), c, SIGMA_X if rotated else None)


def lifted_min_eigenvalue(rho, gamma: float, rotated: bool = False,
                          c: Optional[float] = None) -> float:
    return float(eigvalsh(lifted_lambda(gamma, c, rotated)(rho))[0])


class Verdict(str, enum.Enum):
    GME_DETECTED = "GME_DETECTED"
    NOT_DETECTED = "NOT_DETECTED"


@dataclass(frozen=True)
class DetectionReport:
    gamma: float
    c: float
    rotated: bool
    min_eigenvalue: float
    witness_value: Optional[float] = None
    n_gme: Optional[float] = None
    verdict: Verdict = Verdict.NOT_DETECTED

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d


def detect_gme(rho, gamma: float, rotated: bool = False, c: Optional[float] = None,
               witness: bool = False, ngme: bool = False, K: float = 1.0,
               tol: Optional[float] = None) -> DetectionReport:
    """Apply the lifted ``lambda_gamma`` and report whether the output has a negative eigenvalue.

    The verdict always comes from the minimum eigenvalue; ``witness`` and
    ``ngme`` only add the corresponding values to the report.
    """
    tol = default_psd_tol() if tol is None else tol
    c = DETECTION_C if c is None else c
    m = as_matrix(rho)
    emin = lifted_min_eigenvalue(m, gamma, rotated, c)
    wv = witness_value(m, gamma, c=c, rotated=rotated) if witness else None
    ng = n_gme(m, K) if ngme else None
    negative = emin < -tol
    return DetectionReport(
        gamma=float(gamma), c=float(c), rotated=bool(rotated), min_eigenvalue=emin,
        witness_value=wv, n_gme=ng,
        verdict=Verdict.GME_DETECTED if negative else Verdict.NOT_DETECTED,
    )


# ---------------------------------------------------------------------------
# Witness
# ---------------------------------------------------------------------------

def witness(gamma: float = 0.5, c: Optional[float] = None, rotated: bool = False) -> np.ndarray:
    """``W = lift(|W><W|)``; non-negative expectation on every biseparable state."""
    return lifted_lambda(gamma, c, rotated)(w_state())


def witness_value(rho, gamma: float = 0.5, c: Optional[float] = None,
                  rotated: bool = False) -> float:
    m = as_matrix(rho)
    if m.shape != (8, 8):
        raise DimensionMismatch(f"expected a three-qubit operator, got shape {m.shape}")
    return float(np.trace(witness(gamma, c, rotated) @ m).real)


def tailored_witness(rho, gamma: float = 0.5, c: Optional[float] = None,
                     rotated: bool = False) -> np.ndarray:
    """Witness ``lift(|v><v|)`` with ``v`` the lowest eigenvector of ``lift(rho)``.

    The qubit maps here are self-dual and so is the lift, hence
    ``tr(lift(|v><v|) rho) = <v|lift(rho)|v>``, the most negative
    eigenvalue: this witness flags ``rho`` whenever the map does.
    ``witness()`` is the special case built on ``|W>`` itself, which flags
    the lowest eigenvector of ``lift(|W><W|)`` rather than ``|W>``.
    """
    lifted = lifted_lambda(gamma, c, rotated)
    _, vecs = np.linalg.eigh(lifted(rho))
    v = vecs[:, 0]
    return lifted(np.outer(v, v.conj()))


# ---------------------------------------------------------------------------
# GME negativity
# ---------------------------------------------------------------------------

def lifted_transposition() -> LiftedMap:
    return lift(transposition(2), 1.0)


def ngme_normalization() -> float:
    """``tr`` of the lifted transposition on any unit-trace input: 3 + 8 c = 11."""
    return float(np.trace(lifted_transposition()(np.eye(8) / 8)).real)


def n_gme(rho, K: float = 1.0) -> float:
    """``(|| T~(rho) / N ||_1 - 1) / K``, clamped to 0 below 1e-12."""
    if K <= 0:
        raise ParameterOutOfRange(f"normalization K must be positive, got {K}")
    m = as_matrix(rho)
    out = lifted_transposition()(m) / ngme_normalization()
    value = (trace_norm(out) - 1.0) / K
    return 0.0 if value < NGME_CLAMP else value


def w_normalized_K() -> float:
    """The K making ``n_gme(|W><W|) == 1``."""
    return n_gme(w_state(), 1.0)


# ---------------------------------------------------------------------------
# Boundaries
# ---------------------------------------------------------------------------

def bisect_sign(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12,
                max_iter: int = 200) -> float:
    """Zero crossing of ``f`` on ``[lo, hi]`` by plain bisection."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChange(f"f({lo}) = {flo:.3e} and f({hi}) = {fhi:.3e} share a sign")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < xtol:
            break
    return 0.5 * (lo + hi)


def _check_monotone(f, lo, hi, n=21):
    values = np.array([f(x) for x in np.linspace(lo, hi, n)])
    diffs = np.diff(values)
    if not (np.all(diffs <= 1e-12) or np.all(diffs >= -1e-12)):
        raise NoSignChange("objective is not monotone on the bracket; bisection is unreliable")


def gamma_detection_boundary(rho, rotated: bool = False, c: Optional[float] = None,
                             lo: float = 0.0, hi: float = 0.5, xtol: float = 1e-12) -> float:
    """Smallest ``gamma`` in ``[lo, hi]`` where the lifted output turns negative."""
    def f(g):
        return lifted_min_eigenvalue(rho, g, rotated, c)
    _check_monotone(f, lo, hi)
    return bisect_sign(f, lo, hi, xtol)


def noise_threshold(pure_state, gamma: float = 0.5, rotated: bool = False,
                    c: Optional[float] = None, xtol: float = 1e-13) -> float:
    """Smallest white-noise weight ``p`` at which ``p psi + (1-p) I/8`` is detected."""
    m = as_matrix(pure_state)

    def f(p):
        return lifted_min_eigenvalue(p * m + (1 - p) * np.eye(8) / 8, gamma, rotated, c)
    _check_monotone(f, 0.0, 1.0)
    return bisect_sign(f, 0.0, 1.0, xtol)


# ---------------------------------------------------------------------------
# LOCC spot check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LoccTrial:
    before: float
    after: float

    @property
    def violated(self) -> bool:
        return self.after > self.before + 1e-8


def random_local_instrument(rng: np.random.Generator, outcomes: int = 2) -> Sequence[np.ndarray]:
    """Kraus operators ``M_i`` on one qubit with ``sum M_i^dag M_i = I``."""
    g = rng.normal(size=(2 * outcomes, 2)) + 1j * rng.normal(size=(2 * outcomes, 2))
    q, _ = np.linalg.qr(g)
    return [q[2 * i:2 * i + 2, :] for i in range(outcomes)]


def locc_spot_check(rho, trials: int = 200, seed=0, party: int = 0) -> list:
    """Average ``n_gme`` after a random local measurement on ``party``, per trial.

    Returns :class:`LoccTrial` records; violations are reported, not raised.
    """
    from .states import rng_from_seed

    rng = rng_from_seed(seed)
    m = as_matrix(rho)
    before = n_gme(m)
    out = []
    for _ in range(trials):
        avg = 0.0
        for k in random_local_instrument(rng):
            ops = [np.eye(2)] * 3
            ops[party] = k
            big = np.kron(np.kron(ops[0], ops[1]), ops[2])
            post = big @ m @ big.conj().T
            p = float(np.trace(post).real)
            if p > 1e-14:
                avg += p * n_gme(post / p)
        out.append(LoccTrial(before, avg))
    return out
