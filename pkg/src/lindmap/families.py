"""Parameterized positive maps built from Lindblad dissipator sums.

Every family can be built two ways: from its dissipator sum (the plain
builders such as :func:`phi_alpha`) and from its explicit matrix action
(the ``*_explicit`` builders).  The two routes are checked against each
other in the test suite.

Qutrit families use the Gell-Mann operators indexed
``G_2 .. G_9``; see :data:`INDEXED_GELLMANN` and
:func:`gellmann_assignment_oracle` for how those indices map onto the
standard basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import AssignmentNotFound, NoSignChange, UnknownFamily
from .superop import (
    DissipatorTerm,
    SuperOp,
    compose_affine,
    dissipator,
    identity_map,
    superop_from_action,
    transposition,
)

PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def gellmann() -> Tuple[np.ndarray, ...]:
    """The eight standard Gell-Mann matrices, ``tr(l_i l_j) = 2 delta_ij``."""
    l = [np.zeros((3, 3), dtype=complex) for _ in range(8)]
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1], l[1][1, 0] = -1j, 1j
    l[2][0, 0], l[2][1, 1] = 1, -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2], l[4][2, 0] = -1j, 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2], l[6][2, 1] = -1j, 1j
    l[7][:] = np.diag([1, 1, -2]) / np.sqrt(3)
    return tuple(l)


def _indexed_gellmann() -> Dict[int, np.ndarray]:
    lam = gellmann()
    out = {i: lam[i - 2] for i in range(2, 9)}
    # The printed coefficient gamma_9 = alpha/3 reproduces the transposition
    # only with the unnormalized diag(1, 1, -2), i.e. sqrt(3) * lambda_8.
    out[9] = np.sqrt(3) * lam[7]
    return out


INDEXED_GELLMANN: Mapping[int, np.ndarray] = _indexed_gellmann()
"""Jump index i -> operator: lambda_{i-1} for i = 2..8, sqrt(3) lambda_8 for i = 9."""


def _phi_alpha_coefficients(alpha: float) -> Dict[int, float]:
    return {2: alpha, 3: -alpha, 4: alpha, 5: alpha, 6: -alpha, 7: alpha, 8: -alpha, 9: alpha / 3}


def _phi2_alpha_coefficients(alpha: float) -> Dict[int, float]:
    coeffs = {i: alpha for i in range(2, 9)}
    coeffs[9] = alpha / 3
    return coeffs


def _terms(coeffs: Mapping[int, float], basis: Mapping[int, np.ndarray]):
    return [DissipatorTerm(coeffs[i], basis[i]) for i in sorted(coeffs)]


# ---------------------------------------------------------------------------
# Qubit family
# ---------------------------------------------------------------------------

def lambda_gamma(gamma: float) -> SuperOp:
    """``X + sum_i g_i (s_i X s_i - 1/2 {s_i s_i, X})`` with ``g = (gamma, -gamma, 1/2)``."""
    terms = [DissipatorTerm(g, PAULI[k]) for k, g in ((1, gamma), (2, -gamma), (3, 0.5))]
    return compose_affine(1.0, terms)


def lambda_gamma_explicit(gamma: float) -> SuperOp:
    def action(x):
        return np.array([[x[0, 0], 2 * gamma * x[1, 0]],
                         [2 * gamma * x[0, 1], x[1, 1]]])
    return superop_from_action(action, 2)


def lambda_gamma_positive(gamma: float) -> bool:
    """Exact positivity test.

    For a pure input the output is diagonal-plus-swapped-coherence with
    determinant ``r11 r22 (1 - 4 gamma^2)``; the diagonal is always
    non-negative, so positivity holds iff ``|gamma| <= 1/2``.
    """
    return abs(gamma) <= 0.5


def lambda_gamma_output_determinant(gamma: float, psi) -> float:
    """Closed-form determinant of ``lambda_gamma(gamma)(|psi><psi|)``."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    r11, r22 = abs(psi[0]) ** 2, abs(psi[1]) ** 2
    r12 = psi[0] * np.conj(psi[1])
    return float(r11 * r22 - 4 * gamma ** 2 * abs(r12) ** 2)


# ---------------------------------------------------------------------------
# Qutrit families
# ---------------------------------------------------------------------------

def phi_alpha(alpha: float) -> SuperOp:
    return compose_affine(1.0, _terms(_phi_alpha_coefficients(alpha), INDEXED_GELLMANN))


def phi_alpha_explicit(alpha: float) -> SuperOp:
    def action(x):
        y = (1 - 2 * alpha) * x + 2 * alpha * x.T
        np.fill_diagonal(y, np.diag(x))
        return y
    return superop_from_action(action, 3)


def phi_alpha_decomposition(alpha: float) -> SuperOp:
    """``(1 - 2 alpha) id + 2 alpha T``."""
    return (1 - 2 * alpha) * identity_map(3) + (2 * alpha) * transposition(3)


def phi_alpha_minors(alpha: float, psi) -> Dict[Tuple[int, int], float]:
    """Closed-form 2x2 principal minors of ``phi_alpha(alpha)(|psi><psi|)``.

    Each equals ``2a(2a - 1)(psi_i conj(psi_j) - psi_j conj(psi_i))^2``; the
    squared factor is the square of an imaginary number, hence <= 0.
    """
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    out = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        z = psi[i] * np.conj(psi[j]) - psi[j] * np.conj(psi[i])
        out[(i, j)] = float((2 * alpha * (2 * alpha - 1) * z * z).real)
    return out


def phi_alpha_positive(alpha: float) -> bool:
    """Exact: the minors above are >= 0 for every pure state iff ``0 <= alpha <= 1/2``."""
    return 0.0 <= alpha <= 0.5


def phi_alpha_choi_eigenvalues(alpha: float) -> np.ndarray:
    """Choi spectrum with multiplicities: ``1 - 4a/3`` once, ``-2a/3`` three times,
    ``2a/3`` five times."""
    return np.sort(np.array([1 - 4 * alpha / 3] + [-2 * alpha / 3] * 3 + [2 * alpha / 3] * 5))


def phi2_alpha(alpha: float) -> SuperOp:
    return compose_affine(1.0, _terms(_phi2_alpha_coefficients(alpha), INDEXED_GELLMANN))


def phi2_alpha_explicit(alpha: float) -> SuperOp:
    def action(x):
        d = np.diag(x)
        y = (1 - 6 * alpha) * x
        np.fill_diagonal(y, (1 - 4 * alpha) * d + 2 * alpha * (d.sum() - d))
        return y
    return superop_from_action(action, 3)


def phi2_printed(rho) -> np.ndarray:
    """The decomposable Choi-type map at alpha = 1/4, entry by entry."""
    r = np.asarray(rho, dtype=complex)
    return np.array([
        [(r[1, 1] + r[2, 2]) / 2, -r[0, 1] / 2, -r[0, 2] / 2],
        [-r[1, 0] / 2, (r[0, 0] + r[2, 2]) / 2, -r[1, 2] / 2],
        [-r[2, 0] / 2, -r[2, 1] / 2, (r[0, 0] + r[1, 1]) / 2],
    ])


def _ket_bra(i: int, j: int, d: int = 3) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1
    return m


def choi_jumps() -> Dict[str, Tuple[np.ndarray, ...]]:
    """Jump triples A (cyclic lowering), B (projectors), C (projector differences)."""
    e = _ket_bra
    return {
        "A": (e(0, 1), e(1, 2), e(2, 0)),
        "B": (e(0, 0), e(1, 1), e(2, 2)),
        "C": (e(0, 0) - e(1, 1), e(1, 1) - e(2, 2), e(2, 2) - e(0, 0)),
    }


def lindblad_sum(jumps: Sequence[np.ndarray], gamma: float = 1.0) -> SuperOp:
    return compose_affine(0.0, [DissipatorTerm(gamma, j) for j in jumps])


def phiC_beta(beta: float) -> SuperOp:
    """``S1 - beta (S2 - S3)``; trace-annihilating, not itself a positive map."""
    j = choi_jumps()
    s1, s2, s3 = (lindblad_sum(j[k]) for k in "ABC")
    return s1 - beta * (s2 - s3)


def choi_map_F(beta: float) -> SuperOp:
    """Trace-preserving Choi-type family ``id + 1/2 phiC_beta(beta)``."""
    return identity_map(3) + 0.5 * phiC_beta(beta)


def choi_map_F_explicit(beta: float) -> SuperOp:
    def action(x):
        d = np.diag(x)
        y = (0.5 - beta) * x
        np.fill_diagonal(y, (d + np.roll(d, -1)) / 2)
        return y
    return superop_from_action(action, 3)


def choi_map_printed_scale(beta: float) -> SuperOp:
    """``2 * choi_map_F(beta)``; equals the textbook Choi map at beta = 1 (trace 2 tr(rho))."""
    return 2.0 * choi_map_F(beta)


def choi_map_printed(rho) -> np.ndarray:
    r = np.asarray(rho, dtype=complex)
    return np.array([
        [r[0, 0] + r[1, 1], -r[0, 1], -r[0, 2]],
        [-r[1, 0], r[1, 1] + r[2, 2], -r[1, 2]],
        [-r[2, 0], -r[2, 1], r[2, 2] + r[0, 0]],
    ])


# ---------------------------------------------------------------------------
# Gell-Mann index oracle
# ---------------------------------------------------------------------------

ASSIGNMENT_TOL = 1e-10


def assignment_error(assignment: Mapping[int, np.ndarray]) -> float:
    """Max entrywise distance between phi_alpha(1/2) built on ``assignment`` and T."""
    s = compose_affine(1.0, _terms(_phi_alpha_coefficients(0.5), assignment), dim=3)
    return s.max_abs_diff(transposition(3))


def gellmann_assignment_oracle(assignment: Optional[Mapping[int, np.ndarray]] = None,
                               basis: Optional[Sequence[np.ndarray]] = None,
                               tol: float = ASSIGNMENT_TOL) -> Dict[int, np.ndarray]:
    """Validate or search the map from jump indices 2..9 to jump operators.

    With ``assignment`` given, it is accepted iff it reproduces the
    transposition at alpha = 1/2 within ``tol``.  Otherwise every bijection
    from the indices onto ``basis`` (default: :data:`INDEXED_GELLMANN` values)
    is tried; :data:`INDEXED_GELLMANN` is returned when valid, else the first
    valid bijection found.

    :raises AssignmentNotFound: when nothing reproduces the transposition.
    """
    if assignment is not None:
        err = assignment_error(assignment)
        if err > tol:
            raise AssignmentNotFound(f"assignment misses the transposition by {err:.3e}")
        return dict(assignment)

    basis, perms, errors = _search(basis)
    valid = np.flatnonzero(errors <= tol)
    if valid.size == 0:
        raise AssignmentNotFound(
            f"no bijection reproduces the transposition (best error {errors.min():.3e})")
    indices = range(2, 10)
    default_perm = tuple(range(len(basis)))
    for v in valid:
        if tuple(perms[v]) == default_perm:
            return {idx: basis[pos] for pos, idx in enumerate(indices)}
    p = perms[valid[0]]
    return {idx: basis[p[pos]] for pos, idx in enumerate(indices)}


def _search(basis):
    if basis is None:
        basis = [INDEXED_GELLMANN[i] for i in range(2, 10)]
    basis = [np.asarray(b, dtype=complex) for b in basis]
    indices = list(range(2, 10))
    if len(basis) != len(indices):
        raise AssignmentNotFound(f"need {len(indices)} operators, got {len(basis)}")
    coeffs = _phi_alpha_coefficients(0.5)
    unit = np.stack([dissipator(DissipatorTerm(1.0, b)).transfer.ravel() for b in basis])
    target = (transposition(3).transfer - np.eye(9)).ravel()
    perms = np.array(list(permutations(range(len(basis)))))
    # weights[p, k]: coefficient carried by basis[k] under permutation p
    weights = np.zeros(perms.shape)
    for pos, idx in enumerate(indices):
        weights[np.arange(len(perms)), perms[:, pos]] = coeffs[idx]
    errors = np.max(np.abs(weights @ unit - target), axis=1)
    return basis, perms, errors


def count_valid_assignments(basis: Optional[Sequence[np.ndarray]] = None,
                            tol: float = ASSIGNMENT_TOL) -> int:
    """Number of bijections onto ``basis`` that reproduce the transposition."""
    return int(np.sum(_search(basis)[2] <= tol))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapFamily:
    """A named one-parameter family of maps with its documented ranges.

    Ranges are advisory metadata; builders accept any real parameter.
    """

    name: str
    symbol: str
    build: Callable[[float], SuperOp]
    build_explicit: Callable[[float], SuperOp]
    positive_range: Tuple[float, float]
    cp_range: Optional[Tuple[float, float]] = None
    closed_form_positive: Optional[Callable[[float], bool]] = None
    note: str = field(default="")

    def __call__(self, value: float) -> SuperOp:
        return self.build(value)


FAMILIES: Dict[str, MapFamily] = {
    "lambda-gamma": MapFamily(
        "lambda-gamma", "gamma", lambda_gamma, lambda_gamma_explicit,
        positive_range=(-0.5, 0.5), cp_range=(0.0, 0.0),
        closed_form_positive=lambda_gamma_positive,
        note="qubit; gamma = 1/2 is the transposition"),
    "phi-alpha": MapFamily(
        "phi-alpha", "alpha", phi_alpha, phi_alpha_explicit,
        positive_range=(0.0, 0.5), cp_range=(0.0, 0.0),
        closed_form_positive=phi_alpha_positive,
        note="qutrit; (1 - 2 alpha) id + 2 alpha T"),
    "phi2-alpha": MapFamily(
        "phi2-alpha", "alpha", phi2_alpha, phi2_alpha_explicit,
        positive_range=(0.0, 0.25), cp_range=(0.0, 3 / 16),
        note="qutrit; decomposable Choi-type map at alpha = 1/4"),
    "phiC-beta": MapFamily(
        "phiC-beta", "beta", choi_map_F, choi_map_F_explicit,
        positive_range=(0.0, 1.0), cp_range=(0.0, 0.75),
        note="qutrit; id + 1/2 (S1 - beta (S2 - S3)), trace preserving"),
    "choi-F": MapFamily(
        "choi-F", "beta", choi_map_printed_scale,
        lambda b: 2.0 * choi_map_F_explicit(b),
        positive_range=(0.0, 1.0), cp_range=(0.0, 0.75),
        note="qutrit; twice phiC-beta, the textbook Choi map at beta = 1"),
}


def get_family(name: str) -> MapFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def choi_min_eigenvalue(family: str, value: float) -> float:
    from .linalg import min_eigenvalue
    from .superop import choi
    return min_eigenvalue(choi(get_family(family)(value)))


def cp_boundary(family: str, lo: float, hi: float, tol: float = 1e-9, xtol: float = 1e-10) -> float:
    """Largest parameter in ``[lo, hi]`` at which the family is still CP.

    Bisects the predicate ``min eig Choi >= -tol``, which must hold at ``lo``
    and fail at ``hi``.
    """
    def cp(x):
        return choi_min_eigenvalue(family, x) >= -tol
    if not cp(lo) or cp(hi):
        raise NoSignChange(f"CP predicate does not flip on [{lo}, {hi}] for {family}")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if cp(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
