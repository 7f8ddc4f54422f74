import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindmap.errors import AssignmentNotFound, UnknownFamily
from lindmap.families import (
    FAMILIES,
    INDEXED_GELLMANN,
    choi_map_F,
    choi_map_F_explicit,
    choi_map_printed,
    choi_map_printed_scale,
    count_valid_assignments,
    gellmann,
    gellmann_assignment_oracle,
    get_family,
    lambda_gamma,
    lambda_gamma_explicit,
    lambda_gamma_output_determinant,
    lambda_gamma_positive,
    phi2_alpha,
    phi2_alpha_explicit,
    phi2_printed,
    phi_alpha,
    phi_alpha_choi_eigenvalues,
    phi_alpha_decomposition,
    phi_alpha_explicit,
    phi_alpha_minors,
    phi_alpha_positive,
    phiC_beta,
)
from lindmap.superop import apply, choi, identity_map, is_completely_positive, transposition

from conftest import random_complex, random_hermitian
from oracles import lambda_action, lambda_on_first_qubit

DUAL_ROUTES = [
    (lambda_gamma, lambda_gamma_explicit),
    (phi_alpha, phi_alpha_explicit),
    (phi2_alpha, phi2_alpha_explicit),
    (choi_map_F, choi_map_F_explicit),
]


def random_psi(rng, d):
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return psi / np.linalg.norm(psi)


# --- Gell-Mann basis -----------------------------------------------------

def test_gellmann_orthonormality():
    lam = gellmann()
    for i, a in enumerate(lam):
        assert np.allclose(a, a.conj().T)
        assert abs(np.trace(a)) < 1e-15
        for j, b in enumerate(lam):
            assert np.trace(a @ b) == pytest.approx(2.0 * (i == j), abs=1e-14)


def test_index_nine_is_unnormalized_diag():
    assert np.allclose(INDEXED_GELLMANN[9], np.diag([1, 1, -2]))
    for i in range(2, 9):
        assert np.array_equal(INDEXED_GELLMANN[i], gellmann()[i - 2])


def test_assignment_oracle_accepts_default():
    out = gellmann_assignment_oracle()
    for i in range(2, 10):
        assert np.array_equal(out[i], INDEXED_GELLMANN[i])
    assert gellmann_assignment_oracle(INDEXED_GELLMANN) is not None


def test_assignment_oracle_rejects_shift_by_two():
    lam = gellmann()
    shifted = {i: lam[(i - 3) % 8] for i in range(2, 10)}
    with pytest.raises(AssignmentNotFound):
        gellmann_assignment_oracle(shifted)


def test_assignment_oracle_rejects_identity_basis():
    with pytest.raises(AssignmentNotFound):
        gellmann_assignment_oracle(basis=[np.eye(3)] * 8)


def test_normalized_basis_has_no_valid_assignment():
    # with tr(l8^2) = 2 the printed coefficients cannot produce the transposition
    with pytest.raises(AssignmentNotFound):
        gellmann_assignment_oracle(basis=list(gellmann()))
    assert count_valid_assignments(list(gellmann())) == 0


def test_valid_assignments_only_permute_equal_coefficients():
    # 4! ways inside the +alpha slots times 3! inside the -alpha slots
    assert count_valid_assignments() == 24 * 6


# --- dual construction ---------------------------------------------------

@pytest.mark.parametrize("dissipative, explicit", DUAL_ROUTES)
@pytest.mark.parametrize("value", [-0.3, 0.0, 0.1, 3 / 16, 0.25, 0.5, 0.75, 1.0, 1.3])
def test_dual_routes_agree(dissipative, explicit, value):
    assert dissipative(value).max_abs_diff(explicit(value)) <= 1e-12


# --- lambda_gamma ---------------------------------------------------------

def test_lambda_half_is_transposition():
    assert lambda_gamma(0.5).max_abs_diff(transposition(2)) <= 1e-12


def test_lambda_zero_is_pinching(rng):
    x = random_complex(rng, 2)
    assert np.allclose(apply(lambda_gamma(0.0), x), np.diag(np.diag(x)))


def test_lambda_display(rng):
    x = random_complex(rng, 2)
    for g in (-0.5, 0.2, 0.9):
        assert np.allclose(apply(lambda_gamma(g), x), lambda_action(g)(x), atol=1e-14)


def test_lambda_quarter_on_schmidt_state():
    c1, c2 = 0.6, 0.8
    psi = np.array([c1, 0, 0, c2])
    out = lambda_on_first_qubit(0.25, np.outer(psi, psi))
    assert np.linalg.eigvalsh(out)[0] == pytest.approx(-2 * c1 * c2 * 0.25, abs=1e-14)


@pytest.mark.parametrize("g", [-0.6, -0.5, -0.2, 0.0, 0.3, 0.5, 0.51, 1.0])
def test_lambda_closed_form_determinant(g, rng):
    dets = [lambda_gamma_output_determinant(g, random_psi(rng, 2)) for _ in range(200)]
    dets.append(lambda_gamma_output_determinant(g, [1, 1]))
    assert (min(dets) >= -1e-15) == lambda_gamma_positive(g)
    # the determinant formula is the actual determinant of the output
    psi = random_psi(rng, 2)
    out = apply(lambda_gamma(g), np.outer(psi, psi.conj()))
    assert np.linalg.det(out).real == pytest.approx(lambda_gamma_output_determinant(g, psi), abs=1e-14)


@pytest.mark.parametrize("g", [-0.5, -0.1, 0.1, 0.3, 0.5])
def test_lambda_not_cp_away_from_zero(g):
    assert not is_completely_positive(lambda_gamma(g))


def test_lambda_zero_is_cp():
    # the pinching map is CP; contradicts "NCP for every real gamma"
    assert is_completely_positive(lambda_gamma(0.0))


# --- phi_alpha ------------------------------------------------------------

def test_phi_half_is_transposition():
    assert phi_alpha(0.5).max_abs_diff(transposition(3)) <= 1e-12


def test_phi_zero_is_identity():
    assert phi_alpha(0.0).max_abs_diff(identity_map(3)) <= 1e-15


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 0.5))
def test_phi_decomposition(alpha):
    assert phi_alpha(alpha).max_abs_diff(phi_alpha_decomposition(alpha)) <= 1e-12


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4, 0.5])
def test_phi_choi_spectrum(alpha):
    w = np.linalg.eigvalsh(choi(phi_alpha(alpha)))
    assert np.allclose(w, phi_alpha_choi_eigenvalues(alpha), atol=1e-12)
    distinct = {round(x, 10) for x in w}
    assert distinct == {round(1 - 4 * alpha / 3, 10), round(-2 * alpha / 3, 10), round(2 * alpha / 3, 10)}


@pytest.mark.parametrize("alpha", [-0.1, 0.0, 0.25, 0.5, 0.6])
def test_phi_minors_closed_form(alpha, rng):
    for _ in range(30):
        psi = random_psi(rng, 3)
        out = apply(phi_alpha(alpha), np.outer(psi, psi.conj()))
        minors = phi_alpha_minors(alpha, psi)
        for (i, j), value in minors.items():
            sub = out[np.ix_((i, j), (i, j))]
            assert np.linalg.det(sub).real == pytest.approx(value, abs=1e-13)
        if phi_alpha_positive(alpha):
            assert min(minors.values()) >= -1e-15


def test_phi_negative_alpha_not_positive():
    psi = np.array([1, 1j, 0]) / np.sqrt(2)
    assert min(phi_alpha_minors(-0.1, psi).values()) < 0
    assert np.linalg.eigvalsh(apply(phi_alpha(-0.1), np.outer(psi, psi.conj())))[0] < 0


# --- phi2_alpha -----------------------------------------------------------

def test_phi2_quarter_matches_display(rng):
    rho = random_complex(rng, 3)
    assert np.allclose(apply(phi2_alpha(0.25), rho), phi2_printed(rho), atol=1e-14)


def test_phi2_zero_is_identity():
    assert phi2_alpha(0.0).max_abs_diff(identity_map(3)) <= 1e-15


def test_phi2_point_two_is_pncp():
    from lindmap.superop import min_output_eigenvalue_over_pure
    s = phi2_alpha(0.2)
    assert min_output_eigenvalue_over_pure(s) >= -1e-9
    assert np.linalg.eigvalsh(choi(s))[0] < 0


# --- Choi-type family -----------------------------------------------------

def test_choi_F_at_one_is_half_printed(rng):
    rho = random_complex(rng, 3)
    assert np.allclose(apply(choi_map_F(1.0), rho), 0.5 * choi_map_printed(rho), atol=1e-14)
    assert np.allclose(apply(choi_map_printed_scale(1.0), rho), choi_map_printed(rho), atol=1e-14)


def test_choi_F_is_trace_preserving(rng):
    rho = random_hermitian(rng, 3)
    for beta in (0.0, 0.5, 1.0):
        assert np.trace(apply(choi_map_F(beta), rho)) == pytest.approx(np.trace(rho), abs=1e-12)


def test_phiC_is_trace_annihilating(rng):
    rho = random_complex(rng, 3)
    assert abs(np.trace(apply(phiC_beta(0.7), rho))) < 1e-12


def test_choi_F_zero_is_cp():
    assert is_completely_positive(choi_map_F(0.0))


def test_choi_F_three_quarters_is_cp_boundary():
    assert abs(np.linalg.eigvalsh(choi(choi_map_F(0.75)))[0]) <= 1e-9
    assert np.linalg.eigvalsh(choi(choi_map_F(0.75 + 1e-4)))[0] < -1e-6


# --- registry -------------------------------------------------------------

def test_registry_names():
    assert set(FAMILIES) == {"lambda-gamma", "phi-alpha", "phi2-alpha", "phiC-beta", "choi-F"}
    with pytest.raises(UnknownFamily):
        get_family("nope")


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_registry_explicit_route(name):
    fam = FAMILIES[name]
    for v in (0.1, 0.2, 0.45):
        assert fam(v).max_abs_diff(fam.build_explicit(v)) <= 1e-12


@pytest.mark.parametrize("name, lo, hi, expected", [
    ("phi2-alpha", 0.0, 0.25, 3 / 16),
    ("phiC-beta", 0.0, 1.0, 0.75),
    ("choi-F", 0.0, 1.0, 0.75),
])
def test_cp_boundary(name, lo, hi, expected):
    from lindmap.families import cp_boundary
    assert cp_boundary(name, lo, hi) == pytest.approx(expected, abs=1e-6)


def test_cp_boundary_without_flip():
    from lindmap.errors import NoSignChange
    from lindmap.families import cp_boundary
    with pytest.raises(NoSignChange):
        cp_boundary("phi-alpha", 0.1, 0.5)
