import numpy as np
import pytest

from lindmap.errors import DimensionMismatch, NonHermitianInput
from lindmap.families import (
    PAULI,
    choi_map_F,
    lambda_gamma,
    phi2_alpha,
    phi_alpha,
)
from lindmap.superop import (
    DissipatorTerm,
    SuperOp,
    apply,
    apply_batch,
    apply_on_party,
    choi,
    compose_affine,
    dissipator,
    identity_map,
    is_completely_positive,
    is_hermiticity_preserving,
    min_output_eigenvalue_over_pure,
    principal_minors,
    principal_minors_positive,
    superop_from_action,
    transposition,
    unvec,
    vec,
)

from conftest import random_complex, random_hermitian
from oracles import choi_from_action, lambda_action, min_eig_2x2

ALL_MAPS = {
    "lambda(0.3)": lambda_gamma(0.3),
    "lambda(-0.5)": lambda_gamma(-0.5),
    "phi(0.2)": phi_alpha(0.2),
    "phi2(0.2)": phi2_alpha(0.2),
    "choiF(0.9)": choi_map_F(0.9),
    "T3": transposition(3),
}


def test_vec_is_column_stacking():
    x = np.array([[1, 2], [3, 4]])
    assert np.array_equal(vec(x), [1, 3, 2, 4])
    assert np.array_equal(unvec(vec(x)), x)


def test_vec_sandwich_identity(rng):
    a, x, b = (random_complex(rng, 3) for _ in range(3))
    assert np.allclose(vec(a @ x @ b), np.kron(b.T, a) @ vec(x))


def test_dissipator_sigma_z():
    a, b, c, d = 1.0, 2.0 + 1j, 3.0 - 2j, 4.0
    out = apply(dissipator(DissipatorTerm(1.0, PAULI[3])), np.array([[a, b], [c, d]]))
    assert np.allclose(out, [[0, -2 * b], [-2 * c, 0]])


def test_dissipator_ket_bra(rng):
    j = np.zeros((3, 3), dtype=complex)
    j[0, 1] = 1
    rho = random_hermitian(rng, 3)
    p1 = np.diag([1.0, 0, 0])
    expected = rho[1, 1] * p1 - 0.5 * (p1 @ rho + rho @ p1)
    assert np.allclose(apply(dissipator(DissipatorTerm(1.0, j)), rho), expected)


def test_dissipator_identity_jump_annihilates(rng):
    out = apply(dissipator(DissipatorTerm(0.7, np.eye(3))), random_complex(rng, 3))
    assert np.allclose(out, 0, atol=1e-15)


@pytest.mark.parametrize("d", [2, 3])
def test_dissipator_is_trace_annihilating_for_normal_jumps(d, rng):
    for _ in range(20):
        s = dissipator(DissipatorTerm(rng.normal(), random_hermitian(rng, d)))
        assert abs(np.trace(apply(s, random_complex(rng, d)))) <= 1e-12


def test_dissipator_trace_defect_for_non_normal_jump(rng):
    # the {J J^dag, X} ordering leaves tr((J^dag J - J J^dag) X) behind
    j = random_complex(rng, 3)
    x = random_complex(rng, 3)
    out = apply(dissipator(DissipatorTerm(1.0, j)), x)
    defect = np.trace((j.conj().T @ j - j @ j.conj().T) @ x)
    assert np.trace(out) == pytest.approx(defect, abs=1e-12)


def test_cyclic_jump_triple_is_trace_annihilating(rng):
    from lindmap.families import choi_jumps, lindblad_sum
    s1 = lindblad_sum(choi_jumps()["A"])
    for _ in range(10):
        assert abs(np.trace(apply(s1, random_complex(rng, 3)))) <= 1e-12


def test_compose_affine_is_trace_preserving_for_hermitian_jumps(rng):
    terms = [DissipatorTerm(rng.normal(), random_hermitian(rng, 3)) for _ in range(4)]
    s = compose_affine(1.0, terms)
    x = random_complex(rng, 3)
    assert np.trace(apply(s, x)) == pytest.approx(np.trace(x), abs=1e-12)


def test_compose_affine_empty_is_identity():
    assert np.array_equal(compose_affine(1.0, [], dim=2).transfer, np.eye(4))


def test_compose_affine_rejects_mixed_dims():
    with pytest.raises(DimensionMismatch):
        compose_affine(1.0, [DissipatorTerm(1, np.eye(2)), DissipatorTerm(1, np.eye(3))])


def test_compose_affine_pauli_terms_give_lambda_display(rng):
    g = 0.37
    s = compose_affine(1.0, [DissipatorTerm(g, PAULI[1]), DissipatorTerm(-g, PAULI[2]),
                             DissipatorTerm(0.5, PAULI[3])])
    x = random_complex(rng, 2)
    assert np.allclose(apply(s, x), lambda_action(g)(x), atol=1e-14)


def test_apply_examples(rng):
    x = random_complex(rng, 3)
    assert np.array_equal(apply(identity_map(3), x), x)
    assert np.array_equal(apply(transposition(3), x), x.T)
    with pytest.raises(DimensionMismatch):
        apply(identity_map(2), x)


@pytest.mark.parametrize("name", sorted(ALL_MAPS))
def test_linearity_and_hermiticity_preservation(name, rng):
    s = ALL_MAPS[name]
    x, y = random_complex(rng, s.dim), random_complex(rng, s.dim)
    a, b = 0.3 - 1.2j, 2.1 + 0.4j
    assert np.allclose(apply(s, a * x + b * y), a * apply(s, x) + b * apply(s, y), atol=1e-12)
    assert is_hermiticity_preserving(s)
    assert np.max(np.abs(choi(s) - choi(s).conj().T)) <= 1e-12


def test_apply_batch_matches_apply(rng):
    s = phi2_alpha(0.21)
    xs = np.stack([random_complex(rng, 3) for _ in range(5)])
    assert np.allclose(apply_batch(s, xs), [apply(s, x) for x in xs])


def test_apply_on_party_matches_kron(rng):
    s = lambda_gamma(0.3)
    a, b, c = random_complex(rng, 2), random_complex(rng, 2), random_complex(rng, 2)
    x = np.kron(np.kron(a, b), c)
    assert np.allclose(apply_on_party(s, x, [2, 2, 2], 1), np.kron(np.kron(a, apply(s, b)), c))
    assert np.allclose(apply_on_party(s, x, [2, 2, 2], 2), np.kron(np.kron(a, b), apply(s, c)))


def test_choi_of_identity_is_phi_plus():
    c = choi(identity_map(2))
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(c, np.outer(phi, phi))
    assert np.allclose(np.linalg.eigvalsh(c), [0, 0, 0, 1])


@pytest.mark.parametrize("g", [0.1, 0.3, 0.5, -0.4])
def test_choi_of_lambda_gamma(g):
    # oracle: direct sum over matrix units of the printed action
    ref = choi_from_action(lambda_action(g), 2)
    assert np.allclose(choi(lambda_gamma(g)), ref, atol=1e-14)
    assert np.allclose(np.linalg.eigvalsh(ref), sorted([-abs(g), abs(g), 0.5, 0.5]), atol=1e-14)


@pytest.mark.parametrize("d", [2, 3])
def test_transposition_choi_spectrum(d):
    w = np.linalg.eigvalsh(choi_from_action(lambda x: x.T, d))
    expected = sorted([-1 / d] * (d * (d - 1) // 2) + [1 / d] * (d * (d + 1) // 2))
    assert np.allclose(w, expected, atol=1e-14)
    assert np.allclose(np.linalg.eigvalsh(choi(transposition(d))), expected, atol=1e-14)


def test_is_completely_positive_examples():
    assert is_completely_positive(identity_map(3))
    assert not is_completely_positive(lambda_gamma(0.3))
    assert is_completely_positive(choi_map_F(0.5))


def test_min_output_identity_is_zero():
    assert min_output_eigenvalue_over_pure(identity_map(3), samples=500) == pytest.approx(0, abs=1e-12)


def test_min_output_lambda():
    assert min_output_eigenvalue_over_pure(lambda_gamma(0.5)) >= -1e-9
    v = min_output_eigenvalue_over_pure(lambda_gamma(0.6))
    # closed form at |+>: eigenvalues of [[1/2, 0.6], [0.6, 1/2]]
    assert v == pytest.approx(min_eig_2x2(np.array([[0.5, 0.6], [0.6, 0.5]])), abs=1e-6)
    assert v == pytest.approx(-0.1, abs=1e-6)


def test_min_output_refine_never_worse():
    s = phi2_alpha(0.27)
    coarse = min_output_eigenvalue_over_pure(s, samples=200, refine=False)
    fine = min_output_eigenvalue_over_pure(s, samples=200, refine=True)
    assert fine <= coarse


@pytest.mark.parametrize("name", sorted(ALL_MAPS))
def test_cp_implies_positive(name):
    s = ALL_MAPS[name]
    if is_completely_positive(s):
        assert min_output_eigenvalue_over_pure(s, samples=2000) >= -1e-9


def test_principal_minors_examples(rng):
    assert principal_minors_positive(np.eye(3))
    assert not principal_minors_positive(np.diag([1, 1, -1e-6]))
    s = phi_alpha(0.25)
    for _ in range(50):
        psi = rng.normal(size=3) + 1j * rng.normal(size=3)
        psi /= np.linalg.norm(psi)
        assert principal_minors_positive(apply(s, np.outer(psi, psi.conj())))
    assert len(principal_minors(np.eye(4))) == 2 ** 4 - 1
    with pytest.raises(NonHermitianInput):
        principal_minors_positive(np.array([[1, 2], [0, 1]]))


def test_superop_shape_check():
    with pytest.raises(DimensionMismatch):
        SuperOp(2, np.eye(9))


def test_superop_from_action_roundtrip(rng):
    s = superop_from_action(lambda x: 2 * x.T + np.trace(x) * np.eye(3), 3)
    x = random_complex(rng, 3)
    assert np.allclose(apply(s, x), 2 * x.T + np.trace(x) * np.eye(3))
