import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdiscord import linalg
from qdiscord.errors import ContractError, DimensionError, QubitIndexError
from qdiscord.states import werner

from conftest import random_hermitian

I2, I4 = np.eye(2), np.eye(4)
SZ = linalg.SIGMA_Z


def test_kron_identities():
    assert np.allclose(linalg.kron(I2, I2), I4)
    assert np.allclose(linalg.kron(SZ, SZ), np.diag([1, -1, -1, 1]))


def test_kron_trace_multiplicative():
    assert np.trace(linalg.kron(werner(0.5).matrix, I2)).real == pytest.approx(2.0, abs=1e-12)


def test_kron_index_rule(rng):
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 4)
    k = linalg.kron(a, b)
    for i, j, p, q in [(0, 1, 2, 3), (1, 0, 3, 1), (1, 1, 0, 0)]:
        assert k[i * 4 + p, j * 4 + q] == pytest.approx(a[i, j] * b[p, q])


def test_kron_dimension_guard():
    with pytest.raises(DimensionError):
        linalg.kron(np.eye(128), np.eye(64))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    lhs = linalg.kron(linalg.kron(a, b), c)
    rhs = linalg.kron(a, linalg.kron(b, c))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_partial_trace_bell_marginal(bell_phi):
    assert np.allclose(linalg.partial_trace(bell_phi, 2, [0]), I2 / 2, atol=1e-12)


def test_partial_trace_werner_marginal_direct_sum():
    rho = werner(0.7).matrix
    # oracle: explicit sum over the traced qubit
    direct = np.zeros((2, 2), dtype=complex)
    for b in range(2):
        for b2 in range(2):
            direct[b, b2] = sum(rho[2 * a + b, 2 * a + b2] for a in range(2))
    assert np.allclose(linalg.partial_trace(rho, 2, [1]), direct, atol=1e-14)
    assert np.allclose(direct, I2 / 2, atol=1e-12)


def test_partial_trace_product_and_order(rng):
    from conftest import random_density
    ra, rb = random_density(rng), random_density(rng)
    prod = linalg.kron(ra, rb)
    assert np.allclose(linalg.partial_trace(prod, 4, [0, 1]), ra, atol=1e-12)
    assert np.allclose(linalg.partial_trace(prod, 4, [2, 3]), rb, atol=1e-12)
    # keep order permutes the output qubits
    swapped = linalg.partial_trace(ra, 2, [1, 0])
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(swapped, swap @ ra @ swap.T, atol=1e-14)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_partial_trace_of_kron_scales_by_trace(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    got = linalg.partial_trace(linalg.kron(a, b), 3, [0])
    assert np.max(np.abs(got - a * np.trace(b))) <= 1e-12


def test_partial_trace_preserves_trace(rng):
    from conftest import random_density
    rho = random_density(rng, 16)
    for keep in ([0], [3, 1], [0, 1, 2]):
        assert np.trace(linalg.partial_trace(rho, 4, keep)) == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_errors():
    with pytest.raises(QubitIndexError):
        linalg.partial_trace(I4, 2, [0, 0])
    with pytest.raises(QubitIndexError):
        linalg.partial_trace(I4, 2, [2])
    with pytest.raises(DimensionError):
        linalg.partial_trace(np.eye(3), 2, [0])
    with pytest.raises(DimensionError):
        linalg.num_qubits_of(6)


def test_partial_transpose_examples(bell_phi):
    assert np.allclose(linalg.partial_transpose(I4 / 4, 2, [1]), I4 / 4)
    w = linalg.hermitian_eigenvalues(linalg.partial_transpose(bell_phi, 2, [1]))
    assert np.allclose(w, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


@pytest.mark.parametrize("lam", np.linspace(0, 1, 11))
def test_partial_transpose_werner_spectrum(lam):
    w = linalg.hermitian_eigenvalues(linalg.partial_transpose(werner(lam).matrix, 2, [1]))
    expected = sorted([(1 + lam) / 4] * 3 + [(1 - 3 * lam) / 4])
    assert np.allclose(w, expected, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([[0], [1], [0, 2], [1, 2], [2]]))
def test_partial_transpose_involution_and_hermiticity(seed, sub):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, 8)
    pt = linalg.partial_transpose(h, 3, sub)
    assert np.max(np.abs(linalg.partial_transpose(pt, 3, sub) - h)) <= 1e-14
    assert linalg.hermiticity_residual(pt) <= 1e-14
    assert np.trace(pt) == pytest.approx(np.trace(h), abs=1e-12)


def test_eigenvalue_examples():
    assert np.allclose(linalg.hermitian_eigenvalues(I4 / 4), [0.25] * 4)
    assert np.allclose(linalg.hermitian_eigenvalues(linalg.SIGMA_X), [-1, 1])
    assert np.allclose(linalg.hermitian_eigenvalues(werner(0.5).matrix),
                       [0.125, 0.125, 0.125, 0.625], atol=1e-12)


@pytest.mark.parametrize("dim", [1, 2, 3, 4, 8, 16])
def test_jacobi_against_lapack(rng, dim):
    h = random_hermitian(rng, dim)
    w, v = linalg.jacobi_eigh(h)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10)
    assert sum(w) == pytest.approx(np.trace(h).real, abs=1e-10)
    assert np.max(np.abs((v * w) @ v.conj().T - h)) <= 1e-9
    assert np.allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)


def test_jacobi_degenerate_and_diagonal():
    assert np.allclose(linalg.hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1, 2, 3])
    m = np.kron(linalg.SIGMA_X, linalg.SIGMA_X)
    assert np.allclose(linalg.hermitian_eigenvalues(m), [-1, -1, 1, 1], atol=1e-12)


def test_hermiticity_contract():
    with pytest.raises(ContractError):
        linalg.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ContractError):
        linalg.as_matrix(np.array([[np.nan]]))
    # residual at the tolerance still passes and is symmetrised
    m = np.array([[1, 1e-11], [0, 1]], dtype=complex)
    assert np.allclose(linalg.hermitian_eigenvalues(m), [1, 1])


def test_trace_norm_examples(bell_phi):
    assert linalg.trace_norm(I4 / 4) == pytest.approx(1.0)
    assert linalg.trace_norm(linalg.partial_transpose(bell_phi, 2, [1])) == pytest.approx(2.0, abs=1e-12)
    assert linalg.trace_norm(linalg.partial_transpose(werner(1 / 3).matrix, 2, [1])) == pytest.approx(1.0, abs=1e-12)


def test_trace_norm_bounds_trace(rng):
    for _ in range(10):
        h = random_hermitian(rng, 4)
        assert linalg.trace_norm(h) >= abs(np.trace(h).real) - 1e-12


def test_sqrtm_psd(rng):
    from conftest import random_density
    rho = random_density(rng)
    r = linalg.sqrtm_psd(rho)
    assert np.allclose(r @ r, rho, atol=1e-12)
    with pytest.raises(ContractError):
        linalg.sqrtm_psd(-np.eye(2))
