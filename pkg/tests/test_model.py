import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from mdi_asymmetry import model as md
from mdi_asymmetry.errors import DomainError, ShapeError
from mdi_asymmetry.linalg import SIGMA1, SIGMA2, SIGMA3

angle = st.floats(0, 2 * math.pi, allow_nan=False)
time = st.floats(-20, 20, allow_nan=False)
I4 = np.eye(4)


def test_canonical_matrix_is_the_bell_diagonal_operator(ham):
    expected = 0.5 * (np.kron(SIGMA1, SIGMA1) + np.kron(SIGMA2, SIGMA2) - 2 * np.kron(SIGMA3, SIGMA3))
    np.testing.assert_array_equal(ham.matrix, expected)
    # written out: diag(-1, 1, 1, -1) on the diagonal, 1 between |01> and |10>
    np.testing.assert_array_equal(
        ham.matrix.real, [[-1, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, -1]]
    )


@pytest.mark.parametrize(
    "ket,eigval", [(md.PSI_MINUS, 0.0), (md.PSI_PLUS, 2.0), (md.PHI_PLUS, -1.0), (md.PHI_MINUS, -1.0)]
)
def test_bell_states_are_eigenvectors(ham, ket, eigval):
    np.testing.assert_allclose(ham.matrix @ ket, eigval * ket, atol=1e-15)


def test_hamiltonian_invariants(ham):
    m = ham.matrix
    assert np.linalg.norm(m - m.conj().T) <= 1e-12
    assert abs(np.trace(m)) <= 1e-12
    np.testing.assert_allclose(ham.eigenvalues, [2, 0, -1, -1], atol=1e-12)
    assert ham.spectral_span == pytest.approx(3.0, abs=1e-12)


def test_build_matches_canonical(ham):
    np.testing.assert_allclose(md.build_hamiltonian(1.0, (0, 0, 1)).matrix, ham.matrix, atol=1e-15)


def test_vector_form_is_twice_canonical(ham):
    # without the 1/2 the dipolar display with D=1, n=z doubles the canonical matrix
    sig = (SIGMA1, SIGMA2, SIGMA3)
    full = sum(np.kron(s, s) for s in sig) - 3 * np.kron(SIGMA3, SIGMA3)
    np.testing.assert_allclose(full, 2 * ham.matrix, atol=1e-15)


def test_zero_coupling():
    np.testing.assert_array_equal(md.build_hamiltonian(0.0, (0.6, 0.0, 0.8)).matrix, np.zeros((4, 4)))


def test_other_axis_same_spectrum():
    h = md.build_hamiltonian(1.0, (1, 0, 0))
    assert np.linalg.norm(h.matrix - h.matrix.conj().T) <= 1e-12
    assert abs(np.trace(h.matrix)) <= 1e-12
    np.testing.assert_allclose(h.eigenvalues, [2, 0, -1, -1], atol=1e-12)
    n = np.array([1.0, 2.0, -2.0]) / 3.0
    np.testing.assert_allclose(md.build_hamiltonian(2.5, n).eigenvalues, 2.5 * np.array([2, 0, -1, -1]), atol=1e-12)


def test_non_unit_axis_rejected():
    with pytest.raises(DomainError):
        md.build_hamiltonian(1.0, (0, 0, 1.1))


def test_pure_product_examples():
    np.testing.assert_allclose(md.pure_product_state(md.PureProductParams(0, 0)), [1, 0, 0, 0])
    np.testing.assert_allclose(
        md.pure_product_state(md.PureProductParams(math.pi / 2, math.pi / 2)), [0.5] * 4, atol=1e-16
    )
    np.testing.assert_allclose(
        md.pure_product_state(md.PureProductParams(0, math.pi)), [0, 1, 0, 0], atol=1e-16
    )


def test_bloch_product_examples():
    np.testing.assert_allclose(
        md.bloch_product_state(md.BlochProductParams("Z", 1, -1)).mat, np.diag([0, 1, 0, 0])
    )
    np.testing.assert_allclose(md.bloch_product_state(md.BlochProductParams("X", 0, 0)).mat, I4 / 4)
    plus = np.full(4, 0.5)
    np.testing.assert_allclose(
        md.bloch_product_state(md.BlochProductParams(md.BlochAxis.X, 1, 1)).mat, np.outer(plus, plus)
    )
    with pytest.raises(DomainError):
        md.BlochProductParams("X", 1.01, 0)


def test_density_validation():
    with pytest.raises(DomainError):
        md.DensityMatrix(np.diag([0.5, 0.6, 0, 0]))
    with pytest.raises(DomainError):
        md.DensityMatrix(np.diag([1.2, -0.2, 0, 0]))
    with pytest.raises(DomainError):
        md.DensityMatrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(ShapeError):
        md.DensityMatrix(np.eye(3) / 3)
    rho = md.DensityMatrix(I4 / 4)
    assert not rho.mat.flags.writeable
    assert rho.purity() == pytest.approx(0.25)


class TestUnitary:
    def test_identity_at_zero_and_two_pi(self, ham):
        np.testing.assert_allclose(md.unitary_at(ham, 0.0), I4, atol=1e-15)
        np.testing.assert_allclose(md.unitary_at(ham, 2 * math.pi), I4, atol=1e-14)

    def test_matches_scipy_expm(self, ham, rng):
        for t in rng.uniform(-10, 10, 50):
            u = md.unitary_at(ham, t)
            np.testing.assert_allclose(u, scipy.linalg.expm(-1j * ham.matrix * t), atol=1e-12)
            assert np.linalg.norm(u.conj().T @ u - I4) <= 1e-11

    def test_spectral_form(self, ham):
        t = 0.83
        o = lambda v: np.outer(v, v.conj())  # noqa: E731
        expected = (
            o(md.PSI_MINUS)
            + np.exp(-2j * t) * o(md.PSI_PLUS)
            + np.exp(1j * t) * (o(md.PHI_MINUS) + o(md.PHI_PLUS))
        )
        np.testing.assert_allclose(md.unitary_at(ham, t), expected, atol=1e-14)

    def test_singlet_is_stationary(self, ham):
        for t in np.linspace(0, 7, 15):
            np.testing.assert_allclose(md.unitary_at(ham, t) @ md.PSI_MINUS, md.PSI_MINUS, atol=1e-14)

    @settings(max_examples=100, deadline=None)
    @given(time, time)
    def test_group_law(self, s, t):
        h = md.canonical_hamiltonian()
        lhs = md.unitary_at(h, s) @ md.unitary_at(h, t)
        assert np.linalg.norm(lhs - md.unitary_at(h, s + t)) <= 1e-10


class TestEvolvePureClosed:
    def test_ket01_quarter_period(self):
        psi = md.evolve_pure_closed(md.PureProductParams(0.0, math.pi), math.pi / 4)
        np.testing.assert_allclose(psi, np.array([0, 1, -1j, 0]) / math.sqrt(2), atol=1e-15)

    def test_identity_at_zero(self, rng):
        for ta, tb in rng.uniform(0, 2 * math.pi, (20, 2)):
            p = md.PureProductParams(ta, tb)
            np.testing.assert_allclose(md.evolve_pure_closed(p, 0.0), md.pure_product_state(p), atol=1e-15)

    def test_equals_matrix_evolution_up_to_explicit_phase(self, ham, rng):
        for ta, tb, t in rng.uniform(0, 2 * math.pi, (500, 3)):
            p = md.PureProductParams(ta, tb)
            closed = md.evolve_pure_closed(p, t)
            mat = md.unitary_at(ham, t) @ md.pure_product_state(p)
            assert np.linalg.norm(closed - np.exp(1j * t) * mat) <= 1e-10
            assert abs(np.linalg.norm(closed) - 1) <= 1e-12

    def test_phase_is_global(self, ham):
        # the bare difference is not small: the closed form carries exp(it)
        p = md.PureProductParams(1.1, 2.3)
        t = 0.7
        diff = md.evolve_pure_closed(p, t) - md.unitary_at(ham, t) @ md.pure_product_state(p)
        assert np.linalg.norm(diff) > 0.1


class TestEvolveDensity:
    def test_maximally_mixed_invariant(self, ham):
        out = md.evolve_density(I4 / 4, ham, 1.234)
        np.testing.assert_allclose(out.mat, I4 / 4, atol=1e-15)

    def test_equal_z_components_stationary(self, ham):
        rho = md.bloch_product_state(md.BlochProductParams("Z", 0.4, 0.4))
        for t in (0.3, 1.9, 4.4):
            np.testing.assert_allclose(md.evolve_density(rho, ham, t).mat, rho.mat, atol=1e-14)

    def test_closed_forms(self, ham, rng):
        for ra, rb, t in zip(*rng.uniform(-1, 1, (2, 500)), rng.uniform(0, 2 * math.pi, 500)):
            for axis, closed in (("X", md.evolved_rho1_closed), ("Z", md.evolved_rho3_closed)):
                rho = md.bloch_product_state(md.BlochProductParams(axis, ra, rb))
                out = md.evolve_density(rho, ham, t).mat
                assert np.abs(out - closed(ra, rb, t)).max() <= 1e-10

    def test_x_pure_corner(self, ham):
        rho = md.bloch_product_state(md.BlochProductParams("X", 1, 1))
        np.testing.assert_allclose(
            md.evolve_density(rho, ham, 0.9).mat, md.evolved_rho1_closed(1.0, 1.0, 0.9), atol=1e-14
        )

    def test_purity_preserved(self, ham, rng):
        from mdi_asymmetry.verify import random_density

        for _ in range(100):
            rho = md.DensityMatrix(random_density(rng))
            out = md.evolve_density(rho, ham, rng.uniform(0, 10))
            assert abs(out.purity() - rho.purity()) <= 1e-10


class TestBellCoefficients:
    @pytest.mark.parametrize(
        "ta,tb,expected",
        [
            (math.pi / 2, math.pi / 2, (0, 1 / math.sqrt(2), 0, 1 / math.sqrt(2))),
            (0, math.pi, (1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0)),
            (0, 0, (0, 0, 1 / math.sqrt(2), 1 / math.sqrt(2))),
        ],
    )
    def test_examples(self, ta, tb, expected):
        c = md.bell_coefficients(md.PureProductParams(ta, tb))
        np.testing.assert_allclose(c.as_array(), expected, atol=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(angle, angle)
    def test_reconstruction(self, ta, tb):
        p = md.PureProductParams(ta, tb)
        c = md.bell_coefficients(p)
        assert np.linalg.norm(c.state() - md.pure_product_state(p)) <= 1e-12
        assert abs(np.sum(c.as_array() ** 2) - 1) <= 1e-12
