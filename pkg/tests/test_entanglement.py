import math

import numpy as np
import pytest

from mdi_asymmetry import entanglement as ent
from mdi_asymmetry import model as md
from mdi_asymmetry.errors import DomainError
from mdi_asymmetry.verify import random_density, random_unitary


def wootters_oracle(rho):
    """Square roots of the (non-Hermitian) spin-flip spectrum via numpy.linalg.eigvals."""
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    ev = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def test_pure_examples():
    assert ent.concurrence_pure(md.PSI_MINUS) == pytest.approx(1, abs=1e-15)
    assert ent.concurrence_pure(md.pure_product_state(md.PureProductParams(1.0, 2.5))) <= 1e-15
    psi = md.evolve_pure_closed(md.PureProductParams(0, math.pi), math.pi / 4)
    assert ent.concurrence_pure(psi) == pytest.approx(1, abs=1e-9)


def test_pure_rejects_unnormalized():
    with pytest.raises(DomainError):
        ent.concurrence_pure([1, 1, 0, 0])


def test_zero_plus_at_quarter_period_is_half():
    # the intermediate entanglement of |0>|+> at t = pi/4, by amplitude arithmetic
    psi = md.evolve_pure_closed(md.PureProductParams(0, math.pi / 2), math.pi / 4)
    assert ent.concurrence_pure(psi) == pytest.approx(0.5, abs=1e-12)


def test_mixed_examples():
    assert ent.concurrence(np.eye(4) / 4) == pytest.approx(0, abs=1e-12)
    assert ent.concurrence(md.DensityMatrix.from_ket(md.PHI_PLUS)) == pytest.approx(1, abs=1e-12)


def test_equal_z_family_stays_separable(ham):
    rho = md.bloch_product_state(md.BlochProductParams("Z", -0.3, -0.3))
    for t in np.linspace(0, 2 * math.pi, 30):
        assert ent.concurrence(md.evolve_density(rho, ham, t)) <= 1e-12


def test_agrees_with_pure_on_projectors(ham, rng):
    for ta, tb, t in rng.uniform(0, 2 * math.pi, (200, 3)):
        psi = md.unitary_at(ham, t) @ md.pure_product_state(md.PureProductParams(ta, tb))
        assert abs(ent.concurrence(md.DensityMatrix.from_ket(psi)) - ent.concurrence_pure(psi)) <= 1e-9


def test_matches_wootters_oracle(rng):
    for _ in range(200):
        rho = random_density(rng, rank=int(rng.integers(1, 5)))
        assert ent.concurrence(rho) == pytest.approx(wootters_oracle(rho), abs=1e-7)


def test_local_unitary_invariance(rng):
    for _ in range(100):
        rho = random_density(rng, rank=int(rng.integers(1, 5)))
        u = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        assert abs(ent.concurrence(u @ rho @ u.conj().T) - ent.concurrence(rho)) <= 1e-9


def test_zero_on_products(rng):
    for _ in range(100):
        rho = np.kron(random_density(rng, 2), random_density(rng, 2))
        assert ent.concurrence(rho) <= 1e-10
