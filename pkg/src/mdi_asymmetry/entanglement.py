"""Two-qubit concurrence, used to cross-check asymmetry against entanglement."""

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import PSD_ZERO_FLOOR, SIGMA2, eigvalsh_batch, sqrt_psd_batch
from .model import NORM_TOL, as_density_array

_YY = np.kron(SIGMA2, SIGMA2)


def concurrence_pure_batch(psis):
    v = np.asarray(psis, dtype=np.complex128).reshape(-1, 4)
    return 2.0 * np.abs(v[:, 0] * v[:, 3] - v[:, 1] * v[:, 2])


def concurrence_pure(psi):
    """``2 |ad - bc|`` for amplitudes (a, b, c, d) on |00>, |01>, |10>, |11>."""
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if v.shape != (4,):
        raise ShapeError(f"expected 4 amplitudes, got {v.size}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > NORM_TOL:
        raise DomainError(f"state vector is not normalized (|psi| = {norm:.12g})")
    return float(concurrence_pure_batch(v)[0])


def concurrence_batch(rhos):
    """Wootters concurrence for a stack of 4x4 density matrices.

    The spin-flip products ``rho (Y x Y) rho* (Y x Y)`` are not Hermitian,
    so their spectra are taken from the similar Hermitian matrices
    ``sqrt(rho) rho~ sqrt(rho)``.
    """
    r = np.asarray(rhos, dtype=np.complex128).reshape(-1, 4, 4)
    flipped = _YY @ r.conj() @ _YY
    root = sqrt_psd_batch(r)
    w = eigvalsh_batch(root @ flipped @ root)
    lam = np.sqrt(np.where(w > PSD_ZERO_FLOOR, w, 0.0))
    lam = -np.sort(-lam, axis=1)
    return np.maximum(0.0, lam[:, 0] - lam[:, 1] - lam[:, 2] - lam[:, 3])


def concurrence(rho):
    """Concurrence of a two-qubit :class:`DensityMatrix` (or validated array)."""
    r = as_density_array(rho)
    if r.shape != (4, 4):
        raise ShapeError("concurrence needs a 4x4 state")
    return float(concurrence_batch(r[None])[0])
