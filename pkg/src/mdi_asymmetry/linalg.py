"""Dense complex linear algebra for 2x2 and 4x4 operators.

Matrices are plain ``numpy`` complex128 arrays.  Shape mistakes raise
:class:`~mdi_asymmetry.errors.ShapeError` instead of broadcasting silently.
The Hermitian eigensolver and the PSD square root run on the batched
kernels selected in :mod:`mdi_asymmetry._backend`.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError, NotPSDError, NumericError, ShapeError

HERMITIAN_TOL = 1e-10
PSD_NEG_TOL = 1e-10
# eigenvalues this small are round-off of an exact zero; rooting them would
# inject O(1e-8) noise into every rank-deficient state
PSD_ZERO_FLOOR = 1e-14

SIGMA0 = np.eye(2, dtype=np.complex128)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SIGMA1, SIGMA2, SIGMA3)


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a):
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def _square(a, name="matrix"):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got {m.shape}")
    return m


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    """Kronecker product with block ``(i, j)`` equal to ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def adjoint(a):
    return as_matrix(a).conj().T


def trace(a):
    return complex(np.trace(_square(a)))


def add(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def sub(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot subtract {b.shape} from {a.shape}")
    return a - b


def scale(a, z):
    return complex(z) * as_matrix(a)


def commutator(a, b):
    """Return ``ab - ba``."""
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ShapeError(f"commutator needs equal shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def frobenius(a):
    return float(np.linalg.norm(as_matrix(a)))


def _hermitian_part(a, tol=HERMITIAN_TOL):
    """Validate a (batch of) Hermitian matrix and return its symmetrized form."""
    ah = np.conj(np.swapaxes(a, -1, -2))
    dev = np.sqrt(np.sum(np.abs(a - ah) ** 2, axis=(-2, -1)))
    if np.any(dev > tol):
        worst = float(np.max(dev))
        raise DomainError(f"matrix is not Hermitian (|A - A^H|_F = {worst:.3e})")
    return 0.5 * (a + ah)


def _order_columns(w, v, tie_tol=1e-10):
    """Descending eigenvalues; near-ties broken by the eigenvector's dominant index.

    The dominant index is the first component within ``tie_tol`` of the
    largest magnitude.  Each eigenvector is rephased so that component is
    real and positive, which makes the output reproducible.
    """
    n = w.shape[0]
    mag = np.abs(v)
    dominant = np.argmax(mag >= mag.max(axis=0) - tie_tol, axis=0)
    by_value = sorted(range(n), key=lambda k: -w[k])
    order, cluster = [], [by_value[0]]
    for k in by_value[1:]:
        if w[cluster[-1]] - w[k] <= tie_tol:
            cluster.append(k)
        else:
            order.extend(sorted(cluster, key=lambda j: (dominant[j], j)))
            cluster = [k]
    order.extend(sorted(cluster, key=lambda j: (dominant[j], j)))
    v = v[:, order]
    phase = v[dominant[order], np.arange(n)]
    v = v * (np.abs(phase) / phase)[None, :]
    return w[order], v


def eigh(a):
    """Hermitian eigendecomposition by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Hermitian within ``|a - a^H|_F <= 1e-10``; the symmetrized part is
        what gets decomposed.

    Returns
    -------
    EigenSystem
        Eigenvalues in descending order, eigenvectors as unitary columns.

    Raises
    ------
    DomainError
        If ``a`` is not Hermitian within tolerance.
    NumericError
        If Jacobi does not converge within 60 sweeps.
    """
    m = _hermitian_part(_square(a))
    w, v, sweeps = _backend.kernels.jacobi_eigh_batch(m[None])
    if sweeps[0] < 0:
        raise NumericError("Jacobi eigensolver did not converge")
    w, v = _order_columns(w[0], v[0])
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def eigvalsh_batch(a):
    """Unsorted eigenvalues of a stack of Hermitian matrices, shape (N, n)."""
    m = _hermitian_part(np.asarray(a, dtype=np.complex128))
    w, _, sweeps = _backend.kernels.jacobi_eigh_batch(m)
    bad = np.flatnonzero(sweeps < 0)
    if bad.size:
        raise NumericError("Jacobi eigensolver did not converge", index=int(bad[0]))
    return w


def sqrt_psd_batch(a):
    """Principal square roots of a stack of PSD matrices, shape (N, n, n)."""
    m = _hermitian_part(np.asarray(a, dtype=np.complex128))
    root, min_eig, sweeps = _backend.kernels.sqrt_psd_batch(
        m, neg_tol=PSD_NEG_TOL, zero_floor=PSD_ZERO_FLOOR
    )
    bad = np.flatnonzero(sweeps < 0)
    if bad.size:
        raise NumericError("Jacobi eigensolver did not converge", index=int(bad[0]))
    neg = np.flatnonzero(min_eig < -PSD_NEG_TOL)
    if neg.size:
        i = int(neg[0])
        raise NotPSDError(
            f"matrix is not positive semidefinite (eigenvalue {min_eig[i]:.3e})",
            index=i,
            eigenvalue=float(min_eig[i]),
        )
    return root


def sqrt_psd(rho):
    """Principal square root of a PSD matrix.

    Eigenvalues in ``[-1e-10, 1e-14]`` are treated as zero.
    """
    return sqrt_psd_batch(_square(rho)[None])[0]


def partial_trace_batch(rho, keep):
    """Reduced 2x2 states of a stack of 4x4 two-qubit matrices."""
    r = np.asarray(rho, dtype=np.complex128)
    if r.shape[-2:] != (4, 4):
        raise ShapeError(f"partial trace needs 4x4 matrices, got {r.shape[-2:]}")
    t = r.reshape(r.shape[:-2] + (2, 2, 2, 2))
    keep = str(keep).upper()
    if keep == "A":
        return np.einsum("...ijkj->...ik", t)
    if keep == "B":
        return np.einsum("...jijk->...ik", t)
    raise ValueError(f"subsystem must be 'A' or 'B', got {keep!r}")


def partial_trace(rho, keep="A"):
    """Trace out one qubit of a 4x4 operator; ``keep`` names the survivor."""
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise ShapeError(f"partial trace needs a 4x4 matrix, got {m.shape}")
    return partial_trace_batch(m, keep)
