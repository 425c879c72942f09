"""Dipolar Hamiltonian, initial-state families and their exact time evolution.

Conventions: hbar = 1, the coupling ``D`` is dimensionless and ``t`` is in
units of ``1/D``.  Qubit ``a`` is the left tensor factor.
"""

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import PAULI, SIGMA0, SIGMA1, SIGMA2, SIGMA3, EigenSystem, eigh

SQRT_HALF = np.sqrt(0.5)

KET0 = np.array([1, 0], dtype=np.complex128)
KET1 = np.array([0, 1], dtype=np.complex128)

# Bell basis in the standard ordering |00>, |01>, |10>, |11>
PSI_MINUS = SQRT_HALF * np.array([0, 1, -1, 0], dtype=np.complex128)
PSI_PLUS = SQRT_HALF * np.array([0, 1, 1, 0], dtype=np.complex128)
PHI_MINUS = SQRT_HALF * np.array([1, 0, 0, -1], dtype=np.complex128)
PHI_PLUS = SQRT_HALF * np.array([1, 0, 0, 1], dtype=np.complex128)
BELL_BASIS = (PSI_MINUS, PSI_PLUS, PHI_MINUS, PHI_PLUS)

DENSITY_TOL = 1e-10
NORM_TOL = 1e-9


class Subsystem(str, enum.Enum):
    A = "A"
    B = "B"


class BlochAxis(enum.Enum):
    X = 1
    Z = 3

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        aliases = {"X": cls.X, "1": cls.X, "Z": cls.Z, "3": cls.Z}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"Bloch axis must be X or Z, got {value!r}") from None

    @property
    def pauli(self):
        return SIGMA1 if self is BlochAxis.X else SIGMA3


@dataclass(frozen=True)
class PureProductParams:
    """Real product state cos(theta/2)|0> + sin(theta/2)|1> on each qubit."""

    theta_a: float
    theta_b: float


@dataclass(frozen=True)
class BlochProductParams:
    """Product of qubit states (1 + r sigma_j)/2 with a shared axis j."""

    axis: BlochAxis
    r_a: float
    r_b: float

    def __post_init__(self):
        object.__setattr__(self, "axis", BlochAxis.parse(self.axis))
        check_bloch_range(self.r_a, self.r_b)


@dataclass(frozen=True)
class BellCoefficients:
    """Amplitudes on (|Psi->, |Psi+>, |Phi->, |Phi+>)."""

    c1: float
    c2: float
    c3: float
    c4: float

    def as_array(self):
        return np.array([self.c1, self.c2, self.c3, self.c4])

    def state(self):
        return (
            self.c1 * PSI_MINUS + self.c2 * PSI_PLUS + self.c3 * PHI_MINUS + self.c4 * PHI_PLUS
        )


class DensityMatrix:
    """A validated 2x2 or 4x4 density operator.

    Raises :class:`DomainError` unless the matrix is Hermitian, has unit
    trace and no eigenvalue below ``-1e-10``.  The stored array is read-only.
    """

    __slots__ = ("mat",)

    def __init__(self, mat, tol=DENSITY_TOL):
        m = np.array(mat, dtype=np.complex128)
        if m.shape not in ((2, 2), (4, 4)):
            raise ShapeError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("density matrix has non-finite entries")
        herm = np.linalg.norm(m - m.conj().T)
        if herm > tol:
            raise DomainError(f"density matrix is not Hermitian (deviation {herm:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            raise DomainError(f"density matrix trace is {tr.real:.12g}, expected 1")
        m = 0.5 * (m + m.conj().T)
        lam_min = eigh(m).eigenvalues[-1]
        if lam_min < -tol:
            raise DomainError(f"density matrix has negative eigenvalue {lam_min:.3e}")
        m.setflags(write=False)
        self.mat = m

    @property
    def dim(self):
        return self.mat.shape[0]

    def purity(self):
        return float(np.real(np.trace(self.mat @ self.mat)))

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix({self.mat!r})"

    @classmethod
    def from_ket(cls, psi):
        v = np.asarray(psi, dtype=np.complex128).reshape(-1)
        return cls(np.outer(v, v.conj()))


def as_density_array(rho):
    """Return the raw array of a :class:`DensityMatrix` or validate an array."""
    if isinstance(rho, DensityMatrix):
        return rho.mat
    return DensityMatrix(rho).mat


def check_bloch_range(*rs):
    for r in rs:
        if not np.isfinite(r) or abs(r) > 1.0:
            raise DomainError(f"Bloch component must lie in [-1, 1], got {r!r}")


def _dipolar_matrix(coupling, n_hat):
    n_sigma = sum(n * s for n, s in zip(n_hat, PAULI))
    dot = sum(np.kron(s, s) for s in PAULI)
    return 0.5 * coupling * (dot - 3.0 * np.kron(n_sigma, n_sigma))


@dataclass(frozen=True, eq=False)
class MdiHamiltonian:
    """Two-spin dipolar Hamiltonian with a cached eigensystem.

    ``matrix`` is ``(D/2) [sigma.sigma - 3 (n.sigma)(n.sigma)]``; with the
    default ``D = 1`` and ``n = z`` this is the Bell-diagonal operator with
    spectrum {2, 0, -1, -1}.
    """

    coupling: float = 1.0
    n_hat: tuple = (0.0, 0.0, 1.0)
    matrix: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        n = np.asarray(self.n_hat, dtype=float)
        if n.shape != (3,) or not np.all(np.isfinite(n)):
            raise DomainError(f"axis must be a real 3-vector, got {self.n_hat!r}")
        if abs(np.linalg.norm(n) - 1.0) > 1e-9:
            raise DomainError(f"axis must have unit norm, got |n| = {np.linalg.norm(n):.12g}")
        if not np.isfinite(self.coupling):
            raise DomainError("coupling must be finite")
        object.__setattr__(self, "n_hat", tuple(float(x) for x in n))
        if self.matrix is None:
            m = _dipolar_matrix(float(self.coupling), n)
        else:
            m = np.array(self.matrix, dtype=np.complex128)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @cached_property
    def eig(self) -> EigenSystem:
        return eigh(self.matrix)

    @property
    def eigenvalues(self):
        return self.eig.eigenvalues

    @property
    def spectral_span(self):
        w = self.eig.eigenvalues
        return float(w[0] - w[-1])

    @cached_property
    def squared(self):
        return self.matrix @ self.matrix

    def unitary(self, t):
        return unitary_at(self, t)


def build_hamiltonian(coupling=1.0, n_hat=(0.0, 0.0, 1.0)):
    """Dipolar Hamiltonian for coupling ``D`` along the unit axis ``n_hat``."""
    return MdiHamiltonian(coupling=float(coupling), n_hat=tuple(n_hat))


_CANONICAL_MATRIX = 0.5 * (
    np.kron(SIGMA1, SIGMA1) + np.kron(SIGMA2, SIGMA2) - 2.0 * np.kron(SIGMA3, SIGMA3)
)


def canonical_hamiltonian():
    """``(s1 s1 + s2 s2 - 2 s3 s3) / 2``: D = 1, dipoles along z."""
    return MdiHamiltonian(1.0, (0.0, 0.0, 1.0), matrix=_CANONICAL_MATRIX)


def pure_product_state(p):
    """State vector (length 4) of a :class:`PureProductParams`."""
    a = np.array([np.cos(p.theta_a / 2), np.sin(p.theta_a / 2)], dtype=np.complex128)
    b = np.array([np.cos(p.theta_b / 2), np.sin(p.theta_b / 2)], dtype=np.complex128)
    return np.kron(a, b)


def pure_product_states(theta_a, theta_b):
    """Vectorized :func:`pure_product_state`; returns shape (N, 4)."""
    ta, tb = np.broadcast_arrays(np.asarray(theta_a, float), np.asarray(theta_b, float))
    ca, sa = np.cos(ta / 2), np.sin(ta / 2)
    cb, sb = np.cos(tb / 2), np.sin(tb / 2)
    out = np.stack([ca * cb, ca * sb, sa * cb, sa * sb], axis=-1)
    return out.astype(np.complex128).reshape(-1, 4)


def bloch_product_states(axis, r_a, r_b):
    """Vectorized Bloch product states, shape (N, 4, 4)."""
    s = BlochAxis.parse(axis).pauli
    ra, rb = np.broadcast_arrays(np.asarray(r_a, float), np.asarray(r_b, float))
    ra, rb = ra.reshape(-1), rb.reshape(-1)
    rho_a = 0.5 * (SIGMA0[None] + ra[:, None, None] * s[None])
    rho_b = 0.5 * (SIGMA0[None] + rb[:, None, None] * s[None])
    return np.einsum("nij,nkl->nikjl", rho_a, rho_b).reshape(-1, 4, 4)


def bloch_product_state(p):
    """Density matrix of a :class:`BlochProductParams`."""
    return DensityMatrix(bloch_product_states(p.axis, p.r_a, p.r_b)[0])


def unitaries_at(h, t):
    """``exp(-i H t)`` for each time in ``t``; shape (N, 4, 4)."""
    ts = np.asarray(t, dtype=float).reshape(-1)
    w, v = h.eig.eigenvalues, h.eig.eigenvectors
    phases = np.exp(-1j * np.outer(ts, w))
    return np.einsum("ik,nk,jk->nij", v, phases, v.conj())


def unitary_at(h, t):
    """Time-evolution operator ``exp(-i H t)`` by spectral calculus."""
    return unitaries_at(h, t)[0]


def evolve_pure_closed(p, t):
    """Closed-form evolved product state.

    Carries the explicit ``exp(2it)`` on the |00>, |11> block, so it equals
    ``exp(it) * exp(-iHt) |psi>`` for the canonical Hamiltonian.
    """
    return evolve_pure_closed_batch(p.theta_a, p.theta_b, t)[0]


def evolve_pure_closed_batch(theta_a, theta_b, t):
    ta, tb, tt = np.broadcast_arrays(*(np.asarray(x, float) for x in (theta_a, theta_b, t)))
    ta, tb, tt = ta.reshape(-1), tb.reshape(-1), tt.reshape(-1)
    aa, ba = np.cos(ta / 2), np.sin(ta / 2)
    ab, bb = np.cos(tb / 2), np.sin(tb / 2)
    c, s = np.cos(tt), np.sin(tt)
    ph = np.exp(2j * tt)
    out = np.empty((ta.size, 4), dtype=np.complex128)
    out[:, 0] = ph * aa * ab
    out[:, 1] = aa * bb * c - 1j * ba * ab * s
    out[:, 2] = ba * ab * c - 1j * aa * bb * s
    out[:, 3] = ph * ba * bb
    return out


def evolve_densities(rho, h, t):
    """``U rho U^H`` for a stack of states and times (broadcast on the batch axis)."""
    u = unitaries_at(h, t)
    r = np.asarray(rho, dtype=np.complex128).reshape(-1, 4, 4)
    return u @ r @ np.conj(np.swapaxes(u, 1, 2))


def evolve_density(rho, h, t):
    """Evolved :class:`DensityMatrix` ``U_t rho U_t^H``."""
    r = as_density_array(rho)
    if r.shape != (4, 4):
        raise ShapeError("evolve_density needs a two-qubit (4x4) state")
    return DensityMatrix(evolve_densities(r, h, t)[0])


def _outer(x, y):
    return np.outer(x, y.conj())


def evolved_rho1_closed(r_a, r_b, t):
    """Closed form of the X-family product state after time ``t`` (4x4 array)."""
    e3, e1 = np.exp(3j * t), np.exp(1j * t)
    m = (
        (1 + r_a * r_b) * (_outer(PSI_PLUS, PSI_PLUS) + _outer(PHI_PLUS, PHI_PLUS))
        + (1 - r_a * r_b) * (_outer(PSI_MINUS, PSI_MINUS) + _outer(PHI_MINUS, PHI_MINUS))
        + (r_b + r_a) * (e3 * _outer(PHI_PLUS, PSI_PLUS) + np.conj(e3) * _outer(PSI_PLUS, PHI_PLUS))
        + (r_b - r_a) * (e1 * _outer(PHI_MINUS, PSI_MINUS) + np.conj(e1) * _outer(PSI_MINUS, PHI_MINUS))
    )
    return m / 4


def evolved_rho3_closed(r_a, r_b, t):
    """Closed form of the Z-family product state after time ``t`` (4x4 array)."""
    d = r_a - r_b
    c2, s2 = np.cos(2 * t), np.sin(2 * t)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = (1 + r_a) * (1 + r_b)
    m[1, 1] = 1 - r_a * r_b + d * c2
    m[1, 2] = 1j * d * s2
    m[2, 1] = -1j * d * s2
    m[2, 2] = 1 - r_a * r_b - d * c2
    m[3, 3] = (1 - r_a) * (1 - r_b)
    return m / 4


def bell_coefficients(p):
    """Expansion of the product state in the Bell basis."""
    ca, sa = np.cos(p.theta_a / 2), np.sin(p.theta_a / 2)
    cb, sb = np.cos(p.theta_b / 2), np.sin(p.theta_b / 2)
    return BellCoefficients(
        c1=float(SQRT_HALF * (ca * sb - sa * cb)),
        c2=float(SQRT_HALF * (ca * sb + sa * cb)),
        c3=float(SQRT_HALF * (ca * cb - sa * sb)),
        c4=float(SQRT_HALF * (ca * cb + sa * sb)),
    )
