"""Wigner-Yanase asymmetry with respect to the dipolar Hamiltonian and its propagator.

Every measure has a generic matrix route (spectral square roots, traces)
and, where one exists, a closed-form route in the state parameters.  The
``*_batch`` helpers evaluate many states at once and are what the scan
engine calls; the single-state functions are thin wrappers over them.

Scales: ``raw`` is the skew information itself, in units of squared
Hamiltonian eigenvalues.  ``normalized`` multiplies by
``4 / (lambda_max - lambda_min)**2`` (4/9 for the canonical Hamiltonian),
so that its maximum over states is 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, ShapeError
from .linalg import SIGMA0, partial_trace_batch, sqrt_psd_batch
from .model import (
    NORM_TOL,
    DensityMatrix,
    Subsystem,
    as_density_array,
    bell_coefficients,
    bloch_product_states,
    canonical_hamiltonian,
    check_bloch_range,
    evolve_densities,
    pure_product_states,
)

NEG_CLAMP = 1e-12
UNITARY_TOL = 1e-9
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class AsymmetryValue:
    raw: float
    normalized: float


def normalization(h):
    """Factor taking raw skew information to the unit-maximum scale."""
    span = h.spectral_span
    return 4.0 / span**2 if span > 0 else 1.0


def _clamp_nonneg(x, what):
    x = np.asarray(x, dtype=float)
    bad = np.flatnonzero(x < -NEG_CLAMP)
    if bad.size:
        i = int(bad[0])
        raise NumericError(f"{what} came out negative ({x.flat[i]:.3e})", index=i)
    return np.where(x < 0.0, 0.0, x)


def _value(raw, h):
    raw = float(raw)
    return AsymmetryValue(raw=raw, normalized=raw * normalization(h))


# ---------------------------------------------------------------- generator


def wy_raw_batch(rhos, h):
    """Skew information ``tr(rho H^2) - tr(sqrt(rho) H sqrt(rho) H)`` per state."""
    r = np.asarray(rhos, dtype=np.complex128)
    root = sqrt_psd_batch(r)
    hm = h.matrix
    first = np.einsum("nij,ji->n", r, h.squared).real
    rh = root @ hm
    second = np.einsum("nij,nji->n", rh, rh).real
    return _clamp_nonneg(first - second, "skew information")


def wy_asymmetry(rho, h):
    """Wigner-Yanase asymmetry of a two-qubit state with respect to ``h``."""
    r = as_density_array(rho)
    if r.shape != (4, 4):
        raise ShapeError("wy_asymmetry needs a 4x4 state")
    return _value(wy_raw_batch(r[None], h)[0], h)


def variance_batch(psis, h):
    """``<H^2> - <H>^2`` for a stack of normalized state vectors."""
    v = np.asarray(psis, dtype=np.complex128).reshape(-1, 4)
    hv = v @ h.matrix.T
    mean = np.einsum("ni,ni->n", v.conj(), hv).real
    second = np.einsum("ni,ni->n", hv.conj(), hv).real
    return _clamp_nonneg(second - mean**2, "variance")


def _check_normalized(psi):
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if v.shape != (4,):
        raise ShapeError(f"expected a two-qubit state vector, got {v.size} amplitudes")
    if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
        raise DomainError(f"state vector is not normalized (|psi| = {np.linalg.norm(v):.12g})")
    return v


def wy_asymmetry_pure(psi, h):
    """Asymmetry of a pure state: the variance of ``h``."""
    v = _check_normalized(psi)
    return _value(variance_batch(v[None], h)[0], h)


def closed_form_pure_batch(theta_a, theta_b):
    ta, tb = np.broadcast_arrays(np.asarray(theta_a, float), np.asarray(theta_b, float))
    aa, ba = np.cos(ta / 2), np.sin(ta / 2)
    ab, bb = np.cos(tb / 2), np.sin(tb / 2)
    cross = (aa * bb + ba * ab) ** 2
    same = aa**2 * ab**2 + ba**2 * bb**2
    return 4.0 / 9.0 * (2 * cross + same - (cross - same) ** 2)


def closed_form_pure(p):
    """Normalized asymmetry of a real product state, in closed form."""
    return float(closed_form_pure_batch(p.theta_a, p.theta_b))


def closed_form_rho3_batch(r_a, r_b):
    ra, rb = np.asarray(r_a, float), np.asarray(r_b, float)
    root = np.sqrt(np.maximum((1 - ra**2) * (1 - rb**2), 0.0))
    return 2.0 * (1 - ra * rb - root) / 9.0


def closed_form_rho1_batch(r_a, r_b):
    ra, rb = np.asarray(r_a, float), np.asarray(r_b, float)
    root = np.sqrt(np.maximum((1 - ra**2) * (1 - rb**2), 0.0))
    return (5 + 4 * ra * rb - 5 * root) / 9.0


def closed_form_rho3(r_a, r_b):
    """Normalized asymmetry of the incoherent (Z-axis) product family."""
    check_bloch_range(r_a, r_b)
    return float(closed_form_rho3_batch(r_a, r_b))


def closed_form_rho1(r_a, r_b):
    """Normalized asymmetry of the coherent (X-axis) product family."""
    check_bloch_range(r_a, r_b)
    return float(closed_form_rho1_batch(r_a, r_b))


# ------------------------------------------------------------------- local

_HALF_ID = 0.5 * SIGMA0


def local_state_batch(rhos, which=Subsystem.A):
    which = Subsystem(str(getattr(which, "value", which)).upper())
    reduced = partial_trace_batch(rhos, which.value)
    if which is Subsystem.A:
        out = np.einsum("nij,kl->nikjl", reduced, _HALF_ID)
    else:
        out = np.einsum("ij,nkl->nikjl", _HALF_ID, reduced)
    return out.reshape(-1, 4, 4)


def local_state(rho_t, which=Subsystem.A):
    """Reduced state of ``which`` padded with a maximally mixed partner.

    The kept qubit stays in its own tensor slot: subsystem A gives
    ``rho_A (x) I/2``, subsystem B gives ``I/2 (x) rho_B``.
    """
    r = as_density_array(rho_t)
    if r.shape != (4, 4):
        raise ShapeError("local_state needs a 4x4 state")
    return DensityMatrix(local_state_batch(r[None], which)[0])


def local_raw_batch(rho0s, h, t, which=Subsystem.A):
    """Raw local asymmetry for a stack of initial states and times."""
    evolved = evolve_densities(rho0s, h, t)
    return wy_raw_batch(local_state_batch(evolved, which), h)


def local_asymmetry(rho0, h, t, which=Subsystem.A):
    """Asymmetry of the padded reduced state of ``which`` after time ``t``."""
    r = as_density_array(rho0)
    if r.shape != (4, 4):
        raise ShapeError("local_asymmetry needs a 4x4 state")
    return _value(local_raw_batch(r[None], h, t, which)[0], h)


def local_pure_raw_batch(theta_a, theta_b, t, h, which=Subsystem.A):
    """Matrix-route local asymmetry of evolved product states (raw scale)."""
    psi = pure_product_states(theta_a, theta_b)
    rho0 = np.einsum("ni,nj->nij", psi, psi.conj())
    return local_raw_batch(rho0, h, t, which)


def local_closed_form_rho1_batch(r_a, r_b, t):
    ra, rb, tt = (np.asarray(x, float) for x in (r_a, r_b, t))
    x = (ra - rb) * np.cos(tt) + (ra + rb) * np.cos(3 * tt) + 2
    y = (rb - ra) * np.cos(tt) - (ra + rb) * np.cos(3 * tt) + 2
    d = np.sqrt(np.maximum(x, 0.0)) - np.sqrt(np.maximum(y, 0.0))
    return 5.0 * d * d / 16.0


def local_closed_form_rho3_batch(r_a, r_b, t):
    ra, rb, tt = (np.asarray(x, float) for x in (r_a, r_b, t))
    s2 = np.sin(tt) ** 2
    d = np.sqrt(np.maximum(1 - ra + (ra - rb) * s2, 0.0)) - np.sqrt(
        np.maximum(1 + ra + (rb - ra) * s2, 0.0)
    )
    return d * d / 9.0


def local_closed_form_rho1(r_a, r_b, t):
    """Local asymmetry of qubit A for the X family, on the **raw** scale.

    Multiply by ``normalization(canonical_hamiltonian())`` (4/9) to compare
    with normalized values.
    """
    check_bloch_range(r_a, r_b)
    return float(local_closed_form_rho1_batch(r_a, r_b, t))


def local_closed_form_rho3(r_a, r_b, t):
    """Local asymmetry of qubit A for the Z family, on the **normalized** scale."""
    check_bloch_range(r_a, r_b)
    return float(local_closed_form_rho3_batch(r_a, r_b, t))


# ----------------------------------------------------------------- unitary


def _check_unitary(u):
    m = np.asarray(u, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ShapeError(f"expected a 4x4 unitary, got {m.shape}")
    dev = np.linalg.norm(m.conj().T @ m - np.eye(4))
    if dev > UNITARY_TOL:
        raise DomainError(f"operator is not unitary (|U^H U - I|_F = {dev:.3e})")
    return m


def unitary_asymmetry_batch(rhos, us):
    """``1 - Re tr(sqrt(rho) U sqrt(rho) U^H)`` per (state, unitary) pair."""
    root = sqrt_psd_batch(np.asarray(rhos, dtype=np.complex128))
    u = np.asarray(us, dtype=np.complex128)
    ru = root @ u
    rud = root @ np.conj(np.swapaxes(u, 1, 2))
    overlap = np.einsum("nij,nji->n", ru, rud)
    bad = np.flatnonzero(np.abs(overlap.imag) > IMAG_TOL)
    if bad.size:
        i = int(bad[0])
        raise NumericError(f"trace has imaginary part {overlap.imag[i]:.3e}", index=i)
    return _clamp_nonneg(1.0 - overlap.real, "unitary asymmetry")


def unitary_asymmetry(rho, u):
    """Skew information of ``rho`` with respect to a unitary ``u``; in [0, 2]."""
    r = as_density_array(rho)
    m = _check_unitary(u)
    return float(unitary_asymmetry_batch(r[None], m[None])[0])


def unitary_pure_closed_batch(theta_a, theta_b, t):
    ta, tb, tt = (np.asarray(x, float) for x in (theta_a, theta_b, t))
    ca, sa = np.cos(ta / 2), np.sin(ta / 2)
    cb, sb = np.cos(tb / 2), np.sin(tb / 2)
    c1 = (ca * sb - sa * cb) ** 2 / 2
    c2 = (ca * sb + sa * cb) ** 2 / 2
    c34 = ((ca * cb - sa * sb) ** 2 + (ca * cb + sa * sb) ** 2) / 2
    re = c1 + c2 * np.cos(2 * tt) + c34 * np.cos(tt)
    im = c34 * np.sin(tt) - c2 * np.sin(2 * tt)
    return _clamp_nonneg(1.0 - re**2 - im**2, "unitary asymmetry")


def unitary_asymmetry_pure_closed(p, t):
    """Closed-form unitary asymmetry of a product state under ``exp(-iHt)``.

    The Bell weights come from :func:`bell_coefficients`.
    """
    c = bell_coefficients(p)
    w1, w2, w34 = c.c1**2, c.c2**2, c.c3**2 + c.c4**2
    re = w1 + w2 * np.cos(2 * t) + w34 * np.cos(t)
    im = w34 * np.sin(t) - w2 * np.sin(2 * t)
    return float(_clamp_nonneg(1.0 - re**2 - im**2, "unitary asymmetry"))


def pure_overlap_loss(psi, u):
    """``1 - |<psi|U psi>|^2``."""
    v = _check_normalized(psi)
    return float(1.0 - abs(np.vdot(v, _check_unitary(u) @ v)) ** 2)


def default_hamiltonian():
    return canonical_hamiltonian()


__all__ = [
    "AsymmetryValue",
    "normalization",
    "wy_asymmetry",
    "wy_asymmetry_pure",
    "closed_form_pure",
    "closed_form_rho1",
    "closed_form_rho3",
    "local_state",
    "local_asymmetry",
    "local_closed_form_rho1",
    "local_closed_form_rho3",
    "unitary_asymmetry",
    "unitary_asymmetry_pure_closed",
    "pure_overlap_loss",
    "bloch_product_states",
]
