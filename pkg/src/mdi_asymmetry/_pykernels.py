"""Pure-Python (numpy-vectorized) fallback for the batched Hermitian kernels.

Runs the same cyclic Jacobi scheme as ``_ckernels`` but applies each
rotation to the whole batch at once.  A matrix that has converged, or whose
pivot is exactly zero, receives the identity rotation (c=1, s=0), which
leaves its entries bit-for-bit unchanged; each result therefore depends
only on its own input and never on the other members of the batch.
"""

import numpy as np

OFF_TOL = 1e-13
MAX_SWEEPS = 60


def jacobi_eigh_batch(a, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Eigendecompose a stack of Hermitian matrices.

    Parameters
    ----------
    a : ndarray, shape (N, n, n), complex128
        Hermitian inputs; only read.

    Returns
    -------
    w : ndarray, shape (N, n)
        Unsorted real eigenvalues.
    v : ndarray, shape (N, n, n)
        Column ``k`` of ``v[i]`` is the eigenvector of ``w[i, k]``.
    sweeps : ndarray, shape (N,), int
        Sweeps used per matrix; ``-1`` marks non-convergence.
    """
    w = np.array(a, dtype=np.complex128, copy=True)
    nb, n, _ = w.shape
    v = np.zeros_like(w)
    idx = np.arange(n)
    v[:, idx, idx] = 1.0
    sweeps = np.full(nb, -1, dtype=np.int64)
    offdiag = ~np.eye(n, dtype=bool)

    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(w[:, offdiag]) ** 2, axis=1))
        done = (off <= off_tol) & (sweeps < 0)
        sweeps[done] = sweep
        active = sweeps < 0
        if not active.any() or sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[:, p, q]
                g = np.abs(apq)
                rot = active & (g > 0.0)
                if not rot.any():
                    continue
                gs = np.where(rot, g, 1.0)
                e = np.where(rot, apq / gs, 1.0)
                theta = (w[:, q, q].real - w[:, p, p].real) / (2.0 * gs)
                sgn = np.where(theta >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(theta) + np.hypot(theta, 1.0))
                c = np.where(rot, 1.0 / np.sqrt(t * t + 1.0), 1.0)
                s = np.where(rot, t * c, 0.0)
                ec = np.conj(e)
                c_ = c[:, None]
                s_ = s[:, None]
                # columns: A <- A J
                colp = w[:, :, p].copy()
                colq = w[:, :, q].copy()
                w[:, :, p] = c_ * colp - s_ * (ec[:, None] * colq)
                w[:, :, q] = s_ * colp + c_ * (ec[:, None] * colq)
                # rows: A <- J^H A
                rowp = w[:, p, :].copy()
                rowq = w[:, q, :].copy()
                w[:, p, :] = c_ * rowp - s_ * (e[:, None] * rowq)
                w[:, q, :] = s_ * rowp + c_ * (e[:, None] * rowq)
                w[rot, p, q] = 0.0
                w[rot, q, p] = 0.0
                w[rot, p, p] = w[rot, p, p].real
                w[rot, q, q] = w[rot, q, q].real
                # eigenvectors: V <- V J
                vp = v[:, :, p].copy()
                vq = v[:, :, q].copy()
                v[:, :, p] = c_ * vp - s_ * (ec[:, None] * vq)
                v[:, :, q] = s_ * vp + c_ * (ec[:, None] * vq)

    evals = np.ascontiguousarray(w[:, idx, idx].real)
    return evals, v, sweeps


def sqrt_psd_batch(a, neg_tol=1e-10, zero_floor=1e-14, off_tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Principal square roots of a stack of PSD matrices.

    Eigenvalues at or below ``zero_floor`` (which covers the clamping
    window ``[-neg_tol, 0]``) are set to zero before the root is taken.

    Returns
    -------
    root : ndarray, shape (N, n, n)
    min_eig : ndarray, shape (N,)
        Smallest eigenvalue before clamping; callers reject ``< -neg_tol``.
    sweeps : ndarray, shape (N,)
    """
    evals, vecs, sweeps = jacobi_eigh_batch(a, off_tol, max_sweeps)
    min_eig = evals.min(axis=1)
    lam = np.where(evals > zero_floor, evals, 0.0)
    root = np.einsum("bik,bk,bjk->bij", vecs, np.sqrt(lam), vecs.conj())
    root = 0.5 * (root + np.conj(np.swapaxes(root, 1, 2)))
    return root, min_eig, sweeps
