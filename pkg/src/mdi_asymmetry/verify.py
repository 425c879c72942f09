"""Seeded invariant suite behind ``mdi-asym verify``.

Each check draws from one shared ``numpy`` generator, measures the worst
violation of a property and compares it with the property's tolerance.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from . import entanglement as ent
from . import linalg as la
from . import measures as ms
from . import model as md
from . import output, scan

TWO_PI = 2 * math.pi


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    where: str = ""


_CHECKS = []


def check(name, tol):
    def register(fn):
        _CHECKS.append((name, tol, fn))
        return fn

    return register


# --- random inputs


def random_hermitian(rng, n=4):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (g + g.conj().T)


def random_density(rng, n=4, rank=None):
    k = rank or n
    g = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_thetas(rng, size):
    return rng.uniform(0.0, TWO_PI, size)


def _worst(devs, labels):
    devs = np.asarray(devs, dtype=float)
    k = int(np.argmax(devs))
    return float(devs[k]), labels(k)


# --- complex-linalg


@check("eigh reconstruction |A - V L V^H|_F", 1e-11)
def _eigh_reconstruction(rng, samples):
    devs, unit = [], []
    for _ in range(samples):
        a = random_hermitian(rng)
        es = la.eigh(a)
        v, w = es.eigenvectors, es.eigenvalues
        devs.append(np.linalg.norm(a - (v * w) @ v.conj().T))
        unit.append(np.linalg.norm(v.conj().T @ v - np.eye(4)))
    if max(unit) > 1e-12:
        return max(unit) * 10, "eigenvector unitarity exceeded 1e-12"
    return _worst(devs, lambda k: f"sample {k}")


@check("sqrt_psd(rho)^2 = rho", 1e-10)
def _sqrt_square(rng, samples):
    rhos = np.array([random_density(rng, rank=rng.integers(1, 5)) for _ in range(samples)])
    roots = la.sqrt_psd_batch(rhos)
    devs = np.linalg.norm(roots @ roots - rhos, axis=(1, 2))
    return _worst(devs, lambda k: f"sample {k}")


@check("partial trace linear and trace preserving", 1e-12)
def _ptrace(rng, samples):
    devs = []
    for _ in range(samples):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        x, y = rng.normal(size=2)
        for keep in "AB":
            lin = la.partial_trace(x * a + y * b, keep) - (
                x * la.partial_trace(a, keep) + y * la.partial_trace(b, keep)
            )
            devs.append(np.linalg.norm(lin))
            devs.append(abs(np.trace(la.partial_trace(a, keep)) - np.trace(a)))
    return _worst(devs, lambda k: f"sample {k // 4}")


@check("kron(a,b) kron(c,d) = kron(ac, bd)", 1e-12)
def _kron_mixed(rng, samples):
    devs = []
    for _ in range(samples):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        devs.append(
            np.linalg.norm(la.matmul(la.kron(a, b), la.kron(c, d)) - la.kron(a @ c, b @ d))
        )
    return _worst(devs, lambda k: f"sample {k}")


# --- quantum-model


@check("norm preservation |U_t psi| = 1", 1e-11)
def _norm_preservation(rng, samples):
    h = md.canonical_hamiltonian()
    ta, tb, t = random_thetas(rng, (3, samples))
    psi = md.pure_product_states(ta, tb)
    u = md.unitaries_at(h, t)
    out = np.einsum("nij,nj->ni", u, psi)
    devs = np.abs(np.linalg.norm(out, axis=1) - 1.0)
    return _worst(devs, lambda k: f"theta=({ta[k]:.6g},{tb[k]:.6g}) t={t[k]:.6g}")


@check("purity preservation tr(rho_t^2) = tr(rho^2)", 1e-10)
def _purity(rng, samples):
    h = md.canonical_hamiltonian()
    rhos = np.array([random_density(rng) for _ in range(samples)])
    t = rng.uniform(0, TWO_PI, samples)
    out = md.evolve_densities(rhos, h, t)
    p0 = np.einsum("nij,nji->n", rhos, rhos).real
    p1 = np.einsum("nij,nji->n", out, out).real
    return _worst(np.abs(p1 - p0), lambda k: f"sample {k}, t={t[k]:.6g}")


@check("group law U_s U_t = U_(s+t)", 1e-10)
def _group_law(rng, samples):
    h = md.canonical_hamiltonian()
    s, t = rng.uniform(-10, 10, (2, samples))
    lhs = md.unitaries_at(h, s) @ md.unitaries_at(h, t)
    devs = np.linalg.norm(lhs - md.unitaries_at(h, s + t), axis=(1, 2))
    return _worst(devs, lambda k: f"s={s[k]:.6g} t={t[k]:.6g}")


@check("closed-form evolved product state = exp(it) U_t psi", 1e-10)
def _pure_closed(rng, samples):
    h = md.canonical_hamiltonian()
    ta, tb, t = random_thetas(rng, (3, samples))
    closed = md.evolve_pure_closed_batch(ta, tb, t)
    psi = md.pure_product_states(ta, tb)
    mat = np.exp(1j * t)[:, None] * np.einsum("nij,nj->ni", md.unitaries_at(h, t), psi)
    devs = np.linalg.norm(closed - mat, axis=1)
    return _worst(devs, lambda k: f"theta=({ta[k]:.6g},{tb[k]:.6g}) t={t[k]:.6g}")


@check("closed-form evolved X/Z product states = U rho U^H", 1e-10)
def _mixed_closed(rng, samples):
    h = md.canonical_hamiltonian()
    ra, rb = rng.uniform(-1, 1, (2, samples))
    t = rng.uniform(0, TWO_PI, samples)
    devs, labels = [], []
    for axis, closed in (("X", md.evolved_rho1_closed), ("Z", md.evolved_rho3_closed)):
        mat = md.evolve_densities(md.bloch_product_states(axis, ra, rb), h, t)
        for k in range(samples):
            devs.append(np.abs(closed(ra[k], rb[k], t[k]) - mat[k]).max())
            labels.append(f"{axis}: r=({ra[k]:.6g},{rb[k]:.6g}) t={t[k]:.6g}")
    return _worst(devs, labels.__getitem__)


@check("Bell-coefficient reconstruction", 1e-12)
def _bell_reconstruction(rng, samples):
    ta, tb = random_thetas(rng, (2, samples))
    devs = [
        np.linalg.norm(
            md.bell_coefficients(md.PureProductParams(a, b)).state()
            - md.pure_product_state(md.PureProductParams(a, b))
        )
        for a, b in zip(ta, tb)
    ]
    return _worst(devs, lambda k: f"theta=({ta[k]:.6g},{tb[k]:.6g})")


# --- asymmetry-measures


@check("time invariance A(U rho U^H) = A(rho)", 1e-9)
def _time_invariance(rng, samples):
    h = md.canonical_hamiltonian()
    rhos = np.array([random_density(rng, rank=rng.integers(1, 5)) for _ in range(samples)])
    t = rng.uniform(0, TWO_PI, samples)
    a0 = ms.wy_raw_batch(rhos, h)
    a1 = ms.wy_raw_batch(md.evolve_densities(rhos, h, t), h)
    return _worst(np.abs(a1 - a0), lambda k: f"sample {k}, t={t[k]:.6g}")


@check("global phase invariance of the pure-state asymmetry", 1e-12)
def _phase_invariance(rng, samples):
    h = md.canonical_hamiltonian()
    ta, tb, phi = random_thetas(rng, (3, samples))
    psi = md.pure_product_states(ta, tb)
    a0 = ms.variance_batch(psi, h)
    a1 = ms.variance_batch(np.exp(1j * phi)[:, None] * psi, h)
    return _worst(np.abs(a1 - a0), lambda k: f"theta=({ta[k]:.6g},{tb[k]:.6g})")


def _grid101(lo, hi):
    x = np.linspace(lo, hi, 101)
    return np.meshgrid(x, x, indexing="ij")


@check("pure closed form vs variance oracle (101x101)", 1e-9)
def _eq_pure_grid(rng, samples):
    h = md.canonical_hamiltonian()
    a, b = (g.ravel() for g in _grid101(0, TWO_PI))
    oracle = ms.variance_batch(md.pure_product_states(a, b), h) * ms.normalization(h)
    devs = np.abs(ms.closed_form_pure_batch(a, b) - oracle)
    return _worst(devs, lambda k: f"theta=({a[k]:.6g},{b[k]:.6g})")


@check("Z-family closed form vs matrix oracle (101x101)", 1e-9)
def _eq_rho3_grid(rng, samples):
    h = md.canonical_hamiltonian()
    a, b = (g.ravel() for g in _grid101(-1, 1))
    oracle = ms.wy_raw_batch(md.bloch_product_states("Z", a, b), h) * ms.normalization(h)
    devs = np.abs(ms.closed_form_rho3_batch(a, b) - oracle)
    return _worst(devs, lambda k: f"r=({a[k]:.6g},{b[k]:.6g})")


@check("X-family closed form vs matrix oracle (101x101)", 1e-9)
def _eq_rho1_grid(rng, samples):
    h = md.canonical_hamiltonian()
    a, b = (g.ravel() for g in _grid101(-1, 1))
    oracle = ms.wy_raw_batch(md.bloch_product_states("X", a, b), h) * ms.normalization(h)
    devs = np.abs(ms.closed_form_rho1_batch(a, b) - oracle)
    return _worst(devs, lambda k: f"r=({a[k]:.6g},{b[k]:.6g})")


@check("normalized asymmetry within [0, 1]", 1e-9)
def _bound(rng, samples):
    h = md.canonical_hamiltonian()
    rhos = np.array([random_density(rng, rank=rng.integers(1, 5)) for _ in range(samples)])
    vals = ms.wy_raw_batch(rhos, h) * ms.normalization(h)
    over = np.maximum(vals - 1.0, 0.0) + np.maximum(-vals, 0.0)
    return _worst(over, lambda k: f"sample {k}, value {vals[k]:.12g}")


@check("Bell eigenstates have zero asymmetry", 1e-12)
def _eigen_nullity(rng, samples):
    h = md.canonical_hamiltonian()
    rhos = np.array([np.outer(b, b.conj()) for b in md.BELL_BASIS])
    raw = ms.wy_raw_batch(rhos, h)
    return _worst(raw, ["Psi-", "Psi+", "Phi-", "Phi+"].__getitem__)


@check("unitary asymmetry of pure states = 1 - |<psi|U psi>|^2", 1e-10)
def _unitary_pure(rng, samples):
    h = md.canonical_hamiltonian()
    ta, tb, t = random_thetas(rng, (3, samples))
    psi = md.pure_product_states(ta, tb)
    rho = np.einsum("ni,nj->nij", psi, psi.conj())
    u = md.unitaries_at(h, t)
    val = ms.unitary_asymmetry_batch(rho, u)
    overlap = np.abs(np.einsum("ni,nij,nj->n", psi.conj(), u, psi)) ** 2
    closed = ms.unitary_pure_closed_batch(ta, tb, t)
    devs = np.maximum(np.abs(val - (1 - overlap)), np.abs(closed - (1 - overlap)))
    devs = np.maximum(devs, np.maximum(val - 1, 0) + np.maximum(-val, 0))
    mixed = np.array([random_density(rng) for _ in range(samples)])
    mval = ms.unitary_asymmetry_batch(mixed, u)
    mdev = np.maximum(mval - 2, 0) + np.maximum(-mval, 0)
    devs = np.concatenate([devs, mdev])
    return _worst(devs, lambda k: f"sample {k % samples} ({'pure' if k < samples else 'mixed'})")


@check("singlet mixtures have zero generator asymmetry", 1e-10)
def _singlet(rng, samples):
    h = md.canonical_hamiltonian()
    p = rng.uniform(0, 1, samples)
    singlet = np.outer(md.PSI_MINUS, md.PSI_MINUS.conj())
    rhos = p[:, None, None] * singlet + (1 - p)[:, None, None] * np.eye(4) / 4
    return _worst(ms.wy_raw_batch(rhos, h), lambda k: f"singlet weight {p[k]:.6g}")


@check("unitary asymmetry of |01> at t = pi/2 reaches 1", 1e-9)
def _singlet_contrast(rng, samples):
    h = md.canonical_hamiltonian()
    ket01 = md.pure_product_state(md.PureProductParams(0.0, math.pi))
    au = ms.unitary_asymmetry(md.DensityMatrix.from_ket(ket01), md.unitary_at(h, math.pi / 2))
    return max(0.0, 1.0 - au), f"A_U = {au:.15g}"


@check("local asymmetry has period pi (721-point t grid)", 1e-9)
def _local_period(rng, samples):
    h = md.canonical_hamiltonian()
    t = np.linspace(0, TWO_PI, 721)
    thetas = np.linspace(0, TWO_PI, 9)
    devs, labels = [], []
    for ta in thetas:
        a0 = ms.local_pure_raw_batch(ta, math.pi / 2, t, h)
        a1 = ms.local_pure_raw_batch(ta, math.pi / 2, t + math.pi, h)
        d = np.abs(a0 - a1) * ms.normalization(h)
        k = int(np.argmax(d))
        devs.append(d[k])
        labels.append(f"theta_a={ta:.6g} theta_b=pi/2 t={t[k]:.6g}")
    return _worst(devs, labels.__getitem__)


# --- entanglement


@check("concurrence invariant under local unitaries", 1e-9)
def _conc_local(rng, samples):
    rhos = np.array([random_density(rng, rank=rng.integers(1, 5)) for _ in range(samples)])
    locs = np.array([np.kron(random_unitary(rng, 2), random_unitary(rng, 2)) for _ in range(samples)])
    moved = locs @ rhos @ np.conj(np.swapaxes(locs, 1, 2))
    devs = np.abs(ent.concurrence_batch(moved) - ent.concurrence_batch(rhos))
    return _worst(devs, lambda k: f"sample {k}")


@check("concurrence vanishes on product states", 1e-10)
def _conc_product(rng, samples):
    ta, tb = random_thetas(rng, (2, samples))
    psi = md.pure_product_states(ta, tb)
    rho = np.einsum("ni,nj->nij", psi, psi.conj())
    mixed = np.array(
        [np.kron(random_density(rng, 2), random_density(rng, 2)) for _ in range(samples)]
    )
    devs = np.concatenate(
        [ent.concurrence_pure_batch(psi), ent.concurrence_batch(rho), ent.concurrence_batch(mixed)]
    )
    return _worst(devs, lambda k: f"sample {k % samples}")


def entangling_witness_gap(n_theta=101, n_t=100):
    """Smallest peak concurrence among grid states with positive asymmetry.

    Returns ``(gap, theta_a, theta_b)``; the existence property holds when
    ``gap > 1e-6``.
    """
    x = np.linspace(0, TWO_PI, n_theta)
    a, b = (g.ravel() for g in np.meshgrid(x, x, indexing="ij"))
    asym = ms.closed_form_pure_batch(a, b)
    sel = asym > 1e-6
    a, b = a[sel], b[sel]
    t = np.linspace(0, math.pi, n_t)
    peak = np.zeros(a.size)
    for tt in t:
        psi = md.evolve_pure_closed_batch(a, b, tt)
        peak = np.maximum(peak, ent.concurrence_pure_batch(psi))
    k = int(np.argmin(peak))
    return float(peak[k]), float(a[k]), float(b[k])


@check("positive asymmetry implies entanglement at some t", 0.0)
def _existence(rng, samples):
    gap, a, b = entangling_witness_gap()
    return (0.0 if gap > 1e-6 else 1.0), f"weakest theta=({a:.6g},{b:.6g}), peak concurrence {gap:.3e}"


# --- scan engine and serialization


def _small_fig1(n=21):
    return scan.GridSpec(
        scan.AxisSpec("theta_b", 0, TWO_PI, n), scan.AxisSpec("theta_a", 0, TWO_PI, n),
        scan.Measure.GLOBAL_PURE,
    )


@check("scan results identical for 1, 4, 8 workers", 0.0)
def _scan_determinism(rng, samples):
    spec = _small_fig1()
    base = scan.run_scan(spec, workers=1)
    worst = 0.0
    for w in (4, 8):
        other = scan.run_scan(spec, workers=w)
        same = np.array_equal(base.values, other.values) and np.array_equal(
            base.deviations, other.deviations
        )
        worst = max(worst, 0.0 if same else 1.0)
    return worst, "workers 4/8 vs 1"


@check("fig1 surface symmetries", 1e-10)
def _fig1_symmetry(rng, samples):
    x = np.linspace(0, TWO_PI, 101)
    a, b = np.meshgrid(x, x, indexing="ij")
    v = ms.closed_form_pure_batch(a, b)
    swap = np.abs(v - v.T).max()
    mirror = np.abs(v - ms.closed_form_pure_batch(TWO_PI - a, TWO_PI - b)).max()
    return max(swap, mirror), f"swap {swap:.3e}, mirror {mirror:.3e}"


@check("null asymmetry at theta_a = theta_b = n pi", 1e-10)
def _null_lines(rng, samples):
    pts = [0.0, math.pi, TWO_PI]
    vals = ms.closed_form_pure_batch(np.array(pts), np.array(pts))
    return _worst(vals, lambda k: f"theta={pts[k]:.6g}")


@check("CSV round trip is bit-exact", 0.0)
def _csv_roundtrip(rng, samples):
    res = scan.run_scan(_small_fig1(11), workers=1)
    buf = io.StringIO()
    output.write_csv(res, buf, comments=["roundtrip"])
    buf.seek(0)
    _, cols, data = output.read_csv(buf)
    a1, a2, vals, devs = output.grid_from_csv(cols, data, res.values.shape)
    same = (
        np.array_equal(a1, res.axis1_values)
        and np.array_equal(a2, res.axis2_values)
        and np.array_equal(vals, res.values)
        and np.array_equal(devs, res.deviations)
    )
    return (0.0 if same else 1.0), "11x11 fig1 grid"


@check("identical figure commands give identical bytes", 0.0)
def _cli_repeat(rng, samples):
    from .cli import main

    outs = []
    for _ in range(2):
        buf = io.StringIO()
        main(["figure", "fig2a", "--grid", "7", "--workers", "1"], stdout=buf, stderr=io.StringIO())
        outs.append(buf.getvalue())
    return (0.0 if outs[0] == outs[1] else 1.0), "figure fig2a --grid 7"


def run_checks(seed=42, samples=500):
    """Run every registered property; returns a list of :class:`CheckResult`."""
    rng = np.random.default_rng(seed)
    results = []
    for name, tol, fn in _CHECKS:
        worst, where = fn(rng, samples)
        worst = float(worst)
        results.append(CheckResult(name, bool(worst <= tol), worst, tol, where))
    return results


def check_names():
    return [name for name, _, _ in _CHECKS]
