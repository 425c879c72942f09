"""Rectangular parameter sweeps over any measure, optionally in parallel.

Rows (fixed ``axis1`` value) are the unit of work.  Each row is evaluated
as one vectorized batch whose content does not depend on how rows are
distributed, so results are bit-identical for any worker count.
"""

import enum
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import entanglement, measures, model
from .errors import ConfigError, MdiError, ScanError

PARAMETERS = ("theta_a", "theta_b", "r_a", "r_b", "t")
TIE_TOL = 1e-12


class Measure(str, enum.Enum):
    GLOBAL_PURE = "global-pure"
    GLOBAL_RHO1 = "global-rho1"
    GLOBAL_RHO3 = "global-rho3"
    LOCAL_PURE = "local-pure"
    LOCAL_RHO1 = "local-rho1"
    LOCAL_RHO3 = "local-rho3"
    UNITARY_PURE = "unitary-pure"
    CONCURRENCE_PURE = "concurrence-pure"


class Path(str, enum.Enum):
    CLOSED_FORM = "closed"
    ORACLE = "oracle"
    BOTH = "both"


@lru_cache(maxsize=None)
def _hamiltonian():
    return model.canonical_hamiltonian()


def _norm():
    return measures.normalization(_hamiltonian())


# Evaluators take a dict of equal-length float arrays and return one value per
# entry.  Generator-based measures are reported on the normalized scale.


def _pure_closed(p):
    return measures.closed_form_pure_batch(p["theta_a"], p["theta_b"])


def _pure_oracle(p):
    psi = model.pure_product_states(p["theta_a"], p["theta_b"])
    return measures.variance_batch(psi, _hamiltonian()) * _norm()


def _rho_oracle(axis):
    def oracle(p):
        rho = model.bloch_product_states(axis, p["r_a"], p["r_b"])
        return measures.wy_raw_batch(rho, _hamiltonian()) * _norm()

    return oracle


def _local_pure_oracle(p):
    raw = measures.local_pure_raw_batch(p["theta_a"], p["theta_b"], p["t"], _hamiltonian())
    return raw * _norm()


def _local_rho_oracle(axis):
    def oracle(p):
        rho = model.bloch_product_states(axis, p["r_a"], p["r_b"])
        return measures.local_raw_batch(rho, _hamiltonian(), p["t"]) * _norm()

    return oracle


def _local_rho1_closed(p):
    # the closed form is on the raw scale
    return measures.local_closed_form_rho1_batch(p["r_a"], p["r_b"], p["t"]) * _norm()


def _local_rho3_closed(p):
    return measures.local_closed_form_rho3_batch(p["r_a"], p["r_b"], p["t"])


def _unitary_closed(p):
    return measures.unitary_pure_closed_batch(p["theta_a"], p["theta_b"], p["t"])


def _unitary_oracle(p):
    psi = model.pure_product_states(p["theta_a"], p["theta_b"])
    rho = np.einsum("ni,nj->nij", psi, psi.conj())
    u = model.unitaries_at(_hamiltonian(), p["t"])
    return measures.unitary_asymmetry_batch(rho, u)


def _concurrence_closed(p):
    psi = model.evolve_pure_closed_batch(p["theta_a"], p["theta_b"], p["t"])
    return entanglement.concurrence_pure_batch(psi)


def _concurrence_oracle(p):
    psi = model.pure_product_states(p["theta_a"], p["theta_b"])
    rho = np.einsum("ni,nj->nij", psi, psi.conj())
    return entanglement.concurrence_batch(model.evolve_densities(rho, _hamiltonian(), p["t"]))


@dataclass(frozen=True)
class MeasureInfo:
    parameters: tuple
    oracle: object
    closed: object = None


MEASURES = {
    Measure.GLOBAL_PURE: MeasureInfo(("theta_a", "theta_b"), _pure_oracle, _pure_closed),
    Measure.GLOBAL_RHO1: MeasureInfo(
        ("r_a", "r_b"), _rho_oracle("X"), lambda p: measures.closed_form_rho1_batch(p["r_a"], p["r_b"])
    ),
    Measure.GLOBAL_RHO3: MeasureInfo(
        ("r_a", "r_b"), _rho_oracle("Z"), lambda p: measures.closed_form_rho3_batch(p["r_a"], p["r_b"])
    ),
    Measure.LOCAL_PURE: MeasureInfo(("theta_a", "theta_b", "t"), _local_pure_oracle),
    Measure.LOCAL_RHO1: MeasureInfo(("r_a", "r_b", "t"), _local_rho_oracle("X"), _local_rho1_closed),
    Measure.LOCAL_RHO3: MeasureInfo(("r_a", "r_b", "t"), _local_rho_oracle("Z"), _local_rho3_closed),
    Measure.UNITARY_PURE: MeasureInfo(("theta_a", "theta_b", "t"), _unitary_oracle, _unitary_closed),
    Measure.CONCURRENCE_PURE: MeasureInfo(
        ("theta_a", "theta_b", "t"), _concurrence_oracle, _concurrence_closed
    ),
}


@dataclass(frozen=True)
class AxisSpec:
    name: str
    min: float
    max: float
    count: int

    def values(self):
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class GridSpec:
    """A two-axis sweep of one measure.

    ``fixed`` binds every parameter the measure needs beyond the two axes.
    Accepts a mapping or pairs; stored as a name-sorted tuple of pairs.
    """

    axis1: AxisSpec
    axis2: AxisSpec
    measure: Measure
    fixed: tuple = ()
    path: Path = Path.BOTH

    def __post_init__(self):
        try:
            object.__setattr__(self, "measure", Measure(self.measure))
            object.__setattr__(self, "path", Path(self.path))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        fixed = dict(self.fixed.items() if isinstance(self.fixed, dict) else self.fixed)
        object.__setattr__(self, "fixed", tuple(sorted((k, float(v)) for k, v in fixed.items())))
        self._validate()

    def _validate(self):
        info = MEASURES[self.measure]
        for ax in (self.axis1, self.axis2):
            if ax.name not in PARAMETERS:
                raise ConfigError(f"unknown axis {ax.name!r}; choose from {PARAMETERS}")
            if not (math.isfinite(ax.min) and math.isfinite(ax.max)) or not ax.min < ax.max:
                raise ConfigError(f"axis {ax.name}: need finite min < max, got [{ax.min}, {ax.max}]")
            if int(ax.count) != ax.count or ax.count < 2:
                raise ConfigError(f"axis {ax.name}: count must be an integer >= 2")
        if self.axis1.name == self.axis2.name:
            raise ConfigError("axis names must differ")
        axes = {self.axis1.name, self.axis2.name}
        extra = axes - set(info.parameters)
        if extra:
            raise ConfigError(f"{self.measure.value} does not take {sorted(extra)}")
        needed = set(info.parameters) - axes
        given = {k for k, _ in self.fixed}
        if given != needed:
            raise ConfigError(
                f"{self.measure.value} needs fixed values for {sorted(needed)}, got {sorted(given)}"
            )
        if info.closed is None and self.path is not Path.ORACLE:
            raise ConfigError(f"{self.measure.value} has no closed form; use path 'oracle'")
        for name, lo, hi in self._ranges():
            if name in ("r_a", "r_b") and (lo < -1.0 or hi > 1.0):
                raise ConfigError(f"{name} must stay within [-1, 1]")

    def _ranges(self):
        yield self.axis1.name, self.axis1.min, self.axis1.max
        yield self.axis2.name, self.axis2.min, self.axis2.max
        for k, v in self.fixed:
            yield k, v, v

    def to_dict(self):
        return {
            "measure": self.measure.value,
            "path": self.path.value,
            "axis1": vars(self.axis1).copy(),
            "axis2": vars(self.axis2).copy(),
            "fixed": dict(self.fixed),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class ScanResult:
    spec: GridSpec
    axis1_values: np.ndarray
    axis2_values: np.ndarray
    values: np.ndarray
    deviations: np.ndarray = None
    max_deviation: float = None

    def rows(self):
        """Yield ``(x1, x2, value[, deviation])`` in row-major order."""
        for i, x1 in enumerate(self.axis1_values):
            for j, x2 in enumerate(self.axis2_values):
                if self.deviations is None:
                    yield (x1, x2, self.values[i, j])
                else:
                    yield (x1, x2, self.values[i, j], self.deviations[i, j])


@dataclass(frozen=True)
class Landmarks:
    axes: tuple
    max_value: float
    argmax: tuple
    min_value: float
    argmin: tuple
    max_deviation: float = None

    def to_dict(self):
        return {
            "axes": list(self.axes),
            "max": self.max_value,
            "argmax": list(self.argmax),
            "min": self.min_value,
            "argmin": list(self.argmin),
            "max_deviation": self.max_deviation,
        }


def _eval_rows(spec, rows):
    """Evaluate rows of ``spec``; returns (values, deviations or None)."""
    info = MEASURES[spec.measure]
    x1 = spec.axis1.values()
    x2 = spec.axis2.values()
    n2 = x2.size
    vals = np.empty((len(rows), n2))
    devs = np.empty((len(rows), n2)) if spec.path is Path.BOTH else None
    for k, i in enumerate(rows):
        params = {spec.axis1.name: np.full(n2, x1[i]), spec.axis2.name: x2.copy()}
        for name, v in spec.fixed:
            params[name] = np.full(n2, v)
        try:
            if spec.path is Path.ORACLE:
                vals[k] = info.oracle(params)
            else:
                closed = info.closed(params)
                vals[k] = closed
                if devs is not None:
                    devs[k] = np.abs(closed - info.oracle(params))
        except MdiError as exc:
            j = getattr(exc, "index", None)
            coords = {spec.axis1.name: float(x1[i])}
            if j is not None:
                coords[spec.axis2.name] = float(x2[j])
            raise ScanError(f"evaluation failed at {coords}: {exc}", coords) from exc
        if not np.all(np.isfinite(vals[k])):
            j = int(np.flatnonzero(~np.isfinite(vals[k]))[0])
            coords = {spec.axis1.name: float(x1[i]), spec.axis2.name: float(x2[j])}
            raise ScanError(f"non-finite value at {coords}", coords)
    return vals, devs


def _chunks(n, parts):
    bounds = np.linspace(0, n, parts + 1).round().astype(int)
    return [list(range(a, b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def run_scan(spec, workers=None):
    """Evaluate ``spec`` on its full grid.

    Parameters
    ----------
    spec : GridSpec
    workers : int, optional
        Process count; defaults to ``os.cpu_count()``.  ``1`` runs inline.

    Raises
    ------
    ScanError
        With the grid coordinates of the first failing node.
    """
    if not isinstance(spec, GridSpec):
        raise ConfigError("run_scan expects a GridSpec")
    n1 = spec.axis1.count
    workers = max(1, min(int(workers or os.cpu_count() or 1), n1))
    if workers == 1:
        vals, devs = _eval_rows(spec, list(range(n1)))
    else:
        parts = _chunks(n1, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_eval_rows, [spec] * len(parts), parts))
        vals = np.empty((n1, spec.axis2.count))
        devs = np.empty_like(vals) if spec.path is Path.BOTH else None
        for rows, (v, d) in zip(parts, outs):
            vals[rows[0] : rows[-1] + 1] = v
            if devs is not None:
                devs[rows[0] : rows[-1] + 1] = d
    max_dev = float(devs.max()) if devs is not None else None
    arrays = [spec.axis1.values(), spec.axis2.values(), vals] + ([devs] if devs is not None else [])
    for a in arrays:
        a.setflags(write=False)
    return ScanResult(spec, arrays[0], arrays[1], vals, devs, max_dev)


def landmark_report(result, tie_tol=TIE_TOL):
    """Extremes of a scan; near-ties (within ``tie_tol``) go to the lowest row-major index."""
    flat = result.values.ravel()
    hi = flat.max()
    lo = flat.min()
    i_max = int(np.flatnonzero(flat >= hi - tie_tol)[0])
    i_min = int(np.flatnonzero(flat <= lo + tie_tol)[0])
    n2 = result.values.shape[1]

    def coords(k):
        return (float(result.axis1_values[k // n2]), float(result.axis2_values[k % n2]))

    return Landmarks(
        axes=(result.spec.axis1.name, result.spec.axis2.name),
        max_value=float(hi),
        argmax=coords(i_max),
        min_value=float(lo),
        argmin=coords(i_min),
        max_deviation=result.max_deviation,
    )
