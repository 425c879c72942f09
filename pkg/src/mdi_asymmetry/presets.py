"""Figure presets: which measure, axes and fixed values produce each surface.

Grids are laid out image-style: ``axis1`` (rows) is the vertical plot
axis and ``axis2`` (columns) the horizontal one.
"""

import math

from .errors import ConfigError
from .scan import AxisSpec, GridSpec, Measure, Path

FIGURES = ("fig1", "fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6", "fig7")
DEFAULT_GRID = 201
TWO_PI = 2 * math.pi

DEFAULT_THETA_B = math.pi / 2
DEFAULT_TIMES = {
    "fig4": (0.0, math.pi / 3, 2 * math.pi / 3),
    "fig7": (math.pi / 3, math.pi / 2, math.pi),
}


def _theta(name, n):
    return AxisSpec(name, 0.0, TWO_PI, n)


def _bloch(name, n):
    return AxisSpec(name, -1.0, 1.0, n)


def _time(n):
    return AxisSpec("t", 0.0, TWO_PI, n)


def figure_specs(fig, grid=DEFAULT_GRID, theta_b=None, t=None, axis=None, r_b=None, path=None):
    """Return ``[(label, GridSpec), ...]`` for a figure preset.

    ``label`` is ``None`` for single-surface presets and a short tag such as
    ``"t=1.0471975511965976"`` when a preset expands to several surfaces.
    """
    if fig not in FIGURES:
        raise ConfigError(f"unknown figure {fig!r}; choose from {FIGURES}")
    n = int(grid)
    chosen = Path(path) if path is not None else None

    def make(a1, a2, measure, fixed=(), default_path=Path.BOTH):
        return GridSpec(a1, a2, measure, dict(fixed), chosen or default_path)

    if fig == "fig1":
        return [(None, make(_theta("theta_b", n), _theta("theta_a", n), Measure.GLOBAL_PURE))]
    if fig == "fig2a":
        return [(None, make(_bloch("r_b", n), _bloch("r_a", n), Measure.GLOBAL_RHO3))]
    if fig == "fig2b":
        return [(None, make(_bloch("r_b", n), _bloch("r_a", n), Measure.GLOBAL_RHO1))]
    if fig in ("fig3", "fig6"):
        tb = DEFAULT_THETA_B if theta_b is None else theta_b
        if fig == "fig3":
            return [(None, make(_time(n), _theta("theta_a", n), Measure.LOCAL_PURE,
                                {"theta_b": tb}, Path.ORACLE))]
        return [(None, make(_time(n), _theta("theta_a", n), Measure.UNITARY_PURE, {"theta_b": tb}))]
    if fig in ("fig4", "fig7"):
        times = DEFAULT_TIMES[fig] if t is None else (t,)
        measure, default = (
            (Measure.LOCAL_PURE, Path.ORACLE) if fig == "fig4" else (Measure.UNITARY_PURE, Path.BOTH)
        )
        out = []
        for tt in times:
            label = None if t is not None else f"t={tt!r}"
            out.append((label, make(_theta("theta_b", n), _theta("theta_a", n), measure,
                                    {"t": tt}, default)))
        return out
    # fig5
    if axis is None or r_b is None:
        raise ConfigError("fig5 needs --axis {x,z} and --r-b")
    key = str(axis).lower()
    if key not in ("x", "z"):
        raise ConfigError(f"--axis must be x or z, got {axis!r}")
    measure = Measure.LOCAL_RHO1 if key == "x" else Measure.LOCAL_RHO3
    return [(None, make(_time(n), _bloch("r_a", n), measure, {"r_b": r_b}))]
